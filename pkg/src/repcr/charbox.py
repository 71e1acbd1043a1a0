"""Characters of Weyl modules, tensor products and Weyl-character decompositions.

A :class:`Character` is a finite map weight -> multiplicity over the full
(Weyl-symmetric) support.  Decompositions into Weyl characters are plain
dicts dominant weight -> integer coefficient.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .rootsys import (
    RootDatum,
    Weight,
    add,
    build_root_datum,
    dominant_weights_below,
    format_weight,
    is_dominant,
    scale,
)


class Character(dict):
    """Weight -> multiplicity.  Zero entries are never stored."""

    def mass(self) -> int:
        return sum(self.values())

    def dominant_part(self) -> dict:
        return {w: m for w, m in self.items() if is_dominant(w)}

    def to_json(self, datum: RootDatum) -> list:
        return [[format_weight(w), m] for w, m in sorted_items(datum, self)]

    def __add__(self, other: Mapping) -> "Character":
        out = Character(self)
        for w, m in other.items():
            v = out.get(w, 0) + m
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return out

    def __sub__(self, other: Mapping) -> "Character":
        return self + {w: -m for w, m in other.items()}


def sorted_items(datum: RootDatum, mapping: Mapping) -> list:
    """Dominance-then-lex order, highest first."""
    keys = sorted(mapping, key=lambda w: (datum.height_key(w), w), reverse=True)
    return [(k, mapping[k]) for k in keys]


# ----- Freudenthal --------------------------------------------------------

def _form_data(datum: RootDatum) -> tuple[list[list[int]], int]:
    """Integer matrix M and denominator D with (λ, μ) = λᵀ M μ / D."""
    n = datum.rank
    g = [[datum.form(datum.omega(i), datum.omega(j)) for j in range(n)] for i in range(n)]
    den = 1
    for row in g:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    return [[int(x * den) for x in row] for row in g], den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def _form_cached(letter: str, rank: int):
    return _form_data(build_root_datum(letter, rank))


@lru_cache(maxsize=4096)
def _freudenthal(letter: str, rank: int, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    """Dominant weight multiplicities of χ(λ)."""
    datum = build_root_datum(letter, rank)
    gm, _den = _form_cached(letter, rank)

    def norm(x: Sequence[int]) -> int:
        return sum(x[i] * gm[i][j] * x[j] for i in range(rank) for j in range(rank))

    dom = dominant_weights_below(datum, lam)
    diagram: dict[Weight, Weight] = {}
    for mu in dom:
        for nu in datum.orbit(mu):
            diagram[nu] = mu
    order = sorted(diagram, key=lambda w: datum.height_key(w), reverse=True)
    roots = datum.positive_roots
    rw = [datum.root_weight(b) for b in roots]
    # (ν, α) = Σ_j ν_j b_j d_j is an integer for our normalisation
    rcoef = [tuple(b[j] * datum.half_lengths[j] for j in range(rank)) for b in roots]
    top = norm(add(lam, datum.rho))
    mult: dict[Weight, int] = {}
    tail: list[dict[Weight, int]] = [dict() for _ in roots]
    for nu in order:
        if nu == tuple(lam):
            m = 1
        elif diagram[nu] == nu:
            acc = 0
            for k in range(len(roots)):
                acc += tail[k].get(nu, 0)
            denom = top - norm(add(nu, datum.rho))
            num = 2 * acc * _den
            assert denom > 0 and num % denom == 0, (lam, nu, num, denom)
            m = num // denom
        else:
            m = mult[diagram[nu]]
        mult[nu] = m
        # propagate partial sums one step down each root string
        for k in range(len(roots)):
            below = tuple(a - b for a, b in zip(nu, rw[k]))
            if below in diagram:
                pair = sum(a * c for a, c in zip(nu, rcoef[k]))
                tail[k][below] = tail[k].get(nu, 0) + m * pair
    return tuple((mu, mult[mu]) for mu in sorted(dom))


def dominant_multiplicities(datum: RootDatum, lam: Sequence[int]) -> dict[Weight, int]:
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    return {w: m for w, m in _freudenthal(datum.type_letter, datum.rank, lam) if m}


def weyl_character(datum: RootDatum, lam: Sequence[int]) -> Character:
    """χ(λ) by Freudenthal's recursion."""
    out = Character()
    for mu, m in dominant_multiplicities(datum, lam).items():
        for nu in datum.orbit(mu):
            out[nu] = m
    return out


def weyl_character_alternating(datum: RootDatum, lam: Sequence[int]) -> Character:
    """χ(λ) as the alternating orbit sum of λ+ρ divided by the Weyl denominator.

    Independent of Freudenthal: the quotient is computed one factor
    (1 - e^{-α}) at a time along α-strings.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    start = add(lam, datum.rho)
    sign = {start: 1}
    todo = [start]
    while todo:
        cur = todo.pop()
        for i in range(datum.rank):
            nxt = datum.simple_reflect(cur, i)
            if nxt not in sign:
                sign[nxt] = -sign[cur]
                todo.append(nxt)
    f = {tuple(a - 1 for a in x): s for x, s in sign.items()}
    for beta in datum.positive_roots:
        f = _divide_by_one_minus(f, datum.root_weight(beta))
    return Character({w: m for w, m in f.items() if m})


def _divide_by_one_minus(f: dict[Weight, int], a: Weight) -> dict[Weight, int]:
    """Exact quotient g with g·(1 - e^{-a}) = f, i.e. g(ν) = Σ_{k≥0} f(ν+ka)."""
    i = next(k for k, c in enumerate(a) if c != 0)
    step = a[i]
    lines: dict[Weight, dict[int, int]] = defaultdict(dict)
    for nu, m in f.items():
        t = nu[i] // step
        base = tuple(x - t * y for x, y in zip(nu, a))
        lines[base][t] = lines[base].get(t, 0) + m
    out: dict[Weight, int] = {}
    for base, pts in lines.items():
        lo, hi = min(pts), max(pts)
        acc = 0
        for t in range(hi, lo - 1, -1):
            acc += pts.get(t, 0)
            if acc:
                out[tuple(x + t * y for x, y in zip(base, a))] = acc
        if acc != 0:
            raise ArithmeticError("alternating sum is not divisible by the Weyl denominator")
    return out


def weyl_dim(datum: RootDatum, lam: Sequence[int]) -> int:
    """Weyl's product formula."""
    num = Fraction(1)
    lr = add(lam, datum.rho)
    for beta in datum.positive_roots:
        num *= Fraction(datum.pairing(lr, beta), datum.pairing(datum.rho, beta))
    assert num.denominator == 1
    return int(num)


# ----- character arithmetic ----------------------------------------------

def tensor(ch1: Mapping[Weight, int], ch2: Mapping[Weight, int]) -> Character:
    """Convolution of characters."""
    out: dict[Weight, int] = defaultdict(int)
    for w1, m1 in ch1.items():
        for w2, m2 in ch2.items():
            out[add(w1, w2)] += m1 * m2
    return Character({w: m for w, m in out.items() if m})


def frobenius_twist(ch: Mapping[Weight, int], p: int) -> Character:
    return Character({scale(p, w): m for w, m in ch.items()})


def combination_to_character(datum: RootDatum, coeffs: Mapping[Weight, int]) -> Character:
    """Σ c_δ χ(δ) as a character."""
    out: dict[Weight, int] = defaultdict(int)
    for delta, c in coeffs.items():
        if not c:
            continue
        for mu, m in dominant_multiplicities(datum, delta).items():
            for nu in datum.orbit(mu):
                out[nu] += c * m
    return Character({w: m for w, m in out.items() if m})


def decompose_into_weyl(datum: RootDatum, ch: Mapping[Weight, int], allow_negative: bool = False) -> dict[Weight, int]:
    """Greedy subtraction of Weyl characters at maximal dominant weights.

    Raises ValueError on a negative coefficient unless ``allow_negative``.
    """
    rest: dict[Weight, int] = {w: m for w, m in ch.items() if m and is_dominant(w)}
    out: dict[Weight, int] = {}
    while rest:
        top = max(rest, key=lambda w: (datum.height_key(w), w))
        c = rest[top]
        if c < 0 and not allow_negative:
            raise ValueError(f"negative coefficient {c} at {format_weight(top)}: character is not Weyl-positive")
        out[top] = c
        for mu, m in dominant_multiplicities(datum, top).items():
            v = rest.get(mu, 0) - c * m
            if v:
                rest[mu] = v
            else:
                rest.pop(mu, None)
    return out


def weyl_product(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> dict[Weight, int]:
    """χ(λ)·χ(μ) in the Weyl basis by Brauer-Klimyk (signed dot action)."""
    lam, mu = tuple(lam), tuple(mu)
    if _dim_fast(datum, lam) > _dim_fast(datum, mu):
        lam, mu = mu, lam
    out: dict[Weight, int] = defaultdict(int)
    for nu0, m in dominant_multiplicities(datum, lam).items():
        for nu in datum.orbit(nu0):
            hit = datum.dot_dominant(add(mu, nu))
            if hit is not None:
                out[hit[0]] += hit[1] * m
    return {w: c for w, c in out.items() if c}


def _dim_fast(datum: RootDatum, lam: Weight) -> int:
    return weyl_dim(datum, lam)


def gf_mults(datum: RootDatum, lam: Sequence[int], mu: Sequence[int]) -> dict[Weight, int]:
    """Good-filtration multiplicities of ∇(λ)⊗∇(μ).

    Equal to ``decompose_into_weyl(tensor(χ(λ), χ(μ)))``; computed by
    Brauer-Klimyk, which never materialises the product character.
    """
    if not (is_dominant(lam) and is_dominant(mu)):
        raise ValueError("weights must be dominant")
    out = weyl_product(datum, lam, mu)
    if any(c < 0 for c in out.values()):  # pragma: no cover - would be a bug
        raise ArithmeticError("negative good-filtration multiplicity")
    return out


def multiply_combinations(datum: RootDatum, a: Mapping[Weight, int], b: Mapping[Weight, int]) -> dict[Weight, int]:
    """Product of two Weyl-basis combinations, again in the Weyl basis."""
    out: dict[Weight, int] = defaultdict(int)
    for x, cx in a.items():
        for y, cy in b.items():
            for z, cz in weyl_product(datum, x, y).items():
                out[z] += cx * cy * cz
    return {w: c for w, c in out.items() if c}


def dominant_weights_of_dim_at_most(datum: RootDatum, bound: int) -> list[Weight]:
    """All dominant λ with weyl_dim(λ) ≤ bound (dimension grows in each coordinate)."""
    start = datum.zero()
    seen = {start}
    todo = [start]
    out = []
    while todo:
        cur = todo.pop()
        if weyl_dim(datum, cur) > bound:
            continue
        out.append(cur)
        for i in range(datum.rank):
            nxt = tuple(c + int(j == i) for j, c in enumerate(cur))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return sorted(out)


def weights_of(ch: Iterable[Weight]) -> set[Weight]:
    return set(ch)
