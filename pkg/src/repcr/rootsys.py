"""Root systems and weight lattices for the simple types A-G.

Weights are integer tuples in the fundamental-weight basis, roots are integer
tuples in the simple-root basis.  Indices are 0-based throughout the Python
API, so ``omega(1)`` in the text "ω2" sense is ``(0, 1, 0, ...)``.

Labelling conventions (these matter for every length-sensitive formula):

====  =========================================
type  simple-root lengths
====  =========================================
B_n   α_n short, the others long
C_n   α_n long, the others short
F_4   α_1, α_2 long; α_3, α_4 short
G_2   α_1 short, α_2 long
====  =========================================

The symmetric form is normalised so that short roots have squared length 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Weight = tuple[int, ...]
RootVector = tuple[int, ...]

VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _diagram(letter: str, n: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Half squared lengths d_i and Dynkin edges (0-based)."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if letter == "A":
        return [1] * n, chain
    if letter == "B":
        return [2] * (n - 1) + [1], chain
    if letter == "C":
        return [1] * (n - 1) + [2], chain
    if letter == "D":
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if letter == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return [1] * n, edges
    if letter == "F":
        return [2, 2, 1, 1], chain
    if letter == "G":
        return [1, 3], chain
    raise ValueError(f"unknown type letter {letter!r}")


@dataclass(frozen=True)
class RootDatum:
    """Immutable root-system database; build it with :func:`build_root_datum`."""

    type_letter: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[RootVector, ...]
    root_lengths: tuple[str, ...]
    rho: Weight
    highest_root: RootVector
    highest_short_root: RootVector
    half_lengths: tuple[int, ...]
    _coroots: dict = field(repr=False, compare=False, hash=False, default_factory=dict)
    _root_weights: dict = field(repr=False, compare=False, hash=False, default_factory=dict)
    _inv_cartan: tuple = field(repr=False, compare=False, hash=False, default=())
    _height_vec: tuple = field(repr=False, compare=False, hash=False, default=())

    # ----- naming -------------------------------------------------------
    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    def __repr__(self) -> str:
        return f"RootDatum({self.name})"

    def __reduce__(self):
        return (build_root_datum, (self.type_letter, self.rank))

    # ----- basic vectors ------------------------------------------------
    def zero(self) -> Weight:
        return (0,) * self.rank

    def omega(self, i: int) -> Weight:
        w = [0] * self.rank
        w[i] = 1
        return tuple(w)

    def simple_root(self, i: int) -> RootVector:
        return self.omega(i)

    @property
    def simple_roots(self) -> tuple[RootVector, ...]:
        return tuple(self.simple_root(i) for i in range(self.rank))

    @property
    def roots(self) -> tuple[RootVector, ...]:
        return self.positive_roots + tuple(neg(b) for b in self.positive_roots)

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self._coroots

    def is_long(self, beta: Sequence[int]) -> bool:
        beta = tuple(beta)
        if beta not in self._coroots:
            raise ValueError(f"{beta} is not a root of {self.name}")
        pos = beta if any(c > 0 for c in beta) else neg(beta)
        return self.root_lengths[self.positive_roots.index(pos)] == "long"

    def root_weight(self, beta: Sequence[int]) -> Weight:
        """Fundamental-basis coordinates of a root-lattice vector."""
        key = tuple(beta)
        hit = self._root_weights.get(key)
        if hit is not None:
            return hit
        out = tuple(sum(self.cartan[i][j] * key[j] for j in range(self.rank)) for i in range(self.rank))
        if key in self._coroots:
            self._root_weights[key] = out
        return out

    def coroot(self, beta: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of β∨ in the simple-coroot basis."""
        try:
            return self._coroots[tuple(beta)]
        except KeyError:
            raise ValueError(f"{tuple(beta)} is not a root of {self.name}") from None

    def to_root_coords(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Express a weight over the simple roots (rational coefficients)."""
        return tuple(sum((row[j] * lam[j] for j in range(self.rank)), Fraction(0)) for row in self._inv_cartan)

    def height(self, lam: Sequence[int]) -> Fraction:
        """Sum of simple-root coordinates; strictly monotone for the dominance order."""
        return sum(self.to_root_coords(lam), Fraction(0))

    def height_key(self, lam: Sequence[int]) -> int:
        """Positive integer multiple of :meth:`height`, cheap enough for sort keys."""
        return sum(a * b for a, b in zip(self._height_vec, lam))

    def form(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """W-invariant form with short roots of squared length 2."""
        c = self.to_root_coords(lam)
        return sum((c[k] * mu[k] * self.half_lengths[k] for k in range(self.rank)), Fraction(0))

    # ----- pairings and reflections --------------------------------------
    def pairing(self, lam: Sequence[int], beta: Sequence[int]) -> int:
        """⟨λ, β∨⟩ for a root β given in simple-root coordinates."""
        cv = self.coroot(beta)
        return sum(a * b for a, b in zip(lam, cv))

    def reflect(self, lam: Sequence[int], beta: Sequence[int]) -> Weight:
        k = self.pairing(lam, beta)
        bw = self.root_weight(beta)
        return tuple(a - k * b for a, b in zip(lam, bw))

    def simple_reflect(self, lam: Sequence[int], i: int) -> Weight:
        k = lam[i]
        return tuple(a - k * self.cartan[r][i] for r, a in enumerate(lam))

    def dominant_conjugate(self, lam: Sequence[int]) -> tuple[Weight, int]:
        """Return (w λ dominant, parity of the number of reflections used)."""
        lam = list(lam)
        parity = 0
        while True:
            for i in range(self.rank):
                if lam[i] < 0:
                    k = lam[i]
                    for r in range(self.rank):
                        lam[r] -= k * self.cartan[r][i]
                    parity ^= 1
                    break
            else:
                return tuple(lam), parity

    def dot_dominant(self, lam: Sequence[int]) -> tuple[Weight, int] | None:
        """Dominant μ and sign ε with χ(λ) = ε χ(μ); None when λ+ρ is singular."""
        x = tuple(a + 1 for a in lam)
        dom, parity = self.dominant_conjugate(x)
        if any(c == 0 for c in dom):
            return None
        return tuple(c - 1 for c in dom), (-1 if parity else 1)

    def orbit(self, lam: Sequence[int]) -> tuple[Weight, ...]:
        """The W-orbit of λ, sorted."""
        return _orbit_cached(self.type_letter, self.rank, tuple(lam))

    def weyl_group_order(self) -> int:
        return len(self.orbit(self.rho))

    # ----- convenience wrappers for module-level predicates -------------
    def is_dominant(self, lam: Sequence[int]) -> bool:
        return is_dominant(lam)

    def is_p_restricted(self, lam: Sequence[int], p: int) -> bool:
        return is_p_restricted(lam, p)


@lru_cache(maxsize=200_000)
def _orbit_cached(letter: str, rank: int, start: Weight) -> tuple[Weight, ...]:
    datum = build_root_datum(letter, rank)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for i in range(rank):
            if cur[i] != 0:
                nxt = datum.simple_reflect(cur, i)
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return tuple(sorted(seen))


def neg(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(-c for c in v)


def add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> tuple[int, ...]:
    return tuple(k * x for x in a)


def _invert_integer_matrix(m: list[list[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _height_vector(inv, rank: int) -> tuple[int, ...]:
    cols = [sum((inv[i][j] for i in range(rank)), Fraction(0)) for j in range(rank)]
    den = 1
    for c in cols:
        den = den * c.denominator // _gcd(den, c.denominator)
    return tuple(int(c * den) for c in cols)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def build_root_datum(type_letter: str, rank: int) -> RootDatum:
    """Build the root datum of a simple type, e.g. ``build_root_datum("G", 2)``."""
    letter = type_letter.upper()
    if letter not in VALID_RANKS or not isinstance(rank, int) or not VALID_RANKS[letter](rank):
        raise ValueError(f"invalid simple type {type_letter}{rank}")
    d, edges = _diagram(letter, rank)
    sym = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        sym[i][i] = 2 * d[i]
    for i, j in edges:
        sym[i][j] = sym[j][i] = -max(d[i], d[j])
    cartan = tuple(tuple(sym[i][j] // d[i] for j in range(rank)) for i in range(rank))

    def norm2(b: Sequence[int]) -> int:
        return sum(b[i] * sym[i][j] * b[j] for i in range(rank) for j in range(rank))

    # Closure by root strings: β+α_i is a root iff r - ⟨β,α_i∨⟩ > 0, where
    # r is the length of the α_i-string below β.
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                pair = sum(beta[j] * cartan[i][j] for j in range(rank))
                r = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in found:
                        r += 1
                    else:
                        break
                if r - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
                        ordered.append(up)
        layer = nxt
    ordered.sort(key=lambda b: (sum(b), b))
    max_len = max(norm2(b) for b in ordered)
    lengths = tuple("long" if norm2(b) == max_len else "short" for b in ordered)

    coroots: dict = {}
    for b in ordered:
        nb = norm2(b)
        cv = []
        for j in range(rank):
            num = 2 * b[j] * d[j]
            assert num % nb == 0
            cv.append(num // nb)
        coroots[b] = tuple(cv)
        coroots[neg(b)] = tuple(-c for c in cv)

    inv = _invert_integer_matrix([list(r) for r in cartan])
    highest = max(ordered, key=sum)
    short = [b for b, ln in zip(ordered, lengths) if ln == "short"] or ordered
    highest_short = max(short, key=sum)
    return RootDatum(
        type_letter=letter,
        rank=rank,
        cartan=cartan,
        positive_roots=tuple(ordered),
        root_lengths=lengths,
        rho=(1,) * rank,
        highest_root=highest,
        highest_short_root=highest_short,
        half_lengths=tuple(d),
        _coroots=coroots,
        _inv_cartan=inv,
        _height_vec=_height_vector(inv, rank),
    )


def parse_type(text: str) -> RootDatum:
    """``"G2"`` -> datum."""
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise ValueError(f"cannot parse type {text!r}")
    return build_root_datum(text[0].upper(), int(text[1:]))


# ----- membership predicates ---------------------------------------------

def is_dominant(lam: Sequence[int]) -> bool:
    return all(c >= 0 for c in lam)


def in_X1_prime(lam: Sequence[int], p: int) -> bool:
    return all(c < p for c in lam)


def is_p_restricted(lam: Sequence[int], p: int) -> bool:
    return all(0 <= c < p for c in lam)


def pairing(datum: RootDatum, lam: Sequence[int], beta: Sequence[int]) -> int:
    return datum.pairing(lam, beta)


def dominance_leq(datum: RootDatum, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """μ ≤ λ: λ-μ is a non-negative integer combination of simple roots."""
    c = datum.to_root_coords(sub(lam, mu))
    return all(x.denominator == 1 and x >= 0 for x in c)


def dominant_weights_below(datum: RootDatum, lam: Sequence[int]) -> set[Weight]:
    """All dominant μ ≤ λ, by descent through dominant weights.

    Every dominant μ < λ is joined to λ by a chain of dominant weights with
    positive-root steps, so the search never has to leave X⁺.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError("weight is not dominant")
    return set(_below_cached(datum.type_letter, datum.rank, lam))


@lru_cache(maxsize=4096)
def _below_cached(letter: str, rank: int, lam: Weight) -> frozenset:
    datum = build_root_datum(letter, rank)
    steps = [datum.root_weight(b) for b in datum.positive_roots]
    seen = {lam}
    queue = deque([lam])
    while queue:
        cur = queue.popleft()
        for s in steps:
            nxt = sub(cur, s)
            if nxt not in seen and is_dominant(nxt):
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def sort_dominance(datum: RootDatum, weights: Iterable[Sequence[int]], descending: bool = True) -> list[Weight]:
    """A fixed linear extension of dominance: height, then lexicographic."""
    ws = [tuple(w) for w in weights]
    ws.sort(key=lambda w: (datum.height_key(w), w), reverse=descending)
    return ws


# ----- Levi subsystems and long/short split ------------------------------

@dataclass(frozen=True)
class Levi:
    """A connected Levi subsystem with its standard labelling.

    ``indices[k]`` is the ambient simple root playing the role of the k-th
    simple root of ``datum``.
    """

    datum: RootDatum
    indices: tuple[int, ...]

    def truncate(self, lam: Sequence[int]) -> Weight:
        return tuple(lam[i] for i in self.indices)


def _match_cartan(sub_cartan, std_cartan, n) -> tuple[int, ...] | None:
    """Find σ with sub[σ(i)][σ(j)] == std[i][j]; prefer the identity."""
    ident = tuple(range(n))
    if all(sub_cartan[i][j] == std_cartan[i][j] for i in range(n) for j in range(n)):
        return ident
    assign: list[int] = []

    def extend() -> tuple[int, ...] | None:
        k = len(assign)
        if k == n:
            return tuple(assign)
        for cand in range(n):
            if cand in assign:
                continue
            if sub_cartan[cand][cand] != std_cartan[k][k]:
                continue
            if all(sub_cartan[cand][assign[m]] == std_cartan[k][m] and sub_cartan[assign[m]][cand] == std_cartan[m][k] for m in range(k)):
                assign.append(cand)
                res = extend()
                if res is not None:
                    return res
                assign.pop()
        return None

    return extend()


def levi_subsystem(datum: RootDatum, indices: Iterable[int]) -> Levi:
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("empty index set")
    if any(i < 0 or i >= datum.rank for i in idx):
        raise ValueError("index out of range")
    n = len(idx)
    sub_c = [[datum.cartan[a][b] for b in idx] for a in idx]
    # connectivity
    reach = {0}
    todo = [0]
    while todo:
        a = todo.pop()
        for b in range(n):
            if b not in reach and sub_c[a][b] != 0:
                reach.add(b)
                todo.append(b)
    if len(reach) != n:
        raise ValueError("index set is not connected; only simple Levi factors are supported")
    for letter in "ABCDEFG":
        if not VALID_RANKS[letter](n):
            continue
        std = build_root_datum(letter, n)
        sigma = _match_cartan(sub_c, std.cartan, n)
        if sigma is not None:
            return Levi(std, tuple(idx[s] for s in sigma))
    raise AssertionError("unrecognised Levi subsystem")  # pragma: no cover


def levi_truncate(datum: RootDatum, lam: Sequence[int], indices: Iterable[int]) -> tuple[RootDatum, Weight]:
    """λ_I as a weight of the Levi sub-datum spanned by {α_i : i ∈ I}."""
    lv = levi_subsystem(datum, indices)
    return lv.datum, lv.truncate(lam)


def long_short_sets(datum: RootDatum) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(Δ_ℓ, Δ_s) as 0-based index tuples."""
    if len(set(datum.half_lengths)) == 1:
        raise ValueError(f"{datum.name} is simply laced")
    top = max(datum.half_lengths)
    long_ = tuple(i for i, d in enumerate(datum.half_lengths) if d == top)
    short = tuple(i for i, d in enumerate(datum.half_lengths) if d != top)
    return long_, short


def long_short_split(datum: RootDatum, lam: Sequence[int]) -> tuple[Weight, Weight]:
    """λ = λ_ℓ + λ_s with λ_ℓ vanishing on short simple coroots."""
    long_, short = long_short_sets(datum)
    lam_l = tuple(c if i in long_ else 0 for i, c in enumerate(lam))
    lam_s = tuple(c if i in short else 0 for i, c in enumerate(lam))
    return lam_l, lam_s


# ----- affine linkage ----------------------------------------------------

def alcove_representative(datum: RootDatum, lam: Sequence[int], p: int) -> Weight:
    """Representative of the W_p dot-orbit of λ inside the closed bottom alcove.

    Works on x = λ+ρ with the linear W_p action; returns x (not x-ρ).
    """
    x = [a + 1 for a in lam]
    h = datum.highest_short_root
    hw = datum.root_weight(h)
    hc = datum.coroot(h)
    while True:
        moved = False
        for i in range(datum.rank):
            if x[i] < 0:
                k = x[i]
                for r in range(datum.rank):
                    x[r] -= k * datum.cartan[r][i]
                moved = True
                break
        if moved:
            continue
        top = sum(a * b for a, b in zip(x, hc))
        if top > p:
            k = top - p
            for r in range(datum.rank):
                x[r] -= k * hw[r]
            continue
        return tuple(x)


def linked(datum: RootDatum, lam: Sequence[int], mu: Sequence[int], p: int) -> bool:
    """μ ∈ W_p·λ (affine dot action)."""
    return alcove_representative(datum, lam, p) == alcove_representative(datum, mu, p)


def in_bottom_alcove_closure(datum: RootDatum, lam: Sequence[int], p: int) -> bool:
    """⟨λ+ρ, α̃_0∨⟩ ≤ p, with α̃_0 the highest short root."""
    return datum.pairing(add(lam, datum.rho), datum.highest_short_root) <= p


# ----- text formats ------------------------------------------------------

def format_weight(lam: Sequence[int]) -> str:
    return ",".join(str(c) for c in lam)


def format_symbolic(lam: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(lam):
        if c == 0:
            continue
        coef = "" if c == 1 else ("-" if c == -1 else str(c))
        parts.append(f"{coef}ω{i + 1}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else "+" + part
    return out


def parse_weight(text: str, rank: int) -> Weight:
    """Parse "1,0,2", "ω1+2ω3", "w1+2w3" or "0"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty weight")
    if "ω" not in s and "w" not in s.lower():
        try:
            vals = tuple(int(t) for t in s.split(","))
        except ValueError:
            raise ValueError(f"cannot parse weight {text!r}") from None
        if len(vals) == 1 and rank > 1 and vals[0] == 0:
            return (0,) * rank
        if len(vals) != rank:
            raise ValueError(f"weight {text!r} has {len(vals)} coordinates, expected {rank}")
        return vals
    s = s.replace("W", "ω").replace("w", "ω")
    out = [0] * rank
    import re

    terms = re.findall(r"([+-]?)(\d*)ω(\d+)", s)
    if re.sub(r"([+-]?)(\d*)ω(\d+)", "", s) not in ("", "+"):
        raise ValueError(f"cannot parse weight {text!r}")
    for sign, coef, idx in terms:
        k = int(coef) if coef else 1
        if sign == "-":
            k = -k
        i = int(idx)
        if not 1 <= i <= rank:
            raise ValueError(f"index ω{i} out of range for rank {rank}")
        out[i - 1] += k
    return tuple(out)
