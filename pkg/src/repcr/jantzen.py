"""Composition factors of Weyl modules and simple characters at small rank.

The engine works in the Weyl-character basis: a character is a dict
dominant weight -> integer coefficient of χ(δ).  Decomposition numbers
[Δ(λ):L(μ)] come from the Jantzen sum formula when every coefficient of the
sum, rewritten over simple characters, is 0 or 1.  Otherwise the
contravariant-form rank of an explicit Weyl module decides (see
:mod:`repcr.weakmax`), and if that is out of reach the entry stays
undetermined.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .charbox import (
    Character,
    combination_to_character,
    decompose_into_weyl,
    dominant_multiplicities,
    multiply_combinations,
    weyl_dim,
)
from .rootsys import (
    RootDatum,
    Weight,
    add,
    format_weight,
    in_bottom_alcove_closure as _in_alcove,
    is_dominant,
    is_p_restricted,
    linked,
    scale,
    sort_dominance,
)


class _Undetermined:
    """Marker for a multiplicity the engine could not pin down."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Undetermined"

    def __reduce__(self):
        return (_Undetermined, ())


Undetermined = _Undetermined()


class UndeterminedError(RuntimeError):
    """Raised when a character depends on an undetermined multiplicity."""

    def __init__(self, weight: Weight, message: str = ""):
        self.weight = weight
        super().__init__(message or f"blocked at weight {format_weight(weight)}")


@dataclass
class DecompositionResult:
    weight: Weight
    p: int
    factors: dict = field(default_factory=dict)
    determined: bool = True
    method: str = "sum-formula"

    def multiplicity(self, mu: Sequence[int]) -> int:
        m = self.factors.get(tuple(mu), 0)
        if m is Undetermined:
            raise UndeterminedError(tuple(mu))
        return m

    def to_json(self, datum: RootDatum) -> dict:
        items = sort_dominance(datum, self.factors)
        return {
            "weight": format_weight(self.weight),
            "p": self.p,
            "factors": [[format_weight(w), "undetermined" if self.factors[w] is Undetermined else self.factors[w]] for w in items],
            "determined": self.determined,
        }


def in_bottom_alcove_closure(datum: RootDatum, lam: Sequence[int], p: int) -> bool:
    return _in_alcove(datum, lam, p)


def _nu_p(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def jantzen_sum_weyl(datum: RootDatum, lam: Sequence[int], p: int) -> dict[Weight, int]:
    """Σ_{i>0} ch Δ^i(λ) as a signed combination of Weyl characters."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError("weight is not dominant")
    lr = add(lam, datum.rho)
    out: dict[Weight, int] = defaultdict(int)
    for beta in datum.positive_roots:
        n = datum.pairing(lr, beta)
        bw = datum.root_weight(beta)
        mp = p
        while mp < n:
            mu = tuple(a - (n - mp) * b for a, b in zip(lam, bw))
            hit = datum.dot_dominant(mu)
            if hit is not None:
                out[hit[0]] += hit[1] * _nu_p(mp, p)
            mp += p
    return {w: c for w, c in out.items() if c}


def jantzen_sum(datum: RootDatum, lam: Sequence[int], p: int) -> Character:
    return combination_to_character(datum, jantzen_sum_weyl(datum, lam, p))


# ----- engine ------------------------------------------------------------

# Explicit Weyl modules above this dimension are not built by the fallback.
DEFAULT_GRAM_CAP = 3000


class JantzenEngine:
    """Memoised decomposition numbers for one (datum, p)."""

    def __init__(self, datum: RootDatum, p: int, gram_cap: int = DEFAULT_GRAM_CAP):
        self.datum = datum
        self.p = p
        self.gram_cap = gram_cap
        self._decomp: dict[Weight, DecompositionResult] = {}
        self._simple: dict[Weight, dict[Weight, int]] = {}
        self._lock = threading.RLock()

    # decomposition numbers ------------------------------------------------
    def weyl_comp_factors(self, lam: Sequence[int]) -> DecompositionResult:
        lam = tuple(lam)
        hit = self._decomp.get(lam)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._decomp.get(lam)
            if hit is None:
                hit = self._compute(lam)
                self._decomp[lam] = hit
            return hit

    def _compute(self, lam: Weight) -> DecompositionResult:
        datum, p = self.datum, self.p
        if not is_dominant(lam):
            raise ValueError("weight is not dominant")
        if in_bottom_alcove_closure(datum, lam, p):
            return DecompositionResult(lam, p, {lam: 1}, True, "bottom-alcove")
        js = jantzen_sum_weyl(datum, lam, p)
        if not js:
            return DecompositionResult(lam, p, {lam: 1}, True, "sum-formula")
        coeff: dict[Weight, int] = defaultdict(int)
        blocked = False
        stuck: list[Weight] = []
        for mu in sort_dominance(datum, js):
            sub = self.weyl_comp_factors(mu)
            if not sub.determined:
                blocked = True
                stuck = [nu for nu, m in sub.factors.items() if m is Undetermined]
                break
            for nu, m in sub.factors.items():
                coeff[nu] += js[mu] * m
        if not blocked:
            if any(c < 0 for c in coeff.values()):  # pragma: no cover - would contradict the sum formula
                raise ArithmeticError(f"negative Jantzen coefficient for {lam}")
            if all(c <= 1 for c in coeff.values()):
                factors = {lam: 1}
                factors.update({nu: 1 for nu, c in coeff.items() if c})
                for nu in factors:
                    assert linked(datum, lam, nu, p), (lam, nu)
                return DecompositionResult(lam, p, factors, True, "sum-formula")
        gram = self._gram_fallback(lam)
        if gram is None and not blocked:
            gram = self._local_fallback(lam, coeff)
        if gram is not None:
            return gram
        factors: dict = {lam: 1}
        for nu, c in coeff.items():
            if c == 1 and not blocked:
                factors[nu] = 1
            elif c:
                factors[nu] = Undetermined
        for nu in stuck:
            factors[nu] = Undetermined
        return DecompositionResult(lam, p, factors, False, "partial")

    def _gram_fallback(self, lam: Weight) -> DecompositionResult | None:
        """Decide [Δ(λ):L(ν)] from ch L(λ) read off a contravariant Gram matrix."""
        datum, p = self.datum, self.p
        if weyl_dim(datum, lam) > self.gram_cap:
            return None
        try:
            from .weakmax import simple_dominant_multiplicities
        except ImportError:  # pragma: no cover
            return None
        try:
            dom = simple_dominant_multiplicities(datum, lam, p)
        except (NotImplementedError, MemoryError):
            return None
        simple_l = decompose_into_weyl(datum, dom, allow_negative=True)
        # χ(λ) - ch L(λ) = Σ_{ν<λ} [Δ(λ):L(ν)] ch L(ν); peel off from the top
        rest = defaultdict(int)
        rest[lam] += 1
        for w, c in simple_l.items():
            rest[w] -= c
        rest = {w: c for w, c in rest.items() if c}
        factors = {lam: 1}
        while rest:
            top = sort_dominance(datum, rest)[0]
            c = rest[top]
            if c < 0:  # pragma: no cover
                raise ArithmeticError(f"Gram rank gave a negative multiplicity at {top}")
            factors[top] = c
            row = self.simple_weyl_combination(top, restricted_only=False)
            for w, m in row.items():
                v = rest.get(w, 0) - c * m
                if v:
                    rest[w] = v
                else:
                    rest.pop(w, None)
        return DecompositionResult(lam, p, factors, True, "gram-rank")

    def _local_fallback(self, lam: Weight, coeff: dict[Weight, int]) -> DecompositionResult | None:
        """Resolve sum-formula coefficients ≥ 2 one weight at a time, top down.

        dim Δ(λ)_ν = Σ_ν' [Δ(λ):L(ν')] dim L(ν')_ν, and dim L(λ)_ν comes from
        building L(λ) over F_p on the weights between ν and λ only.
        """
        from .weakmax import local_simple_multiplicity

        datum, p = self.datum, self.p
        weyl_lam = dominant_multiplicities(datum, lam)
        factors: dict[Weight, int] = {lam: 1}
        try:
            for nu in sort_dominance(datum, [w for w, c in coeff.items() if c]):
                c = coeff[nu]
                if c == 1:
                    factors[nu] = 1
                    continue
                lower = sum(m * self.simple_weight_multiplicity(w, nu) for w, m in factors.items() if w != lam)
                m = weyl_lam.get(nu, 0) - local_simple_multiplicity(datum, lam, p, nu) - lower
                if not 0 < m <= c:  # pragma: no cover - would contradict the sum formula
                    raise ArithmeticError(f"local F_p build gave [Δ({lam}):L({nu})] = {m} against coefficient {c}")
                factors[nu] = m
        except (UndeterminedError, MemoryError):
            return None
        return DecompositionResult(lam, p, factors, True, "local-fp")

    def simple_weight_multiplicity(self, lam: Sequence[int], nu: Sequence[int]) -> int:
        """dim L(λ)_ν for dominant ν."""
        nu = tuple(nu)
        return sum(c * dominant_multiplicities(self.datum, w).get(nu, 0) for w, c in self.simple_combination_any(lam).items())

    # simple characters ----------------------------------------------------
    def simple_weyl_combination(self, lam: Sequence[int], restricted_only: bool = False) -> dict[Weight, int]:
        """ch L(λ) in the Weyl basis, from decomposition numbers."""
        lam = tuple(lam)
        hit = self._simple.get(lam)
        if hit is not None:
            return hit
        with self._lock:
            res = self.weyl_comp_factors(lam)
            if not res.determined:
                blocker = next(w for w, m in res.factors.items() if m is Undetermined)
                raise UndeterminedError(blocker, f"[Δ({format_weight(lam)}):L({format_weight(blocker)})] undetermined")
            row: dict[Weight, int] = defaultdict(int)
            row[lam] += 1
            for nu, m in res.factors.items():
                if nu == lam or not m:
                    continue
                for w, c in self.simple_weyl_combination(nu).items():
                    row[w] -= m * c
            out = {w: c for w, c in row.items() if c}
            self._simple[lam] = out
            return out

    def simple_character(self, lam: Sequence[int]) -> Character:
        """ch L(λ); non-restricted weights go through Steinberg's digits."""
        lam = tuple(lam)
        if is_p_restricted(lam, self.p):
            return combination_to_character(self.datum, self.simple_weyl_combination(lam))
        from .steinberg import steinberg_simple_char

        return steinberg_simple_char(self.datum, lam, self.p, engine=self)

    def simple_combination_any(self, lam: Sequence[int]) -> dict[Weight, int]:
        """ch L(λ) in the Weyl basis for any dominant λ (Steinberg for non-restricted)."""
        lam = tuple(lam)
        if is_p_restricted(lam, self.p):
            return self.simple_weyl_combination(lam)
        key = ("st",) + lam
        hit = self._simple.get(key)
        if hit is None:
            hit = decompose_into_weyl(self.datum, self.simple_character(lam), allow_negative=True)
            self._simple[key] = hit
        return hit

    def simple_dim(self, lam: Sequence[int]) -> int:
        return self.simple_character(lam).mass()

    # tensor products ------------------------------------------------------
    def tensor_comp_factors(self, lam: Sequence[int], mu: Sequence[int]) -> DecompositionResult:
        """Composition factors of L(λ)⊗L(μ) by greedy subtraction of simple characters."""
        lam, mu = tuple(lam), tuple(mu)
        datum = self.datum
        try:
            prod = multiply_combinations(datum, self.simple_combination_any(lam), self.simple_combination_any(mu))
        except UndeterminedError as exc:
            return DecompositionResult(add(lam, mu), self.p, {exc.weight: Undetermined}, False, "blocked")
        rest = dict(prod)
        factors: dict = {}
        while rest:
            top = sort_dominance(datum, rest)[0]
            c = rest[top]
            if c < 0:  # pragma: no cover
                raise ArithmeticError("tensor product character is not a sum of simple characters")
            try:
                row = self.simple_combination_any(top)
            except UndeterminedError:
                factors[top] = Undetermined
                return DecompositionResult(add(lam, mu), self.p, factors, False, "blocked")
            factors[top] = c
            for w, m in row.items():
                v = rest.get(w, 0) - c * m
                if v:
                    rest[w] = v
                else:
                    rest.pop(w, None)
        return DecompositionResult(add(lam, mu), self.p, factors, True, "greedy")


_ENGINES: dict[tuple[str, int, int], JantzenEngine] = {}
_ENGINES_LOCK = threading.Lock()


def engine_for(datum: RootDatum, p: int) -> JantzenEngine:
    key = (datum.type_letter, datum.rank, p)
    with _ENGINES_LOCK:
        eng = _ENGINES.get(key)
        if eng is None:
            eng = JantzenEngine(datum, p)
            _ENGINES[key] = eng
        return eng


def weyl_comp_factors(datum: RootDatum, lam: Sequence[int], p: int) -> DecompositionResult:
    return engine_for(datum, p).weyl_comp_factors(lam)


def simple_character(datum: RootDatum, lam: Sequence[int], p: int) -> Character:
    return engine_for(datum, p).simple_character(lam)


def simple_tensor_comp_factors(datum: RootDatum, lam: Sequence[int], mu: Sequence[int], p: int) -> DecompositionResult:
    return engine_for(datum, p).tensor_comp_factors(lam, mu)


def restricted_factors_only(res: DecompositionResult, p: int) -> bool:
    return all(is_p_restricted(w, p) for w in res.factors)


def frobenius_witness(res: DecompositionResult, p: int) -> Weight | None:
    """Some δ≠0 with L(pδ) among the factors, if any."""
    for w in res.factors:
        if any(w) and all(c % p == 0 for c in w):
            return tuple(c // p for c in w)
    return None


def weyl_char_of_simple(datum: RootDatum, lam: Sequence[int], p: int) -> Mapping[Weight, int]:
    return engine_for(datum, p).simple_weyl_combination(lam)


__all__ = [
    "DecompositionResult",
    "JantzenEngine",
    "Undetermined",
    "UndeterminedError",
    "engine_for",
    "frobenius_witness",
    "in_bottom_alcove_closure",
    "jantzen_sum",
    "jantzen_sum_weyl",
    "simple_character",
    "simple_tensor_comp_factors",
    "weyl_comp_factors",
    "scale",
]
