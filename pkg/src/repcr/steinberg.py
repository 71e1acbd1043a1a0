"""Steinberg digits, twisted tensor products and the long/short factorisation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .charbox import Character, frobenius_twist, tensor
from .rootsys import RootDatum, Weight, is_dominant, is_p_restricted, long_short_split


@dataclass(frozen=True)
class DigitDecomposition:
    digits: tuple[Weight, ...]
    p: int

    def reassemble(self) -> Weight:
        rank = len(self.digits[0])
        out = [0] * rank
        for i, d in enumerate(self.digits):
            for j in range(rank):
                out[j] += self.p**i * d[j]
        return tuple(out)


def p_digits(lam: Sequence[int], p: int) -> DigitDecomposition:
    """Coordinatewise base-p digits; at least one digit, no trailing zeros."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError("weight is not dominant")
    digits = []
    cur = list(lam)
    while True:
        digits.append(tuple(c % p for c in cur))
        cur = [c // p for c in cur]
        if not any(cur):
            break
    return DigitDecomposition(tuple(digits), p)


def pad_digits(a: DigitDecomposition, b: DigitDecomposition) -> tuple[list[Weight], list[Weight]]:
    """Digit lists of equal length (zero-padded)."""
    n = max(len(a.digits), len(b.digits))
    zero = tuple(0 for _ in a.digits[0])
    da = list(a.digits) + [zero] * (n - len(a.digits))
    db = list(b.digits) + [zero] * (n - len(b.digits))
    return da, db


def steinberg_simple_char(datum: RootDatum, lam: Sequence[int], p: int, engine=None) -> Character:
    """Π_i (ch L(λ_i))^{[i]} over the p-digits of λ."""
    from .jantzen import engine_for

    eng = engine or engine_for(datum, p)
    out = Character({datum.zero(): 1})
    for i, digit in enumerate(p_digits(lam, p).digits):
        if not any(digit):
            continue
        ch = eng.simple_character(digit)
        out = tensor(out, frobenius_twist(ch, p**i))
    return out


_REFINED = {("B", 2), ("C", 2), ("F", 2), ("G", 3)}


def refined_factorization_applies(type_letter: str, p: int) -> bool:
    """True exactly for B_n, C_n, F_4 at p=2 and G_2 at p=3."""
    return (type_letter.upper(), p) in _REFINED


@dataclass(frozen=True)
class RefinedSplit:
    long_part: Weight
    short_part: Weight
    certificate: str


def refined_split(datum: RootDatum, lam: Sequence[int], p: int) -> RefinedSplit:
    """λ = λ_ℓ + λ_s with L(λ) ≅ L(λ_ℓ)⊗L(λ_s) for p-restricted λ."""
    if not refined_factorization_applies(datum.type_letter, p):
        raise ValueError(f"refined factorisation does not apply to {datum.name} at p={p}")
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError("weight is not dominant")
    lam_l, lam_s = long_short_split(datum, lam)
    cert = f"L({_fmt(lam)}) = L({_fmt(lam_l)}) (x) L({_fmt(lam_s)})"
    return RefinedSplit(lam_l, lam_s, cert)


def refined_character_identity(datum: RootDatum, lam: Sequence[int], p: int) -> bool:
    """Check ch L(λ) = ch L(λ_ℓ)·ch L(λ_s) exactly, via the Jantzen engine."""
    from .jantzen import engine_for

    if not is_p_restricted(lam, p):
        raise ValueError("weight is not p-restricted")
    eng = engine_for(datum, p)
    sp = refined_split(datum, lam, p)
    return eng.simple_character(lam) == tensor(eng.simple_character(sp.long_part), eng.simple_character(sp.short_part))


def _fmt(w: Sequence[int]) -> str:
    return ",".join(str(c) for c in w)
