"""Reproduction suites: every documented example as a named, tagged check."""

from __future__ import annotations

import itertools
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import crtools, modp, weakmax
from .charbox import decompose_into_weyl, frobenius_twist, gf_mults, tensor, weyl_character
from .jantzen import jantzen_sum, simple_character, simple_tensor_comp_factors, weyl_comp_factors
from .rootsys import (
    build_root_datum,
    format_weight,
    in_bottom_alcove_closure,
    is_p_restricted,
    levi_subsystem,
    levi_truncate,
    long_short_sets,
    long_short_split,
    pairing,
)
from .steinberg import p_digits, refined_factorization_applies, refined_split, refined_character_identity, steinberg_simple_char


@dataclass(frozen=True)
class Check:
    id: str
    expected: Any
    provenance: str
    run: Callable[[], Any]


@dataclass
class CheckResult:
    id: str
    expected: Any
    actual: Any
    passed: bool
    provenance: str
    seconds: float
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "expected": plain(self.expected),
            "actual": plain(self.actual),
            "pass": self.passed,
            "provenance": self.provenance,
            "seconds": round(self.seconds, 3),
            "error": self.error,
        }


@dataclass
class SuiteReport:
    suite: str
    results: list[CheckResult]
    wall_time: float
    rule_counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "pass": self.passed,
            "wall_time": round(self.wall_time, 3),
            "checks": [r.to_json() for r in self.results],
            "rule_counts": dict(sorted(self.rule_counts.items())),
        }


def plain(x):
    if isinstance(x, tuple):
        return [plain(c) for c in x]
    if isinstance(x, list):
        return [plain(c) for c in x]
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


# ----- helpers ----------------------------------------------------------------

G2 = build_root_datum("G", 2)
C3 = build_root_datum("C", 3)
F4 = build_root_datum("F", 4)


def _A(n):
    return build_root_datum("A", n)


def _B(n):
    return build_root_datum("B", n)


def _fund(n, *idx):
    """Sum of ω_i over the given 1-based indices."""
    out = [0] * n
    for i in idx:
        out[i - 1] += 1
    return tuple(out)


def _cert(v: crtools.CRVerdict) -> tuple[str, str | None]:
    return (v.verdict, v.rule)


def _factors(datum, lam, mu, p) -> dict:
    return simple_tensor_comp_factors(datum, lam, mu, p).factors


def _is_simple_weyl(datum, lam, p) -> bool:
    return weyl_comp_factors(datum, lam, p).factors == {tuple(lam): 1}


def _summands(v: crtools.CRVerdict):
    return sorted((format_weight(w), m) for w, m in v.summands or [])


def _g2_dominant_below_alpha0(bound: int) -> list:
    # dominant δ ≠ 0 with ⟨δ,α_0∨⟩ = a + 2b < bound
    return [(a, b) for a in range(bound) for b in range(bound) if 0 < a + 2 * b < bound]


def _gf_zero_beyond(lam, mu, threshold: int) -> bool:
    mults = gf_mults(G2, lam, mu)
    return all(m == 0 for w, m in mults.items() if w[0] >= threshold)


def _alcove_formula_agrees(p: int) -> bool:
    return all(
        in_bottom_alcove_closure(G2, (a, b), p) == (2 * a + 3 * b + 5 <= p)
        for a in range(p + 1)
        for b in range(p + 1)
    )


def _weakly_maximal_raising(datum, lam, mu, p) -> bool:
    v = weakmax.tensor_of_simples(datum, lam, mu, p)
    top = tuple(a + b for a, b in zip(lam, mu))
    for w in v.weights:
        basis = weakmax.weakly_maximal_vectors(v, w)
        for vec in basis:
            step = weakmax.raise_weakly_maximal(v, w, vec)
            if (step is None) != (w == top):
                return False
    return True


def _component_lemma(datum, lam, mu, p) -> bool:
    """Projections of weakly maximal vectors to L(λ)_λ⊗L(μ)_{δ−λ} and L(λ)_{δ−μ}⊗L(μ)_μ are injective."""
    v = weakmax.tensor_of_simples(datum, lam, mu, p)
    for w in v.weights:
        basis = weakmax.weakly_maximal_vectors(v, w)
        if basis.shape[0] == 0:
            continue
        for w1 in (tuple(lam), tuple(a - b for a, b in zip(w, mu))):
            proj = np.array([v.component(vec, w, w1).ravel() for vec in basis])
            if proj.shape[1] == 0 or modp.rank(proj, p) != basis.shape[0]:
                return False
    return True


def _top_generates_nonsimple(datum, lam, mu, p) -> bool:
    v = weakmax.tensor_of_simples(datum, lam, mu, p)
    top = tuple(a + b for a, b in zip(lam, mu))
    vec = weakmax.weakly_maximal_vectors(v, top)[0]
    return not weakmax.generates_simple_g1(v, top, vec)


def _suprunenko_all(datum, lam, p, alpha_index) -> bool:
    mod = weakmax.simple_module(datum, lam, p)
    ok = True
    for delta in mod.weights:
        coords = datum.to_root_coords(tuple(a - b for a, b in zip(lam, delta)))
        if coords[alpha_index] != 0 or delta[alpha_index] < 0:
            continue
        ok = ok and weakmax.suprunenko_check(datum, lam, p, delta, alpha_index)
    return ok


def _raises(fn) -> str:
    try:
        fn()
    except ValueError:
        return "error"
    return "no error"


def _spin_check(n: int):
    v = weakmax.natural_module("B", n, 2, spin=True)
    orbit = set(v.datum.orbit(v.datum.omega(n - 1)))
    return (v.dim, all(w in orbit for w in v.weights))


def _natural_exhaustive(nmax: int) -> bool:
    for n in range(1, nmax + 1):
        for mu in itertools.product((0, 1), repeat=n):
            if crtools.natural_tensor_cr(mu, 2).is_cr != crtools.closed_form_natural_cr(mu):
                return False
    return True


# ----- suites -------------------------------------------------------------------

def _g2p2() -> list[Check]:
    w1, w2 = (1, 0), (0, 1)
    return [
        Check("g2p2.roots", (6, (3, 2)), "PAPER", lambda: (len(G2.positive_roots), G2.highest_root)),
        Check("g2p2.pairing_alpha0", 2 + 2 * 5, "PAPER", lambda: pairing(G2, (2, 5), G2.highest_root)),
        Check("g2p2.long_short", ((1,), (0,)), "PAPER", lambda: long_short_sets(G2)),
        Check("g2p2.split_2w1+w2", ((0, 1), (2, 0)), "PAPER", lambda: long_short_split(G2, (2, 1))),
        Check("g2p2.factor_L(2w2)", True, "PAPER", lambda: (0, 2) in _factors(G2, w1, w2, 2)),
        Check("g2p2.factor_L(2w1)", True, "DERIVED", lambda: (2, 0) in _factors(G2, w1, w2, 2)),
        Check("g2p2.sum_rule_silent", "Unknown", "PAPER", lambda: crtools.necessary_sum_restricted(w1, w2, 2).verdict),
        Check("g2p2.sum_w1_w1", ("NotCR", "sum_not_restricted"), "DERIVED", lambda: _cert(crtools.decide_cr(G2, w1, w1, 2))),
        Check("g2p2.frobenius_witness", "0,1", "PAPER",
              lambda: format_weight(crtools.frobenius_factor_obstruction(G2, w1, w2, 2).witness["delta"])),
        Check("g2p2.decide", ("NotCR", "frobenius_factor"), "PAPER", lambda: _cert(crtools.decide_cr(G2, w1, w2, 2))),
        Check("g2p2.not_cr_over_g1", False, "PAPER", lambda: weakmax.is_cr_g1(weakmax.tensor_of_simples(G2, w1, w2, 2))),
    ]


def _g2p5() -> list[Check]:
    five = [(1, 0), (2, 0), (3, 0), (0, 1), (1, 1)]
    out = [
        Check(f"g2p5.weyl_simple_{format_weight(d)}", (True, True), "PAPER",
              lambda d=d: (_is_simple_weyl(G2, d, 5), not any(jantzen_sum(G2, d, 5).values())))
        for d in five
    ]
    out += [
        Check("g2p5.five_weights", sorted(five), "PAPER", lambda: sorted(_g2_dominant_below_alpha0(4))),
        Check("g2p5.inequalities", "NotCR", "PAPER", lambda: crtools.g2_inequalities((1, 1), (1, 1), 5).verdict),
        Check("g2p5.decide", ("NotCR", "g2_inequalities"), "PAPER", lambda: _cert(crtools.decide_cr(G2, (1, 1), (1, 1), 5))),
        Check("g2p5.alcove_formula", True, "PAPER", lambda: _alcove_formula_agrees(5)),
    ]
    return out


def _g2p7() -> list[Check]:
    return [
        Check("g2p7.jantzen_2w1", (True, True), "PAPER",
              lambda: (any(jantzen_sum(G2, (2, 0), 7).values()), jantzen_sum(G2, (2, 0), 7).get((0, 0), 0) != 0)),
        Check("g2p7.L0_in_weyl_2w1", True, "PAPER", lambda: (0, 0) in weyl_comp_factors(G2, (2, 0), 7).factors),
        Check("g2p7.unique_delta1", [(2, 0)], "PAPER",
              lambda: [d for d in _g2_dominant_below_alpha0(4) if (0, 0) in weyl_comp_factors(G2, d, 7).factors]),
        Check("g2p7.alcove_2w1", False, "PAPER", lambda: in_bottom_alcove_closure(G2, (2, 0), 7)),
        Check("g2p7.alcove_formula", True, "PAPER", lambda: _alcove_formula_agrees(7)),
        Check("g2p7.gf_5w1_6w2", True, "PAPER", lambda: _gf_zero_beyond((5, 0), (0, 6), 14)),
        Check("g2p7.gf_6w1_6w2", True, "PAPER", lambda: _gf_zero_beyond((6, 0), (0, 6), 14)),
    ]


def _g2p3() -> list[Check]:
    w1, w2 = (1, 0), (0, 1)
    return [
        Check("g2p3.dims", (7, 7), "PAPER", lambda: (sum(simple_character(G2, w1, 3).values()), sum(simple_character(G2, w2, 3).values()))),
        Check("g2p3.factor_L(3w1)", True, "PAPER", lambda: (3, 0) in _factors(G2, w2, w2, 3)),
        Check("g2p3.factor_L(3w2)", True, "PAPER", lambda: (0, 3) in _factors(G2, (1, 2), w1, 3)),
        Check("g2p3.nonrestricted_factors", [(5, 0)], "PAPER",
              lambda: sorted(w for w in _factors(G2, (2, 1), w2, 3) if not is_p_restricted(w, 3))),
        Check("g2p3.nabla_w2_nonsimple", True, "PAPER", lambda: sum(weakmax.radical_dims(G2, w2, 3).values()) > 0),
        Check("g2p3.weyl_w2_nonsimple", False, "DERIVED", lambda: _is_simple_weyl(G2, w2, 3)),
        Check("g2p3.gf_w1_w1_contains_w2", 1, "PAPER", lambda: gf_mults(G2, w1, w1).get(w2, 0)),
        Check("g2p3.refined_applies", True, "PAPER", lambda: refined_factorization_applies("G", 3)),
        Check("g2p3.refined_split", ((0, 1), (1, 0)), "PAPER",
              lambda: (refined_split(G2, (1, 1), 3).long_part, refined_split(G2, (1, 1), 3).short_part)),
        Check("g2p3.refined_identity", True, "PAPER", lambda: refined_character_identity(G2, (1, 1), 3)),
        Check("g2p3.classifier_split", ("CR", [("2,1", 1)]), "PAPER",
              lambda: (lambda v: (v.verdict, _summands(v)))(crtools.smallprime_classifier(G2, 3, w2, (2, 0)))),
        Check("g2p3.classifier_char_identity", True, "PAPER",
              lambda: tensor(simple_character(G2, w2, 3), simple_character(G2, (2, 0), 3)) == simple_character(G2, (2, 1), 3)),
        Check("g2p3.decide_w1+2w2_w1", "NotCR", "PAPER", lambda: crtools.decide_cr(G2, (1, 2), w1, 3).verdict),
        Check("g2p3.frobenius_w2_w2", "1,0", "PAPER",
              lambda: format_weight(crtools.frobenius_factor_obstruction(G2, w2, w2, 3).witness["delta"])),
        Check("g2p3.serre", "NotCR", "PAPER",
              lambda: crtools.serre_propagation(7, crtools.decide_cr(G2, w2, w2, 3), 3).verdict),
        Check("g2p3.serre_p_divides", "Unknown", "PAPER",
              lambda: crtools.serre_propagation(6, crtools.decide_cr(G2, w2, w2, 3), 3).verdict),
        Check("g2p3.digits_A1_3", ((1,), (1,)), "PAPER", lambda: p_digits((3,), 2).digits),
    ]


def _c3p2() -> list[Check]:
    w1, w2 = (1, 0, 0), (0, 1, 0)
    return [
        Check("c3p2.roots", 9, "PAPER", lambda: len(C3.positive_roots)),
        Check("c3p2.multiplicity_L(w1)", 2, "PAPER", lambda: _factors(C3, w1, w2, 2).get(w1, 0)),
        Check("c3p2.hom_weyl_dim", 1, "PAPER",
              lambda: weakmax.hom_weyl_dim(weakmax.tensor_modules(weakmax.induced_module(C3, w1, 2), weakmax.induced_module(C3, w2, 2)), w1)),
        Check("c3p2.classifier", "NotCR", "PAPER", lambda: crtools.smallprime_classifier(C3, 2, w1, w2).verdict),
        Check("c3p2.multiplicity_free_silent", "Unknown", "PAPER", lambda: crtools.multiplicity_free_test(C3, w1, w2, 2).verdict),
        Check("c3p2.oracle", "NotCR", "DERIVED", lambda: crtools.oracle_check(C3, w1, w2, 2)),
    ]


def _anp2() -> list[Check]:
    out = [
        Check(f"anp2.dim_L(w2)_n{n}", n * (n + 1) // 2, "PAPER", lambda n=n: sum(simple_character(_A(n), _fund(n, 2), 2).values()))
        for n in range(2, 9)
    ]
    out += [
        Check(f"anp2.nabla_w1+wn_n{n}", n % 2 == 0, "PAPER", lambda n=n: _is_simple_weyl(_A(n), _fund(n, 1, n), 2))
        for n in range(2, 8)
    ]
    out += [
        Check(f"anp2.nabla_w2+wn-1_n{n}", n % 4 == 2, "PAPER", lambda n=n: _is_simple_weyl(_A(n), _fund(n, 2, n - 1), 2))
        for n in range(4, 9)
    ]
    out += [
        Check("anp2.odd_n_contains_L0", True, "PAPER", lambda: (0, 0, 0) in weyl_comp_factors(_A(3), _fund(3, 1, 3), 2).factors),
        Check("anp2.good_filtration_w1_w3", {(1, 0, 1): 1, (0, 0, 0): 1}, "PAPER",
              lambda: decompose_into_weyl(_A(3), tensor(weyl_character(_A(3), _fund(3, 1)), weyl_character(_A(3), _fund(3, 3))))),
        Check("anp2.good_filtration_w2_w4", {_fund(6, 2, 4): 1, _fund(6, 1, 5): 1, _fund(6, 6): 1}, "PAPER",
              lambda: decompose_into_weyl(_A(6), tensor(weyl_character(_A(6), _fund(6, 2)), weyl_character(_A(6), _fund(6, 4))))),
        Check("anp2.partition_shape", (2, 2, 1, 1, 0, 0), "PAPER", lambda: crtools.pi_of_weight(_fund(5, 2, 4))),
        Check("anp2.one_conormal", True, "PAPER",
              lambda: all(1 in crtools.conormal_set(crtools.pi_of_weight(mu), 2) for mu in itertools.product((0, 1), repeat=5))),
        Check("anp2.cogood_even", [1, 3], "PAPER", lambda: crtools.cogood_set(crtools.pi_of_weight(_fund(6, 2, 4)), 2)),
        Check("anp2.natural_w2", ("CR", [("0,0,1,0", 1), ("1,1,0,0", 1)]), "PAPER",
              lambda: (lambda v: (v.verdict, _summands(v)))(crtools.natural_tensor_cr(_fund(4, 2), 2))),
        Check("anp2.natural_w3", "NotCR", "PAPER", lambda: crtools.natural_tensor_cr(_fund(4, 3), 2).verdict),
        Check("anp2.natural_closed_form_n6", True, "PAPER", lambda: _natural_exhaustive(6)),
        Check("anp2.case3_w2_w9", ("CR", "an_p2_case3"), "PAPER", lambda: _cert(crtools.an_p2_classifier(_fund(9, 2), _fund(9, 9)))),
        Check("anp2.w2_w7", "NotCR", "PAPER", lambda: crtools.an_p2_classifier(_fund(9, 2), _fund(9, 7)).verdict),
        Check("anp2.case1_w1_w2+w4", ("CR", "an_p2_case1"), "PAPER", lambda: _cert(crtools.an_p2_classifier(_fund(5, 1), _fund(5, 2, 4)))),
        Check("anp2.multiplicity_free_w2_w5", "CR", "PAPER", lambda: crtools.multiplicity_free_test(_A(8), _fund(8, 2), _fund(8, 5), 2).verdict),
        Check("anp2.decide_A9", "CR", "PAPER", lambda: crtools.decide_cr(_A(9), _fund(9, 2), _fund(9, 9), 2).verdict),
        Check("anp2.trivial_A1", ("CR", "trivial"), "TRIVIAL", lambda: _cert(crtools.decide_cr(_A(1), (0,), (1,), 2))),
        Check("anp2.reduction", ("CR", "reduction"), "DERIVED", lambda: _cert(crtools.decide_cr(_A(2), (1, 2), (2, 1), 2))),
    ]
    return out


def _bnp2() -> list[Check]:
    b3 = _B(3)
    return [
        Check("bnp2.refined_applies", True, "PAPER", lambda: refined_factorization_applies("B", 2)),
        Check("bnp2.split_w3", ((0, 0, 0), (0, 0, 1)), "PAPER", lambda: long_short_split(b3, (0, 0, 1))),
        Check("bnp2.split_l'+wn", ((1, 1, 0, 0), (0, 0, 0, 1)), "PAPER",
              lambda: (lambda s: (s.long_part, s.short_part))(refined_split(_B(4), (1, 1, 0, 1), 2))),
        Check("bnp2.twist_2w3", (8, True), "PAPER",
              lambda: (lambda ch: (sum(ch.values()), ch == frobenius_twist(simple_character(b3, (0, 0, 1), 2), 2)))(
                  steinberg_simple_char(b3, (0, 0, 2), 2))),
        Check("bnp2.minuscule_wn", True, "PAPER",
              lambda: all(simple_character(_B(n), _fund(n, n), 2) == weyl_character(_B(n), _fund(n, n)) for n in (2, 3, 4))),
        Check("bnp2.levi_truncate", ("A3", (1, 0, 1)), "PAPER",
              lambda: (lambda r: (r[0].name, r[1]))(levi_truncate(_B(4), (1, 0, 1, 0), [0, 1, 2]))),
        Check("bnp2.levi_rule", ("NotCR", "levi"), "PAPER", lambda: _cert(crtools.decide_cr(_B(4), (1, 0, 1, 0), (0, 1, 0, 0), 2))),
        Check("bnp2.case_analysis", ("NotCR", "bn_p2_case3"), "DERIVED", lambda: _cert(crtools.decide_cr(_B(4), (0, 1, 0, 0), (0, 0, 1, 0), 2))),
        Check("bnp2.spin_module", (8, True), "PAPER", lambda: _spin_check(3)),
        Check("bnp2.suprunenko_excluded", "error", "PAPER",
              lambda: _raises(lambda: weakmax.suprunenko_check(b3, (0, 0, 1), 2, (0, 0, 1), 2))),
    ]


def _f4p2() -> list[Check]:
    return [
        Check("f4p2.long_short", ((0, 1), (2, 3)), "PAPER", lambda: long_short_sets(F4)),
        Check("f4p2.levi_type", "C3", "PAPER", lambda: levi_subsystem(F4, [1, 2, 3]).datum.name),
        Check("f4p2.classifier_split", "CR", "PAPER", lambda: crtools.smallprime_classifier(F4, 2, (1, 1, 0, 0), (0, 0, 1, 0)).verdict),
        Check("f4p2.levi_to_c3", ("NotCR", "levi"), "PAPER", lambda: _cert(crtools.levi_propagation(F4, (0, 0, 0, 1), (0, 0, 1, 0), 2, [1, 2, 3]))),
    ]


def _weakmax() -> list[Check]:
    a2 = _A(2)
    return [
        Check("weakmax.natural_dims", [4, 7, 6, 7], "DERIVED",
              lambda: [weakmax.natural_module(t, n, p).dim for t, n, p in (("A", 3, 2), ("B", 3, 3), ("C", 3, 2), ("G", 2, 3))]),
        Check("weakmax.simple_g2_w1", 7, "PAPER", lambda: weakmax.simple_module(G2, (1, 0), 3).dim),
        Check("weakmax.radical_g2_w2", True, "PAPER", lambda: sum(weakmax.radical_dims(G2, (0, 1), 3).values()) > 0),
        Check("weakmax.A1_L1_L1", False, "DERIVED", lambda: weakmax.is_cr_g(weakmax.tensor_of_simples(_A(1), (1,), (1,), 2))),
        Check("weakmax.schur", (1, 1), "TRIVIAL",
              lambda: (lambda v: (weakmax.hom_weyl_dim(v, (1, 1)), weakmax.hom_simple_dim(v, (1, 1))))(weakmax.simple_module(a2, (1, 1), 3))),
        Check("weakmax.raising", True, "PAPER", lambda: _weakly_maximal_raising(a2, (1, 1), (1, 0), 3)),
        Check("weakmax.component_lemma", True, "PAPER", lambda: _component_lemma(a2, (1, 1), (1, 0), 3)),
        Check("weakmax.top_nonsimple", True, "PAPER", lambda: _top_generates_nonsimple(a2, (1, 0), (1, 0), 2)),
        Check("weakmax.suprunenko_top", True, "PAPER", lambda: weakmax.suprunenko_check(a2, (2, 1), 3, (2, 1), 0)),
        Check("weakmax.suprunenko_all", True, "DERIVED", lambda: _suprunenko_all(a2, (2, 1), 3, 0)),
        Check("weakmax.oracle_rule", ("NotCR", "weakmax_oracle"), "DERIVED",
              lambda: _cert(crtools.decide_cr(a2, (0, 1), (1, 0), 3, crtools.DeciderConfig(oracle=True)))),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "g2p2": _g2p2,
    "g2p5": _g2p5,
    "g2p7": _g2p7,
    "g2p3": _g2p3,
    "c3p2": _c3p2,
    "anp2": _anp2,
    "bnp2": _bnp2,
    "f4p2": _f4p2,
    "weakmax": _weakmax,
}

# rules every full run must fire at least once
REQUIRED_RULES = (
    "an_p2_classifier",
    "frobenius_factor",
    "g2_inequalities",
    "levi",
    "multiplicity_free",
    "natural_tensor",
    "reduction",
    "refined_steinberg",
    "serre",
    "smallprime_classification",
    "sum_not_restricted",
    "trivial",
    "weakmax_oracle",
)


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def checks_for(name: str) -> list[Check]:
    if name == "all":
        return [c for make in SUITES.values() for c in make()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    return SUITES[name]()


def _run_one(check: Check) -> CheckResult:
    t0 = time.perf_counter()
    try:
        actual = check.run()
        err = None
    except Exception as exc:  # a crashing check is a failing check
        actual, err = None, f"{type(exc).__name__}: {exc}"
    passed = err is None and actual == check.expected
    return CheckResult(check.id, check.expected, actual, passed, check.provenance, time.perf_counter() - t0, err)


def run_suite(name: str, jobs: int = 1) -> SuiteReport:
    checks = checks_for(name)
    before = Counter(crtools.RULE_COUNTS)
    t0 = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, checks))
    else:
        results = [_run_one(c) for c in checks]
    fired = crtools.RULE_COUNTS - before
    if name == "all":
        missing = [r for r in REQUIRED_RULES if not fired.get(r)]
        results.append(CheckResult("all.rule_coverage", [], missing, not missing, "TRIVIAL", 0.0))
    return SuiteReport(name, results, time.perf_counter() - t0, dict(fired))


__all__ = ["Check", "CheckResult", "REQUIRED_RULES", "SUITES", "SuiteReport", "checks_for", "run_suite", "suite_names"]
