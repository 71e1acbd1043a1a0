import itertools

import pytest
from hypothesis import given, strategies as st

from repcr.crtools import (
    CR,
    NOT_CR,
    UNKNOWN,
    CRVerdict,
    an_p2_classifier,
    closed_form_natural_cr,
    cogood_set,
    conormal_set,
    decide_cr,
    g2_inequalities,
    hom_simple_set,
    hom_weyl_set,
    increasing_injection_exists,
    is_addable,
    is_removable,
    levi_propagation,
    natural_tensor_cr,
    necessary_sum_restricted,
    oracle_check,
    pi_of_weight,
    serre_propagation,
    weight_of_partition,
)
from repcr.rootsys import build_root_datum

G2 = build_root_datum("G", 2)


def _brute_injection(src, dst):
    src = sorted(src)
    return any(all(s < t for s, t in zip(src, combo)) and len(set(combo)) == len(combo)
               for combo in itertools.permutations(sorted(dst), len(src))) if len(src) <= len(dst) else False


@given(st.lists(st.integers(1, 12), max_size=5, unique=True), st.lists(st.integers(1, 12), max_size=6, unique=True))
def test_greedy_injection_matches_brute_force(src, dst):
    assert increasing_injection_exists(src, dst) == _brute_injection(src, dst)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=7))
def test_partition_round_trip(mu):
    lam = pi_of_weight(mu)
    assert lam[-1] == 0 and len(lam) == len(mu) + 1
    assert weight_of_partition(lam) == tuple(mu)


def test_partition_examples():
    assert pi_of_weight((0, 1, 0)) == (1, 1, 0, 0)
    assert pi_of_weight((1, 0, 1)) == (2, 1, 1, 0)
    lam = (2, 1, 1, 0)
    assert [i for i in range(1, 5) if is_addable(lam, i)] == [1, 2, 4]
    assert [i for i in range(1, 5) if is_removable(lam, i)] == [1, 3, 4]
    with pytest.raises(IndexError):
        is_addable(lam, 5)
    with pytest.raises(ValueError):
        pi_of_weight((1, 0), n=3)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=7), st.sampled_from([2, 3, 5]))
def test_cogood_within_conormal(mu, p):
    lam = pi_of_weight(mu)
    assert set(cogood_set(lam, p)) <= set(conormal_set(lam, p))
    assert hom_simple_set(mu, p) == cogood_set(lam, p)
    assert hom_weyl_set(mu, p) == conormal_set(lam, p)


def test_natural_closed_form_exhaustive():
    for n in range(1, 9):
        for mu in itertools.product((0, 1), repeat=n):
            assert natural_tensor_cr(mu, 2).is_cr == closed_form_natural_cr(mu), mu


@pytest.mark.parametrize("n", [2, 3])
def test_natural_tensor_against_oracle(n):
    d = build_root_datum("A", n)
    om1 = (1,) + (0,) * (n - 1)
    for mu in itertools.product((0, 1), repeat=n):
        assert natural_tensor_cr(mu, 2).verdict == oracle_check(d, om1, mu, 2), mu


def test_an_p2_examples():
    v = an_p2_classifier((0, 1, 0, 0, 0, 0, 0, 0, 0), (0,) * 8 + (1,))
    assert (v.verdict, v.rule) == (CR, "an_p2_case3")
    v = an_p2_classifier((1, 0, 0), (0, 1, 0))
    assert (v.verdict, v.rule) == (CR, "an_p2_case1")
    assert {w for w, _ in v.summands} == {(1, 1, 0), (0, 0, 1)}
    v = an_p2_classifier((1, 0, 0), (1, 0, 0))
    assert v.verdict == NOT_CR
    assert an_p2_classifier((0, 0), (1, 1)).rule == "trivial"
    with pytest.raises(ValueError):
        an_p2_classifier((2, 0), (0, 1))


def test_decide_is_symmetric():
    for n in (2, 3):
        d = build_root_datum("A", n)
        ws = list(itertools.product((0, 1, 2), repeat=n))
        for lam, mu in itertools.combinations(ws, 2):
            a, b = decide_cr(d, lam, mu, 2), decide_cr(d, mu, lam, 2)
            assert a.verdict == b.verdict and a.rule == b.rule
            assert a.pair == (lam, mu) and b.pair == (mu, lam)


def test_g2_p2_frobenius_certificate():
    v = decide_cr(G2, (1, 0), (0, 1), 2)
    assert v.verdict == NOT_CR and v.rule == "frobenius_factor"
    assert v.witness["delta"] == (1, 0)


def test_reduction_over_digits():
    d = build_root_datum("A", 2)
    v = decide_cr(d, (2, 0), (0, 2), 2)
    assert v.rule == "reduction" and len(v.digits) == 2
    assert v.verdict == decide_cr(d, (1, 0), (0, 1), 2).verdict


def test_necessary_sum():
    assert necessary_sum_restricted((1, 0), (1, 0), 2).verdict == NOT_CR
    assert necessary_sum_restricted((1, 0), (0, 1), 2).verdict == UNKNOWN


def test_g2_inequalities():
    with pytest.raises(ValueError):
        g2_inequalities((1, 0), (0, 1), 3)
    assert g2_inequalities((2, 1), (1, 1), 5).verdict == NOT_CR
    assert g2_inequalities((1, 0), (0, 1), 5).verdict == UNKNOWN
    assert g2_inequalities((5, 0), (1, 0), 7).verdict == UNKNOWN


def test_serre_propagation():
    bad = CRVerdict(NOT_CR, "frobenius_factor", None)
    assert serre_propagation(7, bad, 2).rule == "serre"
    assert serre_propagation(6, bad, 2).verdict == UNKNOWN
    good = CRVerdict(CR, "trivial", None)
    assert serre_propagation(7, good, 2) is good


def test_levi_rule():
    b4 = build_root_datum("B", 4)
    v = levi_propagation(b4, (1, 0, 1, 0), (0, 1, 0, 0), 2)
    assert v.verdict == NOT_CR and v.rule == "levi"


def test_verdict_json_round_trip():
    out = decide_cr(G2, (1, 0), (0, 1), 2).to_json()
    assert out["verdict"] == NOT_CR and out["certificate"]["rule"] == "frobenius_factor"
