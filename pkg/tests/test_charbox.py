import itertools

import pytest
from hypothesis import given, strategies as st

from repcr.charbox import (
    decompose_into_weyl,
    dominant_weights_of_dim_at_most,
    frobenius_twist,
    gf_mults,
    tensor,
    weyl_character,
    weyl_character_alternating,
    weyl_dim,
)
from repcr.rootsys import build_root_datum

G2 = build_root_datum("G", 2)
A1 = build_root_datum("A", 1)


def test_dimensions():
    assert weyl_dim(G2, (1, 0)) == 7
    assert weyl_dim(G2, (0, 1)) == 14
    assert weyl_dim(build_root_datum("A", 3), (0, 1, 0)) == 6
    for n in range(2, 9):
        omega2 = (0, 1) + (0,) * (n - 2)
        assert weyl_dim(build_root_datum("A", n), omega2) == n * (n + 1) // 2
    assert weyl_dim(build_root_datum("E", 8), (0,) * 7 + (1,)) == 248


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)])
def test_character_mass_is_weyl_dim(key):
    d = build_root_datum(*key)
    for lam in dominant_weights_of_dim_at_most(d, 300):
        assert sum(weyl_character(d, lam).values()) == weyl_dim(d, lam)


def test_a1_clebsch_gordan():
    for b, d in itertools.product(range(6), repeat=2):
        prod = tensor(weyl_character(A1, (b,)), weyl_character(A1, (d,)))
        assert decompose_into_weyl(A1, prod) == {(b + d - 2 * r,): 1 for r in range(min(b, d) + 1)}


def test_good_filtration_examples():
    a3 = build_root_datum("A", 3)
    assert decompose_into_weyl(a3, tensor(weyl_character(a3, (1, 0, 0)), weyl_character(a3, (0, 0, 1)))) == {(1, 0, 1): 1, (0, 0, 0): 1}
    a6 = build_root_datum("A", 6)
    w2, w4 = (0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0)
    assert decompose_into_weyl(a6, tensor(weyl_character(a6, w2), weyl_character(a6, w4))) == {
        (0, 1, 0, 1, 0, 0): 1, (1, 0, 0, 0, 1, 0): 1, (0, 0, 0, 0, 0, 1): 1}
    assert gf_mults(G2, (1, 0), (1, 0))[(0, 1)] == 1


def test_frobenius_twist_scales():
    ch = weyl_character(G2, (1, 0))
    tw = frobenius_twist(ch, 3)
    assert sum(tw.values()) == 7
    assert set(tw) == {(3 * a, 3 * b) for a, b in ch}


def test_decompose_rejects_non_weyl_positive():
    with pytest.raises(ValueError):
        decompose_into_weyl(A1, {(0,): -1})


@given(st.sampled_from([("A", 2), ("B", 2), ("G", 2), ("A", 3)]), st.data())
def test_gf_mults_match_character_product(key, data):
    d = build_root_datum(*key)
    small = dominant_weights_of_dim_at_most(d, 60)
    lam, mu = data.draw(st.sampled_from(small)), data.draw(st.sampled_from(small))
    direct = decompose_into_weyl(d, tensor(weyl_character(d, lam), weyl_character(d, mu)))
    assert gf_mults(d, lam, mu) == direct


@given(st.sampled_from([("A", 3), ("B", 3), ("C", 2), ("G", 2)]), st.data())
def test_freudenthal_vs_alternating(key, data):
    d = build_root_datum(*key)
    lam = data.draw(st.sampled_from(dominant_weights_of_dim_at_most(d, 400)))
    assert weyl_character(d, lam) == weyl_character_alternating(d, lam)


@given(st.sampled_from([("A", 2), ("G", 2), ("B", 3)]), st.data())
def test_character_weyl_invariant(key, data):
    d = build_root_datum(*key)
    lam = data.draw(st.sampled_from(dominant_weights_of_dim_at_most(d, 200)))
    ch = weyl_character(d, lam)
    for i in range(d.rank):
        assert all(ch.get(d.simple_reflect(w, i)) == m for w, m in ch.items())
