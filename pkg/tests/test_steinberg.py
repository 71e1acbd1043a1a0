import itertools

import pytest
from hypothesis import given, strategies as st

from repcr.charbox import frobenius_twist
from repcr.jantzen import simple_character
from repcr.rootsys import build_root_datum, is_p_restricted
from repcr.steinberg import (
    p_digits,
    pad_digits,
    refined_character_identity,
    refined_factorization_applies,
    refined_split,
    steinberg_simple_char,
)

G2 = build_root_datum("G", 2)

weights = st.lists(st.integers(0, 200), min_size=1, max_size=6)


@given(weights, st.sampled_from([2, 3, 5, 7]))
def test_digits_reassemble(lam, p):
    d = p_digits(lam, p)
    assert d.reassemble() == tuple(lam)
    assert all(is_p_restricted(x, p) for x in d.digits)
    assert len(d.digits) == 1 or any(d.digits[-1])


@given(weights, weights, st.sampled_from([2, 3]))
def test_pad_digits_equal_length(a, b, p):
    n = min(len(a), len(b))
    da, db = pad_digits(p_digits(a[:n], p), p_digits(b[:n], p))
    assert len(da) == len(db) == max(len(p_digits(a[:n], p).digits), len(p_digits(b[:n], p).digits))


def test_negative_weight_rejected():
    with pytest.raises(ValueError):
        p_digits((1, -1), 2)


def test_twisted_product():
    ch = steinberg_simple_char(G2, (2, 0), 2)
    assert ch == frobenius_twist(simple_character(G2, (1, 0), 2), 2)
    assert ch.mass() == 6
    assert steinberg_simple_char(G2, (3, 1), 2).mass() == 64 * 6
    assert steinberg_simple_char(G2, (1, 1), 3) == simple_character(G2, (1, 1), 3)


def test_refined_applicability():
    hits = {(t, p) for t in "ABCDEFG" for p in (2, 3, 5) if refined_factorization_applies(t, p)}
    assert hits == {("B", 2), ("C", 2), ("F", 2), ("G", 3)}
    with pytest.raises(ValueError):
        refined_split(G2, (1, 1), 2)


def test_refined_split_g2_p3():
    sp = refined_split(G2, (2, 1), 3)
    assert (sp.long_part, sp.short_part) == ((0, 1), (2, 0))
    assert "(x)" in sp.certificate


@pytest.mark.parametrize("letter,rank,p", [("G", 2, 3), ("B", 2, 2), ("C", 3, 2), ("B", 3, 2), ("C", 2, 2)])
def test_refined_character_identity(letter, rank, p):
    d = build_root_datum(letter, rank)
    for lam in itertools.product(range(p), repeat=rank):
        assert refined_character_identity(d, lam, p), lam
