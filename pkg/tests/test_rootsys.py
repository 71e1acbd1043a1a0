import itertools

import pytest
from hypothesis import given, strategies as st

from repcr.rootsys import (
    build_root_datum,
    dominance_leq,
    dominant_weights_below,
    format_symbolic,
    in_bottom_alcove_closure,
    is_dominant,
    is_p_restricted,
    in_X1_prime,
    levi_subsystem,
    levi_truncate,
    long_short_sets,
    long_short_split,
    pairing,
    parse_type,
    parse_weight,
)

CLASSICAL_COUNTS = {("A", 3): 6, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}
TYPES = [("A", 1), ("A", 2), ("A", 4), ("B", 2), ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("D", 5), ("E", 6), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("key,count", CLASSICAL_COUNTS.items())
def test_positive_root_counts(key, count):
    assert len(build_root_datum(*key).positive_roots) == count


@pytest.mark.parametrize("key", TYPES)
def test_datum_invariants(key):
    d = build_root_datum(*key)
    assert all(d.cartan[i][i] == 2 for i in range(d.rank))
    roots = set(d.positive_roots)
    for a, b in itertools.product(roots, repeat=2):
        s = tuple(x + y for x, y in zip(a, b))
        assert (s in roots) == d.is_root(s)
    for b in roots:
        assert all(h >= c for h, c in zip(d.highest_root, b))
    assert d.rho == (1,) * d.rank


def test_g2_conventions():
    g = build_root_datum("G", 2)
    assert g.highest_root == (3, 2)
    assert long_short_sets(g) == ((1,), (0,))
    assert pairing(g, (4, 7), g.highest_root) == 4 + 2 * 7
    assert long_short_split(g, (2, 1)) == ((0, 1), (2, 0))


def test_a1_and_c3():
    a1 = build_root_datum("A", 1)
    assert [list(r) for r in a1.cartan] == [[2]]
    assert len(a1.positive_roots) == 1
    assert len(build_root_datum("C", 3).positive_roots) == 9


def test_long_short_labelling():
    assert long_short_sets(build_root_datum("B", 3)) == ((0, 1), (2,))
    assert long_short_sets(build_root_datum("C", 3)) == ((2,), (0, 1))
    assert long_short_sets(build_root_datum("F", 4)) == ((0, 1), (2, 3))
    assert long_short_split(build_root_datum("B", 3), (0, 0, 1)) == ((0, 0, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        long_short_sets(build_root_datum("A", 3))


def test_invalid_types():
    for t, n in (("B", 1), ("D", 3), ("E", 5), ("F", 3), ("G", 3), ("H", 2)):
        with pytest.raises(ValueError):
            build_root_datum(t, n)


def test_predicates():
    assert is_dominant((0, 2)) and not is_dominant((1, -1))
    assert is_p_restricted((1, 2), 3) and not is_p_restricted((3, 0), 3)
    assert in_X1_prime((2, 2), 3) and not in_X1_prime((3, 0), 3)


def test_dominance_and_below():
    a2 = build_root_datum("A", 2)
    assert dominance_leq(a2, (0, 0), (1, 1))
    assert not dominance_leq(a2, (1, 0), (0, 1))
    assert dominant_weights_below(a2, (2, 2)) == {(2, 2), (3, 0), (0, 3), (1, 1), (0, 0)}
    with pytest.raises(ValueError):
        dominant_weights_below(a2, (-1, 0))


def test_levi():
    assert levi_truncate(build_root_datum("B", 4), (1, 0, 1, 0), [0, 1, 2])[0].name == "A3"
    lv = levi_subsystem(build_root_datum("F", 4), [1, 2, 3])
    assert lv.datum.name == "C3"
    assert lv.truncate((0, 0, 0, 1)) == (1, 0, 0)
    with pytest.raises(ValueError):
        levi_subsystem(build_root_datum("A", 4), [0, 2])


def test_alcove_g2_formula():
    g = build_root_datum("G", 2)
    for p in (5, 7, 11):
        for a, b in itertools.product(range(8), repeat=2):
            assert in_bottom_alcove_closure(g, (a, b), p) == (2 * a + 3 * b + 5 <= p)


def test_parsing():
    assert parse_type("g2").name == "G2"
    assert parse_weight("ω1+2ω3", 3) == (1, 0, 2)
    assert parse_weight("w2", 2) == (0, 1)
    assert parse_weight("0", 4) == (0, 0, 0, 0)
    assert parse_weight("1,0,2", 3) == (1, 0, 2)
    assert format_symbolic((1, 0, 2)) == "ω1+2ω3"
    for bad in ("1,0", "x", "ω5"):
        with pytest.raises(ValueError):
            parse_weight(bad, 3)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_pairing_linear(x, y):
    g = build_root_datum("G", 2)
    s = tuple(a + b for a, b in zip(x, y))
    for beta in g.positive_roots:
        assert pairing(g, s, beta) == pairing(g, x, beta) + pairing(g, y, beta)


@given(st.sampled_from(TYPES[:8]), st.data())
def test_orbit_has_one_dominant(key, data):
    d = build_root_datum(*key)
    lam = tuple(data.draw(st.lists(st.integers(0, 2), min_size=d.rank, max_size=d.rank)))
    orbit = d.orbit(lam)
    assert [w for w in orbit if is_dominant(w)] == [lam]
