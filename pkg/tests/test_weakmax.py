import math
import os

import numpy as np
import pytest

from repcr import weakmax
from repcr.charbox import dominant_weights_of_dim_at_most, weyl_character
from repcr.jantzen import simple_character
from repcr.rootsys import add, build_root_datum, neg
from repcr.weakmax import (
    contravariant_gram,
    local_gram_multiplicity,
    local_simple_multiplicity,
    simple_dominant_multiplicities,
    simple_interval_dims,
    hom_simple_dim,
    hom_weyl_dim,
    induced_module,
    is_cr_g,
    is_cr_g1,
    natural_module,
    simple_module,
    suprunenko_check,
    tensor_of_simples,
    weyl_module,
)

G2 = build_root_datum("G", 2)
A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
B2 = build_root_datum("B", 2)

SMALL = [(A2, (1, 1), 3), (A2, (2, 1), 2), (B2, (1, 1), 3), (G2, (1, 0), 2), (G2, (0, 1), 3), (G2, (1, 1), 5)]


@pytest.mark.parametrize("datum,lam,p", SMALL)
def test_weight_grading(datum, lam, p):
    assert weyl_module(datum, lam, p).character() == dict(weyl_character(datum, lam))
    assert simple_module(datum, lam, p).character() == dict(simple_character(datum, lam, p))


@pytest.mark.parametrize("datum,lam,p", SMALL)
def test_torus_binomials(datum, lam, p):
    v = weyl_module(datum, lam, p)
    for i in range(datum.rank):
        diag = np.diag(v.binom_h(i, 2))
        for w in v.weights:
            o = v.offset[w]
            assert diag[o] == math.comb(w[i], 2) % p if w[i] >= 0 else diag[o] == (w[i] * (w[i] - 1) // 2) % p


@pytest.mark.parametrize("datum,lam,p", SMALL)
def test_simple_root_commutators(datum, lam, p):
    v = weyl_module(datum, lam, p)
    for i in range(datum.rank):
        a = datum.simple_root(i)
        e, f = v.matrix(a), v.matrix(neg(a))
        assert np.array_equal((e @ f - f @ e) % p, v.binom_h(i, 1) % p)
        for j in range(datum.rank):
            if j != i:
                assert not ((e @ v.matrix(neg(datum.simple_root(j))) - v.matrix(neg(datum.simple_root(j))) @ e) % p).any()


def test_divided_powers():
    v = weyl_module(A1, (4,), 5)
    a = A1.simple_root(0)
    for r in range(2, 5):
        lhs = np.linalg.matrix_power(v.matrix(a), r) % 5
        assert np.array_equal(lhs, (math.factorial(r) * v.matrix(a, r)) % 5)


@pytest.mark.parametrize("datum,lam,p", SMALL)
def test_gram_contravariance(datum, lam, p):
    v = weyl_module(datum, lam, p)
    for mu in v.weights:
        g = contravariant_gram(datum, lam, p, mu)
        assert np.array_equal(g, g.T)
    assert contravariant_gram(datum, lam, p, tuple(lam)).tolist() == [[1]]


def test_induced_is_dual():
    d = induced_module(A1, (2,), 2)
    assert d.character() == weyl_module(A1, (2,), 2).character()
    # Δ(2) has socle L(0) at p=2; ∇(2) has socle L(2)
    assert hom_weyl_dim(weyl_module(A1, (2,), 2), (0,)) == 1
    assert hom_weyl_dim(d, (0,)) == 0 and hom_weyl_dim(d, (2,)) == 1
    assert not is_cr_g(weyl_module(A1, (2,), 2))


def test_natural_and_spin_modules():
    assert natural_module("G", 2, 3).dim == 7
    assert natural_module("A", 4, 2).dim == 5
    assert natural_module("C", 3, 2).dim == 6
    assert natural_module("B", 3, 2, spin=True).dim == 8
    with pytest.raises(ValueError):
        natural_module("A", 3, 2, spin=True)
    with pytest.raises(NotImplementedError):
        natural_module("E", 6, 2)


def test_cr_oracles_small_cases():
    t = tensor_of_simples(A1, (1,), (1,), 2)
    assert not is_cr_g(t) and not is_cr_g1(t)
    t = tensor_of_simples(A1, (1,), (1,), 3)
    assert is_cr_g(t) and is_cr_g1(t)
    t = tensor_of_simples(G2, (1, 0), (0, 1), 2)
    assert not is_cr_g(t)
    # Δ(2ω1) maps in, but L(2ω1) is not a submodule
    assert (hom_weyl_dim(t, (2, 0)), hom_simple_dim(t, (2, 0))) == (1, 0)
    assert (hom_weyl_dim(t, (1, 1)), hom_simple_dim(t, (1, 1))) == (1, 1)
    assert not is_cr_g1(t)
    assert is_cr_g(simple_module(G2, (1, 1), 3))


def test_suprunenko():
    assert suprunenko_check(G2, (1, 1), 5, (1, 1), 0)
    assert suprunenko_check(A2, (2, 1), 3, (2, 1), 1)
    with pytest.raises(ValueError):
        suprunenko_check(G2, (1, 0), 3, (1, 0), 0)
    with pytest.raises(ValueError):
        suprunenko_check(A2, (2, 1), 3, (0, 2), 0)


def test_cache_dir_byte_identity(tmp_path, monkeypatch):
    monkeypatch.setenv("REPCR_CACHE_DIR", str(tmp_path))
    weakmax.clear_caches()
    fresh = weyl_module(G2, (1, 0), 2).to_bytes()
    files = sorted(os.listdir(tmp_path))
    assert files
    weakmax.clear_caches()
    assert weyl_module(G2, (1, 0), 2).to_bytes() == fresh
    first = (tmp_path / files[0]).read_bytes()
    for f in files:
        os.remove(tmp_path / f)
    weakmax.clear_caches()
    weyl_module(G2, (1, 0), 2)
    assert (tmp_path / files[0]).read_bytes() == first
    weakmax.clear_caches()


def test_caps():
    with pytest.raises(MemoryError):
        weyl_module(G2, (3, 3), 2, cap=100)
    with pytest.raises(MemoryError):
        is_cr_g(tensor_of_simples(A2, (1, 1), (1, 1), 3), cap=10)


@pytest.mark.parametrize("letter,rank,ps", [("A", 2, (2, 3)), ("G", 2, (2, 3, 5)), ("B", 2, (2, 3)), ("C", 3, (2,)), ("A", 3, (2, 3))])
def test_direct_fp_construction_matches_gram(letter, rank, ps):
    d = build_root_datum(letter, rank)
    zero = (0,) * rank
    for p in ps:
        for lam in dominant_weights_of_dim_at_most(d, 200):
            got = simple_interval_dims(d, lam, p, zero)
            assert {w: m for w, m in got.items() if min(w) >= 0} == simple_dominant_multiplicities(d, lam, p), (lam, p)


def test_local_multiplicity_routes_agree():
    a5 = build_root_datum("A", 5)
    lam = (0, 1, 0, 1, 0)
    for nu in [(1, 0, 0, 0, 1), (0, 0, 0, 1, 0), (1, 0, 1, 0, 0)]:
        assert local_simple_multiplicity(a5, lam, 2, nu) == local_gram_multiplicity(a5, lam, 2, nu)
