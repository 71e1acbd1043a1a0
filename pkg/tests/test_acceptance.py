"""Acceptance criteria 1-12, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly:
    python3 tests/test_acceptance.py
"""

import functools
import itertools
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))
from conftest import ACCEPTANCE  # noqa: E402

from repcr import crtools, suites, weakmax  # noqa: E402
from repcr.charbox import (  # noqa: E402
    decompose_into_weyl,
    dominant_weights_of_dim_at_most,
    gf_mults,
    tensor,
    weyl_character,
    weyl_character_alternating,
)
from repcr.jantzen import (  # noqa: E402
    jantzen_sum,
    simple_character,
    simple_tensor_comp_factors,
    weyl_comp_factors,
)
from repcr.rootsys import build_root_datum, is_p_restricted, long_short_split  # noqa: E402

G2 = build_root_datum("G", 2)
C3 = build_root_datum("C", 3)


def _A(n):
    return build_root_datum("A", n)


def _fund(n, *idx):
    out = [0] * n
    for i in idx:
        out[i - 1] += 1
    return tuple(out)


def _dim(datum, lam, p):
    return sum(simple_character(datum, lam, p).values())


def _simple_weyl(datum, lam, p):
    return weyl_comp_factors(datum, lam, p).factors == {tuple(lam): 1}


@functools.cache
def _sweep(letter, rank, p, cap=400):
    """Restricted pairs (λ ≤ μ, both non-zero) with dim L(λ)·dim L(μ) ≤ cap."""
    d = build_root_datum(letter, rank)
    ws = [w for w in itertools.product(range(p), repeat=rank) if any(w)]
    dim = {w: _dim(d, w, p) for w in ws}
    return d, [(a, b) for a, b in itertools.combinations_with_replacement(ws, 2) if dim[a] * dim[b] <= cap]


AN_SWEEP = [("A", 2, 2), ("A", 3, 2), ("A", 4, 2)]
EXTRA_SWEEP = [("C", 2, 2), ("G", 2, 2), ("G", 2, 3), ("A", 2, 3)]


# each criterion returns a list of (label, ok) sub-checks

def criterion_1():
    f = simple_tensor_comp_factors(G2, (1, 0), (0, 1), 2)
    v = crtools.decide_cr(G2, (1, 0), (0, 1), 2)
    return [
        ("L(2w2) in L(w1)(x)L(w2)", (0, 2) in f.factors),
        ("decide_cr NotCR via frobenius_factor", (v.verdict, v.rule) == (crtools.NOT_CR, "frobenius_factor")),
    ]


def criterion_2():
    five = [(a, b) for a in range(4) for b in range(4) if 0 < a + 2 * b < 4]
    p7 = [d for d in five if (0, 0) in weyl_comp_factors(G2, d, 7).factors]
    return [
        ("five weights", len(five) == 5),
        ("p=5 Weyl modules simple", all(_simple_weyl(G2, d, 5) and not any(jantzen_sum(G2, d, 5).values()) for d in five)),
        ("p=7 L(0) in Weyl(2w1)", (0, 0) in weyl_comp_factors(G2, (2, 0), 7).factors),
        ("p=7 unique", p7 == [(2, 0)]),
    ]


def criterion_3():
    out = []
    for lam, mu in (((5, 0), (0, 6)), ((6, 0), (0, 6))):
        m = gf_mults(G2, lam, mu)
        out.append((f"gf {lam} {mu}", all(v == 0 for w, v in m.items() if w[0] >= 14)))
    return out


def criterion_4():
    w1, w2 = (1, 0), (0, 1)
    nonres = sorted(w for w in simple_tensor_comp_factors(G2, (2, 1), w2, 3).factors if not is_p_restricted(w, 3))
    ok_split = True
    for lam, mu in itertools.product(itertools.product(range(3), repeat=2), repeat=2):
        if not any(lam) or not any(mu):
            continue
        v = crtools.smallprime_classifier(G2, 3, lam, mu)
        shape = any(long_short_split(G2, a)[0] == a and long_short_split(G2, b)[1] == b for a, b in ((lam, mu), (mu, lam)))
        if (v.verdict == crtools.CR) != shape:
            ok_split = False
        if shape:
            s = tuple(x + y for x, y in zip(lam, mu))
            ok_split &= tensor(simple_character(G2, lam, 3), simple_character(G2, mu, 3)) == simple_character(G2, s, 3)
    return [
        ("L(3w1) in L(w2)(x)L(w2)", (3, 0) in simple_tensor_comp_factors(G2, w2, w2, 3).factors),
        ("L(3w2) in L(w1+2w2)(x)L(w1)", (0, 3) in simple_tensor_comp_factors(G2, (1, 2), w1, 3).factors),
        ("L(5w1) unique non-restricted", nonres == [(5, 0)]),
        ("dims 7,7", (_dim(G2, w1, 3), _dim(G2, w2, 3)) == (7, 7)),
        ("nabla(w2) non-simple", sum(weakmax.radical_dims(G2, w2, 3).values()) > 0),
        ("classifier iff long/short shape, character identity", ok_split),
    ]


def criterion_5():
    w1, w2 = (1, 0, 0), (0, 1, 0)
    nab = weakmax.tensor_modules(weakmax.induced_module(C3, w1, 2), weakmax.induced_module(C3, w2, 2))
    return [
        ("[L(w1)(x)L(w2):L(w1)] = 2", simple_tensor_comp_factors(C3, w1, w2, 2).multiplicity(w1) == 2),
        ("hom_weyl_dim = 1", weakmax.hom_weyl_dim(nab, w1) == 1),
        ("classifier NotCR", crtools.smallprime_classifier(C3, 2, w1, w2).verdict == crtools.NOT_CR),
    ]


def criterion_6():
    exhaustive = all(
        crtools.natural_tensor_cr(mu, 2).is_cr == crtools.closed_form_natural_cr(mu)
        for n in range(1, 11)
        for mu in itertools.product((0, 1), repeat=n)
    )
    remark = True
    for n in range(1, 9):
        d = _A(n)
        nat = simple_character(d, _fund(n, 1), 2)
        for mu in itertools.product((0, 1), repeat=n):
            if not any(mu) or not crtools.closed_form_natural_cr(mu):
                continue
            i1 = [i + 1 for i, c in enumerate(mu) if c][0]
            top = tuple(c + (k == 0) for k, c in enumerate(mu))
            other = list(mu)
            other[i1 - 1] -= 1
            if i1 < n:
                other[i1] += 1
            remark &= tensor(nat, simple_character(d, mu, 2)) == simple_character(d, top, 2) + simple_character(d, tuple(other), 2)
    return [("exhaustive n<=10", exhaustive), ("remark characters n<=8", remark)]


def criterion_7():
    return [
        ("nabla(w1+wn) simple iff n even", all(_simple_weyl(_A(n), _fund(n, 1, n), 2) == (n % 2 == 0) for n in range(2, 8))),
        ("nabla(w2+wn-1) simple iff n=2 mod 4", all(_simple_weyl(_A(n), _fund(n, 2, n - 1), 2) == (n % 4 == 2) for n in range(4, 9))),
        ("dim L(w2)", all(_dim(_A(n), _fund(n, 2), 2) == n * (n + 1) // 2 for n in range(2, 9))),
    ]


def _module(d, a, b, p):
    return weakmax.tensor_of_simples(d, a, b, p)


def criterion_8():
    out = []
    for case in AN_SWEEP:
        d, pairs = _sweep(*case)
        bad = [(a, b) for a, b in pairs if crtools.an_p2_classifier(a, b).is_cr != weakmax.is_cr_g(_module(d, a, b, 2))]
        out.append((f"{d.name}: {len(pairs)} pairs", not bad))
    return out


def criterion_9():
    out = []
    for case in AN_SWEEP + EXTRA_SWEEP:
        d, pairs = _sweep(*case)
        p = case[2]
        ok = True
        for a, b in pairs:
            v = _module(d, a, b, p)
            g = weakmax.is_cr_g(v)
            ok &= g == weakmax.is_cr_g1(v)
            if g:
                ok &= all(is_p_restricted(w, p) for w in weakmax.maximal_vector_weights(v))
        out.append((f"{d.name} p={p}", ok))
    return out


def criterion_10():
    out = []
    for case in AN_SWEEP + EXTRA_SWEEP:
        d, pairs = _sweep(*case)
        p = case[2]
        ok = True
        for a, b in pairs:
            ok &= suites._weakly_maximal_raising(d, a, b, p) and suites._component_lemma(d, a, b, p)
            if not is_p_restricted(tuple(x + y for x, y in zip(a, b)), p):
                ok &= suites._top_generates_nonsimple(d, a, b, p)
        out.append((f"{d.name} p={p}", ok))
    return out


def criterion_11():
    rng = random.Random(20261016)
    seen, ok = 0, True
    while seen < 50:
        n = rng.choice((2, 3))
        d = _A(n)
        lam = tuple(rng.randrange(4) for _ in range(n))
        mu = tuple(rng.randrange(4) for _ in range(n))
        if max(lam + mu) < 2 or not any(lam) or not any(mu):
            continue
        if _dim(d, lam, 2) * _dim(d, mu, 2) > 400:
            continue
        v = crtools.decide_cr(d, lam, mu, 2)
        digits_cr = all(x.verdict == crtools.CR for x in v.digits)
        oracle = crtools.oracle_check(d, lam, mu, 2)
        ok &= oracle != crtools.UNKNOWN and (v.verdict == crtools.CR) == digits_cr == (oracle == crtools.CR)
        seen += 1
    return [("50 two-digit pairs", ok)]


CRIT12_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4),
                ("C", 3), ("C", 4), ("D", 4), ("G", 2), ("F", 4)]


def criterion_12():
    out = []
    for letter, rank in CRIT12_TYPES:
        d = build_root_datum(letter, rank)
        ws = dominant_weights_of_dim_at_most(d, 5000)
        out.append((f"{d.name}: {len(ws)} weights", all(weyl_character(d, w) == weyl_character_alternating(d, w) for w in ws)))
    return out


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}


def evaluate(k):
    t0 = time.perf_counter()
    try:
        subs = CRITERIA[k]()
        ok = all(s for _, s in subs)
        failed = [name for name, s in subs if not s]
        detail = ("failed: " + "; ".join(failed)) if failed else f"{len(subs)} checks"
    except Exception as exc:  # a crash is a failure, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    detail += f" ({time.perf_counter() - t0:.1f}s)"
    ACCEPTANCE[k] = (ok, detail)
    return ok, detail


@pytest.mark.parametrize("k", list(CRITERIA), ids=[f"criterion_{k}" for k in CRITERIA])
def test_acceptance(k):
    ok, detail = evaluate(k)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for k in CRITERIA:
        ok, detail = evaluate(k)
        failures += not ok
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failures else 0)
