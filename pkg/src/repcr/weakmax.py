"""Explicit modules over F_p with the divided-power action, and CR oracles.

Construction of Δ(λ): the simple module L_Q(λ) over the rationals is built
weight space by weight space.  A vector of weight μ < λ is determined by its
images under the raising operators e_i (nothing below the top is killed by
all of them), so each space is spanned by the vectors f_i b with b running
over bases of the spaces μ+α_i, and a basis is cut out by rank.  The Z-form
Δ_Z(λ) is the span of the divided powers f_i^{(a)} applied to lattices
above; a Hermite normal form gives a Z-basis of each weight space.  Root
vectors for non-simple roots come from commutators normalised to a Chevalley
basis, with X_{-β} = τ(X_β) so that the contravariant form is exactly
invariant.  Reducing the integral matrices mod p gives Δ(λ) over F_p and the
radical of the reduced Gram matrix gives L(λ).
"""

from __future__ import annotations

import hashlib
import heapq
import io
import math
import os
import pickle
import threading
from functools import lru_cache
from typing import Iterable, Sequence

import flint
import numpy as np

from . import modp
from .charbox import dominant_multiplicities, weyl_character, weyl_dim
from .rootsys import RootDatum, Weight, add, build_root_datum, is_dominant, neg, sub

CONVENTION_VERSION = 2
DEFAULT_DIM_CAP = 400
DEFAULT_BUILD_CAP = 3000

RootKey = tuple[int, ...]


# ----- small rational-matrix helpers --------------------------------------

def _zeros(r: int, c: int) -> flint.fmpq_mat:
    return flint.fmpq_mat(r, c)


def _ident(n: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def _sub(m: flint.fmpq_mat, rows: Sequence[int], cols: Sequence[int]) -> flint.fmpq_mat:
    ent, nc = m.entries(), m.ncols()
    cols = list(cols)
    return flint.fmpq_mat(len(rows), len(cols), [ent[i * nc + j] for i in rows for j in cols])


def _vstack(blocks: list[flint.fmpq_mat], ncols: int) -> flint.fmpq_mat:
    total = sum(b.nrows() for b in blocks)
    ent = [x for b in blocks for x in b.entries()]
    return flint.fmpq_mat(total, ncols, ent) if total else flint.fmpq_mat(0, ncols)


def _hstack(blocks: list[flint.fmpq_mat], nrows: int) -> flint.fmpq_mat:
    total = sum(b.ncols() for b in blocks)
    if not nrows or not total:
        return flint.fmpq_mat(nrows, total)
    parts = [(b.entries(), b.ncols()) for b in blocks]
    ent = [x for i in range(nrows) for e, nc in parts for x in e[i * nc : (i + 1) * nc]]
    return flint.fmpq_mat(nrows, total, ent)


def _to_int_array(m: flint.fmpq_mat) -> np.ndarray:
    out = np.empty((m.nrows(), m.ncols()), dtype=object)
    for i in range(m.nrows()):
        for j in range(m.ncols()):
            x = m[i, j]
            if x.q != 1:
                raise ArithmeticError("lattice matrix is not integral")
            out[i, j] = int(x.p)
    return out


def _mod_array(a: np.ndarray, p: int) -> np.ndarray:
    return np.array([[int(x) % p for x in row] for row in a], dtype=np.int64).reshape(a.shape)


# ----- characteristic-zero highest-weight module ---------------------------

class RationalModule:
    """L_Q(λ) with simple-root blocks, contravariant Gram and Z-form."""

    def __init__(self, datum: RootDatum, lam: Weight, floor: Weight | None = None):
        self.datum = datum
        self.lam = lam
        n = datum.rank
        self.alpha = [datum.root_weight(datum.simple_root(i)) for i in range(n)]
        ch = weyl_character(datum, lam) if floor is None else _interval_character(datum, lam, floor)
        self.weights = sorted(ch, key=lambda w: (datum.height_key(w), w), reverse=True)
        self.dims = dict(ch)
        self.E: list[dict[Weight, flint.fmpq_mat]] = [dict() for _ in range(n)]
        self.F: list[dict[Weight, flint.fmpq_mat]] = [dict() for _ in range(n)]
        self.gram: dict[Weight, flint.fmpq_mat] = {}
        self._build()
        self._lattice: dict[Weight, flint.fmpq_mat] | None = None
        self._lattice_inv: dict[Weight, flint.fmpq_mat] = {}
        self._root_blocks: dict[RootKey, dict[Weight, flint.fmpq_mat]] = {}

    def _build(self) -> None:
        n = self.datum.rank
        dims = self.dims
        top = self.weights[0]
        self.gram[top] = _ident(1)
        for mu in self.weights[1:]:
            ups = [add(mu, self.alpha[i]) for i in range(n)]
            cand_src = [i for i in range(n) if ups[i] in dims]
            targets = [j for j in range(n) if ups[j] in dims]
            col_blocks = []
            for i in cand_src:
                rows = []
                for j in targets:
                    d_tgt = dims[ups[j]]
                    up_i = ups[i]
                    both = add(up_i, self.alpha[j])
                    if both in dims:
                        blk = self.F[i][both] * self.E[j][up_i]
                    else:
                        blk = _zeros(d_tgt, dims[up_i])
                    if i == j:
                        h = up_i[i]
                        if h:
                            blk = blk + _ident(dims[up_i]) * h
                    rows.append(blk)
                col_blocks.append(_vstack(rows, dims[ups[i]]))
            nrows = sum(dims[ups[j]] for j in targets)
            prof = _hstack(col_blocks, nrows)
            red, rk = prof.rref()
            if rk != dims[mu]:
                raise ArithmeticError(f"weight space {mu} has rank {rk}, expected {dims[mu]}")
            pivots = []
            for r in range(rk):
                c = 0
                while red[r, c] == 0:
                    c += 1
                pivots.append(c)
            # where each candidate column came from
            origin = []
            for i in cand_src:
                for k in range(dims[ups[i]]):
                    origin.append((i, k))
            # raising blocks E_j : mu -> mu+alpha_j
            r0 = 0
            for j in targets:
                dj = dims[ups[j]]
                self.E[j][mu] = _sub(prof, range(r0, r0 + dj), pivots)
                r0 += dj
            # lowering blocks F_i : mu+alpha_i -> mu
            c0 = 0
            for i in cand_src:
                di = dims[ups[i]]
                self.F[i][ups[i]] = _sub(red, range(rk), range(c0, c0 + di))
                c0 += di
            # Gram: <f_i b0, x> = <b0, e_i x>
            g = flint.fmpq_mat(rk, rk)
            cache = {}
            for a, pc in enumerate(pivots):
                i, k = origin[pc]
                if i not in cache:
                    cache[i] = self.gram[ups[i]] * self.E[i][mu]
                row = cache[i]
                for b in range(rk):
                    g[a, b] = row[k, b]
            self.gram[mu] = g

    # Z-form --------------------------------------------------------------
    def lattice(self) -> dict[Weight, flint.fmpq_mat]:
        """Columns give a Z-basis of Δ_Z(λ)_μ in the rational coordinates."""
        if self._lattice is not None:
            return self._lattice
        dims = self.dims
        lat: dict[Weight, flint.fmpq_mat] = {self.weights[0]: _ident(1)}
        for mu in self.weights[1:]:
            gens = []
            for i in range(self.datum.rank):
                a = 1
                chain = None
                while True:
                    src = tuple(m + a * s for m, s in zip(mu, self.alpha[i]))
                    if src not in dims:
                        break
                    step = self.F[i][src]
                    chain = step if chain is None else chain * step
                    gens.append(chain * lat[src] / math.factorial(a))
                    a += 1
            gm = _hstack(gens, dims[mu])
            zm, den = gm.numer_denom()
            # LLL drops the dependent generators and is far cheaper than HNF on tall inputs
            red = zm.transpose().lll()
            d = dims[mu]
            ent = red.entries()
            rows = [ent[r * d : (r + 1) * d] for r in range(red.nrows())]
            rows = [r for r in rows if any(r)]
            if len(rows) != d:
                raise ArithmeticError("lattice rank differs from weight multiplicity")
            basis = flint.fmpq_mat(flint.fmpz_mat(d, d, [x for r in rows for x in r]).transpose()) / den
            lat[mu] = basis
        self._lattice = lat
        return lat

    def lattice_inverse(self, mu: Weight) -> flint.fmpq_mat:
        hit = self._lattice_inv.get(mu)
        if hit is None:
            hit = self.lattice()[mu].inv()
            self._lattice_inv[mu] = hit
        return hit

    def lattice_gram(self, mu: Weight) -> np.ndarray:
        b = self.lattice()[mu]
        return _to_int_array(b.transpose() * self.gram[mu] * b)

    # root vectors -------------------------------------------------------
    def root_blocks(self, beta: RootKey) -> dict[Weight, flint.fmpq_mat]:
        """Blocks μ -> μ+β of X_β for a root β (signed simple-root coordinates)."""
        hit = self._root_blocks.get(beta)
        if hit is not None:
            return hit
        datum = self.datum
        positive = any(c > 0 for c in beta)
        pos = beta if positive else neg(beta)
        if sum(pos) == 1:
            i = pos.index(1)
            out = dict(self.E[i]) if positive else dict(self.F[i])
        else:
            i = next(k for k in range(datum.rank) if pos[k] > 0 and datum.is_root(tuple(c - int(j == k) for j, c in enumerate(pos))))
            gamma = tuple(c - int(j == i) for j, c in enumerate(pos))
            r = 0
            probe = list(gamma)
            while True:
                probe[i] -= 1
                if datum.is_root(tuple(probe)):
                    r += 1
                else:
                    break
            ai = datum.simple_root(i)
            if positive:
                xi, xg = self.root_blocks(ai), self.root_blocks(gamma)
                wi, wg = self.alpha[i], datum.root_weight(gamma)
            else:
                xi, xg = self.root_blocks(neg(ai)), self.root_blocks(neg(gamma))
                wi, wg = neg(self.alpha[i]), neg(datum.root_weight(gamma))
            out = {}
            shift = add(wi, wg)
            for mu in self.weights:
                tgt = add(mu, shift)
                if tgt not in self.dims:
                    continue
                acc = _zeros(self.dims[tgt], self.dims[mu])
                if positive:
                    # [e_i, e_γ] = e_i e_γ - e_γ e_i
                    first = (xi, wi, xg, wg)
                    second = (xg, wg, xi, wi)
                else:
                    # τ of the above: f_γ f_i - f_i f_γ
                    first = (xg, wg, xi, wi)
                    second = (xi, wi, xg, wg)
                for sign, (outer, _w_outer, inner, w_inner) in ((1, first), (-1, second)):
                    mid = add(mu, w_inner)
                    if mid in self.dims and mu in inner and mid in outer:
                        term = outer[mid] * inner[mu]
                        acc = acc + term if sign == 1 else acc - term
                out[mu] = acc / (r + 1)
        self._root_blocks[beta] = out
        return out

    def lattice_block(self, beta: RootKey, r: int, mu: Weight) -> np.ndarray | None:
        """Integral matrix of X_{β,r} from Δ_Z(λ)_μ to Δ_Z(λ)_{μ+rβ}."""
        bw = self.datum.root_weight(beta)
        blocks = self.root_blocks(beta)
        lat = self.lattice()
        cur = None
        w = mu
        for _ in range(r):
            if w not in blocks:
                return None
            step = blocks[w]
            cur = step if cur is None else step * cur
            w = add(w, bw)
        if w not in self.dims:
            return None
        m = self.lattice_inverse(w) * cur * lat[mu] / math.factorial(r)
        return _to_int_array(m)


@lru_cache(maxsize=256)
def rational_module(letter: str, rank: int, lam: Weight) -> RationalModule:
    return RationalModule(build_root_datum(letter, rank), lam)


def _interval_character(datum: RootDatum, lam: Weight, floor: Weight) -> dict[Weight, int]:
    """Weights w of Δ(λ) with w ≥ floor, with multiplicities.

    The set is closed under adding simple roots, which is all the top-down
    construction and the divided-power lattice ever look at.
    """
    dom = dominant_multiplicities(datum, lam)
    depth = datum.to_root_coords(sub(lam, floor))
    alphas = [datum.root_weight(datum.simple_root(i)) for i in range(datum.rank)]
    # w is tracked with its root coordinates below λ
    out = {lam: 1}
    todo = [(lam, (0,) * datum.rank)]
    while todo:
        w, below = todo.pop()
        for i, a in enumerate(alphas):
            if below[i] >= depth[i]:
                continue
            nxt = sub(w, a)
            if nxt in out:
                continue
            m = dom.get(datum.dominant_conjugate(nxt)[0], 0)
            if m:
                out[nxt] = m
                todo.append((nxt, below[:i] + (below[i] + 1,) + below[i + 1:]))
    return out


@lru_cache(maxsize=64)
def _interval_module(letter: str, rank: int, lam: Weight, floor: Weight) -> RationalModule:
    return RationalModule(build_root_datum(letter, rank), lam, floor)


def local_simple_multiplicity(datum: RootDatum, lam: Sequence[int], p: int, nu: Sequence[int],
                              cap: int = 400 * DEFAULT_BUILD_CAP) -> int:
    """dim L(λ)_ν from the direct F_p construction of the weights between ν and λ."""
    return simple_interval_dims(datum, lam, p, nu, cap).get(tuple(nu), 0)


def local_gram_multiplicity(datum: RootDatum, lam: Sequence[int], p: int, nu: Sequence[int],
                              cap: int = 20 * DEFAULT_BUILD_CAP) -> int:
    """dim L(λ)_ν from the reduced Gram matrix on Δ(λ)_ν.

    Only the weights between ν and λ are constructed; the cap bounds their
    total dimension.
    """
    lam, nu = tuple(lam), tuple(nu)
    span = _interval_character(datum, lam, nu)
    if nu not in span:
        return 0
    if sum(span.values()) > cap:
        raise MemoryError(f"interval [{nu}, {lam}] has dimension {sum(span.values())} > {cap}")
    rm = _interval_module(datum.type_letter, datum.rank, lam, nu)
    return modp.rank(_mod_array(rm.lattice_gram(nu), p), p)


def _mm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """a @ b mod p through float BLAS while the dot products stay exact."""
    if a.shape[1] * (p - 1) ** 2 < 2**52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    return (a @ b) % p  # pragma: no cover - large p only


def _gbinom(n: int, k: int) -> int:
    """binom(n, k) for any integer n."""
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1) if n >= 0 else out * (n - t)
    return out if n >= 0 else out // math.factorial(k)


def _column_relations(prof: np.ndarray, p: int, bound: int, rng) -> tuple[list[int], np.ndarray]:
    """Pivot columns of prof and the coefficients of every column in them.

    Rows are first compressed by a random map; the relations are then checked
    exactly against prof, so a bad draw costs a retry, never a wrong answer.
    """
    rows, cols = prof.shape
    for _ in range(8):
        if rows > bound + 24:
            small = _mm(rng.integers(0, p, size=(bound + 24, rows)), prof, p)
        else:
            small = prof
        red, piv = modp.rref(small, p)
        coeff = red[: len(piv)]
        if small is prof or np.array_equal(_mm(prof[:, piv], coeff, p), prof):
            return piv, coeff
    raise ArithmeticError("random row compression kept failing")  # pragma: no cover


def simple_interval_dims(datum: RootDatum, lam: Sequence[int], p: int, floor: Sequence[int],
                         cap: int = 400 * DEFAULT_BUILD_CAP) -> dict[Weight, int]:
    """dim L(λ)_μ for every weight μ ≥ floor, built directly over F_p.

    Below the top, a vector of L(λ) is fixed by its images under the e_j^(s),
    and L(λ)_μ is spanned by the f_i^(r) L(λ)_{μ+rα_i}; e^(s) f^(r) is
    rewritten with the divided-power commutation formula.
    """
    lam, floor = tuple(lam), tuple(floor)
    span = _interval_character(datum, lam, floor)
    if sum(span.values()) > cap:
        raise MemoryError(f"interval [{floor}, {lam}] has dimension {sum(span.values())} > {cap}")
    n = datum.rank
    alphas = [datum.root_weight(datum.simple_root(i)) for i in range(n)]
    rng = np.random.default_rng(0)

    def up(w, i, r):
        return tuple(a + r * b for a, b in zip(w, alphas[i]))

    dims: dict[Weight, int] = {lam: 1}
    E: dict[tuple[int, int, Weight], np.ndarray] = {}  # (j, s, μ): L_μ -> L_{μ+sα_j}
    F: dict[tuple[int, int, Weight], np.ndarray] = {}  # (i, r, src): L_src -> L_{src-rα_i}

    def e_blk(j, s, w):
        return np.eye(dims[w], dtype=np.int64) if s == 0 else E.get((j, s, w))

    def f_blk(i, r, w):
        return np.eye(dims[w], dtype=np.int64) if r == 0 else F.get((i, r, w))

    order = sorted(span, key=lambda w: (datum.height_key(w), w), reverse=True)
    for mu in order[1:]:
        srcs = [(i, r) for i in range(n) for r in range(1, _span_len(span, mu, alphas[i]) + 1) if dims.get(up(mu, i, r), 0)]
        tgts = list(srcs)
        if not srcs:
            dims[mu] = 0
            continue
        rows = []
        for j, s in tgts:
            wt = up(mu, j, s)
            row = []
            for i, r in srcs:
                ws = up(mu, i, r)
                blk = np.zeros((dims[wt], dims[ws]), dtype=np.int64)
                if i != j:
                    mid = up(ws, j, s)
                    if dims.get(mid, 0) and (i, r, mid) in F and (j, s, ws) in E:
                        blk = _mm(F[(i, r, mid)], E[(j, s, ws)], p)
                else:
                    for k in range(min(r, s) + 1):
                        mid = up(mu, i, r + s - k)
                        if not dims.get(mid, 0):
                            continue
                        c = _gbinom(mu[i] + r + s, k) % p
                        if not c:
                            continue
                        eb, fb = e_blk(i, s - k, ws), f_blk(i, r - k, mid)
                        if eb is None or fb is None:
                            continue
                        blk = (blk + c * _mm(fb, eb, p)) % p
                row.append(blk)
            rows.append(np.hstack(row))
        prof = np.vstack(rows)
        piv, coeff = _column_relations(prof, p, span[mu], rng)
        d = len(piv)
        if d > span[mu]:
            raise ArithmeticError(f"dim L_{mu} = {d} exceeds dim Δ_{mu} = {span[mu]}")
        dims[mu] = d
        if not d:
            continue
        r0 = 0
        for j, s in tgts:
            h = dims[up(mu, j, s)]
            blk = prof[r0 : r0 + h][:, piv]
            if blk.any():
                E[(j, s, mu)] = blk
            r0 += h
        c0 = 0
        for i, r in srcs:
            w = dims[up(mu, i, r)]
            F[(i, r, up(mu, i, r))] = coeff[:, c0 : c0 + w]
            c0 += w
    return {w: d for w, d in dims.items() if d}


def _span_len(span: dict, mu: Weight, alpha: Weight) -> int:
    """Largest r with μ + r·α still in the interval."""
    r = 0
    w = mu
    while True:
        w = tuple(a + b for a, b in zip(w, alpha))
        if w not in span:
            return r
        r += 1


def simple_dominant_multiplicities(datum: RootDatum, lam: Sequence[int], p: int, cap: int = DEFAULT_BUILD_CAP) -> dict[Weight, int]:
    """dim L(λ)_μ for dominant μ, read off the rank of the reduced Gram matrix."""
    lam = tuple(lam)
    if weyl_dim(datum, lam) > cap:
        raise MemoryError(f"weyl_dim({lam}) exceeds the build cap {cap}")
    rm = rational_module(datum.type_letter, datum.rank, lam)
    out = {}
    for mu in dominant_multiplicities(datum, lam):
        g = _mod_array(rm.lattice_gram(mu), p)
        r = modp.rank(g, p)
        if r:
            out[mu] = r
    return out


# ----- modules over F_p ------------------------------------------------------

class ExplicitModule:
    """Finite-dimensional module over F_p with divided-power root operators.

    ``block(beta, r, mu)`` is the matrix of X_{β,r} from the μ weight space to
    the μ+rβ weight space (None when either space is zero).
    """

    def __init__(self, datum: RootDatum, p: int, dims: dict[Weight, int], label: str):
        self.datum = datum
        self.p = p
        self.dims = {w: d for w, d in dims.items() if d}
        self.label = label
        self.weights = sorted(self.dims, key=lambda w: (datum.height_key(w), w), reverse=True)
        self.offset: dict[Weight, int] = {}
        off = 0
        for w in self.weights:
            self.offset[w] = off
            off += self.dims[w]
        self.dim = off
        self._cache: dict = {}
        self._lock = threading.RLock()
        self._rmax: dict[RootKey, int] = {}

    def __repr__(self) -> str:
        return f"ExplicitModule({self.label}, dim={self.dim}, p={self.p})"

    def rmax(self, beta: RootKey) -> int:
        """Largest r for which X_{β,r} can act non-trivially."""
        hit = self._rmax.get(beta)
        if hit is None:
            pos = beta if any(c > 0 for c in beta) else neg(beta)
            hit = max((abs(self.datum.pairing(w, pos)) for w in self.weights), default=0)
            self._rmax[beta] = hit
        return hit

    def block(self, beta: RootKey, r: int, mu: Weight) -> np.ndarray | None:
        if r == 0:
            return np.eye(self.dims[mu], dtype=np.int64) if mu in self.dims else None
        key = (beta, r, mu)
        if key in self._cache:
            return self._cache[key]
        tgt = add(mu, tuple(r * c for c in self.datum.root_weight(beta)))
        if mu not in self.dims or tgt not in self.dims:
            out = None
        else:
            out = self._compute(beta, r, mu, tgt)
            if out is not None:
                out = out % self.p
                if not out.any():
                    out = None
        self._cache[key] = out
        return out

    def _compute(self, beta: RootKey, r: int, mu: Weight, tgt: Weight) -> np.ndarray | None:  # pragma: no cover
        raise NotImplementedError

    def matrix(self, beta: RootKey, r: int = 1) -> np.ndarray:
        """Dense matrix of X_{β,r} on the whole module."""
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for mu in self.weights:
            b = self.block(beta, r, mu)
            if b is not None:
                tgt = add(mu, tuple(r * c for c in self.datum.root_weight(beta)))
                o1, o2 = self.offset[tgt], self.offset[mu]
                out[o1 : o1 + b.shape[0], o2 : o2 + b.shape[1]] = b
        return out

    def binom_h(self, i: int, m: int) -> np.ndarray:
        """Diagonal action of binom(H_i, m): binom(⟨μ,α_i∨⟩, m) mod p on weight μ."""
        diag = []
        for w in self.weights:
            diag += [_binom(w[i], m) % self.p] * self.dims[w]
        return np.diag(np.array(diag, dtype=np.int64))

    def character(self) -> dict[Weight, int]:
        return dict(self.dims)

    def weight_of_index(self, idx: int) -> Weight:
        for w in self.weights:
            if self.offset[w] <= idx < self.offset[w] + self.dims[w]:
                return w
        raise IndexError(idx)

    def embed(self, mu: Weight, vec: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        o = self.offset[mu]
        out[o : o + self.dims[mu]] = vec
        return out

    def to_bytes(self) -> bytes:
        """Deterministic serialisation of every stored divided-power block."""
        buf = io.BytesIO()
        header = (self.datum.type_letter, self.datum.rank, self.p, self.label, CONVENTION_VERSION,
                  tuple((w, self.dims[w]) for w in self.weights))
        buf.write(repr(header).encode())
        for beta in self.datum.roots:
            for r in range(1, self.rmax(beta) + 1):
                for mu in self.weights:
                    b = self.block(beta, r, mu)
                    if b is not None:
                        buf.write(repr((beta, r, mu, b.shape)).encode())
                        buf.write(np.ascontiguousarray(b, dtype=np.int64).tobytes())
        return buf.getvalue()


def _binom(n: int, m: int) -> int:
    if m < 0:
        return 0
    num = 1
    for k in range(m):
        num *= n - k
    return num // math.factorial(m)


class StoredModule(ExplicitModule):
    """Blocks computed by a callback and memoised."""

    def __init__(self, datum, p, dims, label, compute):
        super().__init__(datum, p, dims, label)
        self._compute_cb = compute

    def _compute(self, beta, r, mu, tgt):
        return self._compute_cb(beta, r, mu, tgt)


class TensorModule(ExplicitModule):
    """V⊗W with X_{β,r}(v⊗w) = Σ_s X_{β,s}v ⊗ X_{β,r-s}w."""

    def __init__(self, left: ExplicitModule, right: ExplicitModule):
        if left.datum != right.datum or left.p != right.p:
            raise ValueError("tensor factors must share datum and p")
        self.left, self.right = left, right
        comps: dict[Weight, list[tuple[Weight, Weight, int]]] = {}
        dims: dict[Weight, int] = {}
        for w1 in left.weights:
            for w2 in right.weights:
                w = add(w1, w2)
                off = dims.get(w, 0)
                comps.setdefault(w, []).append((w1, w2, off))
                dims[w] = off + left.dims[w1] * right.dims[w2]
        self.comps = comps
        self.comp_offset = {w: {(a, b): o for a, b, o in lst} for w, lst in comps.items()}
        super().__init__(left.datum, left.p, dims, f"({left.label})x({right.label})")

    def rmax(self, beta):
        return self.left.rmax(beta) + self.right.rmax(beta)

    def _compute(self, beta, r, mu, tgt, right_only: bool = False):
        bw = self.datum.root_weight(beta)
        out = np.zeros((self.dims[tgt], self.dims[mu]), dtype=np.int64)
        tgt_off = self.comp_offset[tgt]
        for w1, w2, o in self.comps[mu]:
            d1, d2 = self.left.dims[w1], self.right.dims[w2]
            for s in (0,) if right_only else range(r + 1):
                a = self.left.block(beta, s, w1)
                if a is None:
                    continue
                b = self.right.block(beta, r - s, w2)
                if b is None:
                    continue
                t1 = add(w1, tuple(s * c for c in bw))
                t2 = add(w2, tuple((r - s) * c for c in bw))
                ot = tgt_off[(t1, t2)]
                out[ot : ot + a.shape[0] * b.shape[0], o : o + d1 * d2] += np.kron(a, b)
        return out % self.p

    def block_right(self, beta: RootKey, r: int, mu: Weight) -> np.ndarray | None:
        """Matrix of 1⊗X_{β,r}."""
        key = ("right", beta, r, mu)
        if key in self._cache:
            return self._cache[key]
        tgt = add(mu, tuple(r * c for c in self.datum.root_weight(beta)))
        out = None
        if mu in self.dims and tgt in self.dims:
            out = self._compute(beta, r, mu, tgt, right_only=True)
            if not out.any():
                out = None
        self._cache[key] = out
        return out

    def component(self, vec: np.ndarray, mu: Weight, w1: Weight) -> np.ndarray:
        """Projection of a μ-weight vector onto left_{w1} ⊗ right_{μ-w1}, as a matrix."""
        w2 = sub(mu, w1)
        o = self.comp_offset[mu].get((w1, w2))
        if o is None:
            return np.zeros((0, 0), dtype=np.int64)
        d1, d2 = self.left.dims[w1], self.right.dims[w2]
        return np.asarray(vec[o : o + d1 * d2]).reshape(d1, d2)


def tensor_modules(v: ExplicitModule, w: ExplicitModule) -> TensorModule:
    return TensorModule(v, w)


def tensor_of_simples(datum: RootDatum, lam: Sequence[int], mu: Sequence[int], p: int) -> TensorModule:
    """L(λ)⊗L(μ) as an explicit module."""
    return TensorModule(simple_module(datum, lam, p), simple_module(datum, mu, p))


# ----- constructors ---------------------------------------------------------

_module_cache: dict = {}
_module_lock = threading.RLock()


def _cache_dir() -> str | None:
    return os.environ.get("REPCR_CACHE_DIR") or None


def _cache_path(kind: str, datum: RootDatum, lam: Weight, p: int) -> str | None:
    root = _cache_dir()
    if root is None:
        return None
    key = f"{kind}-{datum.name}-{'_'.join(map(str, lam))}-p{p}-v{CONVENTION_VERSION}"
    return os.path.join(root, hashlib.sha1(key.encode()).hexdigest()[:16] + "-" + key + ".pkl")


def _materialise(mod: ExplicitModule) -> dict:
    blocks = {}
    for beta in mod.datum.roots:
        for r in range(1, mod.rmax(beta) + 1):
            for mu in mod.weights:
                b = mod.block(beta, r, mu)
                if b is not None:
                    blocks[(beta, r, mu)] = b
    return blocks


def _frozen_module(datum, p, dims, label, blocks) -> StoredModule:
    def compute(beta, r, mu, tgt):
        return blocks.get((beta, r, mu))

    return StoredModule(datum, p, dims, label, compute)


def _cached_build(kind: str, datum: RootDatum, lam: Weight, p: int, builder) -> ExplicitModule:
    key = (kind, datum.type_letter, datum.rank, lam, p)
    with _module_lock:
        hit = _module_cache.get(key)
        if hit is not None:
            return hit
        path = _cache_path(kind, datum, lam, p)
        if path and os.path.exists(path):
            with open(path, "rb") as fh:
                dims, label, blocks = pickle.load(fh)
            mod = _frozen_module(datum, p, dims, label, blocks)
        else:
            mod = builder()
            if path:
                os.makedirs(os.path.dirname(path), exist_ok=True)
                blocks = _materialise(mod)
                tmp = path + ".tmp"
                with open(tmp, "wb") as fh:
                    pickle.dump((mod.dims, mod.label, blocks), fh)
                os.replace(tmp, path)
        _module_cache[key] = mod
        return mod


def weyl_module(datum: RootDatum, lam: Sequence[int], p: int, cap: int = DEFAULT_BUILD_CAP) -> ExplicitModule:
    """Δ(λ) over F_p: the Z-form of L_Q(λ) reduced mod p."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError("weight is not dominant")
    if weyl_dim(datum, lam) > cap:
        raise MemoryError(f"weyl_dim({lam}) = {weyl_dim(datum, lam)} exceeds the cap {cap}")

    def build():
        rm = rational_module(datum.type_letter, datum.rank, lam)

        def compute(beta, r, mu, tgt):
            m = rm.lattice_block(beta, r, mu)
            return None if m is None else _mod_array(m, p)

        return StoredModule(datum, p, rm.dims, f"Weyl{list(lam)}", compute)

    return _cached_build("weyl", datum, lam, p, build)


def induced_module(datum: RootDatum, lam: Sequence[int], p: int, cap: int = DEFAULT_BUILD_CAP) -> ExplicitModule:
    """∇(λ) = Δ(λ)^τ: X_{β,r} acts by the transpose of X_{-β,r} in the dual basis."""
    lam = tuple(lam)
    delta = weyl_module(datum, lam, p, cap)

    def build():
        def compute(beta, r, mu, tgt):
            b = delta.block(neg(beta), r, tgt)
            return None if b is None else b.T.copy()

        return StoredModule(datum, p, delta.dims, f"Induced{list(lam)}", compute)

    return _cached_build("induced", datum, lam, p, build)


def simple_module(datum: RootDatum, lam: Sequence[int], p: int, cap: int = DEFAULT_BUILD_CAP) -> ExplicitModule:
    """L(λ) = Δ(λ)/rad of the contravariant form."""
    lam = tuple(lam)
    delta = weyl_module(datum, lam, p, cap)

    def build():
        rm = rational_module(datum.type_letter, datum.rank, lam)
        quot: dict[Weight, tuple[np.ndarray, list[int]]] = {}
        dims = {}
        for mu in delta.weights:
            g = _mod_array(rm.lattice_gram(mu), p)
            red, piv = modp.rref(g, p)
            if piv:
                quot[mu] = (red, piv)
                dims[mu] = len(piv)

        def compute(beta, r, mu, tgt):
            b = delta.block(beta, r, mu)
            if b is None:
                return None
            s_tgt, _ = quot[tgt]
            _, piv = quot[mu]
            return (s_tgt @ b[:, piv]) % p

        return StoredModule(datum, p, dims, f"L{list(lam)}", compute)

    return _cached_build("simple", datum, lam, p, build)


def radical_dims(datum: RootDatum, lam: Sequence[int], p: int) -> dict[Weight, int]:
    """Per-weight dimension of the radical of the contravariant form on Δ(λ)."""
    rm = rational_module(datum.type_letter, datum.rank, tuple(lam))
    out = {}
    for mu in rm.weights:
        g = _mod_array(rm.lattice_gram(mu), p)
        k = g.shape[0] - modp.rank(g, p)
        if k:
            out[mu] = k
    return out


def contravariant_gram(datum: RootDatum, lam: Sequence[int], p: int, mu: Weight) -> np.ndarray:
    rm = rational_module(datum.type_letter, datum.rank, tuple(lam))
    return _mod_array(rm.lattice_gram(mu), p)


_NATURAL = {"A": 0, "B": 0, "C": 0, "D": 0, "G": 0}


def natural_module(type_letter: str, rank: int, p: int, spin: bool = False) -> ExplicitModule:
    """The natural module (A/B/C/D, G_2's 7-dimensional one) or the B_n spin module."""
    letter = type_letter.upper()
    datum = build_root_datum(letter, rank)
    if spin:
        if letter != "B":
            raise ValueError("the spin module is provided for type B only")
        return weyl_module(datum, datum.omega(rank - 1), p)
    if letter not in _NATURAL:
        raise NotImplementedError(f"no explicit natural module for type {letter}")
    return weyl_module(datum, datum.omega(_NATURAL[letter]), p)


# ----- vectors --------------------------------------------------------------

def _positive(datum: RootDatum) -> tuple[RootKey, ...]:
    return datum.positive_roots


def _simple_gens(v: ExplicitModule, sign: int) -> list[tuple[RootKey, int]]:
    out = []
    for i in range(v.datum.rank):
        a = v.datum.simple_root(i)
        if sign < 0:
            a = neg(a)
        for r in range(1, v.rmax(a) + 1):
            out.append((a, r))
    return out


def maximal_vectors(v: ExplicitModule, delta: Sequence[int]) -> np.ndarray:
    """Rows spanning {x ∈ V_δ : X_{α_i,r} x = 0 for all simple α_i and r ≥ 1}.

    In characteristic p the divided powers are needed: X_{α_i} alone does not
    cut out the maximal vectors of the hyperalgebra.
    """
    delta = tuple(delta)
    if delta not in v.dims:
        return np.zeros((0, 0), dtype=np.int64)
    blocks = [b for b in (v.block(a, r, delta) for a, r in _simple_gens(v, +1)) if b is not None]
    return modp.intersect_kernels(blocks, v.dims[delta], v.p)


def weakly_maximal_vectors(v: ExplicitModule, delta: Sequence[int]) -> np.ndarray:
    """Rows spanning {x ∈ V_δ : X_α x = 0 for all α ∈ Φ⁺}."""
    delta = tuple(delta)
    if delta not in v.dims:
        return np.zeros((0, 0), dtype=np.int64)
    blocks = [b for b in (v.block(a, 1, delta) for a in _positive(v.datum)) if b is not None]
    return modp.intersect_kernels(blocks, v.dims[delta], v.p)


def is_weakly_maximal(v: ExplicitModule, delta: Weight, vec: np.ndarray) -> bool:
    vec = np.asarray(vec) % v.p
    if not vec.any():
        return False
    for a in _positive(v.datum):
        b = v.block(a, 1, delta)
        if b is not None and ((b @ vec) % v.p).any():
            return False
    return True


def raise_weakly_maximal(vw: TensorModule, delta: Sequence[int], vec: np.ndarray):
    """For weakly maximal v in V⊗W: a maximal β with (1⊗X_β)v ≠ 0 and that vector.

    Returns None when every (1⊗X_α) kills v.
    """
    delta = tuple(delta)
    vec = np.asarray(vec) % vw.p
    if not is_weakly_maximal(vw, delta, vec):
        raise ValueError("vector is not weakly maximal")
    datum = vw.datum
    live = []
    for a in datum.positive_roots:
        b = vw.block_right(a, 1, delta)
        if b is not None and ((b @ vec) % vw.p).any():
            live.append(a)
    if not live:
        return None
    # a dominance-maximal root among the live ones: no live root above it
    def above(x, y):
        return x != y and all(c1 >= c2 for c1, c2 in zip(x, y))

    for beta in sorted(live, key=lambda b: -sum(b)):
        if not any(above(g, beta) for g in live):
            out = (vw.block_right(beta, 1, delta) @ vec) % vw.p
            return beta, add(delta, datum.root_weight(beta)), out
    raise AssertionError("unreachable")  # pragma: no cover


# ----- submodule generation and socles ---------------------------------------

def _closure(v: ExplicitModule, start: dict[Weight, np.ndarray], gens: list[tuple[RootKey, int]]) -> dict[Weight, np.ndarray]:
    """Weight-graded span of the start vectors under the given operators."""
    p = v.p
    basis = {w: modp.row_basis(np.asarray(rows) % p, p) for w, rows in start.items()}
    todo = list(basis)
    while todo:
        w = todo.pop()
        rows = basis[w]
        if rows.shape[0] == 0:
            continue
        for beta, r in gens:
            b = v.block(beta, r, w)
            if b is None:
                continue
            img = (rows @ b.T) % p
            if not img.any():
                continue
            tgt = add(w, tuple(r * c for c in v.datum.root_weight(beta)))
            old = basis.get(tgt)
            stacked = img if old is None else np.vstack([old, img])
            new = modp.row_basis(stacked, p)
            if old is None or new.shape[0] > old.shape[0]:
                basis[tgt] = new
                todo.append(tgt)
    return {w: b for w, b in basis.items() if b.shape[0]}


def _restricted_gens(datum: RootDatum, sign: int | None = None) -> list[tuple[RootKey, int]]:
    out = []
    for a in datum.positive_roots:
        if sign in (None, 1):
            out.append((a, 1))
        if sign in (None, -1):
            out.append((neg(a), 1))
    return out


def restricted_part(delta: Sequence[int], p: int) -> Weight:
    return tuple(c % p for c in delta)


def _simple_dim(datum: RootDatum, lam: Weight, p: int) -> int:
    return simple_module(datum, lam, p).dim


def generated_g1_submodule(v: ExplicitModule, delta: Weight, vec: np.ndarray) -> dict[Weight, np.ndarray]:
    return _closure(v, {tuple(delta): np.atleast_2d(vec)}, _restricted_gens(v.datum))


def generates_simple_g1(v: ExplicitModule, delta: Sequence[int], vec: np.ndarray) -> bool:
    """Is u·v simple (u the restricted enveloping algebra)?

    A submodule is simple iff it has a single line of vectors killed by all
    X_α (α>0) and its dimension equals that of the simple G_1-module with
    that highest weight.
    """
    delta = tuple(delta)
    sub_mod = generated_g1_submodule(v, delta, vec)
    total = sum(b.shape[0] for b in sub_mod.values())
    lines = []
    for w, rows in sub_mod.items():
        blocks = []
        for a in v.datum.positive_roots:
            b = v.block(a, 1, w)
            if b is not None:
                blocks.append((b @ rows.T) % v.p)
        ker = modp.intersect_kernels(blocks, rows.shape[0], v.p)
        if ker.shape[0]:
            lines.append((w, ker.shape[0]))
    if sum(k for _, k in lines) != 1:
        return False
    top = lines[0][0]
    return total == _simple_dim(v.datum, restricted_part(top, v.p), v.p)


def _hom_from_simple(v: ExplicitModule, delta: Weight, cands: np.ndarray, simple: ExplicitModule,
                     top: Weight, gens_of) -> np.ndarray:
    """Rows c·cands with u↦u(c·cands) factoring through the simple module.

    Builds the cyclic module generated by (v0, w_1, ..., w_s) inside
    simple ⊕ V^s under the lowering generators, where v0 is the highest
    vector of ``simple``; a combination Σ c_j w_j extends to a map from the
    simple module iff it vanishes on every element whose first entry is 0.
    """
    p = v.p
    datum = v.datum
    s = cands.shape[0]
    if s == 0:
        return cands
    gens = gens_of(datum)
    zero = datum.zero()
    start = np.concatenate([np.ones(1, dtype=np.int64)] + [cands[j] % p for j in range(s)])
    levels: dict[Weight, list[np.ndarray]] = {zero: [start[None, :]]}
    heap = [(0, zero)]
    seen = {zero}
    equations = []
    while heap:
        _, d = heapq.heappop(heap)
        rows = modp.row_basis(np.vstack(levels.pop(d)), p)
        if rows.shape[0] == 0:
            continue
        lw = sub(top, d)
        vw = sub(delta, d)
        dl = simple.dims.get(lw, 0)
        dv = v.dims.get(vw, 0)
        lpart, vpart = rows[:, :dl], rows[:, dl:]
        if dv:
            ker = modp.nullspace(lpart.T, p) if dl else np.eye(rows.shape[0], dtype=np.int64)
            if ker.shape[0]:
                kv = (ker @ vpart) % p
                for row in kv:
                    if row.any():
                        equations.append(row.reshape(s, dv).T)
        for beta, r in gens:
            shift = tuple(r * c for c in datum.root_weight(beta))
            nd = sub(d, shift)
            bl = simple.block(beta, r, lw) if dl else None
            bv = v.block(beta, r, vw) if dv else None
            if bl is None and bv is None:
                continue
            nl = simple.dims.get(add(lw, shift), 0)
            nv = v.dims.get(add(vw, shift), 0)
            if nl == 0 and nv == 0:
                continue
            out = np.zeros((rows.shape[0], nl + s * nv), dtype=np.int64)
            if bl is not None:
                out[:, :nl] = (lpart @ bl.T) % p
            if bv is not None:
                for j in range(s):
                    out[:, nl + j * nv : nl + (j + 1) * nv] = (vpart[:, j * dv : (j + 1) * dv] @ bv.T) % p
            if not out.any():
                continue
            levels.setdefault(nd, []).append(out)
            if nd not in seen:
                seen.add(nd)
                heapq.heappush(heap, (datum.height_key(nd), nd))
    if not equations:
        return cands % p
    coeffs = modp.nullspace(np.vstack(equations), p)
    return (coeffs @ cands) % p


def _g1_lowering(datum: RootDatum):
    return [(neg(a), 1) for a in datum.positive_roots]


def _hom_simple_g1(v: ExplicitModule, delta: Weight, wm: np.ndarray) -> np.ndarray:
    d0 = restricted_part(delta, v.p)
    simple = simple_module(v.datum, d0, v.p)
    return _hom_from_simple(v, delta, wm, simple, d0, _g1_lowering)


def hom_weyl_dim(v: ExplicitModule, delta: Sequence[int]) -> int:
    """dim Hom_G(Δ(δ), V): the maximal vectors of weight δ."""
    return maximal_vectors(v, delta).shape[0]


def hom_simple_space(v: ExplicitModule, delta: Sequence[int]) -> np.ndarray:
    delta = tuple(delta)
    mv = maximal_vectors(v, delta)
    if mv.shape[0] == 0:
        return mv
    simple = simple_module(v.datum, delta, v.p)

    def lowering(datum):
        out = []
        for i in range(datum.rank):
            a = neg(datum.simple_root(i))
            for r in range(1, max(v.rmax(a), simple.rmax(a)) + 1):
                out.append((a, r))
        return out

    return _hom_from_simple(v, delta, mv, simple, delta, lowering)


def hom_simple_dim(v: ExplicitModule, delta: Sequence[int]) -> int:
    """dim Hom_G(L(δ), V)."""
    return hom_simple_space(v, delta).shape[0]


def _check_cap(v: ExplicitModule, cap: int) -> None:
    if v.dim > cap:
        raise MemoryError(f"module dimension {v.dim} exceeds the cap {cap}")


def maximal_vector_weights(v: ExplicitModule) -> list[Weight]:
    return [w for w in v.weights if is_dominant(w) and hom_weyl_dim(v, w)]


def is_cr_g(v: ExplicitModule, cap: int = DEFAULT_DIM_CAP) -> bool:
    """Every map Δ(δ) -> V factors through L(δ), for every δ."""
    _check_cap(v, cap)
    for w in v.weights:
        if not is_dominant(w):
            continue
        mv = hom_weyl_dim(v, w)
        if mv and hom_simple_dim(v, w) != mv:
            return False
    return True


def g1_socle_dim(v: ExplicitModule) -> int:
    """dim soc_{G_1}(V) = Σ_δ dim Hom(L̂(δ), V) · dim L(δ_0)."""
    total = 0
    for w in v.weights:
        wm = weakly_maximal_vectors(v, w)
        if wm.shape[0] == 0:
            continue
        hom = _hom_simple_g1(v, w, wm)
        if hom.shape[0]:
            total += hom.shape[0] * _simple_dim(v.datum, restricted_part(w, v.p), v.p)
    return total


def is_cr_g1(v: ExplicitModule, cap: int = DEFAULT_DIM_CAP) -> bool:
    """Semisimplicity over the restricted enveloping algebra (socle equals V)."""
    _check_cap(v, cap)
    return g1_socle_dim(v) == v.dim


def suprunenko_check(datum: RootDatum, lam: Sequence[int], p: int, delta: Sequence[int], alpha_index: int) -> bool:
    """X_{-α,r} is injective on L(λ)_δ for r = 0..⟨δ,α∨⟩ (α the given simple root)."""
    lam, delta = tuple(lam), tuple(delta)
    letter = datum.type_letter
    if letter in "BCF" and p == 2:
        raise ValueError("hypothesis excludes p=2 for types B, C, F")
    if letter == "G" and p <= 3:
        raise ValueError("hypothesis excludes p<=3 for type G2")
    if any(not 0 <= c < p for c in lam):
        raise ValueError("λ must be p-restricted")
    coords = datum.to_root_coords(sub(lam, delta))
    if coords[alpha_index] != 0:
        raise ValueError("ht_α(λ-δ) must vanish")
    mod = simple_module(datum, lam, p)
    if delta not in mod.dims:
        raise ValueError("δ is not a weight of L(λ)")
    a = neg(datum.simple_root(alpha_index))
    top = delta[alpha_index]
    for r in range(1, top + 1):
        b = mod.block(a, r, delta)
        if b is None or modp.rank(b, p) != mod.dims[delta]:
            return False
    return True


def clear_caches() -> None:
    with _module_lock:
        _module_cache.clear()
    rational_module.cache_clear()


__all__ = [
    "ExplicitModule",
    "TensorModule",
    "clear_caches",
    "contravariant_gram",
    "generates_simple_g1",
    "hom_simple_dim",
    "hom_weyl_dim",
    "induced_module",
    "is_cr_g",
    "is_cr_g1",
    "maximal_vectors",
    "natural_module",
    "raise_weakly_maximal",
    "simple_module",
    "suprunenko_check",
    "tensor_modules",
    "tensor_of_simples",
    "weakly_maximal_vectors",
    "weyl_module",
]
