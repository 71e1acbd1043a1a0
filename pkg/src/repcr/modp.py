"""Dense linear algebra over the prime field F_p on int64 numpy arrays."""

from __future__ import annotations

import numpy as np


def as_mod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_mod(a, p).copy()
    rows, cols = m.shape
    piv: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        piv.append(c)
        r += 1
    return m[:r], piv


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : a x = 0}."""
    a = np.asarray(a)
    cols = a.shape[1]
    if a.shape[0] == 0 or cols == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-r[i, f]) % p
    return out


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Rows forming a basis of the row space (in reduced echelon form)."""
    a = np.asarray(a)
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return rref(a, p)[0]


def intersect_kernels(blocks: list[np.ndarray], dim: int, p: int) -> np.ndarray:
    """Rows spanning the common kernel of the given maps (each dim columns)."""
    blocks = [b for b in blocks if b.size]
    if not blocks:
        return np.eye(dim, dtype=np.int64)
    return nullspace(np.vstack(blocks), p)
