"""Prime-field linear algebra kernels.

The oracle runs thousands of small Hom-space kernel computations over F_p
on its exhaustive grids; row reduction is the hot loop.  The loop-heavy
implementation is compiled with numba when available, and a vectorized
pure-NumPy path is selected by setting QUIVERSTAB_PURE_NUMPY=1 (or when
numba is not importable).  `benchmarks/bench_modp.py` compares the two.

All matrices are int64 with entries in [0, p); p < 2**20 keeps every
intermediate product comfortably inside int64.
"""
from __future__ import annotations

import os

import numpy as np

PURE_NUMPY = os.environ.get("QUIVERSTAB_PURE_NUMPY", "") not in ("", "0")

try:
    from numba import njit as _njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    PURE_NUMPY = True


def _rref_loop(a, p):
    """In-place reduced row echelon form mod p; returns the rank.

    Written with plain loops so numba can compile it; the numpy path below
    is used when compilation is disabled.
    """
    m, n = a.shape
    rank = 0
    for col in range(n):
        piv = -1
        for r in range(rank, m):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n):
                tmp = a[rank, j]
                a[rank, j] = a[piv, j]
                a[piv, j] = tmp
        # modular inverse by Fermat
        inv = np.int64(1)
        b = a[rank, col] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * b) % p
            b = (b * b) % p
            e >>= 1
        for j in range(n):
            a[rank, j] = (a[rank, j] * inv) % p
        for r in range(m):
            if r != rank and a[r, col] != 0:
                f = a[r, col]
                for j in range(n):
                    a[r, j] = (a[r, j] - f * a[rank, j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def _rref_numpy(a, p):
    """Vectorized fallback with identical semantics to `_rref_loop`."""
    m, n = a.shape
    rank = 0
    for col in range(n):
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        rows = np.nonzero(a[:, col])[0]
        rows = rows[rows != rank]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, col], a[rank])) % p
        rank += 1
        if rank == m:
            break
    return rank


if HAVE_NUMBA:
    _rref_njit = _njit(cache=True)(_rref_loop)

rref_inplace = _rref_numpy if PURE_NUMPY else _rref_njit


def _as_modp(a, p):
    arr = np.array(a, dtype=np.int64) % p
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return arr


def rank_modp(a, p):
    arr = _as_modp(a, p)
    if arr.size == 0:
        return 0
    return int(rref_inplace(arr, p))


def rref_modp(a, p):
    """(rref matrix, pivot columns, rank)."""
    arr = _as_modp(a, p)
    if arr.size == 0:
        return arr, [], 0
    rank = int(rref_inplace(arr, p))
    pivots = []
    for r in range(rank):
        nz = np.nonzero(arr[r])[0]
        pivots.append(int(nz[0]))
    return arr, pivots, rank


def nullspace_modp(a, p):
    """Basis of the right kernel as rows of the returned matrix."""
    arr = _as_modp(a, p)
    n = arr.shape[1]
    if arr.size == 0 or arr.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    red, pivots, rank = rref_modp(arr, p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red[r, fc]) % p
    return basis


def matmul_modp(a, b, p):
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if a.shape[1] > 2048:
        raise ValueError("matrix too large for overflow-safe int64 matmul")
    return (a @ b) % p


def solve_modp(a, b, p):
    """One solution x of a x = b (mod p), or None if inconsistent."""
    arr = _as_modp(a, p)
    rhs = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    aug = np.concatenate([arr, rhs], axis=1)
    red, pivots, rank = rref_modp(aug, p)
    n = arr.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red[r, n]
    return x
