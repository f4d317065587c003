"""Dense linear algebra over the prime field Z_p.

Matrices are numpy int64 arrays with entries reduced mod p.  Everything here
is exact; p is assumed prime (callers validate).
"""

from __future__ import annotations

import numpy as np


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``mat`` mod p.

    Returns (R, pivot_columns).  R has the same shape as ``mat``.
    """
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * _inv_mod(a[r, c], p)) % p
        other = np.nonzero(a[:, c])[0]
        for i in other:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    _, pivots = rref(mat, p)
    return len(pivots)


def _rref_gf2_bits(packed: list[int], cols: int) -> tuple[list[int], list[int]]:
    """RREF over GF(2) with rows packed into ints (bit c = column c)."""
    rows = list(packed)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if (rows[i] >> c) & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= pr
        pivots.append(c)
        r += 1
    return rows, pivots


def _kernel_basis_gf2(mat: np.ndarray) -> np.ndarray:
    cols = mat.shape[1]
    weights = 1 << np.arange(cols, dtype=object)
    packed = [int(v) for v in (mat % 2).astype(object) @ weights]
    rows, pivots = _rref_gf2_bits(packed, cols)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (rows[i] >> fc) & 1
    return basis


def kernel_basis(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space {v : mat @ v = 0 mod p}.

    Returns an array of shape (nullity, ncols); rows are basis vectors in a
    canonical (RREF-derived) order, so the result is deterministic.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    if p == 2:
        return _kernel_basis_gf2(mat)
    r, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    return basis


def span_vectors(basis: np.ndarray, p: int, limit: int | None = None) -> np.ndarray:
    """All p^k linear combinations of the basis rows (k = len(basis)).

    Raises OverflowError if the span would exceed ``limit`` vectors.
    """
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    total = p**k
    if limit is not None and total > limit:
        raise OverflowError(f"span of {k} vectors mod {p} has {total} elements > {limit}")
    if k == 0:
        return np.zeros((1, basis.shape[1] if basis.ndim == 2 else 0), dtype=np.int64)
    # mixed-radix digit table: row i holds the coefficients of combination i
    coeffs = np.zeros((total, k), dtype=np.int64)
    idx = np.arange(total)
    for j in range(k):
        coeffs[:, k - 1 - j] = idx % p
        idx //= p
    return (coeffs @ basis) % p
