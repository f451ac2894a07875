"""QR factorization, size reduction and exact integer helpers.

Bases are real ``m x n`` arrays whose columns are the basis vectors. Integer
transforms are numpy object arrays of Python ints so that column operations
and determinants stay exact.
"""

from __future__ import annotations

import math

import numpy as np

RANK_TOL = 1e-12


class RankDeficiencyError(ValueError):
    """The basis columns are (numerically) linearly dependent."""


class DimensionCapError(ValueError):
    """The rank exceeds what an exact search can handle at desk scale."""


def as_basis(basis) -> np.ndarray:
    """Validate and convert to a float ``m x n`` array with m >= n >= 1."""
    a = np.array(basis, dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise ValueError("a basis must be a 2-D matrix")
    m, n = a.shape
    if n < 1 or m < n:
        raise ValueError(f"need m >= n >= 1, got {m}x{n}")
    if not np.all(np.isfinite(a)):
        raise ValueError("basis entries must be finite")
    return a


def check_full_rank(a: np.ndarray, tol: float = RANK_TOL) -> None:
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0 or s[-1] <= tol * s[0] * max(a.shape):
        raise RankDeficiencyError("basis does not have full column rank")


def qr(basis) -> tuple[np.ndarray, np.ndarray]:
    """Thin QR factorization with a positive diagonal in R.

    LAPACK's Householder QR does the work; signs are then flipped so that
    every r_ii > 0 and the strictly lower triangle of R is exactly zero.

    Raises:
        RankDeficiencyError: if the columns are linearly dependent.
    """
    a = as_basis(basis)
    check_full_rank(a)
    q, r = np.linalg.qr(a, mode="reduced")
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    q = q * signs
    r = np.triu(r * signs[:, None])
    return q, r


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def identity_transform(n: int) -> np.ndarray:
    z = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            z[i, j] = 1 if i == j else 0
    return z


def as_transform(z) -> np.ndarray:
    arr = np.array(z, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        iv = int(v)
        if iv != v:
            raise ValueError("transform entries must be integers")
        out[idx] = iv
    return out


def apply_transform(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Float product ``a @ z`` for an object-dtype integer ``z``."""
    return a @ z.astype(float)


def size_reduce(r: np.ndarray, transform=None, start: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Make |r_ij| <= |r_ii|/2 for every i < j by integer column operations.

    Columns ``start..n-1`` are processed left to right, each against all
    earlier columns from the nearest one back. The diagonal is untouched.
    Returns new ``(r, transform)``; the inputs are not modified.
    """
    r = np.array(r, dtype=float)
    n = r.shape[1]
    z = identity_transform(n) if transform is None else as_transform(transform).copy()
    for j in range(max(start, 1), n):
        for i in range(j - 1, -1, -1):
            q = round_half_up(r[i, j] / r[i, i])
            if q:
                r[: i + 1, j] -= q * r[: i + 1, i]
                z[:, j] -= q * z[:, i]
    return r, z


def is_size_reduced(r: np.ndarray, tol: float = 1e-9) -> tuple[bool, tuple[int, int] | None]:
    """Check |r_ij| <= |r_ii|/2 (relative slack ``tol``); returns the first 0-based (i, j) that fails."""
    n = r.shape[1]
    for i in range(n):
        lim = abs(r[i, i]) / 2 * (1 + tol)
        for j in range(i + 1, n):
            if abs(r[i, j]) > lim:
                return False, (i, j)
    return True, None


def int_det(matrix) -> int:
    """Exact determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object)]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(z) -> bool:
    arr = np.asarray(z, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    if any(int(v) != v for v in arr.flat):
        return False
    return abs(int_det(arr)) == 1


def is_integral(a: np.ndarray) -> bool:
    return bool(np.all(a == np.round(a))) and bool(np.all(np.abs(a) < 2**52))


def gram_det_sqrt(a: np.ndarray) -> float:
    """sqrt(det(A^T A)), the lattice volume, from the R diagonal."""
    _, r = qr(a)
    return float(np.prod(np.diag(r)))
