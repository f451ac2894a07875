"""LLL reduction carried out directly on the R-factor."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import (
    RankDeficiencyError,
    apply_transform,
    as_basis,
    identity_transform,
    qr,
    round_half_up,
    size_reduce,
)

MAX_SWAPS = 1_000_000


@dataclass(frozen=True)
class ReductionResult:
    """Reduced basis, the integer transform that produced it and its R-factor.

    ``reduced_basis = original @ transform``. ``shortest_length`` is the
    exact lattice minimum when it was computed (always for KZ, and for LLL
    when the rank is within the SVP cap).
    """

    reduced_basis: np.ndarray
    transform: np.ndarray
    r: np.ndarray
    shortest_length: Optional[float]

    @property
    def rank(self) -> int:
        return self.r.shape[0]

    @property
    def volume(self) -> float:
        return float(np.prod(np.abs(np.diag(self.r))))


def _givens_rows(r: np.ndarray, k: int) -> None:
    """Zero r[k, k-1] by rotating rows k-1 and k in place; keep both diagonals positive."""
    a, b = r[k - 1, k - 1], r[k, k - 1]
    h = math.hypot(a, b)
    c, s = a / h, b / h
    top = r[k - 1, k - 1:].copy()
    bot = r[k, k - 1:].copy()
    r[k - 1, k - 1:] = c * top + s * bot
    r[k, k - 1:] = -s * top + c * bot
    r[k, k - 1] = 0.0
    if r[k - 1, k - 1] < 0:
        r[k - 1, k - 1:] *= -1
    if r[k, k] < 0:
        r[k, k:] *= -1


def lll_r(r, delta: float = 0.99, transform=None) -> tuple[np.ndarray, np.ndarray]:
    """LLL-reduce the lattice spanned by the columns of an upper-triangular R.

    Size reduction is done column by column and swaps are repaired with a
    Givens rotation, so no Gram-Schmidt recomputation is needed. Returns
    ``(R', Z)`` with ``R'`` upper triangular for the basis ``R Z``.
    """
    if not 0.25 < delta <= 1:
        raise ValueError("delta must lie in (0.25, 1]")
    r = np.triu(np.array(r, dtype=float))
    n = r.shape[0]
    if np.any(np.diag(r) == 0):
        raise RankDeficiencyError("R has a zero diagonal entry")
    # work with a positive diagonal
    flip = np.where(np.diag(r) < 0, -1.0, 1.0)
    r = r * flip[:, None]
    z = identity_transform(n) if transform is None else transform.copy()
    k = 1
    swaps = 0
    while k < n:
        for i in range(k - 1, -1, -1):
            q = round_half_up(r[i, k] / r[i, i])
            if q:
                r[: i + 1, k] -= q * r[: i + 1, i]
                z[:, k] -= q * z[:, i]
        if delta * r[k - 1, k - 1] ** 2 > r[k - 1, k] ** 2 + r[k, k] ** 2:
            r[:, [k - 1, k]] = r[:, [k, k - 1]]
            z[:, [k - 1, k]] = z[:, [k, k - 1]]
            _givens_rows(r, k)
            swaps += 1
            if swaps > MAX_SWAPS:
                raise RuntimeError("LLL did not terminate; the basis is too ill-conditioned")
            k = max(k - 1, 1)
        else:
            k += 1
    return r, z


def lll(basis, delta: float = 0.99) -> ReductionResult:
    """LLL-reduce the columns of ``basis`` (size reduction plus the Lovasz condition).

    The returned R-factor is recomputed from the reduced basis and size
    reduced once more, so it describes ``reduced_basis`` exactly up to
    rounding.

    Raises:
        RankDeficiencyError: if the basis is not of full column rank.
    """
    from .svp import SVP_CAP, svp_enum

    a = as_basis(basis)
    _, r0 = qr(a)
    _, z = lll_r(r0, delta)
    reduced = apply_transform(a, z)
    _, r = qr(reduced)
    r, fix = size_reduce(r)
    z = z.dot(fix)
    reduced = apply_transform(a, z)
    shortest = svp_enum(r)[0] if r.shape[0] <= SVP_CAP else None
    return ReductionResult(reduced, z, r, shortest)


def satisfies_lovasz(r: np.ndarray, delta: float = 0.99, tol: float = 1e-9) -> tuple[bool, Optional[int]]:
    """Check delta r_ii^2 <= r_{i,i+1}^2 + r_{i+1,i+1}^2; returns the first failing 0-based i."""
    n = r.shape[0]
    for i in range(n - 1):
        lhs = delta * r[i, i] ** 2
        rhs = r[i, i + 1] ** 2 + r[i + 1, i + 1] ** 2
        if lhs > rhs * (1 + tol):
            return False, i
    return True, None
