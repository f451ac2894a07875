"""Korkine-Zolotarev reduction and the KZ / block-2k reducedness predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import (
    DimensionCapError,
    apply_transform,
    as_basis,
    identity_transform,
    is_size_reduced,
    qr,
    size_reduce,
)
from .lll import ReductionResult, lll_r
from .svp import svp_enum

KZ_CAP = 12
DEFAULT_TOL = 1e-9


def unimodular_completion(x) -> np.ndarray:
    """Integer matrix U with |det U| = 1 whose first column is the primitive vector x.

    Row operations of the Euclidean algorithm take x to e_1; U accumulates
    their inverses as column operations, so U e_1 = x.

    Raises:
        ValueError: if x is zero or its entries share a common factor.
    """
    x = [int(v) for v in x]
    m = len(x)
    if not any(x):
        raise ValueError("cannot complete the zero vector")
    u = identity_transform(m)
    y = list(x)
    while sum(1 for v in y if v) > 1:
        p = min((i for i in range(m) if y[i]), key=lambda i: abs(y[i]))
        for j in range(m):
            if j != p and y[j]:
                q = y[j] // y[p]
                y[j] -= q * y[p]
                # row_j -= q row_p  <=>  column_p += q column_j in the inverse
                u[:, p] += q * u[:, j]
    p = next(i for i in range(m) if y[i])
    if abs(y[p]) != 1:
        raise ValueError("vector is not primitive")
    if p:
        y[0], y[p] = y[p], y[0]
        u[:, [0, p]] = u[:, [p, 0]]
    if y[0] == -1:
        u[:, 0] = -u[:, 0]
    assert [int(v) for v in u[:, 0]] == x
    return u


def _embed(u: np.ndarray, n: int, start: int) -> np.ndarray:
    full = identity_transform(n)
    full[start:, start:] = u
    return full


def kz_reduce(basis, tol: float = DEFAULT_TOL) -> ReductionResult:
    """KZ-reduce the columns of ``basis`` (rank at most 12).

    For each i the shortest vector of the trailing block R[i:, i:] is moved
    to position i through a unimodular completion, the remaining columns are
    LLL-reduced in projection, and R is recomputed from the updated basis.
    A final size reduction enforces |r_ij| <= r_ii / 2.

    Raises:
        DimensionCapError: if the rank exceeds 12.
        RankDeficiencyError: if the basis is not of full column rank.
    """
    a = as_basis(basis)
    n = a.shape[1]
    if n > KZ_CAP:
        raise DimensionCapError(f"KZ reduction is capped at rank {KZ_CAP}, got {n}")
    _, r = qr(a)
    _, z = lll_r(r)
    _, r = qr(apply_transform(a, z))
    for i in range(n - 1):
        lam, x = svp_enum(r[i:, i:])
        if r[i, i] <= lam * (1 + tol):
            # already shortest: leave the column where it is
            continue
        u = unimodular_completion(x)
        z = z.dot(_embed(u, n, i))
        _, r = qr(apply_transform(a, z))
        if i + 2 < n:
            _, zt = lll_r(r[i + 1:, i + 1:])
            z = z.dot(_embed(zt, n, i + 1))
            _, r = qr(apply_transform(a, z))
    r, fix = size_reduce(r)
    z = z.dot(fix)
    reduced = apply_transform(a, z)
    _, r = qr(reduced)
    return ReductionResult(reduced, z, r, float(r[0, 0]))


@dataclass(frozen=True)
class ReducednessCertificate:
    """Verdict of a reducedness predicate; truthy when the basis is reduced.

    On failure ``index`` is the 1-based row i of the first violated
    condition, ``condition`` names it (``"size"`` or ``"shortest"``), and
    ``detail`` gives the offending numbers. ``block`` is the 0-based block
    offset i of R[ik+1:(i+2)k, ik+1:(i+2)k] for block predicates.
    """

    ok: bool
    index: Optional[int] = None
    condition: Optional[str] = None
    detail: str = ""
    block: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _as_r(r) -> np.ndarray:
    r = np.array(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("R must be square")
    return r


def is_kz_reduced(r, tol: float = DEFAULT_TOL) -> ReducednessCertificate:
    """Check size reduction and |r_ii| = lambda(R[i:, i:]) for every i (relative ``tol``)."""
    r = _as_r(r)
    n = r.shape[0]
    if n > KZ_CAP:
        raise DimensionCapError(f"KZ check is capped at rank {KZ_CAP}, got {n}")
    for i in range(n):
        lim = abs(r[i, i]) / 2 * (1 + tol)
        for j in range(i + 1, n):
            if abs(r[i, j]) > lim:
                return ReducednessCertificate(
                    False, i + 1, "size", f"|r[{i + 1},{j + 1}]| = {abs(r[i, j]):.17g} > |r_ii|/2 = {abs(r[i, i]) / 2:.17g}")
        lam, _ = svp_enum(r[i:, i:])
        if lam < abs(r[i, i]) * (1 - tol):
            return ReducednessCertificate(
                False, i + 1, "shortest", f"trailing block has a vector of length {lam:.17g} < |r_ii| = {abs(r[i, i]):.17g}")
    return ReducednessCertificate(True)


def is_block2k_reduced(r, k: int, tol: float = DEFAULT_TOL) -> ReducednessCertificate:
    """Global size reduction plus KZ reducedness of every overlapping 2k x 2k diagonal block.

    Raises:
        ValueError: if the rank is not l*k with l >= 2.
        DimensionCapError: if 2k exceeds 12.
    """
    r = _as_r(r)
    n = r.shape[0]
    if k < 1 or n % k or n // k < 2:
        raise ValueError(f"rank {n} is not a multiple l*k with l >= 2 for k = {k}")
    if 2 * k > KZ_CAP:
        raise DimensionCapError(f"block size 2k = {2 * k} exceeds {KZ_CAP}")
    ok, where = is_size_reduced(r, tol)
    if not ok:
        i, j = where
        return ReducednessCertificate(False, i + 1, "size", f"|r[{i + 1},{j + 1}]| > |r_ii|/2")
    for b in range(n // k - 1):
        s = b * k
        cert = is_kz_reduced(r[s:s + 2 * k, s:s + 2 * k], tol)
        if not cert:
            return ReducednessCertificate(False, s + cert.index, cert.condition, cert.detail, b)
    return ReducednessCertificate(True)
