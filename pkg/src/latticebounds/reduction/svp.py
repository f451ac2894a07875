"""Exact shortest-vector search on an upper-triangular R-factor.

Both routines return ``(length, coeffs)`` with ``length = ||R coeffs||``.
Among coefficient vectors of equal length (relative tolerance ``TIE_TOL``)
the witness is chosen canonically: the sign is fixed so the first nonzero
entry is positive, then the lexicographically smallest vector wins. This
makes the two routines comparable entry by entry.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence, Union

import numpy as np

from .linalg import DimensionCapError, RankDeficiencyError, round_half_up

SVP_CAP = 14
BRUTE_CAP = 6
TIE_TOL = 1e-9


def canonical(x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(v) for v in x)
    for v in x:
        if v:
            return x if v > 0 else tuple(-w for w in x)
    return x


def _check_r(r) -> np.ndarray:
    r = np.array(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("R must be square upper triangular")
    if np.any(np.diag(r) == 0):
        raise RankDeficiencyError("R has a zero diagonal entry")
    return np.triu(r)


class _Best:
    """Running minimum with canonical tie-breaking."""

    def __init__(self, bound2: float):
        self.len2 = bound2
        self.key: tuple[int, ...] | None = None

    def offer(self, len2: float, x: Sequence[int]) -> None:
        key = canonical(x)
        if self.key is None or len2 < self.len2 * (1 - TIE_TOL):
            self.len2, self.key = len2, key
        elif len2 <= self.len2 * (1 + TIE_TOL):
            if key < self.key:
                self.key = key
            self.len2 = min(self.len2, len2)


def _enumerate(r: np.ndarray) -> tuple[float, tuple[int, ...]]:
    """Schnorr-Euchner depth-first search; the radius starts at ||r_1|| and shrinks."""
    n = r.shape[0]
    diag = np.diag(r).copy()
    mu = r / diag[:, None]
    d2 = diag * diag
    best = _Best(float(d2[0]))
    best.offer(float(d2[0]), [1] + [0] * (n - 1))
    x = [0] * n

    def search(i: int, partial: float, top: bool) -> None:
        c = -sum(mu[i, j] * x[j] for j in range(i + 1, n))
        centre = round_half_up(c)
        up_first = c >= centre
        for t in itertools.count():
            if t == 0:
                cands = (centre,)
            elif up_first:
                cands = (centre + t, centre - t)
            else:
                cands = (centre - t, centre + t)
            grew = False
            for xi in cands:
                d = partial + d2[i] * (xi - c) ** 2
                if d > best.len2 * (1 + TIE_TOL):
                    continue
                grew = True
                # the top nonzero coordinate is taken positive (x and -x tie)
                if top and xi < 0:
                    continue
                x[i] = xi
                if i == 0:
                    if not (top and xi == 0):
                        best.offer(d, x)
                else:
                    search(i - 1, d, top and xi == 0)
            if not grew:
                break
        x[i] = 0

    search(n - 1, 0.0, True)
    return best.len2, best.key


def svp_enum(r) -> tuple[float, np.ndarray]:
    """Shortest nonzero vector of the lattice spanned by the columns of R.

    The search first LLL-reduces a copy of R (which only shortens the
    enumeration tree), enumerates in the reduced coordinates and maps the
    witness back.

    Raises:
        DimensionCapError: if the rank exceeds 14.
    """
    from .lll import lll_r  # local import: lll uses svp for its summary

    r = _check_r(r)
    n = r.shape[0]
    if n > SVP_CAP:
        raise DimensionCapError(f"exact SVP is capped at rank {SVP_CAP}, got {n}")
    r_red, z = lll_r(r)
    best_len2, _ = _enumerate(r_red)
    # The LLL change of basis does not preserve lexicographic order, so the
    # tie-break is redone over every minimal vector in original coordinates.
    x = min(_all_minimal(r_red, z, best_len2))
    coeffs = np.array(x, dtype=object)
    length = float(np.linalg.norm(r @ coeffs.astype(float)))
    return length, coeffs


def _all_minimal(r_red: np.ndarray, z: np.ndarray, best_len2: float) -> list[tuple[int, ...]]:
    """Every canonical vector within the tie tolerance of ``best_len2``, in original coordinates."""
    n = r_red.shape[0]
    diag = np.diag(r_red)
    mu = r_red / diag[:, None]
    d2 = diag * diag
    limit = best_len2 * (1 + TIE_TOL)
    found: list[tuple[int, ...]] = []
    x = [0] * n

    def search(i: int, partial: float, top: bool) -> None:
        c = -sum(mu[i, j] * x[j] for j in range(i + 1, n))
        span = math.sqrt(max(limit - partial, 0.0) / d2[i])
        for xi in range(math.ceil(c - span), math.floor(c + span) + 1):
            if top and xi < 0:
                continue
            d = partial + d2[i] * (xi - c) ** 2
            if d > limit:
                continue
            x[i] = xi
            if i == 0:
                if not (top and xi == 0):
                    found.append(canonical(z.dot(np.array(x, dtype=object))))
            else:
                search(i - 1, d, top and xi == 0)
        x[i] = 0

    search(n - 1, 0.0, True)
    return found


def provable_box(r, radius: float | None = None) -> list[int]:
    """Per-coordinate bounds |x_i| <= ||row_i(R^-1)|| * radius.

    Any x with ||R x|| <= radius satisfies these bounds (Cauchy-Schwarz on
    x = R^-1 (R x)). The default radius is the first column norm, which some
    nonzero lattice vector attains.
    """
    r = _check_r(r)
    if radius is None:
        radius = float(np.linalg.norm(r[:, 0]))
    rinv = np.linalg.inv(r)
    rows = np.linalg.norm(rinv, axis=1)
    return [int(math.floor(v * radius * (1 + 1e-12) + 1e-12)) for v in rows]


def _cartesian(ranges: list[np.ndarray]) -> np.ndarray:
    if not ranges:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*ranges, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def brute_force_svp(r, box: Union[int, Sequence[int]], chunk: int = 1 << 18) -> tuple[float, np.ndarray]:
    """Exhaustive minimum of ||R x|| over nonzero integer x with |x_i| <= box_i.

    ``box`` is a single radius or one radius per coordinate (see
    :func:`provable_box`).
    """
    r = _check_r(r)
    n = r.shape[0]
    if n > BRUTE_CAP:
        raise DimensionCapError(f"brute force is capped at rank {BRUTE_CAP}, got {n}")
    bounds = [int(box)] * n if np.isscalar(box) else [int(b) for b in box]
    if len(bounds) != n or min(bounds) < 0:
        raise ValueError("box must give a nonnegative radius per coordinate")
    if max(bounds) == 0:
        raise ValueError("box must contain a nonzero vector")
    ranges = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    split = 0
    while split < n and math.prod(len(rg) for rg in ranges[split:]) > chunk:
        split += 1
    tail = _cartesian(ranges[split:])
    best = _Best(math.inf)
    for head in itertools.product(*(rg.tolist() for rg in ranges[:split])):
        block = np.hstack([np.broadcast_to(np.array(head, dtype=np.int64), (tail.shape[0], split)), tail])
        len2 = np.einsum("ij,ij->i", block @ r.T, block @ r.T)
        nonzero = np.any(block != 0, axis=1)
        len2 = np.where(nonzero, len2, np.inf)
        m = len2.min()
        if m > best.len2 * (1 + TIE_TOL):
            continue
        for idx in np.flatnonzero(len2 <= m * (1 + TIE_TOL)):
            best.offer(float(len2[idx]), block[idx].tolist())
    coeffs = np.array(best.key, dtype=object)
    return float(np.linalg.norm(r @ coeffs.astype(float))), coeffs
