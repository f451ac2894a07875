"""Bounds on Schnorr's constant beta_k and Rankin's constant gamma_{2k,k}.

beta_k measures the drop of the R-factor diagonal across a 2k-column
KZ-reduced basis; gamma_{2k,k} is the Rankin generalisation of Hermite's
constant, tied to beta_k by gamma_{2k,k} <= beta_k^(k/2) and its converse
beta_k >= gamma_{2k,k}^(2/k).

Rankin values overflow doubles near k = 700, so every bound carries its
natural log in ``log_value``.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Optional

from .bounds import BoundValue, ValidityError, require_range

LN2 = math.log(2.0)
SIMPLE_CONSTANT = 0.08698
RANKIN_UPPER_CONSTANT = 0.0833

RANKIN_EXACT = MappingProxyType({
    (1, 1): 1.0,
    (4, 2): 1.5,
    (6, 2): 3 ** (2 / 3),
    (8, 2): 3.0,
    (8, 3): 4.0,
    (8, 4): 4.0,
})

# Known bracket for gamma_{6,3}; not an exact value.
RANKIN_6_3_BOUNDS = (4 / math.sqrt(3), math.sqrt(6))

# beta_k for small k: (value, kind)
SCHNORR_SMALL = MappingProxyType({
    1: (4 / 3, "exact"),
    2: (1.59, "upper"),
    3: (1.91, "upper"),
    4: (2.25, "upper"),
})

SCHNORR_UPPER_METHODS = MappingProxyType({"schnorr87": 1, "old": 1, "new": 5, "simple": 5})
SCHNORR_LOWER_METHODS = MappingProxyType({"old": 2, "new": 2})
RANKIN_METHODS = MappingProxyType({"old_lower": 2, "old_upper": 2, "new_lower": 5, "new_upper": 5})


def leading_constant() -> float:
    """2^(3 ln 2) / 17^(2 ln 2), the multiplier of the sharp beta_k bound."""
    return math.exp(3 * LN2 * LN2 - 2 * LN2 * math.log(17))


def schnorr_small(k: int) -> Optional[BoundValue]:
    """Tabulated beta_k for k <= 4 (exact only for k = 1)."""
    if k not in SCHNORR_SMALL:
        return None
    value, kind = SCHNORR_SMALL[k]
    return BoundValue(value, kind, "table", k, k)


def log_schnorr_upper(k: int, method: str) -> float:
    """ln of an upper bound on beta_k, evaluated without a range check."""
    if method == "schnorr87":
        return math.log(4 * k * k)
    if method == "old":
        return (2 * LN2 + 1 / k) * math.log1p(k / 2)
    if method == "new":
        return (math.log(leading_constant()) + math.log((4 * k - 1) / 17) / (2 * k - 1)
                + 18 / k + 2 * LN2 * math.log(k - 0.5))
    if method == "simple":
        return math.log(SIMPLE_CONSTANT) + 18 / k + 2 * LN2 * math.log(k - 0.5)
    raise KeyError(f"unknown Schnorr upper method {method!r}")


def schnorr_upper(k: int, method: str) -> BoundValue:
    """Upper bound on beta_k.

    ``schnorr87`` 4k^2; ``old`` (1 + k/2)^(2 ln 2 + 1/k);
    ``new`` 2^(3 ln 2)/17^(2 ln 2) ((4k-1)/17)^(1/(2k-1)) e^(18/k) (k-1/2)^(2 ln 2);
    ``simple`` 0.08698 e^(18/k) (k-1/2)^(2 ln 2). The last two need k >= 5.

    Raises:
        ValidityError: below the method's range.
    """
    if method not in SCHNORR_UPPER_METHODS:
        raise KeyError(f"unknown Schnorr upper method {method!r}")
    start = SCHNORR_UPPER_METHODS[method]
    require_range(k, start, f"Schnorr upper bound {method!r}")
    return BoundValue.from_log(log_schnorr_upper(k, method), "upper", method, start)


def log_schnorr_lower(k: int, method: str) -> float:
    if method == "old":
        return math.log(k / 12)
    if method == "new":
        return (2 / k) * math.log(4 / (math.pi**2 * math.sqrt(k))) + math.log(2 * k / (math.pi * math.exp(1.5)))
    raise KeyError(f"unknown Schnorr lower method {method!r}")


def schnorr_lower(k: int, method: str) -> BoundValue:
    """Lower bound on beta_k: ``old`` k/12 or ``new`` (4/(pi^2 sqrt k))^(2/k) 2k/(pi e^1.5).

    Raises:
        ValidityError: for k < 2.
    """
    if method not in SCHNORR_LOWER_METHODS:
        raise KeyError(f"unknown Schnorr lower method {method!r}")
    require_range(k, 2, f"Schnorr lower bound {method!r}")
    return BoundValue.from_log(log_schnorr_lower(k, method), "lower", method, 2)


def schnorr_best_upper(k: int) -> BoundValue:
    """Table entry for k <= 4, else the smallest valid upper bound."""
    small = schnorr_small(k)
    if small is not None:
        return small
    cands = [schnorr_upper(k, m) for m, s in SCHNORR_UPPER_METHODS.items() if k >= s]
    return min(cands, key=lambda b: b.log_value)


def rankin_exact(n: int, ell: int) -> Optional[BoundValue]:
    """Known exact gamma_{n,ell}, or ``None``."""
    if not 1 <= ell <= n:
        raise ValueError("need 1 <= ell <= n")
    value = RANKIN_EXACT.get((n, ell))
    if value is None:
        return None
    return BoundValue(value, "exact", "table", n, n)


def rankin_known_bounds(n: int, ell: int) -> Optional[tuple[BoundValue, BoundValue]]:
    """(lower, upper) bracket for the one partially known value gamma_{6,3}."""
    if (n, ell) != (6, 3):
        return None
    lo, hi = RANKIN_6_3_BOUNDS
    return BoundValue(lo, "lower", "table", 6, 6), BoundValue(hi, "upper", "table", 6, 6)


def log_rankin(k: int, method: str) -> float:
    """ln of a bound on gamma_{2k,k} (no range check)."""
    if method == "old_lower":
        return (k / 2) * math.log(k / 12)
    if method == "old_upper":
        return (k * LN2 + 0.5) * math.log1p(k / 2)
    if method == "new_lower":
        return math.log(4 / (math.pi**2 * math.sqrt(k))) + (k / 2) * math.log(2 * k / (math.pi * math.exp(1.5)))
    if method == "new_upper":
        return (9 + (k / 2) * math.log(RANKIN_UPPER_CONSTANT) + k / (4 * k - 2) * math.log((4 * k - 1) / 17)
                + k * LN2 * math.log(k - 0.5))
    raise KeyError(f"unknown Rankin bound method {method!r}")


def rankin_bounds(k: int, method: str) -> BoundValue:
    """Bounds on gamma_{2k,k}.

    ``old_lower`` (k/12)^(k/2) and ``old_upper`` (1 + k/2)^(k ln 2 + 1/2) for
    k >= 2; ``new_lower`` 4/(pi^2 sqrt k) (2k/(pi e^1.5))^(k/2) and
    ``new_upper`` e^9 0.0833^(k/2) ((4k-1)/17)^(k/(4k-2)) (k-1/2)^(k ln 2) for
    k >= 5.
    """
    if method not in RANKIN_METHODS:
        raise KeyError(f"unknown Rankin bound method {method!r}")
    start = RANKIN_METHODS[method]
    require_range(k, start, f"Rankin bound {method!r}")
    kind = "lower" if method.endswith("lower") else "upper"
    return BoundValue.from_log(log_rankin(k, method), kind, method, start)


def rankin_upper_via_beta(k: int) -> BoundValue:
    """gamma_{2k,k} <= beta_k^(k/2) with beta_k bounded by the sharp Schnorr bound."""
    require_range(k, 5, "Rankin bound via beta")
    log_beta = schnorr_upper(k, "new").log_value
    return BoundValue.from_log((k / 2) * log_beta, "upper", "via_beta", 5)


__all__ = [
    "RANKIN_EXACT",
    "RANKIN_6_3_BOUNDS",
    "SCHNORR_SMALL",
    "ValidityError",
    "leading_constant",
    "rankin_bounds",
    "rankin_exact",
    "rankin_known_bounds",
    "rankin_upper_via_beta",
    "schnorr_best_upper",
    "schnorr_lower",
    "schnorr_small",
    "schnorr_upper",
]
