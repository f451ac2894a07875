"""Hermite's constant: exact values and upper bounds.

Hermite's constant gamma_n is the supremum of lambda(A)^2 / det(A^T A)^(1/n)
over rank-n lattices. It is known exactly only for n = 1..8 and n = 24; every
other rank has to make do with an upper bound.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Optional

from .bounds import BoundValue, ValidityError, require_range
from .specfun import gamma_half, ln_gamma

HERMITE_EXACT = MappingProxyType({
    1: 1.0,
    2: 2 / math.sqrt(3),
    3: 2 ** (1 / 3),
    4: math.sqrt(2),
    5: 8 ** (1 / 5),
    6: (64 / 3) ** (1 / 6),
    7: 64 ** (1 / 7),
    8: 2.0,
    24: 4.0,
})

# method -> (first valid rank, slope, intercept)
LINEAR_METHODS = MappingProxyType({
    "lls": (2, 2 / 3, 0.0),
    "nv": (1, 1 / 4, 1.0),
    "neu": (2, 1 / 7, 6 / 7),
    "wc18": (1, 1 / 8, 6 / 5),
    "new": (1, 1 / 8.5, 2.0),
})


def exact_hermite(n: int) -> Optional[BoundValue]:
    """Exact gamma_n if it is known (n in 1..8 or 24), otherwise ``None``."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    if n not in HERMITE_EXACT:
        return None
    return BoundValue(HERMITE_EXACT[n], "exact", "table", n, n)


def log_blichfeldt(n: int) -> float:
    """ln of (2/pi) Gamma(2 + n/2)^(2/n)."""
    if n <= 200:
        log_g = math.log(gamma_half(n + 4))
    else:
        log_g = ln_gamma(2 + n / 2).value
    return math.log(2 / math.pi) + 2 * log_g / n


def blichfeldt_upper(n: int) -> BoundValue:
    """Blichfeldt's nonlinear bound (2/pi) Gamma(2 + n/2)^(2/n), valid for all n >= 1."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    return BoundValue.from_log(log_blichfeldt(n), "upper", "blichfeldt", 1)


def linear_upper(n: int, method: str) -> BoundValue:
    """One of the linear upper bounds on gamma_n.

    ``lls`` 2n/3 (n >= 2), ``nv`` 1 + n/4, ``neu`` (n+6)/7 (n >= 2),
    ``wc18`` n/8 + 6/5 and ``new`` n/8.5 + 2.

    Raises:
        ValidityError: if n is below the method's range.
        KeyError: on an unknown method.
    """
    try:
        start, slope, intercept = LINEAR_METHODS[method]
    except KeyError:
        raise KeyError(f"unknown Hermite bound method {method!r}") from None
    require_range(n, start, f"Hermite bound {method!r}")
    if method == "neu":
        value = (n + 6) / 7
    elif method == "new":
        value = n / 8.5 + 2
    else:
        value = slope * n + intercept
    return BoundValue(value, "upper", method, start)


def upper_candidates(n: int) -> list[BoundValue]:
    """Every upper bound method that is valid at rank n."""
    out = [blichfeldt_upper(n)]
    for method, (start, _, _) in LINEAR_METHODS.items():
        if n >= start:
            out.append(linear_upper(n, method))
    return out


def best_upper(n: int) -> BoundValue:
    """The exact value when known, else the smallest valid upper bound."""
    exact = exact_hermite(n)
    if exact is not None:
        return exact
    return min(upper_candidates(n), key=lambda b: b.value)


__all__ = [
    "HERMITE_EXACT",
    "LINEAR_METHODS",
    "ValidityError",
    "best_upper",
    "blichfeldt_upper",
    "exact_hermite",
    "linear_upper",
    "upper_candidates",
]
