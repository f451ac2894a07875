"""Upper bounds on the KZ constant alpha_n.

alpha_n is the supremum of lambda(A)^2 / r_nn^2 over KZ-reduced bases of rank
n. No exact value is known for n >= 2, so everything here is an upper bound.
All evaluations go through log space; the product bound in particular grows
like exp(ln(n)^2 / 2).
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Callable

from . import hermite
from .bounds import BoundValue, require_range

KZ_METHODS = MappingProxyType({
    "schnorr87": 1,
    "hs08": 2,
    "wc18": 9,
    "new": 109,
    "product": 1,
})


def _log_power_of_log(x: float) -> float:
    # ln of x^(ln(x)/2)
    lx = math.log(x)
    return 0.5 * lx * lx


def log_kz_upper(n: int, method: str) -> float:
    """ln of the chosen KZ-constant upper bound (no range check)."""
    if method == "schnorr87":
        return (1 + math.log(n)) * math.log(n)
    if method == "hs08":
        return math.log(n) + math.fsum(math.log(k) / (k - 1) for k in range(2, n + 1))
    if method == "wc18":
        return math.log(7 * (n / 8 + 6 / 5)) + _log_power_of_log((n - 1) / 8)
    if method == "new":
        return math.log(8.1 * (n / 8.5 + 2)) + _log_power_of_log((2 * n - 1) / 17)
    if method == "product":
        return kz_upper_product(n).log_value
    raise KeyError(f"unknown KZ bound method {method!r}")


def kz_upper(n: int, method: str) -> BoundValue:
    """Upper bound on alpha_n by the named method.

    Methods: ``schnorr87`` n^(1 + ln n); ``hs08`` n prod_{k=2}^n k^(1/(k-1))
    (n >= 2); ``wc18`` 7(n/8 + 6/5)((n-1)/8)^(ln((n-1)/8)/2) (n >= 9);
    ``new`` 8.1(n/8.5 + 2)((2n-1)/17)^(ln((2n-1)/17)/2) (n >= 109);
    ``product`` the Hermite product of :func:`kz_upper_product`.

    Raises:
        ValidityError: below the method's range.
    """
    if method not in KZ_METHODS:
        raise KeyError(f"unknown KZ bound method {method!r}")
    if n < 1:
        raise ValueError("rank must be >= 1")
    require_range(n, KZ_METHODS[method], f"KZ bound {method!r}")
    if method == "product":
        return kz_upper_product(n)
    return BoundValue.from_log(log_kz_upper(n, method), "upper", method, KZ_METHODS[method])


def kz_upper_product(
    n: int,
    hermite_bound: Callable[[int], BoundValue] = hermite.best_upper,
) -> BoundValue:
    """gamma_n * prod_{k=2}^n gamma_k^(1/(k-1)) with each gamma_k replaced by a bound.

    ``hermite_bound`` supplies the factor for each rank; by default the exact
    value where known and the best upper bound otherwise. n = 1 gives 1.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    if n == 1:
        return BoundValue(1.0, "upper", "product", 1, log_value=0.0)
    terms = [hermite_bound(n).log_value]
    terms.extend(hermite_bound(k).log_value / (k - 1) for k in range(2, n + 1))
    return BoundValue.from_log(math.fsum(terms), "upper", "product", 1)


def kz_candidates(n: int) -> list[BoundValue]:
    return [kz_upper(n, m) for m, start in KZ_METHODS.items() if n >= start]


def kz_best_upper(n: int) -> BoundValue:
    """Smallest upper bound on alpha_n over every method valid at n.

    Validity ranges are respected: for 9 <= n <= 108 the ``new`` bound is
    simply not a candidate.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    return min(kz_candidates(n), key=lambda b: b.log_value)
