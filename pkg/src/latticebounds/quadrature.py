"""Adaptive composite Simpson quadrature with an error estimate."""

from __future__ import annotations

from typing import Callable


class QuadratureError(RuntimeError):
    """The recursion depth ran out before the tolerance was met."""


def adaptive_simpson(
    f: Callable,
    a,
    b,
    tol: float = 1e-12,
    max_depth: int = 60,
):
    """Integrate ``f`` over [a, b] by recursive interval halving.

    Works with any numeric type closed under ``+ - * /`` (floats or mpmath
    numbers). Each panel is accepted once the classical estimate
    |S(left) + S(right) - S(whole)| / 15 falls below its share of ``tol``;
    the accepted panels include the Richardson correction.

    Returns:
        ``(value, error)`` where ``error`` is the sum of accepted panel
        estimates (zero for an empty interval).

    Raises:
        QuadratureError: if ``max_depth`` is exceeded.
    """
    if a == b:
        return a - a, abs(a - a)
    if a > b:
        value, err = adaptive_simpson(f, b, a, tol, max_depth)
        return -value, err

    fa, fb = f(a), f(b)
    m = (a + b) / 2
    fm = f(m)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    value = a - a
    error = abs(a - a)
    # explicit stack; left panels are processed first so sums are deterministic
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s_whole, panel_tol, depth = stack.pop()
        mid = (lo + hi) / 2
        lm, rm = (lo + mid) / 2, (mid + hi) / 2
        flm, frm = f(lm), f(rm)
        s_left = (mid - lo) / 6 * (flo + 4 * flm + fmid)
        s_right = (hi - mid) / 6 * (fmid + 4 * frm + fhi)
        delta = s_left + s_right - s_whole
        if abs(delta) <= 15 * panel_tol:
            value += s_left + s_right + delta / 15
            error += abs(delta) / 15
            continue
        if depth >= max_depth:
            raise QuadratureError(f"no convergence on [{lo}, {hi}]")
        stack.append((mid, hi, fmid, frm, fhi, s_right, panel_tol / 2, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, s_left, panel_tol / 2, depth + 1))
    return value, error
