"""Mechanical re-verification of the finite numeric steps behind the bounds.

Every check is phrased as "some quantity is strictly positive". The quantity
is evaluated as an interval at the policy's working precision (or, for the
two integral inequalities, by adaptive quadrature with its error estimate),
and the claim passes only when the midpoint exceeds ``margin_factor`` times
the accumulated half-width. A grid claim passes only if every point does.

Statements that hold for all integers are verified on finite grids only;
their reports say so.
"""

from __future__ import annotations

import fnmatch
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from mpmath import iv, mp

from .quadrature import adaptive_simpson
from .specfun import (
    PrecisionPolicy,
    digamma_iv,
    euler_gamma_iv,
    gamma_half_iv,
    interval_precision,
    ln_gamma_iv,
    split_interval,
    to_iv,
    zeta_iv,
)

DEFAULT_POLICY = PrecisionPolicy.highprec(256)
QUAD_TOL = 1e-12


@dataclass(frozen=True)
class ClaimReport:
    """Outcome of one proof obligation.

    ``computed_margin`` is the amount by which the strict inequality holds
    (negative when it is violated); ``required_margin`` is ``margin_factor``
    times the accumulated error bound.
    """

    claim_id: str
    statement: str
    computed_margin: float
    required_margin: float
    precision_bits: int
    error_bound: float = 0.0
    note: str = ""

    @property
    def status(self) -> str:
        ok = self.required_margin >= 0 and self.computed_margin > self.required_margin
        return "pass" if ok else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "computed_margin": self.computed_margin,
            "required_margin": self.required_margin,
            "error_bound": self.error_bound,
            "status": self.status,
            "precision_bits": self.precision_bits,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimReport":
        return cls(d["claim_id"], d["statement"], d["computed_margin"], d["required_margin"],
                   d["precision_bits"], d.get("error_bound", 0.0), d.get("note", ""))


def _round_up(x) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if f < x else f


def _report(claim_id, statement, margin, error, policy, note="") -> ClaimReport:
    err = _round_up(error)
    return ClaimReport(
        claim_id=claim_id,
        statement=statement,
        computed_margin=float(margin),
        required_margin=_round_up(policy.margin_factor * err),
        precision_bits=policy.bits,
        error_bound=err,
        note=note,
    )


def _from_interval(claim_id, statement, enclosure, policy, note="") -> ClaimReport:
    mid, rad = split_interval(enclosure)
    return _report(claim_id, statement, mid, rad, policy, note)


def _from_grid(claim_id, statement, points: Iterable, policy, note="") -> ClaimReport:
    """Aggregate ``(label, enclosure)`` pairs into one grid claim.

    When every point passes on its own, the report carries the point with the
    smallest margin (a quantity that settles as precision grows). Otherwise it
    carries the failing point whose midpoint is smallest relative to its
    half-width, so the claim passes exactly when every point does.
    """
    worst_fail = None
    smallest = None
    count = 0
    for label, enc in points:
        mid, rad = split_interval(enc)
        count += 1
        if not mid > policy.margin_factor * rad:
            ratio = mid / rad if rad else -math.inf
            if worst_fail is None or ratio < worst_fail[0]:
                worst_fail = (ratio, mid, rad, label)
        if smallest is None or mid < smallest[0]:
            smallest = (mid, rad, label)
    if worst_fail is not None:
        _, mid, rad, label = worst_fail
        tail = f"{count} points; fails at {label}; smallest margin {float(smallest[0]):.6g} at {smallest[2]}"
    else:
        mid, rad, label = smallest
        tail = f"{count} points, all passing; smallest margin at {label}"
    return _report(claim_id, statement, mid, rad, policy, f"{note}; {tail}" if note else tail)


def half_grid(lo: Fraction, hi: Fraction, step: Fraction = Fraction(1, 2)) -> list[Fraction]:
    out = []
    t = lo
    while t <= hi:
        out.append(t)
        t += step
    return out


# ---------------------------------------------------------------------------
# Hermite linear bound
# ---------------------------------------------------------------------------

PHI_GRID = half_grid(Fraction(1, 2), Fraction(310))


def log_phi_iv(t: Fraction):
    """ln of [(pi/8.5)(t+8.5)]^t / Gamma(2+t) at a half-integer t."""
    t_iv = to_iv(t)
    base = iv.pi * (t_iv + to_iv("8.5")) / to_iv("8.5")
    two_x = int(2 * t) + 4
    return t_iv * iv.log(base) - iv.log(gamma_half_iv(two_x))


def check_phi_grid(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    """phi(t) > 1 at every half-integer t in [0.5, 310]."""
    with interval_precision(policy.bits):
        pts = ((f"t={float(t)}", iv.exp(log_phi_iv(t)) - 1) for t in PHI_GRID)
        return [_from_grid(
            "hermite.phi_grid",
            "phi(t) = [(pi/8.5)(t+8.5)]^t / Gamma(2+t) > 1 for t = 0.5, 1, ..., 310",
            pts, policy)]


def rho_iv(t, gamma):
    """ln(t+8.5) - 8.5/(t+8.5) - ln(t + e^(1-gamma)) + ln(pi e / 8.5)."""
    t = to_iv(t)
    h = to_iv("8.5")
    return (iv.log(t + h) - h / (t + h) - iv.log(t + iv.exp(1 - gamma))
            + iv.log(iv.pi * iv.e / h))


def rho_prime_numerator_iv(t, gamma):
    """e^(1-gamma) t - (72.25 - 17 e^(1-gamma)), the sign-carrying part of rho'."""
    c = iv.exp(1 - to_iv(gamma))
    return c * to_iv(t) - (to_iv("72.25") - 17 * c)


def check_rho_at_310(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    """rho(310) > 0.0000796, plus the sign and monotonicity facts feeding it."""
    out = []
    with interval_precision(policy.bits):
        g57 = to_iv("0.57")
        g58 = to_iv("0.58")
        threshold = to_iv("0.0000796")
        out.append(_from_interval(
            "hermite.rho_310_gamma_057",
            "rho(310) > 0.0000796 with gamma = 0.57 (rho is increasing in gamma)",
            rho_iv(310, g57) - threshold, policy))
        out.append(_from_interval(
            "hermite.rho_310_gamma_exact",
            "rho(310) > 0.0000796 with the Euler-Mascheroni constant",
            rho_iv(310, euler_gamma_iv()) - threshold, policy))
        out.append(_from_interval(
            "hermite.rho_slope_t31",
            "31 e^(1-gamma) - (72.25 - 17 e^(1-gamma)) > 0 at gamma = 0.58 (worst case of gamma < 0.58)",
            rho_prime_numerator_iv(31, g58), policy))
        out.append(_from_interval(
            "hermite.rho_slope_t310",
            "rho'(310) > 0 for every gamma in [0.57, 0.58]",
            rho_prime_numerator_iv(310, iv.mpf([g57.a, g58.b])), policy))
        pts = ((f"t={t}", rho_iv(t + 1, g57) - rho_iv(t, g57)) for t in range(32, 310))
        out.append(_from_grid(
            "hermite.rho_monotone",
            "rho(t+1) - rho(t) > 0 for t = 32..309 (gamma = 0.57)", pts, policy))
    return out


DIGAMMA_GRID = half_grid(Fraction(1, 2), Fraction(1000))


def check_digamma_bound(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    """psi(t+2) <= ln(t + e^(1-gamma)) on t = 0, 0.5, ..., 1000."""
    with interval_precision(policy.bits):
        gam = euler_gamma_iv()
        shift = iv.exp(1 - gam)
        pts = ((f"t={float(t)}", iv.log(to_iv(t) + shift) - digamma_iv(to_iv(t) + 2))
               for t in DIGAMMA_GRID)
        grid = _from_grid(
            "hermite.digamma_bound_grid",
            "ln(t + e^(1-gamma)) - psi(t+2) > 0 for t = 0.5, 1, ..., 1000",
            pts, policy)
        # t = 0 is the equality case psi(2) = 1 - gamma.
        gap = digamma_iv(2) - (1 - gam)
        equality = _from_interval(
            "hermite.digamma_bound_t0_equality",
            "psi(2) = 1 - gamma: the bound is attained at t = 0 (|difference| < 1e-15)",
            to_iv("1e-15") - abs(gap), policy)
    return [grid, equality]


# ---------------------------------------------------------------------------
# KZ constant
# ---------------------------------------------------------------------------


def _mp_lemma_f(t):
    return mp.log((t + 18) / mp.mpf("8.5")) / t


def default_convex_suite() -> list[tuple[str, Callable, object, object]]:
    """(name, f, a, b) with f'' >= 0 on [a, b]; f evaluates in mpmath."""
    return [
        ("exp on [0,1]", mp.exp, mp.mpf(0), mp.mpf(1)),
        ("t^2 on [0,2]", lambda t: t * t, mp.mpf(0), mp.mpf(2)),
        ("1/t on [1,3]", lambda t: 1 / t, mp.mpf(1), mp.mpf(3)),
        ("ln((t+18)/8.5)/t on [107.5,500]", _mp_lemma_f, mp.mpf("107.5"), mp.mpf(500)),
    ]


def midpoint_gap(f, a, b, tol: float = QUAD_TOL):
    """(integral - (b-a) f((a+b)/2), error estimate) by adaptive Simpson."""
    integral, err = adaptive_simpson(f, a, b, tol=tol)
    gap = integral - (b - a) * f((a + b) / 2)
    return gap, err + abs(integral) * mp.eps * 16


def check_midpoint_lemma(
    sample_convex: Optional[Sequence] = None,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> list[ClaimReport]:
    """(b-a) f((a+b)/2) < integral of f over [a, b] for convex test functions."""
    suite = default_convex_suite() if sample_convex is None else sample_convex
    with mp.workprec(policy.bits):
        worst = None
        max_err = 0
        for name, f, a, b in suite:
            gap, err = midpoint_gap(f, mp.mpf(a), mp.mpf(b))
            if worst is None or gap < worst[0]:
                worst = (gap, name)
            max_err = max(max_err, err)
        return [_report(
            "kz.midpoint_rule",
            "(b-a) f((a+b)/2) < integral_a^b f for convex f (quadrature estimate)",
            worst[0], max_err, policy,
            f"{len(suite)} functions; smallest gap for {worst[1]}")]


def convexity_witness_iv(t):
    """g(t) = 2(t+18)^2 ln((t+18)/8.5) - (3t^2 + 36t)."""
    t = to_iv(t)
    u = t + 18
    return 2 * u * u * iv.log(u / to_iv("8.5")) - (3 * t * t + 36 * t)


def convexity_witness_slope_iv(t):
    """g'(t) = 4(t+18) ln((t+18)/8.5) - 4t."""
    t = to_iv(t)
    u = t + 18
    return 4 * u * iv.log(u / to_iv("8.5")) - 4 * t


def lemma_f_iv(t):
    t = to_iv(t)
    return iv.log((t + 18) / to_iv("8.5")) / t


def log_grid(lo_exp: int = -6, hi_exp: int = 6, per_decade: int = 20) -> list[Fraction]:
    """Points 10^(j/per_decade) for j spanning [lo_exp, hi_exp], as exact-ish fractions."""
    pts = []
    for j in range(lo_exp * per_decade, hi_exp * per_decade + 1):
        pts.append(Fraction(10.0 ** (j / per_decade)))
    return pts


FD_POINTS = [Fraction(x) for x in ("0.01", "0.05", "0.1", "0.5", "1", "2", "5", "10", "20", "50",
                                   "100", "107.5", "200", "300", "500", "1000", "2000", "5000",
                                   "10000", "100000")]


def check_f_convexity(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    """Positivity of the convexity witness g and its slope, plus a finite-difference cross-check."""
    grid = [Fraction(0)] + log_grid()
    out = []
    with interval_precision(policy.bits):
        out.append(_from_grid(
            "kz.convexity_witness",
            "g(t) = 2(t+18)^2 ln((t+18)/8.5) - (3t^2+36t) > 0 at t = 0 and on a log grid 1e-6..1e6",
            ((f"t={float(t):.6g}", convexity_witness_iv(t)) for t in grid), policy))
        out.append(_from_grid(
            "kz.convexity_witness_slope",
            "g'(t) = 4(t+18) ln((t+18)/8.5) - 4t > 0 at t = 0 and on the same grid",
            ((f"t={float(t):.6g}", convexity_witness_slope_iv(t)) for t in grid), policy))

        def second_difference(t):
            t_iv = to_iv(t)
            h = t_iv * iv.mpf(2) ** -(policy.bits // 4)
            dd = (lemma_f_iv(t_iv + h) - 2 * lemma_f_iv(t_iv) + lemma_f_iv(t_iv - h)) / (h * h)
            # rescale to the size of g so the points are comparable
            return dd * t_iv**3 * (t_iv + 18) ** 2

        out.append(_from_grid(
            "kz.convexity_second_difference",
            "central second differences of f(t) = ln((t+18)/8.5)/t are positive at 20 points",
            ((f"t={float(t):.6g}", second_difference(t)) for t in FD_POINTS), policy,
            "margins scaled by t^3 (t+18)^2"))
    return out


def log_integral_rhs(a, b, c):
    """(9/8) ln[b(3a+2c) / (a(3b+2c))] + c(b-a)/(4ab)."""
    return mp.mpf(9) / 8 * mp.log(b * (3 * a + 2 * c) / (a * (3 * b + 2 * c))) + c * (b - a) / (4 * a * b)


def log_integral_lhs(a, b, c, tol: float = QUAD_TOL):
    """Quadrature of ln(1 + c/t)/t over [a, b], with its error estimate."""
    return adaptive_simpson(lambda t: mp.log(1 + c / t) / t, a, b, tol=tol)


def default_integral_cases() -> list[tuple]:
    cases = [(Fraction("107.5"), Fraction(n) - Fraction(1, 2), 18) for n in (109, 500, 1000)]
    cases += [(Fraction(k) - Fraction(1, 2), Fraction(2 * k) - Fraction(1, 2), 18) for k in (5, 50, 500)]
    cases += [(Fraction("107.5"), Fraction("108.5"), 18)]
    return cases


def check_integral_lemma3(
    cases: Optional[Sequence[tuple]] = None,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> list[ClaimReport]:
    """integral_a^b ln(1+c/t)/t dt < (9/8) ln[b(3a+2c)/(a(3b+2c))] + c(b-a)/(4ab)."""
    cases = default_integral_cases() if cases is None else cases
    with mp.workprec(policy.bits):
        worst = None
        max_err = 0
        for a, b, c in cases:
            a_, b_, c_ = (mp.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mp.mpf(x)
                          for x in (a, b, c))
            lhs, err = log_integral_lhs(a_, b_, c_)
            gap = log_integral_rhs(a_, b_, c_) - lhs
            if worst is None or gap < worst[0]:
                worst = (gap, (float(a), float(b), float(c)))
            max_err = max(max_err, err + 16 * mp.eps)
        return [_report(
            "kz.log_integral_bound",
            "integral_a^b ln(1+c/t)/t dt < (9/8) ln[b(3a+2c)/(a(3b+2c))] + c(b-a)/(4ab) for 0 < a < b",
            worst[0], max_err, policy,
            f"{len(cases)} cases with lower limit < upper limit, the orientation in which the bound "
            f"is applied (as literally ordered, a > b, the left side would be negative); "
            f"smallest gap at (a, b, c) = {worst[1]}")]


def small_rank_product_iv():
    """prod_{k=2}^8 gamma_k^(1/(k-1)) from the exact Hermite constants."""
    exact = {
        2: 2 / iv.sqrt(3),
        3: iv.mpf(2) ** (iv.mpf(1) / 3),
        4: iv.sqrt(2),
        5: iv.mpf(8) ** (iv.mpf(1) / 5),
        6: (iv.mpf(64) / 3) ** (iv.mpf(1) / 6),
        7: iv.mpf(64) ** (iv.mpf(1) / 7),
        8: iv.mpf(2),
    }
    log_sum = iv.mpf(0)
    for k, g in exact.items():
        log_sum = log_sum + iv.log(g) / (k - 1)
    return iv.exp(log_sum)


def small_rank_closed_form_iv():
    return iv.mpf(2) ** (iv.mpf(827) / 420) * iv.mpf(3) ** (iv.mpf(-8) / 15)


def middle_product_iv():
    """prod_{k=9}^{108} (k/8 + 6/5)^(1/(k-1))."""
    log_sum = iv.mpf(0)
    for k in range(9, 109):
        log_sum = log_sum + iv.log(to_iv(Fraction(k, 8) + Fraction(6, 5))) / (k - 1)
    return iv.exp(log_sum)


def assembled_constant_iv():
    """79.06 * 2^(827/420) 3^(-8/15) (119.5/107.5)^(9/8) e^(9/215) (8.5/107.5)^(ln(107.5/8.5)/2)."""
    r = to_iv("119.5") / to_iv("107.5")
    s = to_iv("8.5") / to_iv("107.5")
    return (to_iv("79.06") * small_rank_closed_form_iv() * r ** (iv.mpf(9) / 8)
            * iv.exp(iv.mpf(9) / 215) * s ** (-iv.log(s) / 2))


def check_theorem2_constants(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    with interval_precision(policy.bits):
        prod = small_rank_product_iv()
        closed = small_rank_closed_form_iv()
        rel = abs(prod - closed) / closed
        return [
            _from_interval(
                "kz.small_rank_product_identity",
                "prod_{k=2}^8 gamma_k^(1/(k-1)) = 2^(827/420) 3^(-8/15) to 1e-12 relative",
                to_iv("1e-12") - rel, policy),
            _from_interval(
                "kz.middle_product_bound",
                "prod_{k=9}^{108} (k/8 + 6/5)^(1/(k-1)) < 79.06",
                to_iv("79.06") - middle_product_iv(), policy),
            _from_interval(
                "kz.assembled_constant_bound",
                "79.06 * 2^(827/420) 3^(-8/15) (119.5/107.5)^(9/8) e^(9/215) (8.5/107.5)^(ln(107.5/8.5)/2) < 8.1",
                to_iv("8.1") - assembled_constant_iv(), policy),
        ]


# ---------------------------------------------------------------------------
# Schnorr upper bound
# ---------------------------------------------------------------------------


def leading_constant_iv():
    ln2 = iv.log(2)
    return iv.exp(3 * ln2 * ln2 - 2 * ln2 * iv.log(17))


def ratio_power_iv(x):
    """f(x) = ((4x-1)/17)^(1/(2x-1))."""
    x = to_iv(x)
    return iv.exp(iv.log((4 * x - 1) / 17) / (2 * x - 1))


def slope_sign_iv(x):
    """h(x) = (1-4x) ln((4x-1)/17) + 4x - 2."""
    x = to_iv(x)
    return (1 - 4 * x) * iv.log((4 * x - 1) / 17) + 4 * x - 2


def check_corollary1(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    out = []
    with interval_precision(policy.bits):
        lead = leading_constant_iv()
        f12 = ratio_power_iv(12)
        out.append(_from_interval(
            "schnorr.leading_constant_bound",
            "2^(3 ln 2) / 17^(2 ln 2) < 0.083216",
            to_iv("0.083216") - lead, policy,
            f"computed value {mp.nstr(split_interval(lead)[0], 12)}; the simpler bound it feeds is checked "
            f"directly by schnorr.simple_constant_sufficient"))
        out.append(_from_interval(
            "schnorr.constant_ratio_chain",
            "1.04521 < 0.08698 / 0.083216",
            to_iv("0.08698") / to_iv("0.083216") - to_iv("1.04521"), policy))
        out.append(_from_interval(
            "schnorr.simple_constant_sufficient",
            "2^(3 ln 2) / 17^(2 ln 2) * f(12) < 0.08698 (what the simpler bound needs)",
            to_iv("0.08698") - lead * f12, policy))
        out.append(_from_interval(
            "schnorr.f12_lower", "f(12) = ((4*12-1)/17)^(1/23) > 1.045206",
            f12 - to_iv("1.045206"), policy))
        out.append(_from_interval(
            "schnorr.f12_upper", "f(12) < 1.04521", to_iv("1.04521") - f12, policy))
        out.append(_from_interval(
            "schnorr.h11_positive", "h(11) = (1-44) ln(43/17) + 42 > 0", slope_sign_iv(11), policy))
        out.append(_from_interval(
            "schnorr.h12_negative", "h(12) = (1-48) ln(47/17) + 46 < 0", -slope_sign_iv(12), policy))
        out.append(_from_grid(
            "schnorr.f_grid_max",
            "f(12) > f(x) for every integer x in 5..10000, x != 12",
            ((f"x={x}", f12 - ratio_power_iv(x)) for x in range(5, 10001) if x != 12), policy))
    return out


def check_exp_rational_bound(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    """9(32k^2+24k-23)/(16k^3+72k^2-109k+34.5) <= 18/k for k = 5..1000, in exact rationals."""
    worst = None
    for k in range(5, 1001):
        lhs = Fraction(9 * (32 * k * k + 24 * k - 23)) / (16 * k**3 + 72 * k * k - 109 * k + Fraction(69, 2))
        gap = Fraction(18, k) - lhs
        if worst is None or gap < worst[0]:
            worst = (gap, k)
    return [_report(
        "schnorr.exp_rational_bound",
        "9(32k^2+24k-23)/(16k^3+72k^2-109k+34.5) < 18/k for k = 5..1000 (exact rational arithmetic)",
        worst[0], 0, policy, f"smallest gap at k={worst[1]}")]


# ---------------------------------------------------------------------------
# Rankin lower bound
# ---------------------------------------------------------------------------


def zeta_ratio_gap_iv(k: int, zetas: dict):
    """ln prod_{k+1}^{2k} zeta(i) - ln prod_2^k zeta(i) - ln(pi^(4-2k) 2^(3k-7))."""
    lhs = iv.mpf(0)
    for i in range(k + 1, 2 * k + 1):
        lhs = lhs + iv.log(zetas[i])
    for i in range(2, k + 1):
        lhs = lhs - iv.log(zetas[i])
    rhs = (4 - 2 * k) * iv.log(iv.pi) + (3 * k - 7) * iv.log(2)
    return lhs - rhs


def check_zeta_lemma(k_max: int = 60, policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    with interval_precision(policy.bits):
        zetas = {s: zeta_iv(s) for s in range(2, 2 * k_max + 1)}
        return [
            _from_grid(
                "rankin.zeta_ratio_grid",
                f"prod_(k+1..2k) zeta(i) / prod_(2..k) zeta(i) > pi^(4-2k) 2^(3k-7), verified on grid k = 2..{k_max}",
                ((f"k={k}", zeta_ratio_gap_iv(k, zetas)) for k in range(2, k_max + 1)), policy),
            _from_interval("rankin.zeta2_below_2", "zeta(2) < 2", 2 - zetas[2], policy),
            _from_interval("rankin.zeta3_below_pi2_over_8", "zeta(3) < pi^2/8",
                           iv.pi**2 / 8 - zetas[3], policy),
        ]


def _ln_factorial_iv(n: int):
    return iv.log(iv.mpf(math.factorial(n)))


def gamma_ratio_gap_iv(k: int):
    """ln LHS - ln RHS of the Gamma-product inequality at integer k."""
    lhs = iv.mpf(0)
    for i in range(k + 1, 2 * k + 1):
        lhs = lhs + ln_gamma_iv(to_iv(Fraction(i, 2) + 1))
    for i in range(2, k + 1):
        lhs = lhs - ln_gamma_iv(to_iv(Fraction(i, 2) + 1))
    k_iv = iv.mpf(k)
    rhs = (iv.log(iv.pi) / 2 + iv.mpf(k * k) / 2 * iv.log(2) - iv.mpf(3 * k * k + 4) / 4
           + iv.mpf(2 * k * k - 2 * k - 1) / 4 * iv.log(k_iv)
           + (_ln_factorial_iv(2 * k) - _ln_factorial_iv(k) - _ln_factorial_iv(k + 1)) / 2)
    return lhs - rhs


def check_gamma_lemma(k_max: int = 40, policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ClaimReport]:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    ks = range(2, k_max + 1)
    with interval_precision(policy.bits):
        def stirling_terms(k):
            k_iv = iv.mpf(k)
            return (k + iv.mpf(1) / 2) * iv.log(k_iv) - k_iv

        return [
            _from_grid(
                "rankin.gamma_ratio_grid",
                "prod_(k+1..2k) Gamma(i/2+1) / prod_(2..k) Gamma(i/2+1) > "
                f"sqrt(pi) 2^(k^2/2) e^(-(3k^2+4)/4) k^((2k^2-2k-1)/4) sqrt((2k)!/(k!(k+1)!)), grid k = 2..{k_max}",
                ((f"k={k}", gamma_ratio_gap_iv(k)) for k in ks), policy),
            _from_grid(
                "rankin.stirling_lower",
                f"k! > sqrt(2 pi) k^(k+1/2) e^(-k), grid k = 2..{k_max}",
                ((f"k={k}", _ln_factorial_iv(k) - iv.log(2 * iv.pi) / 2 - stirling_terms(k)) for k in ks),
                policy),
            _from_grid(
                "rankin.stirling_upper",
                f"k! < e k^(k+1/2) e^(-k), grid k = 2..{k_max}",
                ((f"k={k}", 1 + stirling_terms(k) - _ln_factorial_iv(k)) for k in ks), policy),
            _from_grid(
                "rankin.factorial_ratio",
                f"k!/sqrt((2k)!) > 2^(-k) k^(1/4), grid k = 2..{k_max}",
                ((f"k={k}", _ln_factorial_iv(k) - _ln_factorial_iv(2 * k) / 2
                  + k * iv.log(2) - iv.log(iv.mpf(k)) / 4) for k in ks), policy),
        ]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimGroup:
    name: str
    claim_ids: tuple[str, ...]
    run: Callable[[PrecisionPolicy], list[ClaimReport]]


def _midpoint(policy):
    return check_midpoint_lemma(None, policy)


def _integral(policy):
    return check_integral_lemma3(None, policy)


def _zeta(policy):
    return check_zeta_lemma(60, policy)


def _gamma(policy):
    return check_gamma_lemma(40, policy)


REGISTRY: tuple[ClaimGroup, ...] = (
    ClaimGroup("phi_grid", ("hermite.phi_grid",), check_phi_grid),
    ClaimGroup("rho", ("hermite.rho_310_gamma_057", "hermite.rho_310_gamma_exact", "hermite.rho_slope_t31",
                       "hermite.rho_slope_t310", "hermite.rho_monotone"), check_rho_at_310),
    ClaimGroup("digamma", ("hermite.digamma_bound_grid", "hermite.digamma_bound_t0_equality"),
               check_digamma_bound),
    ClaimGroup("midpoint", ("kz.midpoint_rule",), _midpoint),
    ClaimGroup("convexity", ("kz.convexity_witness", "kz.convexity_witness_slope",
                             "kz.convexity_second_difference"), check_f_convexity),
    ClaimGroup("log_integral", ("kz.log_integral_bound",), _integral),
    ClaimGroup("kz_constants", ("kz.small_rank_product_identity", "kz.middle_product_bound",
                                "kz.assembled_constant_bound"), check_theorem2_constants),
    ClaimGroup("schnorr_simple", ("schnorr.leading_constant_bound", "schnorr.constant_ratio_chain",
                                  "schnorr.simple_constant_sufficient", "schnorr.f12_lower",
                                  "schnorr.f12_upper", "schnorr.h11_positive", "schnorr.h12_negative",
                                  "schnorr.f_grid_max"), check_corollary1),
    ClaimGroup("exp_rational", ("schnorr.exp_rational_bound",), check_exp_rational_bound),
    ClaimGroup("zeta", ("rankin.zeta_ratio_grid", "rankin.zeta2_below_2", "rankin.zeta3_below_pi2_over_8"),
               _zeta),
    ClaimGroup("gamma", ("rankin.gamma_ratio_grid", "rankin.stirling_lower", "rankin.stirling_upper",
                         "rankin.factorial_ratio"), _gamma),
)


def registered_claim_ids() -> list[str]:
    return [cid for g in REGISTRY for cid in g.claim_ids]


def _matches(claim_id: str, pattern: Optional[str]) -> bool:
    if not pattern:
        return True
    if any(ch in pattern for ch in "*?["):
        return fnmatch.fnmatchcase(claim_id, pattern)
    return pattern in claim_id


def _run_group(args) -> list[ClaimReport]:
    group, policy = args
    return group.run(policy)


def run_all(
    policy: PrecisionPolicy = DEFAULT_POLICY,
    claim_filter: Optional[str] = None,
    jobs: int = 1,
) -> list[ClaimReport]:
    """Run every registered check (or those whose ids match ``claim_filter``).

    A plain filter is a substring match; one containing ``*``, ``?`` or ``[``
    is a glob. Failures are reported, never raised, and the output order is
    the registry order regardless of ``jobs``.
    """
    groups = [g for g in REGISTRY if any(_matches(c, claim_filter) for c in g.claim_ids)]
    if jobs > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_group, [(g, policy) for g in groups]))
    else:
        results = [g.run(policy) for g in groups]
    reports = [r for batch in results for r in batch]
    return [r for r in reports if _matches(r.claim_id, claim_filter)]
