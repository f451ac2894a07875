"""Special functions with explicit error bounds.

Two evaluation modes are supported through :class:`PrecisionPolicy`:

``fast64``
    Plain IEEE double arithmetic. The returned error is a floating-point
    estimate (truncation bound plus a rounding allowance), good enough for
    tables and figures.

``highprec``
    Interval arithmetic at ``bits`` of working precision (mpmath's ``iv``
    context, outward rounded). Series truncation is enclosed with a rigorous
    remainder bound, so the returned error is a certified half-width.

The ``*_iv`` functions work directly on intervals in the *current* interval
precision and are what :mod:`latticebounds.proofcheck` composes; wrap calls in
:func:`interval_precision` to pick the precision.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal, NamedTuple, Union

from mpmath import iv, mp

# 200 decimals; the enclosure below is good for any working precision up to
# roughly 660 bits.
_EULER_GAMMA_DIGITS = (
    "0.57721566490153286060651209008240243104215933593992359880576723488486"
    "772677766467093694706329174674951463144724980708248096050401448654283"
    "622417399764492353625350033374293733773767394279259525824709491600873"
    "5203948165670"
)
EULER_GAMMA = 0.5772156649015329

Real = Union[int, float, Fraction, str]


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class PrecisionPolicy:
    """How a computation is carried out and how strictly claims are certified.

    Attributes:
        mode: ``"fast64"`` or ``"highprec"``.
        bits: working precision for ``highprec`` (at least 64). Ignored, and
            reported as 53, in ``fast64``.
        margin_factor: a strict inequality is accepted only when its margin
            exceeds ``margin_factor`` times the accumulated error bound.
    """

    mode: Literal["fast64", "highprec"] = "fast64"
    bits: int = 53
    margin_factor: float = 10.0

    def __post_init__(self) -> None:
        if self.mode not in ("fast64", "highprec"):
            raise ValueError(f"unknown precision mode {self.mode!r}")
        if self.mode == "highprec" and self.bits < 64:
            raise ValueError("highprec mode needs bits >= 64")
        if self.mode == "fast64" and self.bits != 53:
            object.__setattr__(self, "bits", 53)
        if not self.margin_factor >= 1:
            raise ValueError("margin_factor must be >= 1")

    @classmethod
    def highprec(cls, bits: int = 256, margin_factor: float = 10.0) -> "PrecisionPolicy":
        return cls("highprec", bits, margin_factor)

    @property
    def is_highprec(self) -> bool:
        return self.mode == "highprec"


FAST64 = PrecisionPolicy()


class Estimate(NamedTuple):
    """A value with an absolute error bound: the truth lies in value ± error."""

    value: float
    error: float

    @property
    def lo(self):
        return self.value - self.error

    @property
    def hi(self):
        return self.value + self.error


# ---------------------------------------------------------------------------
# interval helpers
# ---------------------------------------------------------------------------


@contextmanager
def interval_precision(bits: int) -> Iterator[object]:
    """Temporarily set the interval working precision (mpmath state is global)."""
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def to_iv(x) -> "iv.mpf":
    """Exact (or tightly enclosed) conversion of a Python number to an interval.

    Floats and ints convert exactly, Fractions as a quotient, and decimal
    strings to a correctly rounded enclosure.
    """
    if isinstance(x, iv.mpf):
        return x
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, (int, float, str)):
        return iv.mpf(x)
    return iv.mpf(x)


def euler_gamma_iv() -> "iv.mpf":
    """Enclosure of the Euler-Mascheroni constant from the stored digits."""
    mid = iv.mpf(_EULER_GAMMA_DIGITS)
    slack = iv.mpf(10) ** -200
    return iv.mpf([(mid - slack).a, (mid + slack).b])


def split_interval(x) -> tuple:
    """Return ``(mid, rad)`` as exact mpmath floats with ``x = [mid-rad, mid+rad]``."""
    lo, hi = (mp.make_mpf(v) for v in x._mpi_)
    mid = mp.ldexp(mp.fadd(lo, hi, exact=True), -1)
    rad = mp.ldexp(mp.fsub(hi, lo, exact=True), -1)
    return mid, rad


def _estimate_from_iv(x) -> Estimate:
    mid, rad = split_interval(x)
    return Estimate(mid, rad)


def _symmetric(bound) -> "iv.mpf":
    b = abs(bound).b
    return iv.mpf([-b, b])


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact fraction (B_1 = -1/2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 1:
        return Fraction(-1, 2)
    if n > 1 and n % 2:
        return Fraction(0)
    table = _bernoulli_table(n)
    return table[n]


@lru_cache(maxsize=8)
def _bernoulli_table(n: int) -> tuple:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b.append(-acc / (m + 1))
    return tuple(b)


@lru_cache(maxsize=4096)
def _stirling_coeff(k: int, bits: int):
    # B_2k / (2k (2k-1)); bits only keys the cache, callers hold iv.prec
    return to_iv(bernoulli(2 * k) / (2 * k * (2 * k - 1)))


@lru_cache(maxsize=4096)
def _digamma_coeff(k: int, bits: int):
    return to_iv(bernoulli(2 * k) / (2 * k))


def _stirling_shift(bits: int) -> int:
    # Smallest argument from which the asymptotic series reaches 2**-bits well
    # before its terms start to grow.
    # The smallest term of the series near y is about exp(-2 pi y).
    return max(10, bits // 4)


# ---------------------------------------------------------------------------
# log-Gamma
# ---------------------------------------------------------------------------


def ln_gamma_iv(x) -> "iv.mpf":
    """Enclosure of ln Gamma(x) for an interval or number x > 0."""
    x = to_iv(x)
    if not x.a > 0:
        raise DomainError("ln_gamma needs x > 0")
    bits = iv.prec
    target = iv.mpf(2) ** -(bits + 8)
    shift = max(0, math.ceil(_stirling_shift(bits) - float(x.a)))
    if shift:
        prod = x
        for j in range(1, shift):
            prod = prod * (x + j)
        y = x + shift
    else:
        y = x
    total = (y - 0.5) * iv.log(y) - y + iv.log(2 * iv.pi) / 2
    inv_y2 = 1 / (y * y)
    power = 1 / y
    k = 1
    while True:
        term = _stirling_coeff(k, bits) * power
        nxt = _stirling_coeff(k + 1, bits) * power * inv_y2
        total = total + term
        if abs(nxt).b < target.a or k >= 300:
            # The Stirling series for real y > 0 is enveloping: the error is
            # bounded by the first omitted term.
            total = total + _symmetric(nxt)
            break
        power = power * inv_y2
        k += 1
    if shift:
        total = total - iv.log(prod)
    return total


def _ln_gamma_float(x: float) -> tuple[float, float]:
    if x in (1.0, 2.0):
        return 0.0, 0.0
    shift = max(0, math.ceil(10.0 - x))
    prod = 1.0
    for j in range(shift):
        prod *= x + j
    y = x + shift
    log_y = math.log(y)
    main = (y - 0.5) * log_y - y + 0.5 * math.log(2 * math.pi)
    inv_y2 = 1.0 / (y * y)
    power = 1.0 / y
    series = 0.0
    trunc = 0.0
    for k in range(1, 12):
        coeff = float(bernoulli(2 * k) / (2 * k * (2 * k - 1)))
        term = coeff * power
        if abs(term) < 1e-18 * max(1.0, abs(main)):
            trunc = abs(term)
            break
        series += term
        power *= inv_y2
    value = main + series
    if shift:
        value -= math.log(prod)
    scale = abs((y - 0.5) * log_y) + y + (abs(math.log(prod)) if shift else 0.0)
    return value, trunc + 4 * 2.0**-52 * scale


def ln_gamma(x: Real, policy: PrecisionPolicy = FAST64) -> Estimate:
    """ln Gamma(x) for real x > 0, with an absolute error bound.

    In ``fast64`` mode the argument is shifted up to 10 and the Stirling series
    is summed; the value agrees with the exact log-Gamma to about 1e-13 relative
    (1e-13 absolute near the zeros at 1 and 2).

    Raises:
        DomainError: if x <= 0.
    """
    if policy.is_highprec:
        with interval_precision(policy.bits):
            return _estimate_from_iv(ln_gamma_iv(x))
    xf = float(x)
    if not xf > 0:
        raise DomainError("ln_gamma needs x > 0")
    return Estimate(*_ln_gamma_float(xf))


def gamma_half(two_x: int) -> float:
    """Gamma(two_x / 2) by exact recurrence from Gamma(1/2) = sqrt(pi).

    Integer arguments return a factorial, half-integers the exact rational
    (2m)!/(4^m m!) times sqrt(pi), each with one or two roundings.

    Raises:
        ValueError: if two_x < 1.
        OverflowError: if the result exceeds the double range (x > ~171).
    """
    if two_x < 1:
        raise ValueError("two_x must be a positive integer")
    if two_x % 2 == 0:
        return float(math.factorial(two_x // 2 - 1))
    m = two_x // 2
    ratio = Fraction(math.factorial(2 * m), 4**m * math.factorial(m))
    return float(ratio) * math.sqrt(math.pi)


def gamma_half_iv(two_x: int) -> "iv.mpf":
    """Interval enclosure of Gamma(two_x / 2) in the current precision."""
    if two_x < 1:
        raise ValueError("two_x must be a positive integer")
    if two_x % 2 == 0:
        return iv.mpf(math.factorial(two_x // 2 - 1))
    m = two_x // 2
    return to_iv(Fraction(math.factorial(2 * m), 4**m * math.factorial(m))) * iv.sqrt(iv.pi)


# ---------------------------------------------------------------------------
# digamma
# ---------------------------------------------------------------------------


def digamma_iv(x) -> "iv.mpf":
    """Enclosure of the digamma function psi(x) for x > 0."""
    x = to_iv(x)
    if not x.a > 0:
        raise DomainError("digamma needs x > 0")
    bits = iv.prec
    target = iv.mpf(2) ** -(bits + 8)
    shift = max(0, math.ceil(_stirling_shift(bits) - float(x.a)))
    recip = iv.mpf(0)
    for j in range(shift):
        recip = recip + 1 / (x + j)
    y = x + shift
    total = iv.log(y) - 1 / (2 * y)
    inv_y2 = 1 / (y * y)
    power = inv_y2
    k = 1
    while True:
        term = _digamma_coeff(k, bits) * power
        nxt = _digamma_coeff(k + 1, bits) * power * inv_y2
        total = total - term
        if abs(nxt).b < target.a or k >= 300:
            total = total + _symmetric(nxt)
            break
        power = power * inv_y2
        k += 1
    return total - recip


def _digamma_float(x: float) -> tuple[float, float]:
    shift = max(0, math.ceil(10.0 - x))
    recip = math.fsum(1.0 / (x + j) for j in range(shift))
    y = x + shift
    log_y = math.log(y)
    value = log_y - 0.5 / y
    inv_y2 = 1.0 / (y * y)
    power = inv_y2
    trunc = 0.0
    for k in range(1, 12):
        term = float(bernoulli(2 * k) / (2 * k)) * power
        if abs(term) < 1e-19:
            trunc = abs(term)
            break
        value -= term
        power *= inv_y2
    value -= recip
    return value, trunc + 4 * 2.0**-52 * (abs(log_y) + recip + 1.0)


def digamma(x: Real, policy: PrecisionPolicy = FAST64) -> Estimate:
    """Digamma psi(x) = Gamma'(x)/Gamma(x) for real x > 0.

    Raises:
        DomainError: if x <= 0.
    """
    if policy.is_highprec:
        with interval_precision(policy.bits):
            return _estimate_from_iv(digamma_iv(x))
    xf = float(x)
    if not xf > 0:
        raise DomainError("digamma needs x > 0")
    return Estimate(*_digamma_float(xf))


# ---------------------------------------------------------------------------
# Riemann zeta at integers
# ---------------------------------------------------------------------------


def zeta_cutoff(s: int, target: float) -> int:
    """Smallest N whose integral tail bound N^(1-s)/(s-1) is below ``target``."""
    if s < 2:
        raise DomainError("zeta_int needs s >= 2")
    n = 1
    while n ** (1 - s) / (s - 1) >= target:
        n *= 2
    lo = max(1, n // 2)
    while lo < n:
        mid = (lo + n) // 2
        if mid ** (1 - s) / (s - 1) < target:
            n = mid
        else:
            lo = mid + 1
    return n


def zeta_iv(s: int) -> "iv.mpf":
    """Enclosure of zeta(s) for integer s >= 2.

    The first N-1 terms are summed directly; the tail is the Euler-Maclaurin
    expansion whose integral part N^(1-s)/(s-1) dominates, enclosed with the
    first omitted correction term (a rigorous bound for real s > 1).
    """
    if s < 2:
        raise DomainError("zeta_int needs s >= 2")
    bits = iv.prec
    target = iv.mpf(2) ** -(bits + 8)
    n_cut = max(10, math.ceil((bits + 8) * math.log(2) / (2 * math.pi)) + 2)
    # For large s the direct series converges on its own.
    direct = zeta_cutoff(s, 2.0 ** -(bits + 8)) if s > bits // 4 else None
    if direct is not None and direct <= n_cut:
        head = iv.mpf(0)
        for k in range(direct, 0, -1):
            head = head + iv.mpf(k) ** -s
        # sum over k > N lies in [0, int_N^inf t^-s dt]
        tail = iv.mpf(direct) ** (1 - s) / (s - 1)
        return head + iv.mpf([0, tail.b])
    big_n = iv.mpf(n_cut)
    head = iv.mpf(0)
    for k in range(n_cut - 1, 0, -1):
        head = head + iv.mpf(k) ** -s
    n_pow = big_n ** -s
    total = head + big_n * n_pow / (s - 1) + n_pow / 2
    # j-th correction: B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
    rising = Fraction(s)
    power = n_pow / big_n
    j = 1
    while True:
        term = to_iv(bernoulli(2 * j) / math.factorial(2 * j) * rising) * power
        rising_next = rising * (s + 2 * j - 1) * (s + 2 * j)
        nxt = to_iv(bernoulli(2 * j + 2) / math.factorial(2 * j + 2) * rising_next) * power / (big_n * big_n)
        total = total + term
        if abs(nxt).b < target.a or j >= 200:
            total = total + _symmetric(nxt)
            break
        rising = rising_next
        power = power / (big_n * big_n)
        j += 1
    return total


def zeta_int(s: int, policy: PrecisionPolicy = FAST64) -> Estimate:
    """Riemann zeta(s) at an integer s >= 2 with absolute error <= 1e-14.

    Raises:
        DomainError: if s < 2.
    """
    if int(s) != s or s < 2:
        raise DomainError("zeta_int needs an integer s >= 2")
    s = int(s)
    bits = policy.bits if policy.is_highprec else 96
    with interval_precision(bits):
        enclosure = zeta_iv(s)
    mid, rad = split_interval(enclosure)
    if policy.is_highprec:
        return Estimate(mid, rad)
    value = float(mid)
    return Estimate(value, float(rad) + abs(value) * 2.0**-53)


def euler_mascheroni() -> float:
    """The Euler-Mascheroni constant 0.5772156649015329 (stored, not computed)."""
    return EULER_GAMMA
