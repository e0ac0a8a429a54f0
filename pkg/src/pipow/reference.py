"""High-precision reference constants.

pi is evaluated from the Machin arctangent relation

    pi = 16*arctan(1/5) - 4*arctan(1/239)

on scaled integers, so results are reproducible bit for bit. Derived
quantities (pi**(2n)/(2n+1)!, powers of pi**2/6, and sinc(pi*x) by Taylor
series) are computed at an enlarged working scale and rounded half-even
down to the requested precision plus ten guard digits. These values serve
as the judge for everything the series code produces, which is why they
carry their own guard margin rather than borrowing the caller's.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .errors import DomainError
from .exactnum import FixedDecimal, div_round_half_even

__all__ = [
    "MAX_PI_DIGITS",
    "PiCache",
    "REFERENCE_GUARD",
    "basel_power",
    "factorial",
    "pi_digits",
    "pi_mantissa",
    "reference_value",
    "sinc_taylor",
]

REFERENCE_GUARD = 10
MAX_PI_DIGITS = 10**5

# Fixed extra digits carried while a derived constant is being assembled,
# before the final rounding to digits + REFERENCE_GUARD. Large enough that
# the handful of half-even roundings along the way cannot reach the
# returned places.
_WORK_MARGIN = 20

factorial = math.factorial


def _arctan_inverse_scaled(inverse: int, scale: int) -> int:
    """floor-ish arctan(1/inverse) * 10**scale by the alternating series.

    Each retained term is an integer division of the previous one, so the
    result differs from the true value by at most one unit per term; the
    series is cut when a term underflows the scale.
    """
    one = 10**scale
    term = one // inverse
    total = term
    inverse_sq = inverse * inverse
    j = 1
    sign = -1
    while True:
        term //= inverse_sq
        if term == 0:
            break
        total += sign * (term // (2 * j + 1))
        sign = -sign
        j += 1
    return total


def _machin_pi_mantissa(scale: int, extra: int = 10) -> int:
    """pi * 10**scale rounded half-even, via Machin's relation.

    The two arctangent series run at scale + extra digits; with a few
    hundred retained terms the combined error stays far below half a unit
    at the returned scale, so the final rounding is exact.
    """
    work = scale + extra
    a5 = _arctan_inverse_scaled(5, work)
    a239 = _arctan_inverse_scaled(239, work)
    pi_work = 16 * a5 - 4 * a239
    return div_round_half_even(pi_work, 10**extra)


class PiCache:
    """Best pi mantissa computed so far, grown on demand.

    A single instance is shared across the package; a lock serializes
    growth so concurrent callers never duplicate the Machin evaluation.
    Narrower requests are served by rounding the stored mantissa down.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._scale = -1
        self._mantissa = 0

    def mantissa(self, scale: int) -> int:
        if scale < 0:
            raise DomainError("scale must be nonnegative")
        with self._lock:
            if scale > self._scale:
                self._mantissa = _machin_pi_mantissa(scale)
                self._scale = scale
            if scale == self._scale:
                return self._mantissa
            return div_round_half_even(
                self._mantissa, 10 ** (self._scale - scale)
            )


_PI_CACHE = PiCache()


def pi_mantissa(scale: int) -> int:
    """pi * 10**scale rounded half-even, served from the shared cache."""
    return _PI_CACHE.mantissa(scale)


def _check_digits(digits: int, maximum: int = MAX_PI_DIGITS) -> None:
    if not 1 <= digits <= maximum:
        raise DomainError(
            "digit count must be between 1 and %d, got %d" % (maximum, digits)
        )


def pi_digits(digits: int) -> FixedDecimal:
    """pi to the requested fractional digits plus ten guard digits."""
    _check_digits(digits)
    scale = digits + REFERENCE_GUARD
    return FixedDecimal(pi_mantissa(scale), scale, REFERENCE_GUARD)


def reference_value(depth: int, digits: int) -> FixedDecimal:
    """pi**(2*depth) / (2*depth + 1)! at digits plus ten guard digits.

    This is the exact limit of the depth-nested reciprocal-square sum, so
    it is the value partial sums are judged against.
    """
    if depth < 1:
        raise DomainError("depth must be a positive integer")
    _check_digits(digits)
    out_scale = digits + REFERENCE_GUARD
    work = out_scale + _WORK_MARGIN + 2 * depth
    one = 10**work
    pi_w = pi_mantissa(work)
    pi_sq = div_round_half_even(pi_w * pi_w, one)
    acc = one
    for _ in range(depth):
        acc = div_round_half_even(acc * pi_sq, one)
    acc = div_round_half_even(acc, factorial(2 * depth + 1))
    mantissa = div_round_half_even(acc, 10 ** (work - out_scale))
    return FixedDecimal(mantissa, out_scale, REFERENCE_GUARD)


def basel_power(power: int, digits: int) -> FixedDecimal:
    """(pi**2 / 6)**power at digits plus ten guard digits.

    power 0 gives exactly 1; pi**2/6 itself is the depth-1 series limit and
    the base of the comparison bound on deeper sums.
    """
    if power < 0:
        raise DomainError("power must be nonnegative")
    _check_digits(digits)
    out_scale = digits + REFERENCE_GUARD
    work = out_scale + _WORK_MARGIN + 2 * power
    one = 10**work
    pi_w = pi_mantissa(work)
    base = div_round_half_even(pi_w * pi_w, 6 * one)
    acc = one
    for _ in range(power):
        acc = div_round_half_even(acc * base, one)
    mantissa = div_round_half_even(acc, 10 ** (work - out_scale))
    return FixedDecimal(mantissa, out_scale, REFERENCE_GUARD)


def sinc_taylor(x, digits: int) -> FixedDecimal:
    """sin(pi*x)/(pi*x) for rational |x| <= 2, by the Taylor series of sin.

    Defined as exactly 1 at x = 0 (the removable singularity). The series
    in theta = pi*x is evaluated on scaled integers with one half-even
    rounding per term; on |x| <= 2 it alternates and shrinks fast, so the
    cut when a term underflows the working scale is sound.
    """
    q = Fraction(x)
    _check_digits(digits)
    if abs(q) > 2:
        raise DomainError("sinc reference is only evaluated for |x| <= 2")
    out_scale = digits + REFERENCE_GUARD
    if q == 0:
        return FixedDecimal(10**out_scale, out_scale, REFERENCE_GUARD)
    work = out_scale + _WORK_MARGIN
    one = 10**work
    pi_w = pi_mantissa(work)
    # theta**2 = (pi*x)**2 at the working scale, one rounding.
    theta_sq = div_round_half_even(
        pi_w * pi_w * q.numerator * q.numerator,
        one * q.denominator * q.denominator,
    )
    # sin(theta)/theta = sum_{j>=0} (-1)**j theta**(2j) / (2j+1)!
    total = one
    term = one
    j = 1
    sign = -1
    while term != 0:
        term = div_round_half_even(term * theta_sq, one)
        term = div_round_half_even(term, (2 * j) * (2 * j + 1))
        total += sign * term
        sign = -sign
        j += 1
    mantissa = div_round_half_even(total, 10 ** (work - out_scale))
    return FixedDecimal(mantissa, out_scale, REFERENCE_GUARD)
