"""Exact rationals and guarded fixed-point decimals.

Two number representations carry every value in this package. `BigRational`
(an alias of the stdlib `fractions.Fraction`, always stored reduced) backs
exact mode, where results are bit-for-bit reproducible and comparisons are
zero-tolerance. `FixedDecimal` backs fixed mode: a big-integer mantissa
scaled by a power of ten, carrying `guard` extra digits beyond the precision
the caller asked for, with every lossy operation rounding half to even.

Binary floating point is never used to hold a value; floats appear nowhere
in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DomainError

__all__ = [
    "BigRational",
    "FixedDecimal",
    "div_round_half_even",
    "div_round_up",
    "fixed_from_rational",
    "fixed_recip_square",
    "guard_digits",
    "rat",
    "to_decimal_string",
]

BigRational = Fraction

RationalLike = Union[int, Fraction]


def rat(numerator: int, denominator: int = 1) -> Fraction:
    """Reduced rational numerator/denominator with positive denominator."""
    if denominator == 0:
        raise DomainError("rational number with zero denominator")
    return Fraction(numerator, denominator)


def div_round_half_even(numerator: int, denominator: int) -> int:
    """Nearest integer to numerator/denominator, ties to even.

    The denominator must be positive; the numerator may be negative (the
    result is then the half-even rounding of the negative quotient, so the
    operation is symmetric about zero).
    """
    if denominator <= 0:
        raise DomainError("division requires a positive denominator")
    quotient, remainder = divmod(numerator, denominator)
    twice = 2 * remainder
    if twice > denominator or (twice == denominator and quotient & 1):
        quotient += 1
    return quotient


def div_round_up(numerator: int, denominator: int) -> int:
    """Ceiling of numerator/denominator for a positive denominator."""
    if denominator <= 0:
        raise DomainError("division requires a positive denominator")
    return -((-numerator) // denominator)


def guard_digits(operation_count: int) -> int:
    """Guard-digit budget for a computation of the given operation count.

    Each fixed-point operation loses at most half a unit in the last
    carried place, so a run of `operation_count` operations stays well
    inside one unit at ten fewer digits than `10 + len(str(count))`
    (which equals 10 + ceil(log10(count + 1)) for positive counts).
    """
    if operation_count < 0:
        raise DomainError("operation count must be nonnegative")
    if operation_count == 0:
        return 10
    return 10 + len(str(operation_count))


class FixedDecimal:
    """Fixed-point decimal value ``mantissa * 10**-scale``.

    `scale` counts the fractional digits carried internally; `guard` of
    those are safety digits beyond the precision the caller requested, so
    the displayed precision is ``scale - guard`` digits. Instances are
    immutable. Addition and subtraction of aligned values are exact;
    multiplication, division, and rescaling round half to even and are
    accurate to half a unit in the last carried place.
    """

    __slots__ = ("mantissa", "scale", "guard")

    mantissa: int
    scale: int
    guard: int

    def __init__(self, mantissa: int, scale: int, guard: int = 0):
        if scale < 0:
            raise DomainError("scale must be nonnegative")
        if guard < 0 or guard > scale:
            raise DomainError("guard digits must satisfy 0 <= guard <= scale")
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "guard", guard)

    def __setattr__(self, name, value):
        raise AttributeError("FixedDecimal is immutable")

    # --- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, value: int, scale: int, guard: int = 0) -> "FixedDecimal":
        return cls(value * 10**scale, scale, guard)

    @classmethod
    def from_rational(
        cls, value: RationalLike, digits: int, guard: int = 0
    ) -> "FixedDecimal":
        """Round value half-even to digits + guard fractional digits."""
        if digits < 0:
            raise DomainError("digit count must be nonnegative")
        q = Fraction(value)
        scale = digits + guard
        mantissa = div_round_half_even(q.numerator * 10**scale, q.denominator)
        return cls(mantissa, scale, guard)

    # --- views ----------------------------------------------------------

    @property
    def digits(self) -> int:
        """Fractional digits of requested (non-guard) precision."""
        return self.scale - self.guard

    def as_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def ulp(self) -> Fraction:
        """Value of one unit in the last carried place."""
        return Fraction(1, 10**self.scale)

    # --- rescaling --------------------------------------------------------

    def rescaled(self, scale: int, guard: int = 0) -> "FixedDecimal":
        """Same value at a new scale: exact when widening, half-even when
        narrowing."""
        if scale >= self.scale:
            return FixedDecimal(
                self.mantissa * 10 ** (scale - self.scale), scale, guard
            )
        mantissa = div_round_half_even(self.mantissa, 10 ** (self.scale - scale))
        return FixedDecimal(mantissa, scale, guard)

    # --- arithmetic -----------------------------------------------------

    @staticmethod
    def _aligned(a: "FixedDecimal", b: "FixedDecimal"):
        scale = max(a.scale, b.scale)
        guard = max(a.guard + scale - a.scale, b.guard + scale - b.scale)
        ma = a.mantissa * 10 ** (scale - a.scale)
        mb = b.mantissa * 10 ** (scale - b.scale)
        return ma, mb, scale, guard

    def _coerce(self, other) -> "FixedDecimal":
        if isinstance(other, FixedDecimal):
            return other
        if isinstance(other, int):
            return FixedDecimal.from_int(other, self.scale, self.guard)
        return NotImplemented

    def __add__(self, other) -> "FixedDecimal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ma, mb, scale, guard = self._aligned(self, other)
        return FixedDecimal(ma + mb, scale, guard)

    __radd__ = __add__

    def __sub__(self, other) -> "FixedDecimal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ma, mb, scale, guard = self._aligned(self, other)
        return FixedDecimal(ma - mb, scale, guard)

    def __rsub__(self, other) -> "FixedDecimal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other) -> "FixedDecimal":
        if isinstance(other, int):
            return FixedDecimal(self.mantissa * other, self.scale, self.guard)
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        scale = max(self.scale, other.scale)
        guard = max(
            self.guard + scale - self.scale, other.guard + scale - other.scale
        )
        mantissa = div_round_half_even(
            self.mantissa * other.mantissa, 10 ** (self.scale + other.scale - scale)
        )
        return FixedDecimal(mantissa, scale, guard)

    __rmul__ = __mul__

    def divided_by_int(self, divisor: int) -> "FixedDecimal":
        """Half-even division by a positive integer at the same scale."""
        if divisor <= 0:
            raise DomainError("divisor must be positive")
        mantissa = div_round_half_even(self.mantissa, divisor)
        return FixedDecimal(mantissa, self.scale, self.guard)

    def __neg__(self) -> "FixedDecimal":
        return FixedDecimal(-self.mantissa, self.scale, self.guard)

    def __abs__(self) -> "FixedDecimal":
        return FixedDecimal(abs(self.mantissa), self.scale, self.guard)

    # --- comparison (numeric, scale-independent) -----------------------

    def _cmp_key(self, other):
        if isinstance(other, FixedDecimal):
            scale = max(self.scale, other.scale)
            return (
                self.mantissa * 10 ** (scale - self.scale),
                other.mantissa * 10 ** (scale - other.scale),
            )
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return (
                self.mantissa * q.denominator,
                q.numerator * 10**self.scale,
            )
        return None

    def __eq__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] == key[1]

    def __lt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] < key[1]

    def __le__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] <= key[1]

    def __gt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] > key[1]

    def __ge__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] >= key[1]

    def __hash__(self):
        return hash(self.as_fraction())

    def __bool__(self):
        return self.mantissa != 0

    # --- rendering -------------------------------------------------------

    def to_decimal_string(self, display_digits: int | None = None) -> str:
        """Plain decimal string with exactly display_digits fractional
        digits (default: the non-guard precision), rounded half to even.

        Never uses exponent notation; a zero integer part renders as "0".
        """
        if display_digits is None:
            display_digits = self.digits
        if display_digits < 0:
            raise DomainError("display digit count must be nonnegative")
        if display_digits > self.scale:
            raise DomainError(
                "cannot display %d fractional digits from a value carrying %d"
                % (display_digits, self.scale)
            )
        mantissa = div_round_half_even(
            self.mantissa, 10 ** (self.scale - display_digits)
        )
        sign = "-" if mantissa < 0 else ""
        digits_str = str(abs(mantissa))
        if display_digits == 0:
            return sign + digits_str
        digits_str = digits_str.rjust(display_digits + 1, "0")
        whole, frac = digits_str[:-display_digits], digits_str[-display_digits:]
        return f"{sign}{whole}.{frac}"

    def __repr__(self):
        return (
            f"FixedDecimal({self.to_decimal_string(self.scale)!r},"
            f" guard={self.guard})"
        )

    def __str__(self):
        return self.to_decimal_string()


def fixed_from_rational(
    value: RationalLike, digits: int, guard: int = 0
) -> FixedDecimal:
    """Fixed-point image of a rational, half-even at digits + guard places."""
    return FixedDecimal.from_rational(value, digits, guard)


def fixed_recip_square(index: int, digits: int, guard: int = 0) -> FixedDecimal:
    """1/index**2 rounded half-even to digits + guard fractional digits."""
    if index < 1:
        raise DomainError("index must be a positive integer")
    scale = digits + guard
    mantissa = div_round_half_even(10**scale, index * index)
    return FixedDecimal(mantissa, scale, guard)


def to_decimal_string(value, display_digits: int | None = None) -> str:
    """Decimal rendering of a FixedDecimal, rational, or integer.

    Rationals and integers require an explicit display_digits; FixedDecimal
    defaults to its own non-guard precision.
    """
    if isinstance(value, FixedDecimal):
        return value.to_decimal_string(display_digits)
    if isinstance(value, (int, Fraction)):
        if display_digits is None:
            raise DomainError(
                "display digit count is required for exact rational values"
            )
        return FixedDecimal.from_rational(value, display_digits).to_decimal_string()
    raise DomainError(f"cannot render {type(value).__name__} as a decimal string")
