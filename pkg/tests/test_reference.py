"""Reference constants against an independent arbitrary-precision oracle.

mpmath plays the judge here: it shares no code or algorithm with the
Machin-based fixed-point evaluation under test (mpmath computes pi by
binary-splitting Chudnovsky), so agreement is meaningful evidence.
"""

import threading
from fractions import Fraction

import mpmath as mp
import pytest

from pipow.errors import DomainError
from pipow.reference import (
    MAX_PI_DIGITS,
    PiCache,
    REFERENCE_GUARD,
    _machin_pi_mantissa,
    basel_power,
    factorial,
    pi_digits,
    reference_value,
    sinc_taylor,
)

mp.mp.dps = 120


def mp_fraction(value) -> Fraction:
    """Exact rational image of an mpmath float (binary, hence exact)."""
    sign, man, exp, _ = mp.mpf(value)._mpf_
    frac = Fraction(man) * Fraction(2) ** exp
    return -frac if sign else frac


PI = mp_fraction(+mp.pi)                     # accurate to ~120 digits
PI_KNOWN_PREFIX = "3.14159265358979323846"   # textbook digits


class TestPiDigits:
    def test_known_prefix(self):
        assert pi_digits(30).to_decimal_string().startswith(PI_KNOWN_PREFIX)

    @pytest.mark.parametrize("digits", [1, 2, 10, 30, 50, 100])
    def test_value_level_accuracy(self, digits):
        fd = pi_digits(digits)
        assert fd.digits == digits
        assert fd.guard == REFERENCE_GUARD
        # Guarded mantissa is itself within one unit of true pi.
        assert abs(fd.as_fraction() - PI) <= Fraction(2, 10**fd.scale)

    def test_spec_of_ten_digit_value(self):
        # The 10-digit request is accurate at value level to 10^-10.
        fd = pi_digits(10)
        assert abs(fd.as_fraction() - PI) < Fraction(1, 10**10)

    def test_fifty_digit_rendering_is_correctly_rounded(self):
        # Half-even rendering of true pi at 50 places, derived from the
        # oracle, must equal the package's rendering.
        scaled = PI * 10**50
        rounded = round(scaled)  # banker's rounding on Fraction
        expected = f"{str(rounded)[0]}.{str(rounded)[1:]}"
        assert pi_digits(50).to_decimal_string() == expected

    def test_domain(self):
        with pytest.raises(DomainError):
            pi_digits(0)
        with pytest.raises(DomainError):
            pi_digits(MAX_PI_DIGITS + 1)

    def test_prefix_consistency_across_requests(self):
        wide = pi_digits(80).as_fraction()
        narrow = pi_digits(15).as_fraction()
        assert abs(wide - narrow) <= Fraction(1, 10**25)  # 15+guard places


class TestMachinInternals:
    def test_alternate_guard_settings_agree(self):
        # Same mantissa from two different working margins: the final
        # rounding is insensitive to the series cutoff slack.
        assert _machin_pi_mantissa(40) == _machin_pi_mantissa(40, extra=25)
        assert _machin_pi_mantissa(60) == _machin_pi_mantissa(60, extra=30)

    def test_mantissa_matches_oracle(self):
        mantissa = _machin_pi_mantissa(60)
        assert abs(Fraction(mantissa, 10**60) - PI) <= Fraction(1, 10**60)


class TestPiCache:
    def test_serves_narrower_from_wider(self):
        cache = PiCache()
        wide = cache.mantissa(50)
        narrow = cache.mantissa(20)
        # Narrow value is the half-even rounding of the wide one.
        assert abs(Fraction(narrow, 10**20) - Fraction(wide, 10**50)) <= (
            Fraction(1, 2 * 10**20)
        )

    def test_growth_then_reuse(self):
        cache = PiCache()
        first = cache.mantissa(10)
        second = cache.mantissa(10)
        assert first == second

    def test_thread_safety_smoke(self):
        cache = PiCache()
        results = {}

        def worker(scale):
            results[scale] = cache.mantissa(scale)

        threads = [threading.Thread(target=worker, args=(s,))
                   for s in (10, 20, 30, 40, 50)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for scale, mantissa in results.items():
            assert abs(Fraction(mantissa, 10**scale) - PI) <= (
                Fraction(2, 10**scale)
            )


class TestFactorial:
    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 120),
                                             (9, 362880)])
    def test_small(self, n, expected):
        assert factorial(n) == expected

    def test_matches_recurrence(self):
        acc = 1
        for n in range(1, 30):
            acc *= n
            assert factorial(n) == acc


class TestReferenceValue:
    @pytest.mark.parametrize("depth", [1, 2, 3, 4, 5, 8])
    def test_against_oracle(self, depth):
        fd = reference_value(depth, 40)
        oracle = mp_fraction(+(mp.pi ** (2 * depth) / mp.factorial(2 * depth + 1)))
        assert abs(fd.as_fraction() - oracle) < Fraction(1, 10**45)

    def test_depth_one_is_basel_value(self):
        # pi**2/3! and (pi**2/6)**1 are the same number via two paths.
        a = reference_value(1, 30).as_fraction()
        b = basel_power(1, 30).as_fraction()
        assert abs(a - b) <= Fraction(2, 10**40)

    def test_domain(self):
        with pytest.raises(DomainError):
            reference_value(0, 10)
        with pytest.raises(DomainError):
            reference_value(2, 0)


class TestBaselPower:
    def test_power_zero_is_exactly_one(self):
        fd = basel_power(0, 25)
        assert fd.as_fraction() == 1

    def test_spec_ten_digit_value_level(self):
        # (pi**2/6)**2 = pi**4/36 to at least 10 places.
        fd = basel_power(2, 10)
        oracle = mp_fraction(+(mp.pi**4 / 36))
        assert abs(fd.as_fraction() - oracle) < Fraction(1, 10**10)

    @pytest.mark.parametrize("power", [1, 2, 3, 5, 7])
    def test_against_oracle(self, power):
        fd = basel_power(power, 40)
        oracle = mp_fraction(+((mp.pi**2 / 6) ** power))
        assert abs(fd.as_fraction() - oracle) < Fraction(1, 10**45)

    def test_domain(self):
        with pytest.raises(DomainError):
            basel_power(-1, 10)
        with pytest.raises(DomainError):
            basel_power(2, 0)


class TestSincTaylor:
    def test_zero_is_exactly_one(self):
        assert sinc_taylor(0, 20).as_fraction() == 1

    def test_half(self):
        # sin(pi/2)/(pi/2) = 2/pi.
        fd = sinc_taylor(Fraction(1, 2), 20)
        oracle = mp_fraction(+(2 / mp.pi))
        assert abs(fd.as_fraction() - oracle) < Fraction(1, 10**24)

    def test_twenty_digit_rendering_matches_oracle(self):
        oracle = mp_fraction(+(2 / mp.pi)) * 10**20
        expected = "0." + str(round(oracle)).rjust(20, "0")
        assert sinc_taylor(Fraction(1, 2), 20).to_decimal_string() == expected

    @pytest.mark.parametrize("x", [1, 2, -1, -2, Fraction(3, 2)])
    def test_integer_zeros_and_oracle(self, x):
        fd = sinc_taylor(x, 25)
        q = Fraction(x)
        angle = mp.pi * mp.mpmathify(q.numerator) / q.denominator
        target = mp_fraction(+(mp.sin(angle) / angle))
        assert abs(fd.as_fraction() - target) < Fraction(1, 10**28)

    def test_even_function(self):
        a = sinc_taylor(Fraction(3, 4), 25)
        b = sinc_taylor(Fraction(-3, 4), 25)
        assert a.as_fraction() == b.as_fraction()

    def test_domain(self):
        with pytest.raises(DomainError):
            sinc_taylor(Fraction(21, 10), 10)
        with pytest.raises(DomainError):
            sinc_taylor(Fraction(1, 2), 0)
