import random
from fractions import Fraction

import mpmath
import pytest

from prclab.intervals import (
    PrecisionCapError,
    RealInterval,
    decimal_str,
    power_of_int,
    precision_cap,
    sci_str,
    to_fraction,
)


def mpf_fraction(x) -> Fraction:
    """Exact rational value of an mpmath float (independent oracle side)."""
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    fr = Fraction(man) * Fraction(2) ** exp
    return -fr if sign else fr


def test_point_constructors():
    iv = RealInterval.from_number(Fraction(1, 3), 64)
    lo, hi = iv.as_fractions()
    assert lo <= Fraction(1, 3) <= hi
    assert lo < hi  # 1/3 is not dyadic: outward rounding must separate
    exact = RealInterval.from_number(7, 64)
    assert exact.as_fractions() == (7, 7)


def test_inverted_interval_rejected():
    a = RealInterval.from_number(2, 64)
    with pytest.raises(ValueError):
        RealInterval(a.hi, a.lo - 1)


def test_arithmetic_contains_exact_result():
    rng = random.Random(17)
    for _ in range(300):
        a = Fraction(rng.randrange(-999, 1000), rng.randrange(1, 50))
        b = Fraction(rng.randrange(-999, 1000), rng.randrange(1, 50))
        ia = RealInterval.from_number(a, 40)
        ib = RealInterval.from_number(b, 40)
        assert ia.add(ib).contains(a + b)
        assert ia.sub(ib).contains(a - b)
        assert ia.mul(ib).contains(a * b)
        if b != 0 and not ib.contains(0):
            assert ia.div(ib).contains(Fraction(a, 1) / b)
        assert ia.abs().contains(abs(a))
        assert ia.neg().contains(-a)


def test_div_by_zero_interval():
    a = RealInterval.from_number(1, 53)
    z = RealInterval.from_endpoints(Fraction(-1), Fraction(1), 53)
    with pytest.raises(ZeroDivisionError):
        a.div(z)


def test_exp_log_round_trip_containment():
    rng = random.Random(23)
    for _ in range(50):
        a = Fraction(rng.randrange(1, 5000), rng.randrange(1, 500))
        iv = RealInterval.from_number(a, 64)
        back = iv.log().exp()
        assert back.contains(a)


def test_power_of_int_against_mpmath_oracle():
    # 20 random (p, C) pairs against an independent high-precision evaluator
    rng = random.Random(41)
    with mpmath.workdps(120):
        for _ in range(20):
            p = rng.randrange(2, 10**12)
            c = rng.randrange(2, 3**8)
            iv = power_of_int(p, Fraction(1, c), 96)
            true = mpf_fraction(mpmath.power(p, mpmath.mpf(1) / c))
            lo, hi = iv.as_fractions()
            # oracle itself is rounded; allow it a 1e-90 halo
            halo = Fraction(1, 10**90)
            assert lo - halo <= true <= hi + halo, (p, c)
            assert hi - lo < Fraction(1, 10**20)


def test_power_of_int_exact_integer_path():
    iv = power_of_int(7, 3, 64)
    assert iv.as_fractions() == (343, 343)
    iv = power_of_int(1, Fraction(-5, 7), 64)
    assert iv.as_fractions() == (1, 1)


def test_power_of_int_negative_exponent():
    iv = power_of_int(2, Fraction(-17, 40), 96)
    lo, hi = iv.as_fractions()
    # 2^(-17/40) = 0.7447...: check bracket against an exact squaring test
    assert lo < hi
    assert (lo**40) * 2**17 < 1 < (hi**40) * 2**17


def test_pow_int_and_fraction():
    iv = RealInterval.from_number(Fraction(3, 2), 64)
    cube = iv.pow_int(3)
    assert cube.contains(Fraction(27, 8))
    frac = iv.pow_fraction(Fraction(1, 2))
    lo, hi = frac.as_fractions()
    assert lo * lo <= Fraction(3, 2) <= hi * hi
    with pytest.raises(ValueError):
        RealInterval.from_endpoints(Fraction(-1), Fraction(1), 64).pow_int(2)


def test_monotone_refinement():
    # higher precision can only shrink (or keep) the enclosure
    wide = power_of_int(17, Fraction(1, 9), 64)
    tight = power_of_int(17, Fraction(1, 9), 512)
    assert tight.strictly_inside(wide) or (
        wide.lo <= tight.lo and tight.hi <= wide.hi
    )


def test_strictly_inside():
    outer = RealInterval.from_endpoints(Fraction(1), Fraction(2), 64)
    inner = RealInterval.from_endpoints(Fraction(5, 4), Fraction(7, 4), 64)
    assert inner.strictly_inside(outer)
    assert not outer.strictly_inside(inner)


def test_width_and_contains():
    iv = RealInterval.from_endpoints(Fraction(1, 3), Fraction(2, 3), 64)
    assert iv.contains(Fraction(1, 2))
    assert not iv.contains(Fraction(3, 4))
    assert iv.width_fraction() >= Fraction(1, 3)


def test_directed_decimal_strings():
    iv = RealInterval.from_number(Fraction(1, 3), 64)
    lo_s = decimal_str(iv.lo, 6, "down")
    hi_s = decimal_str(iv.hi, 6, "up")
    assert lo_s == "0.333333"
    assert hi_s == "0.333334"


def test_sci_str_directed():
    iv = RealInterval.from_number(Fraction(1, 3), 80)
    lo_s = sci_str(iv.lo, 8, "down")
    hi_s = sci_str(iv.hi, 8, "up")
    assert lo_s == "3.3333333e-01"
    assert hi_s == "3.3333334e-01"
    assert sci_str(iv.lo, 8, "up") == "3.3333334e-01"
    neg = RealInterval.from_number(Fraction(-1, 3), 80)
    assert sci_str(neg.lo, 8, "down") == "-3.3333334e-01"
    assert sci_str(neg.hi, 8, "up") == "-3.3333333e-01"
    tiny = RealInterval.from_number(Fraction(1, 10**40), 80)
    assert sci_str(tiny.lo, 4, "down").endswith("e-41")  # 9.999...e-41 rounded down
    assert sci_str(tiny.hi, 4, "up").endswith("e-40")


def test_precision_cap_env(monkeypatch):
    monkeypatch.setenv("PRC_LAB_PRECISION_CAP", "4096")
    assert precision_cap() == 4096
    monkeypatch.delenv("PRC_LAB_PRECISION_CAP")
    assert precision_cap() == 1 << 20
    assert issubclass(PrecisionCapError, Exception)
