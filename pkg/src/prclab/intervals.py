"""Arbitrary-precision real intervals with outward rounding.

Endpoints are MPFR floats; every operation computes the lower endpoint
in a round-down context and the upper endpoint in a round-up context,
so [lo, hi] always encloses the exact result.  Enclosures only ever
widen by rounding, never silently narrow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpz

DEFAULT_PRECISION_CAP = 1 << 20
_ENV_CAP = "PRC_LAB_PRECISION_CAP"


class PrecisionCapError(Exception):
    """Requested certification needs more working precision than allowed."""


def precision_cap() -> int:
    env = os.environ.get(_ENV_CAP)
    return int(env) if env else DEFAULT_PRECISION_CAP


def _dn(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundDown)


def _up(prec: int):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp)


def _convert(x, ctx) -> mpfr:
    """Round an int / Fraction / mpfr into ctx's precision and direction."""
    if isinstance(x, Fraction):
        return ctx.div(mpz(x.numerator), mpz(x.denominator))
    if isinstance(x, mpfr):
        return ctx.add(x, mpz(0))
    # adding an mpfr zero forces a rounded mpfr result (mpz + mpz stays exact)
    return ctx.add(mpz(x), mpfr(0))


def to_fraction(x: mpfr) -> Fraction:
    """Exact rational value of an MPFR float."""
    num, den = x.as_integer_ratio()
    return Fraction(int(num), int(den))


def decimal_str(x: mpfr, places: int, direction: str) -> str:
    """Decimal string of x with ``places`` digits after the point,
    rounded toward -inf ("down") or +inf ("up")."""
    fr = to_fraction(x) * 10**places
    n = fr.numerator // fr.denominator
    if direction == "up" and fr != n:
        n += 1
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}" if places else f"{sign}{s}"


def sci_str(x: mpfr, sig: int, direction: str) -> str:
    """Scientific-notation string with ``sig`` significant digits,
    rounded toward -inf ("down") or +inf ("up"), so printed values stay
    valid bounds."""
    if x == 0:
        return "0"
    fr = to_fraction(x)
    neg = fr < 0
    a = -fr if neg else fr
    e = 0
    while a >= 10:
        a /= 10
        e += 1
    while a < 1:
        a *= 10
        e -= 1
    scaled = a * 10 ** (sig - 1)
    n = scaled.numerator // scaled.denominator
    outward = (direction == "up") != neg  # away from zero in print space
    if outward and scaled != n:
        n += 1
    if n >= 10**sig:
        n //= 10
        e += 1
    s = str(n)
    mantissa = s[0] + ("." + s[1:] if sig > 1 else "")
    return f"{'-' if neg else ''}{mantissa}e{e:+03d}"


@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] of MPFR endpoints, lo <= hi."""

    lo: mpfr
    hi: mpfr

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_number(cls, x, prec: int) -> "RealInterval":
        """Point value (int, Fraction, mpfr) rounded outward."""
        return cls(_convert(x, _dn(prec)), _convert(x, _up(prec)))

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int) -> "RealInterval":
        return cls(_convert(lo, _dn(prec)), _convert(hi, _up(prec)))

    # -- inspection --------------------------------------------------------

    @property
    def precision(self) -> int:
        return max(self.lo.precision, self.hi.precision)

    def width_fraction(self) -> Fraction:
        return to_fraction(self.hi) - to_fraction(self.lo)

    def as_fractions(self) -> tuple[Fraction, Fraction]:
        return to_fraction(self.lo), to_fraction(self.hi)

    def contains(self, x) -> bool:
        if isinstance(x, RealInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        fr = x if isinstance(x, Fraction) else Fraction(x)
        lo, hi = self.as_fractions()
        return lo <= fr <= hi

    def strictly_inside(self, outer: "RealInterval") -> bool:
        return outer.lo < self.lo and self.hi < outer.hi

    def __repr__(self):
        return f"RealInterval({self.lo!r}, {self.hi!r})"

    # -- arithmetic (all outward) -------------------------------------------

    def _coerce(self, other, prec: int) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        return RealInterval.from_number(other, prec)

    def add(self, other, prec: int | None = None) -> "RealInterval":
        prec = prec or self.precision
        o = self._coerce(other, prec)
        return RealInterval(_dn(prec).add(self.lo, o.lo), _up(prec).add(self.hi, o.hi))

    def sub(self, other, prec: int | None = None) -> "RealInterval":
        prec = prec or self.precision
        o = self._coerce(other, prec)
        return RealInterval(_dn(prec).sub(self.lo, o.hi), _up(prec).sub(self.hi, o.lo))

    def mul(self, other, prec: int | None = None) -> "RealInterval":
        prec = prec or self.precision
        o = self._coerce(other, prec)
        dn, up = _dn(prec), _up(prec)
        cands_dn = [dn.mul(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        cands_up = [up.mul(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return RealInterval(min(cands_dn), max(cands_up))

    def div(self, other, prec: int | None = None) -> "RealInterval":
        prec = prec or self.precision
        o = self._coerce(other, prec)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        dn, up = _dn(prec), _up(prec)
        cands_dn = [dn.div(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        cands_up = [up.div(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return RealInterval(min(cands_dn), max(cands_up))

    def neg(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo)

    def abs(self) -> "RealInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return self.neg()
        return RealInterval(mpfr(0), max(-self.lo, self.hi))

    def exp(self, prec: int | None = None) -> "RealInterval":
        prec = prec or self.precision
        return RealInterval(_dn(prec).exp(self.lo), _up(prec).exp(self.hi))

    def log(self, prec: int | None = None) -> "RealInterval":
        prec = prec or self.precision
        if self.lo <= 0:
            raise ValueError("log needs a strictly positive interval")
        return RealInterval(_dn(prec).log(self.lo), _up(prec).log(self.hi))

    def pow_int(self, n: int, prec: int | None = None) -> "RealInterval":
        """self**n for integer n >= 0; base must be nonnegative."""
        prec = prec or self.precision
        if self.lo < 0:
            raise ValueError("pow_int needs a nonnegative base interval")
        if n < 0:
            raise ValueError("pow_int needs n >= 0")
        if n == 0:
            return RealInterval.from_number(1, prec)
        return RealInterval(_dn(prec).pow(self.lo, n), _up(prec).pow(self.hi, n))

    def pow_fraction(self, q: Fraction, prec: int | None = None) -> "RealInterval":
        """self**q via exp(q*log(self)); base must be strictly positive."""
        prec = prec or self.precision
        return self.log(prec).mul(RealInterval.from_number(q, prec), prec).exp(prec)


def power_of_int(base: int, exponent, prec: int) -> RealInterval:
    """Enclosure of base**exponent for integer base >= 1 and rational exponent.

    Integer nonnegative exponents take the exact big-integer path; the
    general case goes through exp(exponent * log(base)).
    """
    if base < 1:
        raise ValueError(f"base must be >= 1, got {base}")
    q = exponent if isinstance(exponent, Fraction) else Fraction(exponent)
    if q.denominator == 1 and q >= 0:
        return RealInterval.from_number(mpz(base) ** q.numerator, prec)
    if base == 1:
        return RealInterval.from_number(1, prec)
    dn, up = _dn(prec), _up(prec)
    log_iv = RealInterval(dn.log(mpz(base)), up.log(mpz(base)))
    return log_iv.mul(RealInterval.from_number(q, prec), prec).exp(prec)
