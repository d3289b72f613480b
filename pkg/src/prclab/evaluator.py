"""Certified real-number layer: enclosures of the chain limit, digit
extraction, near-integer decay measurements, and the rational-power
nearest-integer table.

All real quantities are produced as outward-rounded intervals; decimal
digits are emitted only when every point of the enclosing interval
shares them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import gmpy2
from gmpy2 import mpz

from .chain import PrimeChain
from .constants import CUBIC_DECAY_COEFF, CUBIC_NEARNESS_EXPONENT
from .intervals import (
    PrecisionCapError,
    RealInterval,
    power_of_int,
    precision_cap,
    to_fraction,
)


def _decimal_digits_of(n: int) -> int:
    return len(str(abs(n)))


def bounds(chain: PrimeChain, k: int, digits: int = 12) -> RealInterval:
    """Enclosure of [p_k^{1/C_k}, (p_k+1)^{1/C_k}] with rounding slack
    below 10^-(digits+2).

    The returned interval's width is dominated by the genuine gap
    between the two roots; precision doubles until the rounding
    contribution is negligible at the requested scale.
    """
    if not 1 <= k <= chain.depth:
        raise ValueError(f"k must be in [1, {chain.depth}]")
    p = chain.p(k)
    exponent = Fraction(1, chain.C(k))
    target = Fraction(1, 10 ** (digits + 2))
    prec = 64 + 4 * digits
    cap = precision_cap()
    while True:
        lo_iv = power_of_int(p, exponent, prec)
        hi_iv = power_of_int(p + 1, exponent, prec)
        if lo_iv.width_fraction() + hi_iv.width_fraction() < target:
            return RealInterval(lo_iv.lo, hi_iv.hi)
        prec *= 2
        if prec > cap:
            raise PrecisionCapError(
                f"bounds(k={k}, digits={digits}) exceeded {cap} bits"
            )


@dataclass(frozen=True)
class CertifiedDigits:
    """A decimal prefix shared by every point of the final enclosure."""

    digits: str
    conditional: bool
    precision_bits: int
    depth: int

    def __str__(self):
        return self.digits


def certified_digits(chain: PrimeChain, digits: int | None = None) -> CertifiedDigits:
    """Longest certified decimal prefix of the chain's limit.

    The prefix stops before the first decimal position where the
    enclosure straddles a digit boundary (truncation, never rounding).
    When the chain relies on probable primes the result is flagged
    conditional.
    """
    k = chain.depth
    if digits is None:
        digits = _decimal_digits_of(chain.last) + _decimal_digits_of(chain.C(k)) + 6
    iv = bounds(chain, k, digits)
    lo, hi = iv.as_fractions()

    int_lo, int_hi = lo.numerator // lo.denominator, hi.numerator // hi.denominator
    if int_lo != int_hi:
        text = ""
    else:
        # largest L with floor(lo*10^L) == floor(hi*10^L); agreement is
        # monotone decreasing in L so binary search is valid
        def agree(level: int) -> bool:
            s_lo = lo * 10**level
            s_hi = hi * 10**level
            return (s_lo.numerator // s_lo.denominator) == (
                s_hi.numerator // s_hi.denominator
            )

        lo_l, hi_l = 0, digits + 4
        while lo_l < hi_l:
            mid = (lo_l + hi_l + 1) // 2
            if agree(mid):
                lo_l = mid
            else:
                hi_l = mid - 1
        level = lo_l
        scaled = lo * 10**level
        head = str(scaled.numerator // scaled.denominator)
        ilen = len(str(int_lo))
        text = head if level == 0 else f"{head[:ilen]}.{head[ilen:]}"

    return CertifiedDigits(
        digits=text,
        conditional=chain.certainty != "proven",
        precision_bits=iv.precision,
        depth=k,
    )


@dataclass(frozen=True)
class NearnessRecord:
    """Distance of a chain power from its integer part, with the two
    analytic decay envelopes evaluated alongside."""

    k: int
    C_k: int
    distance: RealInterval
    bound_simple: RealInterval  # 2 * p_k^(3*theta - 2)
    bound_gamma: RealInterval  # e^(-gamma * C_k), gamma = (17/240) log p_1


def nearness(chain: PrimeChain, k: int) -> NearnessRecord:
    """Enclose xi^{C_k} - p_k using the deepest chain term.

    xi lies in [p_K^{1/C_K}, (p_K+1)^{1/C_K}], so xi^{C_k} is enclosed by
    raising those bounds to C_k/C_K.  Precision is raised until the
    rounding slack is negligible relative to the distance itself.
    """
    if not 1 <= k < chain.depth:
        raise ValueError(f"k must be in [1, {chain.depth - 1}]")
    j = chain.depth
    q = Fraction(chain.C(k), chain.C(j))
    p_j, p_k = chain.p(j), chain.p(k)
    prec = 192
    cap = precision_cap()
    while True:
        a = power_of_int(p_j, q, prec)
        b = power_of_int(p_j + 1, q, prec)
        dist = RealInterval(a.lo, b.hi).sub(RealInterval.from_number(p_k, prec), prec)
        slack = a.width_fraction() + b.width_fraction()
        if dist.hi > 0 and slack <= to_fraction(dist.hi) / (1 << 64):
            break
        prec *= 2
        if prec > cap:
            raise PrecisionCapError(f"nearness(k={k}) exceeded {cap} bits")

    report_prec = max(192, prec)
    bound_simple = power_of_int(p_k, CUBIC_NEARNESS_EXPONENT, report_prec).mul(
        RealInterval.from_number(2, report_prec), report_prec
    )
    gamma_exponent = -CUBIC_DECAY_COEFF * chain.C(k)
    bound_gamma = power_of_int(chain.p(1), gamma_exponent, report_prec)
    return NearnessRecord(k, chain.C(k), dist, bound_simple, bound_gamma)


def nearness_table(chain: PrimeChain, ks=None) -> list[NearnessRecord]:
    ks = list(ks) if ks is not None else list(range(1, chain.depth))
    return [nearness(chain, k) for k in ks]


def empirical_decay_rate(records: list[NearnessRecord]) -> tuple[float, int]:
    """Largest gamma with distance.hi <= e^(-gamma*C_k) across the records.

    This is the envelope fit used for exponent sequences where the
    closed-form cubic rate does not apply; returns (gamma, attaining k).
    """
    best = None
    for rec in records:
        val = float(-gmpy2.log(rec.distance.hi) / rec.C_k)
        if best is None or val < best[0]:
            best = (val, rec.k)
    if best is None:
        raise ValueError("no records")
    return best


def check_nesting(chain: PrimeChain) -> list[tuple[int, bool]]:
    """Strict containment of consecutive root enclosures, per level.

    Digits are chosen per level so that rounding slack sits far below
    the genuine separation (which is at least ~1/(C_{k+1} p_{k+1})).
    """
    out = []
    for k in range(1, chain.depth):
        digits = (
            _decimal_digits_of(chain.p(k + 1)) + _decimal_digits_of(chain.C(k + 1)) + 6
        )
        outer = bounds(chain, k, digits)
        inner = bounds(chain, k + 1, digits)
        out.append((k, inner.strictly_inside(outer)))
    return out


@dataclass(frozen=True)
class MahlerRow:
    n: int
    distance: Fraction  # exact || (num/den)^n ||
    bound: RealInterval  # e^(-eps*n)
    holds: bool  # distance > e^(-eps*n), decided certifiably


def mahler_table(num: int, den: int, n_max: int, eps: Fraction) -> list[MahlerRow]:
    """Exact nearest-integer distances of (num/den)^n against e^(-eps*n).

    Distances are exact rationals; the exponential side is an interval,
    refined until each comparison is certified (always possible since
    e^(-eps*n) is irrational).  Failures are reported, not raised: the
    inequality is only promised for large n.
    """
    if den < 2 or num <= den:
        raise ValueError("need num > den >= 2 (a non-integer rational > 1)")
    if gcd(num, den) != 1:
        raise ValueError("num/den must be in lowest terms")
    eps = eps if isinstance(eps, Fraction) else Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")

    rows = []
    cap = precision_cap()
    for n in range(1, n_max + 1):
        a, b = mpz(num) ** n, mpz(den) ** n
        nearest = (2 * a + b) // (2 * b)
        dist = Fraction(int(abs(a - nearest * b)), int(b))
        prec = 64
        while True:
            bound = RealInterval.from_number(-eps * n, prec).exp(prec)
            blo, bhi = bound.as_fractions()
            if dist > bhi:
                holds = True
                break
            if dist < blo:
                holds = False
                break
            prec *= 2
            if prec > cap:
                raise PrecisionCapError(f"mahler row n={n} exceeded {cap} bits")
        rows.append(MahlerRow(n, dist, bound, holds))
    return rows
