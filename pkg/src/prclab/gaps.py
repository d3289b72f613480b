"""Empirical prime-interval statistics.

Counts are exact: windows are sieved segment by segment with numpy
(base primes up to sqrt of the top), or fall back to per-candidate
primality tests when the window sits beyond sieving range.  Density
ratios and tiling thresholds are evaluated as outward-rounded intervals
so that every comparison against a real-valued bound is certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from gmpy2 import iroot, isqrt, mpz

from .intervals import RealInterval, power_of_int
from .primality import DEFAULT_POLICY, CertaintyPolicy, is_prime

_SEGMENT = 1 << 22
_SIEVE_BASE_LIMIT = 10**8  # sieve path applies while sqrt(hi) stays below this


def floor_power(x: int, q: Fraction) -> int:
    """Exact floor(x^q) for x >= 1 and rational q >= 0 via integer roots."""
    if x < 1:
        raise ValueError("x must be >= 1")
    q = q if isinstance(q, Fraction) else Fraction(q)
    if q < 0:
        raise ValueError("exponent must be >= 0")
    root, _ = iroot(mpz(x) ** q.numerator, q.denominator)
    return int(root)


def base_primes(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (plain vectorized sieve)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(isqrt(limit)) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Boolean primality flags for [lo, hi] inclusive; base must cover
    sqrt(hi)."""
    flags = np.ones(hi - lo + 1, dtype=bool)
    if lo <= 1:
        flags[: min(2 - lo, hi - lo + 1)] = False
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start <= hi:
            flags[start - lo :: p] = False
    return flags


def prime_count_in(lo: int, hi: int, policy: CertaintyPolicy = DEFAULT_POLICY) -> int:
    """Exact number of primes in [lo, hi] inclusive."""
    if lo > hi:
        return 0
    lo = max(lo, 2)
    root = int(isqrt(hi)) + 1
    if root <= _SIEVE_BASE_LIMIT:
        base = base_primes(root)
        total = 0
        a = lo
        while a <= hi:
            b = min(a + _SEGMENT - 1, hi)
            total += int(sieve_segment(a, b, base).sum())
            a = b + 1
        return total
    return sum(1 for n in range(lo, hi + 1) if is_prime(n, policy).accepted)


@dataclass(frozen=True)
class GapSurveyRecord:
    x: int
    theta: Fraction
    interval_width: int  # floor(x^theta)
    prime_count: int
    density_ratio: RealInterval  # count * log(x) / x^theta


def gap_survey(
    x_list, theta: Fraction, policy: CertaintyPolicy = DEFAULT_POLICY
) -> list[GapSurveyRecord]:
    """Count primes in [x, x + floor(x^theta)] for each surveyed x."""
    theta = theta if isinstance(theta, Fraction) else Fraction(theta)
    if not 0 < theta <= 1:
        raise ValueError("theta must be in (0, 1]")
    records = []
    for x in x_list:
        x = int(x)
        if x < 100:
            raise ValueError(f"survey points must be >= 100, got {x}")
        width = floor_power(x, theta)
        if width < 1:
            raise ValueError(f"window width 0 at x={x}")
        count = prime_count_in(x, x + width, policy)
        prec = 96
        log_x = RealInterval.from_number(x, prec).log(prec)
        ratio = (
            RealInterval.from_number(count, prec)
            .mul(log_x, prec)
            .div(power_of_int(x, theta, prec), prec)
        )
        records.append(GapSurveyRecord(x, theta, width, count, ratio))
    return records


@dataclass(frozen=True)
class ExceptionalSurvey:
    x: int
    gamma: Fraction
    d: Fraction
    tiles: int
    exceptional_count: int
    matomaki_bound: RealInterval  # D * x^(2/3 - gamma)
    big_d: Fraction


def _is_exceptional(count: int, n: int, gamma: Fraction, d: Fraction) -> bool:
    """Certified decision of count <= d * n^gamma / log(n)."""
    if d == 0:
        return count == 0
    prec = 64
    while True:
        threshold = (
            RealInterval.from_number(d, prec)
            .mul(power_of_int(n, gamma, prec), prec)
            .div(RealInterval.from_number(n, prec).log(prec), prec)
        )
        t_lo, t_hi = threshold.as_fractions()
        if count <= t_lo:
            return True
        if count > t_hi:
            return False
        prec *= 2


def exceptional_survey(
    x: int,
    gamma: Fraction,
    d,
    big_d=Fraction(1),
    policy: CertaintyPolicy = DEFAULT_POLICY,
) -> ExceptionalSurvey:
    """Greedy disjoint tiling of [x, 2x] by [n, n + floor(n^gamma)],
    counting tiles whose prime count falls at or below d * n^gamma / log n.

    The greedy left-to-right family is one canonical choice among the
    disjoint families the sparse-interval bound quantifies over.
    """
    gamma = gamma if isinstance(gamma, Fraction) else Fraction(gamma)
    d = d if isinstance(d, Fraction) else Fraction(d)
    big_d = big_d if isinstance(big_d, Fraction) else Fraction(big_d)
    if not Fraction(1, 2) <= gamma <= 1:
        raise ValueError("gamma must be in [1/2, 1]")
    if floor_power(x, gamma) < 2:
        raise ValueError("x too small: tile width must be >= 2")

    tiles = []
    n = x
    while True:
        width = floor_power(n, gamma)
        if n + width > 2 * x:
            break
        tiles.append((n, n + width))
        n += width + 1

    # one pass over [x, 2x]: collect primes, then count per tile
    counts = np.zeros(len(tiles), dtype=np.int64)
    if tiles:
        root = int(isqrt(tiles[-1][1])) + 1
        base = base_primes(root)
        starts = np.array([t[0] for t in tiles], dtype=np.int64)
        ends = np.array([t[1] for t in tiles], dtype=np.int64)
        a = x
        while a <= tiles[-1][1]:
            b = min(a + _SEGMENT - 1, tiles[-1][1])
            seg = sieve_segment(a, b, base)
            positions = np.flatnonzero(seg) + a
            if positions.size:
                counts += np.searchsorted(positions, ends, side="right")
                counts -= np.searchsorted(positions, starts, side="left")
            a = b + 1

    exceptional = sum(
        1
        for (n0, _), cnt in zip(tiles, counts)
        if _is_exceptional(int(cnt), n0, gamma, d)
    )
    prec = 96
    bound = RealInterval.from_number(big_d, prec).mul(
        power_of_int(x, Fraction(2, 3) - gamma, prec), prec
    )
    return ExceptionalSurvey(x, gamma, d, len(tiles), exceptional, bound, big_d)
