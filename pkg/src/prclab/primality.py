"""Big-integer primality verdicts and smallest-prime-in-window search.

This is the only module that runs raw primality tests.  Below 2^64 all
verdicts are deterministic (Miller-Rabin over a fixed base set that is
known exhaustive for that range).  Above 2^64 acceptance means
Baillie-PSW plus a configurable number of seeded random strong-probable-
prime rounds, and the verdict is explicitly ``probable-prime`` so that
downstream certificates can disclose the dependence.  Composite verdicts
are unconditional at every size and carry a reproducible reason (a
factor or a witness base) in the ``method`` field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import isqrt, jacobi, mpz, powmod

# Exhaustive Miller-Rabin base set for n < 3.3e24 (covers the full 64-bit range).
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by a plain sieve of Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i in range(limit + 1) if flags[i]]


# Prefilter primes for window scans; 30k keeps the table small while removing
# ~95% of candidates before any expensive test.
_PREFILTER_PRIMES = sieve_primes(30_000)
_PREFILTER_SET = set(_PREFILTER_PRIMES)


@dataclass(frozen=True)
class CertaintyPolicy:
    """Effort policy for values above the deterministic 64-bit range.

    ``extra_rounds`` random strong-probable-prime rounds are run after
    Baillie-PSW; their bases are drawn from a generator seeded by
    ``seed`` and the tested value, so verdicts are pure functions of
    (value, policy).
    """

    extra_rounds: int = 5
    seed: int = 0

    def describe(self) -> str:
        return f"bpsw+{self.extra_rounds}-rounds"


DEFAULT_POLICY = CertaintyPolicy()


@dataclass(frozen=True)
class PrimalityVerdict:
    value: int
    status: str  # "proven-prime" | "probable-prime" | "composite"
    method: str

    @property
    def accepted(self) -> bool:
        return self.status != "composite"

    @property
    def proven(self) -> bool:
        return self.status == "proven-prime"


def _miller_rabin_witness(n: mpz, a: int) -> bool:
    """True if ``a`` witnesses that odd n > 2 is composite."""
    d = n - 1
    s = 0
    while d % 2 == 0:
        d >>= 1
        s += 1
    x = powmod(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = (x * x) % n
        if x == n - 1:
            return False
    return True


def _selfridge_parameters(n: mpz):
    """First D in 5, -7, 9, -11, ... with Jacobi(D, n) = -1; None if a
    factor is hit first (caller reports composite)."""
    d = 5
    while True:
        j = jacobi(d, n)
        if j == -1:
            return d
        if j == 0 and abs(d) != n:
            return None
        d = -(d + 2) if d > 0 else -(d - 2)


def _strong_lucas_composite(n: mpz, d: int) -> bool:
    """Strong Lucas test with Selfridge parameters P=1, Q=(1-D)/4.

    Returns True when n is revealed composite.
    """
    q = (1 - d) // 4
    k = n + 1
    s = 0
    while k % 2 == 0:
        k >>= 1
        s += 1

    def half(x):
        if x % 2:
            x += n
        return (x >> 1) % n

    u, v, qk = mpz(0), mpz(2), mpz(1)
    for bit in bin(k)[2:]:
        u, v = (u * v) % n, (v * v - 2 * qk) % n
        qk = (qk * qk) % n
        if bit == "1":
            u, v = half(u + v), half(d * u + v)
            qk = (qk * q) % n

    if u == 0 or v == 0:
        return False
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = (qk * qk) % n
        if v == 0:
            return False
    return True


def _extra_round_bases(n: mpz, policy: CertaintyPolicy) -> list[int]:
    rng = random.Random(f"prclab:{policy.seed}:{n}")
    return [rng.randrange(3, int(n) - 2) for _ in range(policy.extra_rounds)]


def is_prime(n: int, policy: CertaintyPolicy = DEFAULT_POLICY) -> PrimalityVerdict:
    """Classify n as proven-prime / probable-prime / composite.

    Deterministic for n < 2^64; the policy only matters above that.
    """
    n = mpz(n)
    if n < 2:
        return PrimalityVerdict(int(n), "composite", "below-2")
    if n in _PREFILTER_SET:
        return PrimalityVerdict(int(n), "proven-prime", "deterministic-small")

    # Trial phase: decides everything below ~9e8 outright, otherwise strips
    # small factors before the expensive tests.
    for p in _PREFILTER_PRIMES:
        if p * p > n:
            return PrimalityVerdict(int(n), "proven-prime", "deterministic-small")
        if n % p == 0:
            return PrimalityVerdict(int(n), "composite", f"factor-{p}")

    if n < _DETERMINISTIC_LIMIT:
        for a in _DETERMINISTIC_BASES:
            if _miller_rabin_witness(n, a):
                return PrimalityVerdict(int(n), "composite", f"mr-witness-{a}")
        return PrimalityVerdict(int(n), "proven-prime", "deterministic-mr")

    # Baillie-PSW: base-2 strong test, square check, strong Lucas.
    if _miller_rabin_witness(n, 2):
        return PrimalityVerdict(int(n), "composite", "mr-witness-2")
    r = isqrt(n)
    if r * r == n:
        return PrimalityVerdict(int(n), "composite", f"square-of-{r}")
    d = _selfridge_parameters(n)
    if d is None:
        return PrimalityVerdict(int(n), "composite", "factor-from-jacobi")
    if _strong_lucas_composite(n, d):
        return PrimalityVerdict(int(n), "composite", f"lucas-witness-d{d}")
    for a in _extra_round_bases(n, policy):
        if _miller_rabin_witness(n, a):
            return PrimalityVerdict(int(n), "composite", f"mr-witness-{a}")
    return PrimalityVerdict(int(n), "probable-prime", policy.describe())


def _segment_candidates(lo: int, hi: int):
    """Ascending candidates in [lo, hi] that survive the small-prime prefilter.

    Prefilter primes that fall inside the range are yielded as-is (a
    multiple-marking pass starting at p*p can never erase p itself).
    """
    seg_len = hi - lo + 1
    alive = bytearray([1]) * seg_len
    for p in _PREFILTER_PRIMES:
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start > hi:
            if p * p > hi:
                break
            continue
        alive[start - lo :: p] = bytearray(len(range(start - lo, seg_len, p)))
    for i in range(seg_len):
        if alive[i]:
            yield lo + i


def smallest_prime_in(
    lo: int, hi: int, policy: CertaintyPolicy = DEFAULT_POLICY
) -> int | None:
    """Least prime in [lo, hi] accepted by is_prime, or None.

    Scans in fixed-size segments with a small-prime prefilter, so very
    wide windows cost only as much as the distance to the first prime.
    """
    if lo > hi:
        raise ValueError(f"range-inverted: lo={lo} > hi={hi}")
    lo = max(lo, 2)
    if lo > hi:
        return None
    seg = 1 << 16
    a = lo
    while a <= hi:
        b = min(a + seg - 1, hi)
        for cand in _segment_candidates(a, b):
            if is_prime(cand, policy).accepted:
                return cand
        a = b + 1
    return None


def next_prime_at_least(n: int, policy: CertaintyPolicy = DEFAULT_POLICY) -> int:
    """Smallest prime >= n (searches [n, 2n+2], nonempty by Bertrand)."""
    n = max(n, 2)
    p = smallest_prime_in(n, 2 * n + 2, policy)
    if p is None:
        raise RuntimeError(f"no prime in [{n}, {2 * n + 2}]")
    return p
