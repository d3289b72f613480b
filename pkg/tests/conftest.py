"""Shared fixtures and independent oracles.

Oracles here deliberately avoid the library's own code paths: naive
trial division, a from-scratch pure-Python sieve, and mpmath (an
independent multiprecision implementation) for real/complex values.
"""

import pytest

from prclab.chain import ExponentSeq, build_min_chain


# -- independent oracles -----------------------------------------------------


def oracle_is_prime(n: int) -> bool:
    """Trial division; no shared code with the package."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def oracle_smallest_prime(lo: int, hi: int):
    for cand in range(max(lo, 2), hi + 1):
        if oracle_is_prime(cand):
            return cand
    return None


def oracle_chain(c: int, depth: int, start: int = 2) -> list[int]:
    """Naive window scan with trial-division primality."""
    out = [start]
    while len(out) < depth:
        p = out[-1]
        q = oracle_smallest_prime(p**c, (p + 1) ** c - 2)
        if q is None:
            raise RuntimeError("oracle hit a dead window")
        out.append(q)
    return out


def oracle_sieve_flags(limit: int) -> bytearray:
    """Plain sieve of Eratosthenes, pure Python."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        p += 1
    return flags


def _oracle_integer_root(a: int, b: int, c: int) -> bool:
    """Does x^3 - a x^2 + b x - c have an integer (hence rational) root?"""
    if c == 0:
        return True
    n = abs(c)
    d = 1
    while d * d <= n:
        if n % d == 0:
            for r in (d, -d, n // d, -(n // d)):
                if r * r * r - a * r * r + b * r - c == 0:
                    return True
        d += 1
    return False


def oracle_roots(a: int, b: int, c: int, dps: int):
    import mpmath

    with mpmath.workdps(dps):
        return mpmath.polyroots([1, -a, b, -c], maxsteps=200, extraprec=100)


def oracle_cubic_pisot(a: int, b: int, c: int, dps: int = 60) -> bool:
    """Numeric Pisot test for an irreducible cubic; raises if a modulus
    sits too close to 1 to call."""
    import mpmath

    with mpmath.workdps(dps):
        roots = oracle_roots(a, b, c, dps)
        real_gt1 = 0
        others_inside = True
        for r in roots:
            is_real = abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2)
            if is_real and mpmath.re(r) > 1:
                real_gt1 += 1
                continue
            mod = abs(r)
            if abs(mod - 1) < 1e-6:
                raise RuntimeError(f"oracle cannot separate |root|=1 for {(a, b, c)}")
            if mod > 1:
                others_inside = False
        return real_gt1 == 1 and others_inside


def oracle_trace(roots, n: int, dps: int) -> int:
    """Rounded power sum of numeric roots, with a drift guard."""
    import mpmath

    with mpmath.workdps(dps):
        t = mpmath.re(mpmath.fsum(r**n for r in roots))
        nearest = mpmath.nint(t)
        if abs(t - nearest) > 0.01:
            raise RuntimeError(f"oracle trace too fuzzy at n={n}")
        return int(nearest)


def oracle_cubic_scan(chain, m: int, b_limit=None, dps: int = 140):
    """Brute-force floating-root scan: same candidate grid, numeric
    trace matching and numeric Pisot filter."""
    p_m, p_m1 = chain.p(m), chain.p(m + 1)
    out = []
    for a in range(p_m - 1, p_m + 3):
        if (p_m1 - a**3) % 3 != 0:
            continue
        limit = b_limit if b_limit is not None else 2 * a + 1
        for b in range(-limit, limit + 1):
            c = (p_m1 - a**3 + 3 * a * b) // 3
            roots = oracle_roots(a, b, c, dps)
            ok = True
            for j in range(2, chain.depth - m + 1):
                if oracle_trace(roots, 3**j, dps) != chain.p(m + j):
                    ok = False
                    break
            if not ok or _oracle_integer_root(a, b, c):
                continue
            if oracle_cubic_pisot(a, b, c, dps):
                out.append((a, b, c))
    return out


# -- fixtures ----------------------------------------------------------------


@pytest.fixture(scope="session")
def mills4():
    return build_min_chain(ExponentSeq.constant(3), 4)


@pytest.fixture(scope="session")
def mills6():
    return build_min_chain(ExponentSeq.constant(3), 6)


@pytest.fixture(scope="session")
def mills8():
    return build_min_chain(ExponentSeq.constant(3), 8)


@pytest.fixture(scope="session")
def square_chain6():
    return build_min_chain(ExponentSeq.constant(2), 6)
