"""Pisot detection, certified conjugate enclosures, exact power-sum
traces, and the falsifiable cubic trace scan.

Root certification never guesses: real roots are isolated by exact
Sturm counts over rationals and refined by sign bisection, so every
enclosure bound is a proved inequality.  Complex-pair data follows from
the coefficient identities (sum and product of roots), again in exact
rational arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from gmpy2 import isqrt, mpz

from .chain import PrimeChain
from .constants import step_decay_exponent
from .intervals import RealInterval, precision_cap, to_fraction


class ReduciblePolynomialError(ValueError):
    """The polynomial has a rational root, so it is not a minimal polynomial."""


class UndecidableError(Exception):
    """Root location could not be separated from the unit circle within
    the precision budget."""


@dataclass(frozen=True)
class MonicIntPoly:
    """Monic integer polynomial: x^3 - a*x^2 + b*x - c (degree 3) or
    x^2 - a*x + b (degree 2).

    The sign convention makes ``a`` the root sum and ``c`` (resp. ``b``)
    the root product in both degrees.
    """

    degree: int
    a: int
    b: int
    c: int = 0

    def __post_init__(self):
        if self.degree not in (2, 3):
            raise ValueError(f"degree must be 2 or 3, got {self.degree}")
        if self.degree == 2 and self.c != 0:
            raise ValueError("quadratics have no c coefficient")

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Descending coefficient tuple, monic."""
        if self.degree == 2:
            return (1, -self.a, self.b)
        return (1, -self.a, self.b, -self.c)

    @property
    def root_product(self) -> int:
        return self.b if self.degree == 2 else self.c

    def __call__(self, x):
        if self.degree == 2:
            return x * x - self.a * x + self.b
        return x * x * x - self.a * x * x + self.b * x - self.c

    def integer_roots(self) -> list[int]:
        """Rational (hence integer) roots; nonempty iff reducible over Q."""
        const = self.root_product
        if const == 0:
            return [0]
        hits = []
        n = abs(const)
        d = 1
        while d * d <= n:
            if n % d == 0:
                for cand in {d, -d, n // d, -(n // d)}:
                    if self(cand) == 0:
                        hits.append(cand)
            d += 1
        return sorted(set(hits))

    def is_irreducible(self) -> bool:
        # degree <= 3: reducible over Q iff a linear rational factor exists
        return not self.integer_roots()

    def __str__(self):
        if self.degree == 2:
            return f"x^2 - ({self.a})*x + ({self.b})"
        return f"x^3 - ({self.a})*x^2 + ({self.b})*x - ({self.c})"


# ---------------------------------------------------------------------------
# exact rational helpers


def _frac_sqrt(fr: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure of sqrt(fr), fr >= 0, width ~2^-bits.

    Perfect squares come back as exact points, which is what makes
    on-circle quadratic moduli (|root|^2 = 1) exactly decidable.
    """
    if fr < 0:
        raise ValueError("negative radicand")
    if fr == 0:
        return Fraction(0), Fraction(0)
    sn, sd = isqrt(fr.numerator), isqrt(fr.denominator)
    if sn * sn == fr.numerator and sd * sd == fr.denominator:
        exact = Fraction(int(sn), int(sd))
        return exact, exact
    scaled = fr.numerator << (2 * bits)
    lo = isqrt(scaled // fr.denominator)
    hi = isqrt(-(-scaled // fr.denominator)) + 1
    return Fraction(int(lo), 1 << bits), Fraction(int(hi), 1 << bits)


def _iv_add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _iv_sub(x, y):
    return (x[0] - y[1], x[1] - y[0])


def _iv_mul(x, y):
    ps = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return (min(ps), max(ps))


def _iv_abs(x):
    if x[0] >= 0:
        return x
    if x[1] <= 0:
        return (-x[1], -x[0])
    return (Fraction(0), max(-x[0], x[1]))


def _box_mul(p, q):
    """Product of complex boxes ((re_lo, re_hi), (im_lo, im_hi))."""
    re = _iv_sub(_iv_mul(p[0], q[0]), _iv_mul(p[1], q[1]))
    im = _iv_add(_iv_mul(p[0], q[1]), _iv_mul(p[1], q[0]))
    return (re, im)


# ---------------------------------------------------------------------------
# Sturm isolation


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coef in coeffs:
        acc = acc * x + coef
    return acc


def _poly_mod(f, g):
    r = list(f)
    while len(r) >= len(g):
        if r[0] == 0:
            r.pop(0)
            continue
        q = r[0] / g[0]
        for i in range(1, len(g)):
            r[i] -= q * g[i]
        r.pop(0)
    while len(r) > 1 and r[0] == 0:
        r.pop(0)
    return r if r else [Fraction(0)]

def _sturm_chain(coeffs):
    f0 = [Fraction(v) for v in coeffs]
    deg = len(f0) - 1
    f1 = [f0[i] * (deg - i) for i in range(deg)]
    chain = [f0, f1]
    while len(chain[-1]) > 1:
        rem = _poly_mod(chain[-2], chain[-1])
        if rem == [Fraction(0)]:
            break
        chain.append([-v for v in rem])
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = _poly_eval(poly, x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def _isolate_real_roots(poly: MonicIntPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals each holding exactly one real root.

    Assumes irreducibility (no rational roots), so dyadic bisection
    points are never roots themselves.
    """
    coeffs = poly.coefficients
    chain = _sturm_chain(coeffs)
    bound = Fraction(2 + max(abs(v) for v in coeffs[1:]))  # Cauchy bound + slack
    work = [(-bound, bound)]
    found = []
    while work:
        lo, hi = work.pop()
        n = _variations(chain, lo) - _variations(chain, hi)
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        work.append((lo, mid))
        work.append((mid, hi))
    return sorted(found)


def _refine_root(poly: MonicIntPoly, lo: Fraction, hi: Fraction, bits: int):
    """Shrink a sign-change bracket to width <= 2^-bits by bisection."""
    f_lo = poly(lo)
    target = Fraction(1, 1 << bits)
    while hi - lo > target:
        mid = (lo + hi) / 2
        f_mid = poly(mid)
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------------------
# conjugate sets


@dataclass(frozen=True)
class ComplexEnclosure:
    """Certified rational box around one root, plus a modulus enclosure."""

    re: tuple[Fraction, Fraction]
    im: tuple[Fraction, Fraction]
    modulus: tuple[Fraction, Fraction]
    is_real: bool

    def box(self):
        return (self.re, self.im)


@dataclass(frozen=True)
class ConjugateSet:
    """All roots of a polynomial, modulus-descending."""

    poly: MonicIntPoly
    roots: tuple[ComplexEnclosure, ...]
    resolved: bool  # pairwise disjoint boxes

    @property
    def unit_circle_margin(self) -> Fraction:
        """Smallest certified gap between any modulus enclosure and 1
        (zero when some enclosure still meets the circle)."""
        margins = []
        for r in self.roots:
            if r.modulus[0] > 1:
                margins.append(r.modulus[0] - 1)
            elif r.modulus[1] < 1:
                margins.append(1 - r.modulus[1])
            else:
                margins.append(Fraction(0))
        return min(margins)

    def product_enclosure(self):
        """Complex box around the product of all roots (contains the
        polynomial's constant-coefficient root product)."""
        acc = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(0)))
        for r in self.roots:
            acc = _box_mul(acc, r.box())
        return acc


def _real_enclosure(lo: Fraction, hi: Fraction) -> ComplexEnclosure:
    zero = (Fraction(0), Fraction(0))
    return ComplexEnclosure((lo, hi), zero, _iv_abs((lo, hi)), True)


def _boxes_disjoint(p: ComplexEnclosure, q: ComplexEnclosure) -> bool:
    re_dis = p.re[1] < q.re[0] or q.re[1] < p.re[0]
    im_dis = p.im[1] < q.im[0] or q.im[1] < p.im[0]
    return re_dis or im_dis


def conjugates(poly: MonicIntPoly, bits: int = 128) -> ConjugateSet:
    """Certified enclosures of every root, ordered by modulus descending."""
    if not poly.is_irreducible():
        raise ReduciblePolynomialError(
            f"{poly} has rational roots {poly.integer_roots()}"
        )
    brackets = [_refine_root(poly, lo, hi, bits) for lo, hi in _isolate_real_roots(poly)]
    roots: list[ComplexEnclosure] = []

    if len(brackets) == poly.degree:
        roots = [_real_enclosure(lo, hi) for lo, hi in brackets]
    elif poly.degree == 2:
        # complex pair: re = a/2 exactly, |root|^2 = b exactly
        re = Fraction(poly.a, 2)
        mod = _frac_sqrt(Fraction(poly.b), bits)
        im = _frac_sqrt(Fraction(poly.b) - re * re, bits)
        roots = [
            ComplexEnclosure((re, re), im, mod, False),
            ComplexEnclosure((re, re), (-im[1], -im[0]), mod, False),
        ]
    else:
        # cubic with one real root: pair data from the coefficient identities
        u, v = brackets[0]
        while u <= 0 <= v:  # root is nonzero (c != 0 for irreducible cubics)
            bits += 32
            u, v = _refine_root(poly, u, v, bits)
        roots = [_real_enclosure(u, v)]
        re = ((poly.a - v) / 2, (poly.a - u) / 2)
        m2 = tuple(sorted((Fraction(poly.c) / u, Fraction(poly.c) / v)))
        mod_lo = _frac_sqrt(max(m2[0], Fraction(0)), bits)[0]
        mod_hi = _frac_sqrt(m2[1], bits)[1]
        re2 = _iv_mul(re, re)
        im2 = (max(m2[0] - re2[1], Fraction(0)), max(m2[1] - re2[0], Fraction(0)))
        im = (_frac_sqrt(im2[0], bits)[0], _frac_sqrt(im2[1], bits)[1])
        roots.append(ComplexEnclosure(re, im, (mod_lo, mod_hi), False))
        roots.append(ComplexEnclosure(re, (-im[1], -im[0]), (mod_lo, mod_hi), False))

    roots.sort(key=lambda r: r.modulus[0] + r.modulus[1], reverse=True)
    resolved = all(
        _boxes_disjoint(roots[i], roots[j])
        for i in range(len(roots))
        for j in range(i + 1, len(roots))
    )
    return ConjugateSet(poly, tuple(roots), resolved)


@dataclass(frozen=True)
class PisotVerdict:
    pisot: bool
    conjugates: ConjugateSet


def _classify(cs: ConjugateSet) -> Optional[bool]:
    """True/False when the Pisot property is certified either way."""
    in_open = []  # certified real and > 1
    not_in = []  # certified not in (1, inf)
    for r in cs.roots:
        if r.is_real and r.re[0] > 1:
            in_open.append(r)
        elif (not r.is_real) or r.re[1] <= 1:
            not_in.append(r)
    if len(in_open) >= 2:
        return False
    for r in not_in:
        if r.modulus[0] >= 1:
            return False
    if len(in_open) == 1 and len(not_in) == len(cs.roots) - 1:
        if all(r.modulus[1] < 1 for r in not_in):
            return True
        return None  # some not_in root unresolved against the circle
    if len(not_in) == len(cs.roots):
        return False  # nothing can serve as the dominant root
    return None


def is_pisot(
    poly: MonicIntPoly,
    margin: Fraction = Fraction(1, 10**10),
    max_bits: int = 1 << 13,
) -> PisotVerdict:
    """Decide whether the polynomial is the minimal polynomial of a Pisot
    number, with certified root enclosures as evidence.

    Raises ReduciblePolynomialError for reducible input and
    UndecidableError when a modulus hugs the unit circle tighter than
    ``margin`` within the precision budget (not reachable for honest
    degree <= 3 input, but the refusal path is explicit).
    """
    if not poly.is_irreducible():
        raise ReduciblePolynomialError(
            f"{poly} has rational roots {poly.integer_roots()}"
        )
    bits = 64
    while True:
        cs = conjugates(poly, bits)
        verdict = _classify(cs)
        if verdict is not None:
            return PisotVerdict(verdict, cs)
        stuck = [
            r
            for r in cs.roots
            if r.modulus[0] <= 1 <= r.modulus[1]
            and (r.modulus[1] - r.modulus[0]) < margin
        ]
        if stuck:
            raise UndecidableError(
                f"{poly}: root modulus within {margin} of the unit circle"
            )
        bits *= 2
        if bits > max_bits:
            raise UndecidableError(f"{poly}: undecided at {max_bits} bits")


# ---------------------------------------------------------------------------
# power sums


class TraceSequence:
    """Exact conjugate power sums s(n), grown on demand by the
    coefficient recurrence s(n) = a*s(n-1) - b*s(n-2) [+ c*s(n-3)]."""

    def __init__(self, poly: MonicIntPoly):
        self.poly = poly
        if poly.degree == 2:
            self._s = [2, poly.a]
        else:
            self._s = [3, poly.a, poly.a * poly.a - 2 * poly.b]

    def s(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be >= 0")
        a, b, c = self.poly.a, self.poly.b, self.poly.c
        seq = self._s
        if self.poly.degree == 2:
            while len(seq) <= n:
                seq.append(a * seq[-1] - b * seq[-2])
        else:
            while len(seq) <= n:
                seq.append(a * seq[-1] - b * seq[-2] + c * seq[-3])
        return seq[n]

    __call__ = s


def _mat_mul(x, y, size):
    return tuple(
        tuple(sum(x[i][t] * y[t][j] for t in range(size)) for j in range(size))
        for i in range(size)
    )


def _companion(poly: MonicIntPoly):
    if poly.degree == 2:
        return ((0, -poly.b), (1, poly.a))
    return ((0, 0, poly.c), (1, 0, -poly.b), (0, 1, poly.a))


def companion_power_sum(poly: MonicIntPoly, n: int) -> int:
    """s(n) as the trace of the n-th companion-matrix power (binary
    squaring); an independent exact route used to cross-check the
    recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    size = poly.degree
    if n == 0:
        return size
    acc = tuple(tuple(int(i == j) for j in range(size)) for i in range(size))
    base = _companion(poly)
    e = n
    while e:
        if e & 1:
            acc = _mat_mul(acc, base, size)
        base = _mat_mul(base, base, size)
        e >>= 1
    return sum(acc[i][i] for i in range(size))


def power_sum(poly: MonicIntPoly, n: int, method: str = "auto") -> int:
    """Exact power sum of the roots, by recurrence or matrix squaring."""
    if method == "recurrence" or (method == "auto" and n <= 4096):
        return TraceSequence(poly).s(n)
    if method in ("matrix", "auto"):
        return companion_power_sum(poly, n)
    raise ValueError(f"unknown method {method!r}")


def power_sum_enclosure(cs: ConjugateSet, n: int) -> tuple[Fraction, Fraction]:
    """Real-part interval of the sum of n-th powers of the certified
    root boxes; contains the exact integer power sum."""
    total = (Fraction(0), Fraction(0))
    for r in cs.roots:
        acc = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(0)))
        base = r.box()
        e = n
        while e:
            if e & 1:
                acc = _box_mul(acc, base)
            base = _box_mul(base, base)
            e >>= 1
        total = _iv_add(total, acc[0])
    return total


# ---------------------------------------------------------------------------
# chain-facing reports


@dataclass(frozen=True)
class DegreeBound:
    b: int
    theta_b: Fraction
    bound: Fraction  # 1/(b*theta_b) + 1
    allowed_degrees: frozenset[int]


def degree_bound(b: int) -> DegreeBound:
    """Exact admissible-degree window 2 <= l <= 1/(b*theta_b) + 1."""
    theta_b = step_decay_exponent(b)  # rejects b < 3
    bound = 1 / (b * theta_b) + 1
    top = bound.numerator // bound.denominator
    return DegreeBound(b, theta_b, bound, frozenset(range(2, top + 1)))


@dataclass(frozen=True)
class TraceMatchRow:
    k: int
    exponent: int  # C_k / C_m
    trace: int
    p_k: int
    equal: bool


def trace_match(poly: MonicIntPoly, chain: PrimeChain, m: int) -> list[TraceMatchRow]:
    """Compare s(C_k/C_m) with p_k for k = m..depth; pure report.

    Finitely many initial mismatches are expected even for a genuine
    trace structure, so nothing is asserted here.
    """
    if not poly.is_irreducible():
        raise ReduciblePolynomialError(
            f"{poly} has rational roots {poly.integer_roots()}"
        )
    if not 1 <= m <= chain.depth:
        raise ValueError(f"m must be in [1, {chain.depth}]")
    ts = TraceSequence(poly)
    rows = []
    C_m = chain.C(m)
    for k in range(m, chain.depth + 1):
        e = chain.C(k) // C_m
        t = ts.s(e)
        rows.append(TraceMatchRow(k, e, t, chain.p(k), t == chain.p(k)))
    return rows


@dataclass(frozen=True)
class ExclusionRow:
    k: int
    p_k: int
    p_next: int
    divides: bool
    residue: int  # (p_{k+1} - p_k^3) mod 3*p_k
    excluded: bool


@dataclass(frozen=True)
class QuadraticExclusionReport:
    m: int
    rows: tuple[ExclusionRow, ...]

    @property
    def all_excluded(self) -> bool:
        return all(r.excluded for r in self.rows)


def quadratic_exclusion(chain: PrimeChain, m: int = 1) -> QuadraticExclusionReport:
    """Rule out a degree-2 trace structure along cubic steps.

    A quadratic trace would force p_k^3 = p_{k+1} + 3*(root product
    power)*p_k, i.e. p_k | p_{k+1}; each step where p_k does not divide
    p_{k+1} excludes that shape.  A dividing step is flagged rather than
    asserted away (inside a valid window it also exposes the entry as
    composite, since p_{k+1} >= p_k^3 > p_k).
    """
    rows = []
    for k in range(m, chain.depth):
        if chain.exps.c(k + 1) != 3:
            continue
        p, q = chain.p(k), chain.p(k + 1)
        divides = q % p == 0
        residue = int((q - mpz(p) ** 3) % (3 * p))
        rows.append(ExclusionRow(k, p, q, divides, residue, not divides))
    return QuadraticExclusionReport(m, tuple(rows))


@dataclass(frozen=True)
class ScanSurvivor:
    poly: MonicIntPoly
    conjugates: ConjugateSet


def cubic_scan(
    chain: PrimeChain,
    m: int,
    b_limit: Optional[int] = None,
    slack: int = 0,
) -> list[ScanSurvivor]:
    """Enumerate monic integer cubics that could carry the chain's trace
    structure from level m, and keep those that are Pisot and match every
    available deeper entry.

    The trace a = s(1) must land in {p_m - 1, ..., p_m + 2} (the dominant
    root lies in [p_m, p_m+1) and the other two contribute less than 2 in
    absolute value); s(3) = p_{m+1} pins c once a and b are chosen, and the
    divisibility of p_{m+1} - a^3 by 3 gates a.  ``slack`` ignores that
    many of the earliest deeper-trace comparisons.
    """
    if m < 1 or m + 2 > chain.depth:
        raise ValueError("scan needs depth >= m + 2")
    for k in range(m, chain.depth):
        if chain.exps.c(k + 1) != 3:
            raise ValueError(f"scan needs cubic steps from m; c({k + 1}) != 3")
    p_m, p_m1 = chain.p(m), chain.p(m + 1)
    if m > 3:
        projected = 4 * (2 * (p_m + 2) + 1)
        warnings.warn(
            f"cubic scan at m={m} enumerates ~{projected} candidates; "
            "expect a long run",
            stacklevel=2,
        )
    survivors = []
    for a in range(p_m - 1, p_m + 3):
        if (p_m1 - a**3) % 3 != 0:
            continue  # s(3) = a^3 - 3ab + 3c can never hit p_{m+1}
        limit = b_limit if b_limit is not None else 2 * a + 1
        for b in range(-limit, limit + 1):
            c = (p_m1 - a**3 + 3 * a * b) // 3
            poly = MonicIntPoly(3, a, b, c)
            ts = TraceSequence(poly)
            ok = True
            for j in range(2, chain.depth - m + 1):
                if j - 1 <= slack:
                    continue
                if ts.s(3**j) != chain.p(m + j):
                    ok = False
                    break
            if not ok or not poly.is_irreducible():
                continue
            # an UndecidableError here is surfaced, never swallowed: a
            # survivor decision must not rest on an unresolved root
            verdict = is_pisot(poly)
            if verdict.pisot:
                survivors.append(ScanSurvivor(poly, verdict.conjugates))
    return survivors


# ---------------------------------------------------------------------------
# tail lower-bound fitting


@dataclass(frozen=True)
class TailBoundRow:
    n: int
    tail: RealInterval  # |sum of non-dominant root powers|
    lambda_required: Optional[float]  # least lambda making the bound hold at n
    vanished: bool


@dataclass(frozen=True)
class TailBoundReport:
    poly: MonicIntPoly
    rows: tuple[TailBoundRow, ...]
    fitted_lambda: float
    n_attained: Optional[int]
    exceptions: tuple[int, ...]  # n where no lambda >= 0 can help (only n <= 1)


def tail_bound_check(poly: MonicIntPoly, n_values) -> TailBoundReport:
    """Measure |s(n) - beta_1^n| against |beta_2|^n * n^-lambda.

    The tail is computed as an interval from the exact integer power sum
    minus the certified dominant-root power; lambda_required(n) solves
    the bound with equality, and the fitted lambda is the max over the
    range (clamped at 0).
    """
    verdict = is_pisot(poly)
    if not verdict.pisot:
        raise ValueError(f"{poly} is not a Pisot minimal polynomial")
    ns = sorted(set(int(n) for n in n_values))
    if any(n < 0 for n in ns):
        raise ValueError("n values must be >= 0")

    ts = TraceSequence(poly)
    bits = 128
    cap = precision_cap()
    rows = []
    exceptions = []
    fitted = 0.0
    n_at = None

    for n in ns:
        if n == 0:
            tail = RealInterval.from_number(poly.degree - 1, 64)
            rows.append(TailBoundRow(0, tail, None, False))
            continue
        while True:
            cs = verdict.conjugates if bits == 128 else conjugates(poly, bits)
            dom = cs.roots[0]
            second = cs.roots[1]
            prec = max(128, 2 * bits)
            beta1 = RealInterval.from_endpoints(dom.re[0], dom.re[1], prec)
            tail = (
                RealInterval.from_number(ts.s(n), prec)
                .sub(beta1.pow_int(n, prec), prec)
                .abs()
            )
            # need the tail tight in relative terms, or the fitted lambda
            # inherits the enclosure slack
            tight = (
                tail.lo > 0
                and to_fraction(tail.hi) - to_fraction(tail.lo)
                <= to_fraction(tail.lo) / (1 << 40)
            )
            if tight and second.modulus[0] > 0:
                break
            bits *= 2
            if bits > cap // 4:
                rows.append(TailBoundRow(n, tail, None, True))
                tail = None
                break
        if tail is None:
            continue
        mod2 = RealInterval.from_endpoints(second.modulus[0], second.modulus[1], prec)
        if n == 1:
            # n^-lambda = 1 for every lambda: either it already holds or
            # no exponent can repair it
            if to_fraction(tail.hi) < second.modulus[0]:
                exceptions.append(n)
            rows.append(TailBoundRow(n, tail, None, False))
            continue
        log_n = RealInterval.from_number(n, prec).log(prec)
        lam_iv = (
            mod2.log(prec)
            .mul(RealInterval.from_number(n, prec), prec)
            .sub(tail.log(prec), prec)
            .div(log_n, prec)
        )
        lam = float(lam_iv.hi)
        rows.append(TailBoundRow(n, tail, lam, False))
        if lam > fitted:
            fitted, n_at = lam, n

    return TailBoundReport(poly, tuple(rows), fitted, n_at, tuple(exceptions))
