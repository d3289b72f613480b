import random
from fractions import Fraction

import mpmath
import pytest

from prclab.chain import ExponentSeq, PrimeChain
from prclab.pisot import (
    MonicIntPoly,
    ReduciblePolynomialError,
    TraceSequence,
    companion_power_sum,
    conjugates,
    cubic_scan,
    degree_bound,
    is_pisot,
    power_sum,
    power_sum_enclosure,
    quadratic_exclusion,
    tail_bound_check,
    trace_match,
)

from conftest import oracle_cubic_pisot, oracle_cubic_scan, oracle_is_prime, oracle_roots


GOLDEN = MonicIntPoly(2, 1, -1)  # x^2 - x - 1
PLASTIC = MonicIntPoly(3, 0, -1, 1)  # x^3 - x - 1


# -- degree bound ------------------------------------------------------------


def test_degree_bound_exact_values():
    b5 = degree_bound(5)
    assert b5.bound == Fraction(19, 11) and b5.allowed_degrees == frozenset()
    b4 = degree_bound(4)
    assert b4.bound == Fraction(19, 9) and b4.allowed_degrees == frozenset({2})
    b3 = degree_bound(3)
    assert b3.bound == Fraction(57, 17) and b3.allowed_degrees == frozenset({2, 3})
    assert b3.theta_b == Fraction(17, 120)
    assert b4.theta_b == Fraction(9, 40)
    assert b5.theta_b == Fraction(11, 40)


def test_degree_bound_strictly_decreasing():
    vals = [degree_bound(b).bound for b in range(3, 40)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_degree_bound_rejects_small_b():
    with pytest.raises(ValueError):
        degree_bound(2)


# -- polynomial basics -------------------------------------------------------


def test_poly_validation_and_eval():
    with pytest.raises(ValueError):
        MonicIntPoly(4, 1, 1, 1)
    with pytest.raises(ValueError):
        MonicIntPoly(2, 1, 1, 5)
    assert GOLDEN(2) == 1  # 4 - 2 - 1
    assert PLASTIC(Fraction(3, 2)) == Fraction(27, 8) - Fraction(3, 2) - 1


def test_irreducibility():
    assert GOLDEN.is_irreducible()
    assert PLASTIC.is_irreducible()
    assert not MonicIntPoly(2, 0, -4).is_irreducible()  # x^2 - 4
    assert not MonicIntPoly(3, 2, 0, -1).is_irreducible()  # x^3-2x^2+1, root 1
    assert not MonicIntPoly(3, 0, 0, 0).is_irreducible()  # root 0
    assert MonicIntPoly(2, 1, 1).is_irreducible()  # x^2 - x + 1


# -- Pisot verdicts ----------------------------------------------------------


def test_is_pisot_golden():
    v = is_pisot(GOLDEN)
    assert v.pisot
    mods = sorted(float(r.modulus[0]) for r in v.conjugates.roots)
    assert abs(mods[0] - 0.6180339887) < 1e-8
    assert abs(mods[1] - 1.6180339887) < 1e-8


def test_is_pisot_plastic():
    v = is_pisot(PLASTIC)
    assert v.pisot
    second = v.conjugates.roots[1]
    assert abs(float(second.modulus[0]) - 0.8688369618) < 1e-8
    assert not second.is_real


def test_is_pisot_rejects_reducible():
    with pytest.raises(ReduciblePolynomialError):
        is_pisot(MonicIntPoly(2, 0, -4))


def test_is_pisot_unit_circle_pair_decided_false():
    # x^2 - x + 1 is irreducible with both roots exactly on the circle
    v = is_pisot(MonicIntPoly(2, 1, 1))
    assert not v.pisot
    assert v.conjugates.unit_circle_margin == 0


def test_is_pisot_negative_dominant_false():
    # x^3 - x + 1: the real root is ~ -1.3247, not in (1, inf)
    v = is_pisot(MonicIntPoly(3, 0, -1, -1))
    assert not v.pisot


def test_classical_quadratic_criterion_50_cases():
    # x^2 - A x + B with B = +-1: root product is +-1, so such an
    # irreducible quadratic is Pisot exactly when its dominant root
    # exceeds 1; compare against the numeric root oracle case by case
    cases = [(a, 1) for a in range(3, 28)] + [(a, -1) for a in range(2, 27)]
    assert len(cases) == 50
    for a, b in cases:
        poly = MonicIntPoly(2, a, b)
        assert poly.is_irreducible(), (a, b)
        got = is_pisot(poly).pisot
        with mpmath.workdps(40):
            roots = mpmath.polyroots([1, -a, b])
            dominant = max(roots, key=abs)
            expected = (
                abs(mpmath.im(dominant)) < 1e-20
                and mpmath.re(dominant) > 1
                and all(abs(r) < 1 for r in roots if r != dominant)
            )
        assert got == bool(expected), (a, b)


def test_is_pisot_random_cubics_vs_oracle():
    rng = random.Random(2024)
    checked = 0
    while checked < 120:
        a = rng.randrange(-8, 9)
        b = rng.randrange(-8, 9)
        c = rng.randrange(-8, 9)
        poly = MonicIntPoly(3, a, b, c)
        if not poly.is_irreducible():
            continue
        try:
            expected = oracle_cubic_pisot(a, b, c)
        except RuntimeError:
            continue
        assert is_pisot(poly).pisot == expected, (a, b, c)
        checked += 1


def test_conjugate_enclosures_product_invariant():
    for poly in (GOLDEN, PLASTIC, MonicIntPoly(3, 4, -2, 3), MonicIntPoly(2, 5, 3)):
        cs = conjugates(poly, 128)
        re_iv, im_iv = cs.product_enclosure()
        assert re_iv[0] <= poly.root_product <= re_iv[1]
        assert im_iv[0] <= 0 <= im_iv[1]
        assert cs.resolved
        # ordering: moduli midpoints descending
        mids = [r.modulus[0] + r.modulus[1] for r in cs.roots]
        assert mids == sorted(mids, reverse=True)


def test_conjugates_three_real_roots():
    # x^3 - 4x^2 + x + 1: three real roots (checked via the oracle)
    poly = MonicIntPoly(3, 4, 1, -1)
    cs = conjugates(poly, 128)
    assert all(r.is_real for r in cs.roots)
    roots = sorted(float(mpmath.re(r)) for r in oracle_roots(4, 1, -1, 40))
    got = sorted(float(r.re[0]) for r in cs.roots)
    for x, y in zip(roots, got):
        assert abs(x - y) < 1e-9


# -- power sums --------------------------------------------------------------


def test_trace_sequence_basics():
    assert power_sum(PLASTIC, 0) == 3
    assert power_sum(GOLDEN, 0) == 2
    ts = TraceSequence(GOLDEN)
    assert [ts.s(n) for n in range(1, 5)] == [1, 3, 4, 7]  # Lucas numbers
    assert power_sum(MonicIntPoly(3, 1, 0, 0), 3) == 1  # a^3 - 3ab + 3c at (1,0,0)


def test_power_sum_cubic_identity_random():
    rng = random.Random(6)
    for _ in range(50):
        a, b, c = (rng.randrange(-20, 21) for _ in range(3))
        poly = MonicIntPoly(3, a, b, c)
        assert power_sum(poly, 3) == a**3 - 3 * a * b + 3 * c


def test_power_sum_methods_agree_random_pairs():
    # recurrence vs companion-matrix squaring on 100 random (poly, n) pairs,
    # n drawn log-uniform up to 1e4
    rng = random.Random(123)
    for _ in range(100):
        a, b, c = (rng.randrange(-20, 21) for _ in range(3))
        poly = MonicIntPoly(3, a, b, c)
        n = int(10 ** rng.uniform(0, 4))
        assert power_sum(poly, n, "recurrence") == companion_power_sum(poly, n), (
            a,
            b,
            c,
            n,
        )


def test_power_sum_quadratic_methods_agree():
    rng = random.Random(321)
    for _ in range(40):
        a, b = rng.randrange(-15, 16), rng.randrange(-15, 16)
        poly = MonicIntPoly(2, a, b)
        n = rng.randrange(0, 300)
        assert power_sum(poly, n, "recurrence") == companion_power_sum(poly, n)


def test_power_sum_enclosure_contains_exact():
    for poly in (GOLDEN, PLASTIC, MonicIntPoly(3, 3, -1, 2)):
        cs = conjugates(poly, 160)
        for n in (0, 1, 2, 5, 17, 33, 50):
            lo, hi = power_sum_enclosure(cs, n)
            assert lo <= power_sum(poly, n) <= hi, (poly, n)


# -- trace matching and exclusions -------------------------------------------


def test_trace_match_synthetic_equal():
    syn = PrimeChain(ExponentSeq.explicit([1, 2, 2]), (1, 3, 7))
    rows = trace_match(GOLDEN, syn, 1)
    assert all(r.equal for r in rows)
    assert [r.exponent for r in rows] == [1, 2, 4]


def test_trace_match_rejects_reducible(mills4):
    with pytest.raises(ReduciblePolynomialError):
        trace_match(MonicIntPoly(3, 2, 0, -1), mills4, 1)  # x^3 - 2x^2 + 1


def test_trace_match_mills_report(mills4):
    rows = trace_match(PLASTIC, mills4, 1)
    assert len(rows) == 4
    assert not all(r.equal for r in rows)  # pattern recorded, no assertion


def test_quadratic_exclusion_mills(mills6):
    rep = quadratic_exclusion(mills6, 1)
    assert rep.all_excluded
    by_k = {r.k: r for r in rep.rows}
    assert not by_k[1].divides  # 2 does not divide 11
    assert not by_k[2].divides  # 11 does not divide 1361
    assert by_k[2].residue == (1361 - 11**3) % 33


def test_quadratic_exclusion_synthetic_divisible():
    syn = PrimeChain(ExponentSeq.constant(3), (3, 81))
    rep = quadratic_exclusion(syn, 1)
    assert not rep.all_excluded
    assert rep.rows[0].divides
    assert not oracle_is_prime(81)  # the flagged entry is indeed composite


def test_quadratic_exclusion_skips_noncubic_steps():
    ch = PrimeChain(ExponentSeq.explicit([1, 2, 3]), (2, 5, 131))
    rep = quadratic_exclusion(ch, 1)
    assert [r.k for r in rep.rows] == [2]


# -- cubic scan --------------------------------------------------------------


def test_cubic_scan_candidate_construction(mills4):
    # the A=2, B=0 candidate is x^3 - 2x^2 + 0x - 1 with s(3) = 11 by
    # construction; it must then fail the deeper trace filters
    cand = MonicIntPoly(3, 2, 0, 1)
    assert power_sum(cand, 3) == 11
    assert power_sum(cand, 9) != 1361
    survivors = cubic_scan(mills4, 1)
    assert (2, 0, 1) not in [(s.poly.a, s.poly.b, s.poly.c) for s in survivors]


def test_cubic_scan_gate_excludes_bad_a(mills4):
    # only A = 2 satisfies p_2 == A^3 (mod 3) among {1, 2, 3, 4}
    assert [a for a in range(1, 5) if (11 - a**3) % 3 == 0] == [2]


def test_cubic_scan_matches_float_oracle_m1(mills6):
    got = [(s.poly.a, s.poly.b, s.poly.c) for s in cubic_scan(mills6, 1)]
    assert got == oracle_cubic_scan(mills6, 1)


def test_cubic_scan_matches_float_oracle_m2(mills6):
    got = [(s.poly.a, s.poly.b, s.poly.c) for s in cubic_scan(mills6, 2)]
    assert got == oracle_cubic_scan(mills6, 2)


def test_cubic_scan_deep_chain(mills8):
    # trace filters reach 3^7 = 2187 with 762-digit chain entries
    got = [(s.poly.a, s.poly.b, s.poly.c) for s in cubic_scan(mills8, 1)]
    assert got == oracle_cubic_scan(mills8, 1, dps=820)


def test_cubic_scan_slack_and_blimit(mills6):
    # with a tiny b range the scan is a strict subset of the default run
    small = cubic_scan(mills6, 1, b_limit=1)
    assert small == []
    # slack ignores the earliest deep comparison; the scan still has the
    # j=3.. filters so the A=2 pencil keeps failing
    slk = cubic_scan(mills6, 1, slack=1)
    assert isinstance(slk, list)


def test_cubic_scan_depth_and_step_guards(mills4):
    with pytest.raises(ValueError):
        cubic_scan(mills4, 3)  # needs depth >= m + 2
    mixed = PrimeChain(ExponentSeq.explicit([1, 2, 2, 2]), (2, 5, 29, 853))
    with pytest.raises(ValueError):
        cubic_scan(mixed, 1)


def test_cubic_scan_warns_for_large_m(mills8):
    with pytest.warns(UserWarning, match="candidates"):
        cubic_scan(mills8, 4, b_limit=0)


# -- tail bounds -------------------------------------------------------------


def test_tail_bound_golden_lambda_zero():
    rep = tail_bound_check(GOLDEN, range(0, 60))
    assert rep.fitted_lambda < 1e-6  # tail is exactly |beta_2|^n
    assert rep.exceptions == ()
    row0 = rep.rows[0]
    assert row0.n == 0
    lo, hi = row0.tail.as_fractions()
    assert lo <= 1 <= hi  # tail at n=0 is degree - 1 = 1


def test_tail_bound_plastic_finite():
    rep = tail_bound_check(PLASTIC, range(0, 201))
    assert rep.fitted_lambda > 0
    assert rep.n_attained is not None
    assert not any(r.vanished for r in rep.rows)
    # sanity: at n=0 the tail equals degree-1 = 2
    lo, hi = rep.rows[0].tail.as_fractions()
    assert lo <= 2 <= hi


def test_tail_bound_rejects_non_pisot():
    with pytest.raises(ValueError):
        tail_bound_check(MonicIntPoly(2, 1, 1), range(10))
