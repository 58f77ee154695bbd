import math

import mpmath as mp
import numpy as np
import pytest

from zetafree.errors import CapacityError, DomainError, PoleError
from zetafree.trigpoly import CosinePolynomial
from zetafree.zetanum import (
    applied_trig_sum,
    lemma_check,
    lemma_lhs,
    lemma_rhs,
    midpoint_bound_check,
    neg_zeta_logderiv,
    re_cot,
    tail_bound,
    von_mangoldt,
    zeta_em,
)

MAXN = 10**7


# ---------------------------------------------------------------------------
# sieve
# ---------------------------------------------------------------------------

def _lambda_bruteforce(n):
    # factor n; log p if prime power, else 0
    for p in range(2, int(n**0.5) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return math.log(n)  # n prime


def test_lambda_prime_power():
    table = von_mangoldt(20)
    assert table.values[8] == pytest.approx(math.log(2), rel=1e-15)
    assert table.values[9] == pytest.approx(math.log(3), rel=1e-15)
    assert table.values[12] == 0.0


def test_psi_100_vs_bruteforce():
    table = von_mangoldt(100)
    brute = sum(_lambda_bruteforce(n) for n in range(2, 101))
    assert table.psi() == pytest.approx(brute, rel=1e-13)
    assert table.psi() == pytest.approx(94.045, abs=5e-3)


def test_lambda_upper_bound():
    table = von_mangoldt(500)
    n = np.arange(2, 501)
    assert np.all(table.values[2:] <= np.log(n) + 1e-12)


def test_sieve_capacity():
    with pytest.raises(CapacityError):
        von_mangoldt(10**7, max_n=10**6)


# ---------------------------------------------------------------------------
# Dirichlet series
# ---------------------------------------------------------------------------

def test_logderiv_at_two_vs_highprec():
    ref = complex(-mp.zeta(2, derivative=1) / mp.zeta(2))
    got = neg_zeta_logderiv(2.0 + 0j, 1e-6)
    assert abs(got.value - ref) <= 1e-6 + got.tail_bound


def test_logderiv_far_right():
    got = neg_zeta_logderiv(20.0 + 0j, 1e-10)
    assert got.value.real == pytest.approx(math.log(2) / 2**20, abs=1e-8)


def test_logderiv_conjugate_symmetry():
    s = 2.0 + 9.3j
    a = neg_zeta_logderiv(s, 1e-5).value
    b = neg_zeta_logderiv(s.conjugate(), 1e-5).value
    assert a == pytest.approx(b.conjugate(), abs=1e-14)


def test_logderiv_domain_and_capacity():
    with pytest.raises(DomainError):
        neg_zeta_logderiv(1.05 + 0j, 1e-3)
    with pytest.raises(CapacityError):
        neg_zeta_logderiv(1.2 + 0j, 1e-9, max_n=10**5)


def test_tail_bound_is_genuine():
    # refine tol 10x: result moves by less than the previous bound
    s = 1.8 + 3j
    coarse = neg_zeta_logderiv(s, 1e-4)
    fine = neg_zeta_logderiv(s, 1e-5)
    assert abs(coarse.value - fine.value) <= coarse.tail_bound
    assert tail_bound(coarse.N, s.real) == pytest.approx(coarse.tail_bound)


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta
# ---------------------------------------------------------------------------

def test_zeta_two():
    assert zeta_em(2.0 + 0j).real == pytest.approx(math.pi**2 / 6.0, rel=1e-12)


def test_zeta_real_axis_decreasing():
    vals = [zeta_em(complex(s)).real for s in (1.1, 1.5, 2.0, 3.0, 5.0)]
    assert all(v > 1.0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_zeta_frozen_complex_point():
    got = zeta_em(1.5 + 10j)
    assert got.real == pytest.approx(1.2783911664347597, rel=1e-12)
    assert got.imag == pytest.approx(-0.0957240559867089, rel=1e-10)


def test_zeta_against_mpmath_grid():
    rng = np.random.default_rng(2)
    for _ in range(10):
        s = complex(rng.uniform(1.05, 4.0), rng.uniform(-100, 100))
        ref = complex(mp.zeta(mp.mpc(s.real, s.imag)))
        assert abs(zeta_em(s) - ref) <= 1e-12 * abs(ref)


def test_zeta_window_errors():
    with pytest.raises(DomainError):
        zeta_em(0.9 + 2j)
    with pytest.raises(DomainError):
        zeta_em(1.5 + 2e4j)


# ---------------------------------------------------------------------------
# cotangent kernel
# ---------------------------------------------------------------------------

def test_recot_quarter_pi():
    assert re_cot(math.pi / 4, 0.0) == pytest.approx(1.0, rel=1e-14)


def test_recot_sign_left_of_axis():
    rng = np.random.default_rng(4)
    for _ in range(50):
        x = rng.uniform(-math.pi / 2 + 1e-6, -1e-6)
        y = rng.uniform(-3, 3)
        assert re_cot(x, y) < 0.0


def test_recot_matches_complex_cot():
    for x, y in ((0.3, 5.0), (1.2, 0.4), (-0.7, 2.0)):
        ref = (1.0 / complex(mp.tan(mp.mpc(x, y)))).real
        assert re_cot(x, y) == pytest.approx(ref, abs=1e-13)


def test_recot_pole():
    with pytest.raises(PoleError):
        re_cot(0.0, 0.0)
    with pytest.raises(PoleError):
        re_cot(math.pi, 0.0)


def test_recot_exponential_decay():
    # cosh(2y) must dominate cos(2x); the ratio is off by 3e-3 at y = 2
    for y in range(5, 11):
        ratio = re_cot(0.3, y + 1.0) / re_cot(0.3, float(y))
        assert math.exp(-2) - 1e-3 <= ratio <= math.exp(-2) + 1e-3


# ---------------------------------------------------------------------------
# telescoping identity
# ---------------------------------------------------------------------------

def test_lemma_two_sided_sample():
    report = lemma_check(1.5 + 10j, 0.25, tol=1e-3, max_n=MAXN)
    assert report.passed
    assert report.abs_diff <= report.lhs_error_bound + report.rhs_error_bound + 1e-3


def test_lemma_large_eta_is_tiny():
    val, err = lemma_lhs(1.5 + 0j, 50.0, 1e-8, max_n=MAXN)
    assert abs(val) <= 2 * math.log(2) * 2.0**-101 + err
    assert abs(val) <= 1e-8


def test_lemma_real_axis_positive_terms():
    val, _ = lemma_lhs(1.5 + 0j, 0.3, 1e-6, max_n=MAXN)
    assert val > 0.0


def test_lemma_rhs_real_point_sign():
    val, err = lemma_rhs(3.0 + 0j, 0.5, 1e-6)
    assert val > err  # log zeta > 0 dominates on the line Re = 3.5


def test_lemma_rhs_constant_weight_mass():
    # int cosh^-2 = 2, so a constant integrand c integrates to c/(2*eta)
    from zetafree.quadrature import adaptive_quad

    val, _ = adaptive_quad(lambda u: 1.0 / np.cosh(u) ** 2, -20.0, 20.0, tol=1e-12)
    assert val == pytest.approx(2.0, rel=1e-10)


# ---------------------------------------------------------------------------
# midpoint bound
# ---------------------------------------------------------------------------

def test_midpoint_examples():
    for sigma, eta in ((1.3, 0.1), (2.0, 0.5)):
        report = midpoint_bound_check(sigma, eta, tol=1e-4, max_n=MAXN)
        assert report.passed
        assert report.params["margin"] > 0


def test_midpoint_rejects_bad_inputs():
    with pytest.raises(DomainError):
        midpoint_bound_check(1.1, 0.1)
    with pytest.raises(ValueError):
        midpoint_bound_check(1.5, 1.5)


# ---------------------------------------------------------------------------
# dual-route cosine-weighted sum
# ---------------------------------------------------------------------------

def test_applied_trig_classical():
    report = applied_trig_sum(CosinePolynomial((3.0, 4.0, 1.0)), 1.3, 14.13,
                              tol=1e-4, max_n=MAXN)
    assert report.passed
    assert report.abs_diff <= 1e-4 + report.lhs_error_bound + report.rhs_error_bound
    assert report.rhs >= -report.rhs_error_bound


def test_applied_trig_y_zero():
    p = CosinePolynomial((3.0, 4.0, 1.0))
    report = applied_trig_sum(p, 2.0, 0.0, tol=1e-5, max_n=MAXN)
    single = neg_zeta_logderiv(2.0 + 0j, 1e-5)
    assert report.lhs == pytest.approx(8.0 * single.value.real, abs=1e-4 + 8 * single.tail_bound)
    assert report.lhs > 0


def test_applied_trig_effectively_constant():
    # b = (1, 0): the weight polynomial is the constant 1
    report = applied_trig_sum(CosinePolynomial((1.0, 0.0)), 2.0, 3.0,
                              tol=1e-5, max_n=MAXN)
    single = neg_zeta_logderiv(2.0 + 0j, 1e-5)
    assert report.rhs == pytest.approx(single.value.real, abs=1e-4 + single.tail_bound)
    assert report.rhs > 0


def test_applied_trig_random_agreement():
    rng = np.random.default_rng(12)
    p = CosinePolynomial((3.0, 4.0, 1.0))
    for _ in range(20):
        x = rng.uniform(1.25, 3.0)
        y = rng.uniform(0.0, 50.0)
        report = applied_trig_sum(p, x, y, tol=1e-3, max_n=MAXN)
        assert report.passed
        assert report.abs_diff <= 1e-9 * max(1.0, abs(report.lhs))  # same truncation: rounding only
