"""Quadrature engine and the special-function integrals."""

import math

import pytest

from kudla_green.specfun import (EULER_GAMMA, FOUR_PI, I3_minus, I3_plus,
                                 J_minus, J_plus, Precision, ToleranceError,
                                 adaptive_quadrature, beta_s, e1_series,
                                 exp_e1, resolve_I3_minus_convention)

PREC = Precision()

E1_AT_1 = 0.21938393439552026  # frozen from the power series oracle


def test_precision_validation():
    with pytest.raises(ValueError):
        Precision(abs_tol=0.0)
    with pytest.raises(ValueError):
        Precision(max_subdivisions=0)
    with pytest.raises(ValueError):
        Precision(tail_cut=-1.0)


def test_engine_on_smooth_integrand():
    res = adaptive_quadrature(math.exp, 0.0, 1.0, PREC)
    assert abs(res.value - (math.e - 1.0)) <= res.err_estimate <= PREC.abs_tol
    res = adaptive_quadrature(lambda x: x ** 10, -1.0, 1.0, PREC)
    assert abs(res.value - 2.0 / 11.0) <= PREC.abs_tol


def test_engine_budget_exhaustion():
    tight = Precision(abs_tol=1e-16, max_subdivisions=3)
    with pytest.raises(ToleranceError):
        adaptive_quadrature(lambda x: math.exp(-x) / (1e-8 + x), 0.0, 10.0, tight)


def test_engine_deterministic_bit_for_bit():
    f = lambda t: math.exp(-2.0 * t) / t
    r1 = adaptive_quadrature(f, 1.0, 25.0, PREC)
    r2 = adaptive_quadrature(f, 1.0, 25.0, PREC)
    assert r1.value == r2.value and r1.err_estimate == r2.err_estimate


# ---------------------------------------------------------------------------
# beta_s
# ---------------------------------------------------------------------------

def test_beta_s0_is_plain_exponential():
    res = beta_s(0.0, 1.0, PREC)
    assert abs(res.value - math.exp(-1.0)) <= 1e-12


def test_beta_1_is_E1():
    res = beta_s(1.0, 1.0, PREC)
    assert abs(res.value - E1_AT_1) <= 1e-11
    assert res.err_estimate <= PREC.abs_tol


@pytest.mark.parametrize("x", [1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0])
def test_beta_1_matches_series_oracle(x):
    assert abs(beta_s(1.0, x, PREC).value - e1_series(x)) <= 1e-10


def test_beta_1_log_singularity():
    x = 1e-8
    val = beta_s(1.0, x, PREC).value
    assert abs(val + math.log(x) + EULER_GAMMA) < 1e-7  # remainder is O(x)


def test_beta_monotone_in_x():
    vals = [beta_s(1.5, x, PREC).value for x in (0.5, 1.0, 2.0, 4.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_beta_rejects_bad_arguments():
    with pytest.raises(ValueError):
        beta_s(-1.0, 1.0, PREC)
    with pytest.raises(ValueError):
        beta_s(1.0, 0.0, PREC)


# ---------------------------------------------------------------------------
# fast E1
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("x", [0.05, 0.5, 1.0, 1.4, 1.6, 2.0, 5.0, 10.0, 30.0])
def test_exp_e1_matches_quadrature(x):
    assert abs(exp_e1(x) - beta_s(1.0, x, PREC).value) <= 2e-11


def test_exp_e1_series_crossover_is_smooth():
    assert abs(exp_e1(1.499999) - exp_e1(1.500001)) < 1e-6


# ---------------------------------------------------------------------------
# J_plus / J_minus
# ---------------------------------------------------------------------------

def test_J_plus_s1_collapses():
    # ((w+1) - 1)/w = 1, so the integral is exactly 1/a
    assert abs(J_plus(1.0, 1.0, PREC).value - 1.0) <= 1e-11
    assert abs(J_plus(1.0, 2.0, PREC).value - 0.5) <= 1e-11


def _J_plus_large_a_oracle(s: float, a: float, terms: int = 8):
    """Asymptotic series sum_k binom(s, k+1) k! / a^{k+1}; returns (value, bound)."""
    total = 0.0
    coeff = 1.0
    last = math.inf
    for k in range(terms):
        coeff = coeff * (s - k) / (k + 1)  # binom(s, k+1)
        term = coeff * math.factorial(k) / a ** (k + 1)
        if abs(term) > last:
            break
        total += term
        last = abs(term)
    return total, last


def test_J_plus_matches_large_a_series():
    for a in (10.0, 20.0, 40.0):
        oracle, bound = _J_plus_large_a_oracle(1.5, a)
        val = J_plus(1.5, a, PREC).value
        assert val > 0
        assert abs(val - oracle) <= 2.0 * bound + 1e-10


def test_J_plus_monotone_decreasing_in_a():
    vals = [J_plus(1.5, a, PREC).value for a in (0.5, 1.0, 2.0, 5.0, 10.0)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_J_minus_identity_at_s1():
    # w/(w+1) = 1 - 1/(w+1) gives J_minus(1, 1) = 1 - e * E1(1)
    want = 1.0 - math.e * e1_series(1.0)
    assert abs(J_minus(1.0, 1.0, PREC).value - want) <= 1e-11


def test_J_minus_gamma_bound():
    g52 = math.gamma(2.5)
    for a in (0.5, 1.0, 2.0, 5.0):
        assert 0.0 < J_minus(1.5, a, PREC).value < g52 / a ** 2.5


def test_J_minus_watson_limit():
    # a^{5/2} J_minus(3/2, a) = Gamma(5/2)(1 - Gamma(7/2)/(Gamma(5/2) a) + ...)
    a = 1000.0
    lead = math.gamma(2.5) * (1.0 - math.gamma(3.5) / (math.gamma(2.5) * a)
                              + math.gamma(4.5) / (math.gamma(2.5) * a * a))
    val = a ** 2.5 * J_minus(1.5, a, PREC).value
    assert abs(val / lead - 1.0) < 1e-6


def test_J_monotone_in_second_argument_everywhere():
    for s in (1.0, 1.5):
        vp = [J_plus(s, a, PREC).value for a in (0.25, 0.7, 1.3, 3.0)]
        vm = [J_minus(s, a, PREC).value for a in (0.25, 0.7, 1.3, 3.0)]
        bs = [beta_s(s, a, PREC).value for a in (0.25, 0.7, 1.3, 3.0)]
        for seq in (vp, vm, bs):
            assert all(x > y for x, y in zip(seq, seq[1:]))


# ---------------------------------------------------------------------------
# the orbit double integrals
# ---------------------------------------------------------------------------

def test_I3_plus_reduces_to_J_plus():
    # both sides carry err <= abs_tol, so the gap is below 2 abs_tol
    for a in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
        got = I3_plus(a / FOUR_PI, 1.0, PREC)
        want = J_plus(1.5, a, PREC)
        assert got.err_estimate <= PREC.abs_tol
        assert want.err_estimate <= PREC.abs_tol
        assert abs(got.value - want.value / 3.0) <= 2.0 * PREC.abs_tol


def test_I3_plus_depends_only_on_product_mv():
    r1 = I3_plus(2.0, 0.5, PREC)
    r2 = I3_plus(1.0, 1.0, PREC)
    assert r1.value == r2.value  # identical a = 4 pi m v, bit for bit


def test_I3_plus_decays_like_s_over_3a():
    assert I3_plus(10.0 / FOUR_PI, 1.0, PREC).value < I3_plus(1.0 / FOUR_PI, 1.0, PREC).value
    # the w -> 0 mass makes the decay algebraic: I3_plus ~ (3/2)/(3a)
    val = I3_plus(60.0 / FOUR_PI, 1.0, PREC).value
    assert 0.0 < val < 0.01
    assert val == pytest.approx(1.5 / (3.0 * 60.0), rel=0.02)


def test_I3_minus_positive_and_decaying():
    small = I3_minus(5.0 / FOUR_PI, -1.0, PREC).value
    big = I3_minus(0.5 / FOUR_PI, -1.0, PREC).value
    assert 0.0 < small < big


def test_I3_minus_prefactor_resolution():
    res = resolve_I3_minus_convention(1.0, PREC)
    assert res["residual_decaying"] < 1e-10
    assert res["residual_growing"] > 1e-2


def test_I3_argument_validation():
    with pytest.raises(ValueError):
        I3_plus(1.0, -1.0, PREC)
    with pytest.raises(ValueError):
        I3_minus(1.0, 1.0, PREC)
    with pytest.raises(ValueError):
        I3_plus(0.0, 1.0, PREC)
