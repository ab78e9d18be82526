"""Special-function layer against arbitrary-precision oracles."""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphmeans.errors import DomainError
from sphmeans.special_fun import (
    AsymptoticCase,
    Endpoint,
    LegendreKind,
    Params,
    bessel_j,
    endpoint_asymptotic,
    ferrers_p,
    gamma_ln,
    gamma_reciprocal,
    jacobi_poly,
    olver_2f1,
    olver_q,
)


def mp_reg2f1(a, b, c, y):
    if c > 0 or c != int(c):
        return mp.hyp2f1(a, b, c, mp.mpf(y)) / mp.gamma(c)
    with mp.workdps(60):
        eps = mp.mpf("1e-40")
        return mp.hyp2f1(a, b, c + eps, mp.mpf(y)) / mp.gamma(c + eps)


def q_oracle(a, b, y):
    """Olver's Q from the first hypergeometric representation (oracle)."""
    a, b, y = mp.mpf(a), mp.mpf(b), mp.mpf(y)
    h = mp.mpf("0.5")
    pref = 2 ** (a - h) * mp.gamma(a + h)
    F = mp.hyp2f1(a + h, 1 - b, 2 * a + 1, 2 / (1 - y)) / mp.gamma(2 * a + 1)
    return pref * (y + 1) ** ((h - a - b) / 2) / (y - 1) ** ((a - b + 3 * h) / 2) * F


class TestGamma:
    def test_gamma_ln_one(self):
        assert gamma_ln(1.0) == 0.0

    def test_gamma_ln_half(self):
        assert abs(gamma_ln(0.5) - math.log(math.sqrt(math.pi))) < 1e-14

    def test_gamma_ln_oracle(self):
        x = 7.25
        assert abs(gamma_ln(x) - float(mp.loggamma(x))) <= 1e-13 * abs(float(mp.loggamma(x)))

    def test_gamma_ln_domain(self):
        with pytest.raises(DomainError):
            gamma_ln(0.0)

    def test_reciprocal_poles(self):
        assert gamma_reciprocal(0.0) == 0.0
        assert gamma_reciprocal(-3.0) == 0.0

    def test_reciprocal_half(self):
        assert abs(gamma_reciprocal(0.5) - 1.0 / math.sqrt(math.pi)) < 1e-15


class TestBessel:
    def test_j0_at_zero(self):
        assert bessel_j(0.0, 0.0) == 1.0

    def test_half_order_zero(self):
        # J_{1/2}(pi) = sqrt(2/pi^2) sin(pi) = 0
        assert abs(bessel_j(0.5, math.pi)) < 1e-15

    def test_oracle_value(self):
        got = bessel_j(1.3, 17.2)
        ref = float(mp.besselj(1.3, 17.2))
        assert abs(got - ref) <= 1e-10 * 17.2 ** -0.5 + 1e-13

    def test_large_argument_envelope(self):
        x = 480.0
        got = bessel_j(0.7, x)
        ref = float(mp.besselj(0.7, x))
        assert abs(got - ref) <= 1e-10 * x ** -0.5

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_j(-1.0, 1.0)
        with pytest.raises(DomainError):
            bessel_j(0.5, -1.0)


class TestOlver2F1:
    def test_at_zero(self):
        assert abs(olver_2f1(0.9, 2.1, 3.7, 0.0) - gamma_reciprocal(3.7)) < 1e-15

    def test_b_equals_c(self):
        a, b, y = 0.77, 1.9, 0.62
        expect = (1.0 - y) ** (-a) * gamma_reciprocal(b)
        assert abs(olver_2f1(a, b, b, y) - expect) <= 1e-11 * abs(expect)

    def test_terminating(self):
        got = olver_2f1(-2, 3, 1.5, 0.3)
        ref = float(mp_reg2f1(-2, 3, 1.5, 0.3))
        assert abs(got - ref) <= 1e-12 * abs(ref)

    @pytest.mark.parametrize("a,b,c,y", [
        (0.8, 1.2, 2.3, 0.3), (0.8, 1.2, 2.3, 0.95), (0.8, 1.2, 2.3, 0.999999),
        (0.8, 1.2, 2.3, -5.0), (1.7, -0.9, 0.4, 0.87), (0.3, 0.45, -1.3, 0.7),
        (2.2, 0.7, 0.15, 0.9999), (0.7, 1.1, 0.0, 0.4), (0.7, 1.1, -2.0, -0.3),
    ])
    def test_against_oracle(self, a, b, c, y):
        got = olver_2f1(a, b, c, y)
        ref = float(mp_reg2f1(a, b, c, y))
        assert abs(got - ref) <= 1e-10 * max(abs(ref), 1e-30)

    @pytest.mark.parametrize("a,b,m,y", [
        (0.8, 1.2, 0, 0.93), (0.8, 1.2, 1, 0.93), (0.8, 1.2, 3, 0.99999),
        (0.35, 0.9, 2, 0.75), (0.5, 0.5, 0, 0.999999),
        (0.8, 1.2, -1, 0.93), (1.3, 1.9, -2, 0.9999),
    ])
    def test_integer_parameter_limits(self, a, b, m, y):
        c = a + b + m
        got = olver_2f1(a, b, c, y)
        ref = float(mp_reg2f1(a, b, c, y))
        assert abs(got - ref) <= 2e-9 * max(abs(ref), 1e-30)

    def test_near_one_tolerance(self):
        y = 1.0 - 5e-5
        got = olver_2f1(0.6, 1.4, 2.15, y)
        ref = float(mp_reg2f1(0.6, 1.4, 2.15, y))
        assert abs(got - ref) <= 1e-7 * abs(ref)

    def test_domain(self):
        with pytest.raises(DomainError):
            olver_2f1(1.0, 1.0, 1.0, 1.0)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(-2.0, 3.0), st.floats(-2.0, 3.0), st.floats(0.2, 4.0),
           st.floats(-0.95, 0.95))
    def test_random_against_oracle(self, a, b, c, y):
        got = olver_2f1(a, b, c, y)
        ref = float(mp_reg2f1(a, b, c, y))
        assert abs(got - ref) <= 1e-9 * max(abs(ref), 1e-12)


def jacobi_sum_oracle(m, g, d, y):
    y = mp.mpf(y)
    tot = mp.mpf(0)
    for k in range(m + 1):
        c1 = mp.mpf(1)
        for j in range(k + 1, m + 1):
            c1 *= (g + j) / (j - k)
        c2 = mp.mpf(1)
        for j in range(m - k + 1, m + 1):
            c2 *= (d + j) / (j - (m - k))
        tot += c1 * c2 * ((y - 1) / 2) ** k * ((y + 1) / 2) ** (m - k)
    return tot


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi_poly(0, 0.4, -0.2, 0.5) == 1.0

    def test_degree_one_at_one(self):
        # value at y = 1 is gamma + 1
        assert abs(jacobi_poly(1, 0.4, -0.2, 1.0) - 1.4) < 1e-15

    @pytest.mark.parametrize("m,g,d,y", [
        (3, 0.4, -0.2, 0.5), (4, 2.3, -3.1, -0.7), (5, -2.0, -2.0, 0.4),
        (3, 1.5, -1.5, 0.3), (2, -1.0, -1.0, 0.9), (4, -4.0, -4.0, 0.2),
    ])
    def test_against_terminating_sum(self, m, g, d, y):
        got = jacobi_poly(m, g, d, y)
        ref = float(jacobi_sum_oracle(m, g, d, y))
        assert abs(got - ref) <= 1e-12 * max(abs(ref), 1.0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 6), st.floats(-2.5, 2.5), st.floats(-2.5, 2.5),
           st.floats(-1.0, 1.0))
    def test_reflection_symmetry(self, m, g, d, y):
        lhs = jacobi_poly(m, g, d, -y)
        rhs = (-1.0) ** m * jacobi_poly(m, d, g, y)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1.0)


class TestFerrersP:
    def test_explicit_ultraspherical_case(self):
        # 2*alpha + beta = 0 at alpha = beta = 0, y = 0
        p = Params.from_rationals(0, 0)
        assert abs(ferrers_p(p, 0.0) - math.sqrt(2.0 / math.pi)) < 1e-14

    def test_explicit_alpha_minus_half(self):
        p = Params.from_rationals(Fraction(-1, 2), 2)
        assert abs(ferrers_p(p, 0.0) - 1.0) < 1e-14

    @pytest.mark.parametrize("a,b,y", [
        (0.3, 0.7, 0.25), (0.3, 0.7, -0.9), (1.7, -0.9, 0.5), (-0.7, 1.3, 0.0),
        (0.25, 0.25, -0.5), (1.0, 0.3, -0.8), (2.6, -1.1, 0.9999),
    ])
    def test_generic_against_oracle(self, a, b, y):
        p = Params(alpha=a, beta=b)
        got = ferrers_p(p, y)
        ref = float(mp.legenp(a - 0.5, 0.5 - a - b, mp.mpf(y)))
        assert abs(got - ref) <= 1e-9 * max(abs(ref), 1e-12)

    def test_beta_zero_identity(self):
        # P * Gamma(a+1/2) * 2^(a-1/2) == (1 - y^2)^((a-1/2)/2)
        for a in (0.3, 0.9, 2.2):
            p = Params(alpha=a, beta=0.0, beta_exact_integer=0)
            for y in (-0.7, 0.0, 0.6):
                lhs = ferrers_p(p, y) * math.gamma(a + 0.5) * 2.0 ** (a - 0.5)
                rhs = (1.0 - y * y) ** ((a - 0.5) / 2.0)
                assert abs(lhs - rhs) <= 1e-10 * abs(rhs)

    def test_parameter_continuity_of_explicit_dispatch(self):
        # generic path at alpha +- 1e-6 brackets the explicit-path value
        for (n, b) in [(0, 0.7), (1, -0.4), (-1, 1.3)]:
            a = n + 0.5
            p_exact = Params(alpha=a, beta=b, alpha_exact_half_integer=n)
            for y in (-0.5, 0.3):
                v = ferrers_p(p_exact, y)
                lo = ferrers_p(Params(alpha=a - 1e-6, beta=b), y)
                hi = ferrers_p(Params(alpha=a + 1e-6, beta=b), y)
                assert min(lo, hi) - 1e-4 * abs(v) <= v <= max(lo, hi) + 1e-4 * abs(v)

    def test_domain(self):
        p = Params(alpha=0.3, beta=0.7)
        with pytest.raises(DomainError):
            ferrers_p(p, 1.0)


class TestOlverQ:
    def test_explicit_two_alpha_beta(self):
        p = Params.from_rationals(0, 0)
        assert abs(olver_q(p, math.sqrt(2.0)) - math.sqrt(math.pi / 2.0)) < 1e-13

    def test_explicit_alpha_minus_half(self):
        p = Params.from_rationals(Fraction(-1, 2), 2)
        expect = 0.5 * (1.0 / math.sqrt(2.0) + math.sqrt(2.0))
        assert abs(olver_q(p, 3.0) - expect) < 1e-14

    @pytest.mark.parametrize("a,b,y", [
        (0.3, 0.7, 1.5), (0.3, 0.7, 50.0), (-0.7, 1.9, 1.2), (1.6, -0.9, 2.0),
        (0.25, 0.25, 1.3), (2.0, 0.3, 1.41), (0.3, 0.7, 1.0000001),
    ])
    def test_generic_against_oracle(self, a, b, y):
        p = Params(alpha=a, beta=b)
        got = olver_q(p, y)
        ref = float(q_oracle(a, b, y))
        assert abs(got - ref) <= 1e-9 * max(abs(ref), 1e-12)

    @pytest.mark.parametrize("a,m", [(0.3, 1), (0.3, 2), (-0.7, 2), (1.5, 3), (-0.9, 1)])
    def test_integer_beta_limits(self, a, m):
        p = Params(alpha=a, beta=float(m), beta_exact_integer=m)
        got = olver_q(p, 1.7)
        with mp.workdps(40):
            ref = float(q_oracle(a, m + mp.mpf("1e-18"), 1.7))
        assert abs(got - ref) <= 1e-9 * max(abs(ref), 1e-12)

    def test_decay_exponent_at_infinity(self):
        # Q(y) * y^(a+1/2) stabilizes to a nonzero constant
        p = Params(alpha=0.4, beta=0.9)
        vals = [olver_q(p, y) * y ** (p.alpha + 0.5) for y in (1e2, 1e3, 1e4)]
        assert abs(vals[1] / vals[0] - 1.0) < 0.02
        assert abs(vals[2] / vals[1] - 1.0) < 0.02

    def test_domain(self):
        p = Params(alpha=0.3, beta=0.7)
        with pytest.raises(DomainError):
            olver_q(p, 1.0)


class TestParams:
    def test_invariants(self):
        with pytest.raises(DomainError):
            Params(alpha=-1.0, beta=2.0)
        with pytest.raises(DomainError):
            Params(alpha=0.0, beta=-0.5)

    def test_from_rationals_flags(self):
        p = Params.from_rationals(Fraction(3, 2), Fraction(-1))
        assert p.alpha_exact_half_integer == 1
        assert p.beta_exact_integer == -1
        assert not p.two_alpha_plus_beta_zero
        q = Params.from_rationals(Fraction(-1, 4), Fraction(1, 2))
        assert q.two_alpha_plus_beta_zero
        assert q.alpha_exact_half_integer is None

    def test_flag_consistency_enforced(self):
        with pytest.raises(DomainError):
            Params(alpha=0.4, beta=0.0, alpha_exact_half_integer=0)


class TestEndpointAsymptotics:
    def test_regular_plus_one(self):
        p = Params.from_rationals(1, 1)
        case = endpoint_asymptotic(p, LegendreKind.FERRERS_P, Endpoint.PLUS_ONE_MINUS)
        assert case.exponent == pytest.approx(0.75)
        assert case.sign == 1 and not case.logarithmic and not case.exceptional

    def test_log_case(self):
        p = Params(alpha=0.2, beta=0.3)
        case = endpoint_asymptotic(p, LegendreKind.FERRERS_P, Endpoint.MINUS_ONE_PLUS)
        assert case.logarithmic and case.exponent == 0.0 and not case.exceptional

    def test_exceptional_half_integer(self):
        p = Params(alpha=0.5, beta=-0.4, alpha_exact_half_integer=0)
        case = endpoint_asymptotic(p, LegendreKind.FERRERS_P, Endpoint.MINUS_ONE_PLUS)
        assert case.exceptional
        assert case.exponent == pytest.approx((0.5 - 0.1) / 2.0)
        assert case.sign == 1

    def test_q_infinity(self):
        p = Params(alpha=0.4, beta=0.9)
        case = endpoint_asymptotic(p, LegendreKind.OLVER_Q, Endpoint.INFINITY)
        assert case.exponent == pytest.approx(-0.9)

    def test_invariant_log_exponent(self):
        with pytest.raises(DomainError):
            AsymptoticCase(LegendreKind.FERRERS_P, Endpoint.MINUS_ONE_PLUS,
                           exceptional=False, exponent=0.3, logarithmic=True, sign=1)

    def test_numerical_match_minus_one(self):
        # observed local exponent of P near -1 matches the asymptotic data
        for (a, b) in [(0.9, 0.4), (0.2, 0.1), (1.4, -0.2)]:
            p = Params(alpha=a, beta=b)
            case = endpoint_asymptotic(p, LegendreKind.FERRERS_P, Endpoint.MINUS_ONE_PLUS)
            if case.logarithmic:
                continue
            eps = 1e-7
            v1 = ferrers_p(p, -1.0 + eps)
            v2 = ferrers_p(p, -1.0 + 2 * eps)
            observed = math.log(abs(v2 / v1)) / math.log(2.0)
            assert observed == pytest.approx(case.exponent, abs=5e-3)
            assert math.copysign(1, v1) == case.sign
