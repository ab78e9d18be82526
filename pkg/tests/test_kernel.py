"""Kernel evaluation routes, exceptional sets, and the zero census."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphmeans.errors import DomainError, SingularSurfaceError
from sphmeans.kernel import (
    KernelPoint,
    Regime,
    classify_regime,
    count_legendre_zeros,
    exceptional_membership,
    kernel_closed_form,
    kernel_legendre,
    kernel_oracle_quadrature,
)
from sphmeans.quadrature import QuadSpec
from sphmeans.special_fun import LegendreKind, Params

SPEC = QuadSpec(tol=1e-9)


class TestRegime:
    def test_basic(self):
        assert classify_regime(1, 3, 1) is Regime.VANISHING
        assert classify_regime(2, 1, 1.5) is Regime.INTERIOR
        assert classify_regime(4, 1, 1) is Regime.EXTERIOR
        assert classify_regime(2, 1, 1) is Regime.BOUNDARY_UPPER
        assert classify_regime(0.5, 1, 1.5) is Regime.BOUNDARY_LOWER

    def test_positive_domain(self):
        with pytest.raises(DomainError):
            classify_regime(0.0, 1, 1)

    def test_kernel_point_identities(self):
        kp = KernelPoint.classify(1.7, 1.0, 1.2)
        assert kp.regime is Regime.INTERIOR
        q1 = 1.7 ** 2 - 0.2 ** 2
        q2 = 2.2 ** 2 - 1.7 ** 2
        assert 1.0 + kp.cos_v == pytest.approx(q2 / 2.4, rel=1e-12)
        assert 1.0 - kp.cos_v == pytest.approx(q1 / 2.4, rel=1e-12)
        kp = KernelPoint.classify(4.0, 1.0, 1.2)
        assert kp.cosh_u - 1.0 == pytest.approx((16 - 2.2 ** 2) / 2.4, rel=1e-12)
        assert kp.cosh_u + 1.0 == pytest.approx((16 - 0.04) / 2.4, rel=1e-12)


class TestAnchors:
    def test_half_zero_interior(self):
        p = Params.from_rationals(Fraction(1, 2), 0)
        t, x, z = 2.0, 1.0, 1.5
        assert kernel_legendre(p, t, x, z) == pytest.approx(1.0 / (2 * t * x * z), rel=1e-12)
        assert kernel_closed_form(p, t, x, z) == pytest.approx(1.0 / (2 * t * x * z), rel=1e-12)

    def test_half_zero_exterior_vanishes(self):
        p = Params.from_rationals(Fraction(1, 2), 0)
        assert kernel_legendre(p, 4.0, 1.0, 1.5) == 0.0

    def test_minus_half_one(self):
        p = Params.from_rationals(Fraction(-1, 2), 1)
        assert kernel_legendre(p, 1.5, 1, 1) == pytest.approx(1 / 3, rel=1e-12)
        assert kernel_legendre(p, 4.0, 1, 1) == pytest.approx(0.25, rel=1e-12)
        assert kernel_oracle_quadrature(p, 1.5, 1, 1, SPEC) == pytest.approx(1 / 3, abs=1e-7)

    def test_kera0_formula(self):
        # beta = 0 closed form at alpha = 1
        p = Params.from_rationals(1, 0)
        t, x, z = 1.7, 1.0, 1.2
        q1 = t * t - (x - z) ** 2
        q2 = (x + z) ** 2 - t * t
        expect = (math.gamma(2.0) / (math.sqrt(math.pi) * 2.0 * math.gamma(1.5))
                  * (t * x * z) ** -2.0 * (q1 * q2) ** 0.5)
        assert kernel_closed_form(p, t, x, z) == pytest.approx(expect, rel=1e-12)
        assert kernel_legendre(p, t, x, z) == pytest.approx(expect, rel=1e-10)


class TestPaths:
    @pytest.mark.parametrize("a,b", [
        (0.3, 0.6), (0.1, 0.2), (-0.3, 0.5), (1.2, -0.8), (0.25, 0.25), (2.0, 0.3),
    ])
    def test_legendre_vs_oracle_generic(self, a, b):
        p = Params(alpha=a, beta=b)
        for (t, x, z) in [(1.7, 1.0, 1.2), (4.0, 1.0, 1.2), (0.3, 1.0, 1.2)]:
            kl = kernel_legendre(p, t, x, z)
            ko = kernel_oracle_quadrature(p, t, x, z, SPEC)
            assert abs(kl - ko) <= max(1e-6 * abs(ko), 1e-9)

    @pytest.mark.parametrize("fa,fb", [
        (Fraction(1, 2), Fraction(0)), (Fraction(3, 2), Fraction(-1)),
        (Fraction(-1, 4), Fraction(1, 2)), (Fraction(-1, 2), Fraction(2)),
        (Fraction(3, 2), Fraction(1, 4)), (Fraction(3, 2), Fraction(2)),
    ])
    def test_closed_vs_legendre_on_lines(self, fa, fb):
        p = Params.from_rationals(fa, fb)
        for (t, x, z) in [(1.7, 1.0, 1.2), (4.0, 1.0, 1.2), (2.19, 1.0, 1.2)]:
            kc = kernel_closed_form(p, t, x, z)
            kl = kernel_legendre(p, t, x, z)
            assert kc is not None
            assert abs(kl - kc) <= 1e-9 * max(abs(kc), 1e-12)

    def test_closed_form_absent_off_lines(self):
        p = Params(alpha=0.4, beta=0.7)
        assert kernel_closed_form(p, 1.7, 1.0, 1.2) is None

    def test_boundary_refused(self):
        p = Params(alpha=0.3, beta=0.6)
        with pytest.raises(SingularSurfaceError):
            kernel_legendre(p, 2.0, 1.0, 1.0)
        with pytest.raises(SingularSurfaceError):
            kernel_oracle_quadrature(p, 0.5, 1.0, 1.5, SPEC)


class TestStructure:
    def test_vanishing_exact_zero(self):
        p = Params(alpha=0.3, beta=0.6)
        assert kernel_legendre(p, 0.1, 1.0, 1.2) == 0.0

    def test_exterior_zero_for_nonpositive_integer_beta(self):
        p = Params.from_rationals(Fraction(3, 2), Fraction(-1))
        assert kernel_legendre(p, 5.0, 1.0, 1.2) == 0.0

    def test_symmetry_bitwise(self):
        p = Params(alpha=0.35, beta=0.55)
        rng = np.random.default_rng(7)
        t = rng.uniform(0.2, 5.0, 200)
        x = rng.uniform(0.2, 5.0, 200)
        z = rng.uniform(0.2, 5.0, 200)
        assert np.all(kernel_legendre(p, t, x, z) == kernel_legendre(p, t, z, x))

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.3, 4.0), st.floats(0.3, 4.0), st.floats(0.3, 4.0),
           st.sampled_from([0.5, 2.0, 7.3]))
    def test_homogeneity(self, t, x, z, s):
        p = Params(alpha=0.35, beta=0.55)
        k0 = kernel_legendre(p, t, x, z)
        ks = s ** (-(2 * p.alpha + 2)) * kernel_legendre(p, t / s, x / s, z / s)
        assert ks == pytest.approx(k0, rel=1e-9, abs=1e-300)

    def test_positivity_in_positive_cone(self):
        p = Params(alpha=0.3, beta=0.6)
        for (t, x, z) in [(1.7, 1.0, 1.2), (4.0, 1.0, 1.2), (2.21, 1.0, 1.2)]:
            assert kernel_legendre(p, t, x, z) > 0.0


class TestExceptional:
    def test_membership_cases(self):
        p = Params(alpha=0.5, beta=-0.6, alpha_exact_half_integer=0)
        m = exceptional_membership(p)
        assert m.in_E_P and not m.in_E_Q

        p = Params.from_rationals(Fraction(1, 4), Fraction(-1, 2))
        m = exceptional_membership(p)
        assert not m.in_E_P and not m.in_E_Q  # both first sets need a+b >= 1/2

        p = Params.from_rationals(Fraction(-1, 5), Fraction(1))
        assert not exceptional_membership(p).in_E_Q   # a+b = 0.8 >= 1/2
        p = Params.from_rationals(Fraction(-4, 5), Fraction(1))
        assert exceptional_membership(p).in_E_Q       # a+b = 0.2 < 1/2

    def test_explicit_line_tags(self):
        assert exceptional_membership(
            Params.from_rationals(Fraction(3, 2), 1)).explicit_line == "alpha_half_integer"
        assert exceptional_membership(
            Params.from_rationals(Fraction(1, 4), Fraction(-1, 2))
        ).explicit_line == "two_alpha_plus_beta_zero"
        assert exceptional_membership(Params(alpha=0.4, beta=0.7)).explicit_line is None


class TestZeroCensus:
    def test_q_one_zero_triangle(self):
        p = Params(alpha=-0.75, beta=1.25)
        c = count_legendre_zeros(p, LegendreKind.OLVER_Q, SPEC)
        assert c.predicted == 1 and c.predicted_exact
        assert c.observed == 1
        assert len(c.locations) == 1 and c.locations[0] > 1.0

    def test_p_zero_free_region(self):
        p = Params(alpha=0.5, beta=0.5)
        c = count_legendre_zeros(p, LegendreKind.FERRERS_P, SPEC)
        assert c.predicted == 0 and c.observed == 0

    def test_p_at_least_one(self):
        p = Params(alpha=1.5, beta=-1.2, alpha_exact_half_integer=1)
        c = count_legendre_zeros(p, LegendreKind.FERRERS_P, SPEC)
        assert c.predicted == 1 and not c.predicted_exact
        assert c.observed >= 1

    def test_boundary_lines_are_zero_free(self):
        for p in (Params.from_rationals(Fraction(1, 2), Fraction(-1, 2)),
                  Params.from_rationals(Fraction(-3, 4), Fraction(3, 2)),
                  Params.from_rationals(Fraction(-3, 4), Fraction(1))):
            cp = count_legendre_zeros(p, LegendreKind.FERRERS_P, SPEC)
            cq = count_legendre_zeros(p, LegendreKind.OLVER_Q, SPEC)
            assert cp.observed == cp.predicted == 0 or not cp.predicted_exact
            assert cq.observed == cq.predicted
