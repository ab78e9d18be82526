"""The panel integrator, substitutions, and the oscillatory tail."""

import math

import numpy as np
import pytest

from sphmeans.errors import ConvergenceError, DomainError
from sphmeans.quadrature import (
    QuadSpec,
    bessel_product_integral,
    integrate,
    integrate_endpoint,
    integrate_transformed,
    power_map,
    tail_map,
)


class TestQuadSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            QuadSpec(tol=2.0)
        with pytest.raises(DomainError):
            QuadSpec(truncation_growth=0.5)


class TestPanels:
    def test_smooth(self):
        got = integrate(np.sin, 0.0, math.pi, QuadSpec(tol=1e-12))
        assert got == pytest.approx(2.0, rel=1e-12)

    def test_oscillatory_with_breakpoints(self):
        w = 50.0
        got = integrate(lambda s: np.cos(w * s), 0.0, 1.0, QuadSpec(tol=1e-11),
                        breakpoints=list(np.arange(0.05, 1.0, 0.05)))
        assert got == pytest.approx(math.sin(w) / w, abs=1e-11)

    def test_budget_error_carries_estimate(self):
        f = lambda s: np.abs(s - math.sqrt(0.5)) ** -0.97
        with pytest.raises(ConvergenceError) as exc:
            integrate(f, 0.0, 1.0, QuadSpec(tol=1e-13, max_panels=16))
        assert exc.value.achieved is not None


class TestSubstitutions:
    def test_power_map_singular(self):
        # int_0^1 s^(-1/2) ds = 2
        got = integrate_transformed(lambda s: s ** -0.5, power_map(0.0, 1.0, -0.5),
                                    QuadSpec(tol=1e-12))
        assert got == pytest.approx(2.0, rel=1e-12)

    def test_endpoint_negative_power(self):
        got = integrate_endpoint(lambda w: w ** -0.7 * np.cos(w), 1.0, -0.7,
                                 QuadSpec(tol=1e-11))
        # reference from mpmath
        import mpmath as mp
        ref = float(mp.quad(lambda w: w ** mp.mpf("-0.7") * mp.cos(w), [0, 1]))
        assert got == pytest.approx(ref, rel=1e-9)

    def test_endpoint_log(self):
        got = integrate_endpoint(lambda w: np.log(w), 1.0, 0.0, QuadSpec(tol=1e-11))
        assert got == pytest.approx(-1.0, rel=1e-9)

    def test_endpoint_positive_power(self):
        got = integrate_endpoint(lambda w: w ** 1.5, 1.0, 1.5, QuadSpec(tol=1e-11))
        assert got == pytest.approx(0.4, rel=1e-10)

    def test_tail_map(self):
        phi, dphi, lo, hi = tail_map(2.0)
        got = integrate(lambda w: phi(w) ** -3.0 * dphi(w), 1e-12, 1.0,
                        QuadSpec(tol=1e-11))
        assert got == pytest.approx(0.5 * 2.0 ** -2, rel=1e-8)


class TestOscillatory:
    def test_weber_schafheitlin_product(self):
        # int_0^oo J_0(y)^2 / y^0 * y^0 ... use a known case:
        # int_0^oo J_{1/2}(ty) J_{1/2}(xy) / (txy)^... via the 1D kernel:
        # with nu = (1/2, 1/2, ...) the triple product reproduces K^{1/2,0}
        import scipy.special as sp
        spec = QuadSpec(tol=1e-10)
        t, x, z = 2.0, 1.0, 1.5
        val = bessel_product_integral((0.5, 0.5, 0.5), (t, x, z), 2.0, spec)
        expect = (1.0 / (2 * t * x * z)) / (2.0 ** 0.5 * sp.gamma(1.5))
        assert val == pytest.approx(expect, rel=1e-8)

    def test_vanishing_frequency_rejected(self):
        spec = QuadSpec(tol=1e-8)
        with pytest.raises(DomainError):
            bessel_product_integral((0.5, 0.5, 0.5), (2.0, 1.0, 1.0), 2.0, spec)

    def test_two_factor_closed_form(self):
        # classical two-Bessel integral: int_0^oo J_nu(ay) J_nu(by) y^-lam dy
        # has a hypergeometric closed form (b < a); fold in the (ab)^-nu
        # normalization of the product integrand
        import mpmath as mp
        spec = QuadSpec(tol=1e-10)
        a, b, nu, lam = 1.0, 0.7, 0.6, 0.2
        val = bessel_product_integral((nu, nu), (a, b), 2.0 * nu - lam, spec)
        with mp.workdps(30):
            ref = ((mp.mpf(b) ** nu * mp.gamma((2 * nu - lam + 1) / 2))
                   / (2 ** mp.mpf(lam) * mp.gamma(nu + 1)
                      * mp.gamma((lam + 1) / 2))
                   * mp.hyp2f1((2 * nu - lam + 1) / 2, (1 - lam) / 2, nu + 1,
                               (b / a) ** 2) / (a * b) ** nu)
        assert val == pytest.approx(float(ref), rel=1e-9)
