"""Quadrature policy and the vectorized panel integrator.

Everything here is built for integrands that are evaluated on whole numpy
arrays at once: the adaptive driver bisects the worst panels but always
issues a single vectorized call per sweep.  Endpoint power singularities
are removed exactly with the substitution u = (s-a)^(1+p), logarithmic
ones with an exponential map; the oscillatory triple-Bessel tail is
computed by rotating each Hankel half-product onto a ray of steepest
descent, where the integrand decays like exp(-|omega| s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import special as _sp

from .errors import ConvergenceError, DomainError

__all__ = ["QuadSpec", "integrate", "integrate_transformed", "power_map",
           "exp_map", "tail_map", "bessel_product_integral"]


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature policy: tolerances, budgets, and singularity handling.

    ``surface_exclusion`` is the half-width factor (times sqrt(xz)) of the
    tubes around the singular surfaces inside which operator quadratures
    switch to endpoint-substituted panels.
    """

    tol: float = 1e-9
    max_panels: int = 4000
    truncation_growth: float = 2.0
    surface_exclusion: float = 1e-4

    def __post_init__(self):
        if not (0.0 < self.tol < 1.0):
            raise DomainError("QuadSpec.tol must lie in (0, 1)")
        if self.truncation_growth <= 1.0:
            raise DomainError("QuadSpec.truncation_growth must exceed 1")
        if self.max_panels < 4:
            raise DomainError("QuadSpec.max_panels too small")


@lru_cache(maxsize=8)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_eval(f, lo, hi, n):
    """Gauss-Legendre order-n estimates on a batch of panels (vectorized)."""
    x, w = _gauss(n)
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    nodes = mid + half * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return (vals * w[None, :]).sum(axis=1) * (hi - lo) * 0.5


def integrate(f, a, b, spec: QuadSpec = QuadSpec(), breakpoints: Sequence[float] = (),
              rel_scale: float = 0.0):
    """Adaptive vectorized panel integration of f over [a, b].

    ``f`` must accept a 1-D numpy array.  ``breakpoints`` are interior
    points where the integrand is non-smooth; panels never straddle them.
    The error control is relative to max(|result|, rel_scale).
    """
    if b <= a:
        return 0.0
    pts = [a] + sorted(p for p in set(breakpoints) if a < p < b) + [b]
    lo = np.array(pts[:-1], dtype=float)
    hi = np.array(pts[1:], dtype=float)
    for _ in range(60):
        i_lo = _panel_eval(f, lo, hi, 12)
        i_hi = _panel_eval(f, lo, hi, 24)
        err = np.abs(i_hi - i_lo)
        total = float(i_hi.sum())
        tol_abs = spec.tol * max(abs(total), rel_scale, 1e-300)
        if err.sum() <= tol_abs:
            return total
        if len(lo) >= spec.max_panels:
            raise ConvergenceError(
                f"panel budget exhausted: error {err.sum():.3e} > {tol_abs:.3e}",
                achieved=float(err.sum()))
        # bisect panels carrying the top of the error mass
        order = np.argsort(err)[::-1]
        cut = max(1, int(0.3 * len(order)))
        chosen = order[:cut]
        keep = np.ones(len(lo), dtype=bool)
        keep[chosen] = False
        mids = 0.5 * (lo[chosen] + hi[chosen])
        lo = np.concatenate([lo[keep], lo[chosen], mids])
        hi = np.concatenate([hi[keep], mids, hi[chosen]])
    raise ConvergenceError("panel refinement failed to converge", achieved=float(err.sum()))


def power_map(a: float, b: float, p: float, side: str = "lower"):
    """Map removing a (s-a)^p (or (b-s)^p) endpoint factor, p > -1.

    Returns (phi, dphi, u_lo, u_hi) with
    int_a^b f(s) ds = int_{u_lo}^{u_hi} f(phi(u)) dphi(u) du,
    such that f ~ (s-a)^p smooth pulls back to a bounded integrand.
    """
    if p <= -1.0:
        raise DomainError("power_map needs exponent > -1")
    q = 1.0 + p
    span = b - a
    if side == "lower":
        def phi(u):
            return a + u ** (1.0 / q)

        def dphi(u):
            return u ** (1.0 / q - 1.0) / q
    else:
        def phi(u):
            return b - u ** (1.0 / q)

        def dphi(u):
            return u ** (1.0 / q - 1.0) / q
    return phi, dphi, 0.0, span ** q


def exp_map(a: float, b: float, side: str = "lower", depth: float = 40.0):
    """Exponential map concentrating nodes at one endpoint (log singularities)."""
    span = b - a
    if side == "lower":
        def phi(v):
            return a + span * np.exp(-v)
    else:
        def phi(v):
            return b - span * np.exp(-v)

    def dphi(v):
        return span * np.exp(-v)
    return phi, dphi, 0.0, depth


def tail_map(a: float):
    """Map [a, oo) -> (0, 1] via s = a/w for power-decaying tails."""
    def phi(w):
        return a / w

    def dphi(w):
        return a / (w * w)
    return phi, dphi, 0.0, 1.0


def integrate_transformed(f, mapping, spec: QuadSpec = QuadSpec(),
                          breakpoints: Sequence[float] = (), rel_scale: float = 0.0):
    """Integrate f through a (phi, dphi, lo, hi) substitution."""
    phi, dphi, lo, hi = mapping

    def g(u):
        return f(phi(u)) * dphi(u)
    return integrate(g, lo, hi, spec, breakpoints=breakpoints, rel_scale=rel_scale)


def integrate_endpoint(f, span: float, p: float, spec: QuadSpec = QuadSpec(),
                       rel_scale: float = 0.0):
    """int_0^span f(w) dw where f ~ w^p * smooth at w = 0 (log allowed at p=0).

    Negative powers are removed exactly by substitution, the p = 0 case
    (bounded or logarithmic) goes through an exponential map, and positive
    powers vanish at the endpoint and only need geometric refinement.
    """
    if span <= 0.0:
        return 0.0
    if p < 0.0:
        return integrate_transformed(f, power_map(0.0, span, p, "lower"), spec,
                                     rel_scale=rel_scale)
    if p == 0.0:
        return integrate_transformed(f, exp_map(0.0, span, "lower"), spec,
                                     rel_scale=rel_scale)
    brk = [span * 2.0 ** (-k) for k in range(1, 40)]
    return integrate(f, 0.0, span, spec, breakpoints=brk, rel_scale=rel_scale)


# ---------------------------------------------------------------------------
# oscillatory triple-Bessel integral
# ---------------------------------------------------------------------------

def _head_integral(nus, scales, ypow, y0, spec):
    nus = np.asarray(nus, dtype=float)
    scales = np.asarray(scales, dtype=float)

    def integrand(y):
        out = np.full_like(y, 1.0)
        for nu, c in zip(nus, scales):
            w = c * y
            out = out * _sp.jv(nu, w) / w ** nu
        return out * y ** ypow

    # flatten the y^ypow measure on [0, y1] via u = y^(1+ypow), panels beyond
    freq = float(scales.sum())
    y1 = min(1.0 / max(freq, 1e-30), y0)
    q = 1.0 + ypow
    total = 0.0
    if y1 > 0:
        def smooth(y):
            out = np.full_like(y, 1.0 / q)
            for nu, c in zip(nus, scales):
                w = c * y
                out = out * _sp.jv(nu, w) / w ** nu
            return out
        total += integrate_transformed(
            smooth, (lambda u: u ** (1.0 / q), lambda u: np.ones_like(u), 0.0, y1 ** q),
            spec, rel_scale=1.0)
    if y0 > y1:
        nosc = max(4, int(math.ceil((y0 - y1) * freq / math.pi)))
        brk = list(np.linspace(y1, y0, min(nosc, 600) + 1))[1:-1]
        total += integrate(integrand, y1, y0, spec, breakpoints=brk, rel_scale=1.0)
    return total


def _ray_integral(nus, scales, signs, ypow, y0, spec):
    """One Hankel-product term rotated onto its decaying vertical ray."""
    omega = float(np.dot(signs, scales))
    sgn = 1.0 if omega > 0 else -1.0
    aom = abs(omega)

    def g(u):
        s = u / aom
        y = y0 + 1j * sgn * s
        out = np.exp(1j * omega * y0) * np.exp(-u) * (1j * sgn / aom)
        for nu, c, e in zip(nus, scales, signs):
            w = c * y
            h = _sp.hankel1e(nu, w) if e > 0 else _sp.hankel2e(nu, w)
            out = out * h / w ** nu
        return out * y ** ypow

    re = integrate(lambda u: g(u).real, 0.0, 45.0, spec,
                   breakpoints=[1.0, 4.0, 12.0, 25.0], rel_scale=1.0)
    im = integrate(lambda u: g(u).imag, 0.0, 45.0, spec,
                   breakpoints=[1.0, 4.0, 12.0, 25.0], rel_scale=1.0)
    return complex(re, im)


def bessel_product_integral(nus, scales, ypow, spec: QuadSpec, y0: float | None = None):
    """int_0^oo prod_i J_{nu_i}(c_i y) / (c_i y)^{nu_i} * y^ypow dy.

    Conditionally convergent tails (sum nu_i - ypow in (1/2, 3/2]) are
    handled exactly: beyond y0 the J-product is split into 2^k Hankel
    products, each rotated onto the half-plane where its phase decays.
    No frequency sum(+-c_i) may vanish (that is the singular surface).
    """
    scales = [float(c) for c in scales]
    k = len(nus)
    if y0 is None:
        y0 = 40.0 / max(max(scales), 1.0)
    y0 = max(y0, 0.5 / min(scales))
    for signs in _sign_patterns(k):
        if abs(np.dot(signs, scales)) < 1e-14 * sum(scales):
            raise DomainError("bessel_product_integral: a phase frequency vanishes")
    head = _head_integral(nus, scales, ypow, y0, spec)
    tail = 0j
    for signs in _sign_patterns(k):
        tail += _ray_integral(nus, scales, signs, ypow, y0, spec)
    return head + tail.real / 2.0 ** k


def _sign_patterns(k: int):
    out = []
    for bits in range(2 ** k):
        out.append(tuple(1.0 if (bits >> i) & 1 == 0 else -1.0 for i in range(k)))
    return out
