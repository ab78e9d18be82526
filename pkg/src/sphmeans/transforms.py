"""The Hankel transform and both definitions of the radial mean operator.

``mean_multiplier_side`` composes two Hankel transforms with the Bessel
multiplier; ``mean_kernel_side`` integrates the kernel against the profile.
The two agree on smooth compactly supported profiles, which is the
fundamental cross-check of the whole construction.  The auxiliary positive
operator bounding the time norms and its Hardy-type components live here
as well.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from scipy import special as _sp

from .envelopes import (
    lower_surface_exponent,
    upper_surface_exponent_exterior,
    upper_surface_exponent_interior,
)
from .errors import ConvergenceError, DomainError
from .profiles import DecayClass, RadialProfile
from .quadrature import (QuadSpec, exp_map, integrate, integrate_endpoint,
                         integrate_transformed, power_map)
from .special_fun import Params, gamma_reciprocal
from .kernel import kernel_at_gap, kernel_legendre

__all__ = [
    "multiplier",
    "hankel",
    "mean_multiplier_side",
    "mean_kernel_side",
    "aux_kernel_value",
    "aux_k_operator",
    "hardy_component",
]

_HALF = 0.5


def multiplier(p: Params, s) -> float:
    """The radial mean multiplier 2^(a+b) Gamma(a+b+1) J_{a+b}(s)/s^(a+b); m(0)=1."""
    nu = p.ab_sum
    sa = np.asarray(s, dtype=float)
    if np.any(sa < 0.0):
        raise DomainError("multiplier requires s >= 0")
    c = 2.0 ** nu * _sp.gamma(nu + 1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.where(sa == 0.0, 1.0, c * _sp.jv(nu, sa) / sa ** nu)
    return float(vals) if np.ndim(s) == 0 else vals


def _truncation(alpha: float, f: RadialProfile, x: float, spec: QuadSpec) -> float:
    if f.decay_class is DecayClass.COMPACT_SUPPORT:
        return f.support_hint[1]
    if f.decay_class is DecayClass.GAUSSIAN:
        return math.sqrt(2.0 * max(-math.log(spec.tol * 1e-3), 10.0))
    if f.rate is None or f.rate <= alpha + 1.5:
        raise ConvergenceError("profile decays too slowly for the Hankel integral")
    return (spec.tol * 1e-2) ** (1.0 / (alpha + _HALF - f.rate))


def hankel(alpha: float, f: RadialProfile, x: float, spec: QuadSpec = QuadSpec()) -> float:
    """Modified Hankel transform int_0^oo f(y) J_a(xy)/(xy)^a y^(2a+1) dy."""
    if alpha <= -1.0:
        raise DomainError("hankel requires alpha > -1")
    if x <= 0.0:
        raise DomainError("hankel requires x > 0")
    y_up = _truncation(alpha, f, x, spec)
    y_lo = 0.0
    if f.decay_class is DecayClass.COMPACT_SUPPORT:
        y_lo = f.support_hint[0]

    def integrand(y):
        w = x * y
        return f(y) * _sp.jv(alpha, w) / w ** alpha * y ** (2.0 * alpha + 1.0)

    total = 0.0
    q = 2.0 * alpha + 2.0
    y1 = min(max(y_lo, 1.0 / x), y_up)
    if y_lo == 0.0 and y1 > 0.0:
        # absorb the y^(2a+1) measure at the origin
        def smooth(u):
            y = u ** (1.0 / q)
            w = x * y
            return f(y) * _sp.jv(alpha, w) / w ** alpha / q
        total += integrate(smooth, 0.0, y1 ** q, spec, rel_scale=1.0)
        y_lo = y1
    if y_up > y_lo:
        step = math.pi / x
        brk = list(np.arange(y_lo + step, y_up, step))[:4000]
        total += integrate(integrand, y_lo, y_up, spec, breakpoints=brk, rel_scale=1.0)
    return total


def mean_multiplier_side(p: Params, f: RadialProfile, t: float, x: float,
                         spec: QuadSpec = QuadSpec()) -> float:
    """The multiplier-side mean: Hankel of (multiplier * Hankel of f).

    Requires a smooth compactly supported profile so the inner transform
    decays rapidly; the outer integral is truncated where it does.
    """
    if f.decay_class is not DecayClass.COMPACT_SUPPORT or not f.smooth:
        raise DomainError("multiplier-side evaluation needs a smooth compact profile")
    a = p.alpha
    # inner transforms get one extra digit and a widened panel budget: high
    # frequencies force one panel per oscillation across the support
    inner_spec = QuadSpec(tol=min(spec.tol * 0.1, 1e-9),
                          max_panels=max(spec.max_panels, 20000),
                          truncation_growth=spec.truncation_growth,
                          surface_exclusion=spec.surface_exclusion)

    def g(u):
        return np.array([hankel(a, f, ui, inner_spec) for ui in np.atleast_1d(u)])

    # find where the transform has decayed: scan dyadically
    u_up = 4.0
    thresh = spec.tol * 1e-2
    while u_up < 4096.0:
        probe = np.abs(g(np.linspace(0.75 * u_up, u_up, 4)))
        if probe.max() < thresh:
            break
        u_up *= spec.truncation_growth
    q = 2.0 * a + 2.0

    def outer(u):
        w = x * u
        return (g(u) * multiplier(p, t * u)
                * _sp.jv(a, w) / w ** a * u ** (2.0 * a + 1.0))

    def outer_origin(v):
        u = v ** (1.0 / q)
        w = x * u
        return g(u) * multiplier(p, t * u) * _sp.jv(a, w) / w ** a / q

    u1 = min(1.0 / max(x, t, 1.0), u_up)
    coarse = QuadSpec(tol=max(spec.tol, 1e-9), max_panels=spec.max_panels,
                      truncation_growth=spec.truncation_growth,
                      surface_exclusion=spec.surface_exclusion)
    total = integrate(outer_origin, 0.0, u1 ** q, coarse, rel_scale=1.0)
    step = math.pi / max(x, t)
    brk = list(np.arange(u1 + step, u_up, step))[:2000]
    total += integrate(outer, u1, u_up, coarse, breakpoints=brk, rel_scale=1.0)
    return total


def _support_window(f: RadialProfile, z_hi_probe: float) -> tuple:
    if f.decay_class is DecayClass.COMPACT_SUPPORT:
        return f.support_hint
    return (0.0, z_hi_probe)


def mean_kernel_side(p: Params, f: RadialProfile, t: float, x: float,
                     spec: QuadSpec = QuadSpec()) -> float:
    """The kernel-side mean: int_0^oo K_t(x, z) f(z) dmu_a(z).

    The z-axis is split at the kernel surfaces |x-t| and x+t (and at x);
    panels adjoining a surface are integrated in the substituted variable
    that removes the known endpoint power of the kernel.
    """
    if t <= 0 or x <= 0:
        raise DomainError("mean_kernel_side requires positive t, x")
    a = p.alpha
    mu_pow = 2.0 * a + 1.0

    def fk(z):
        return kernel_legendre(p, t, x, z) * f(z) * z ** mu_pow

    s_lo, s_hi = _support_window(f, x + t + 10.0 * (1.0 + t))
    total = 0.0
    # exterior piece: z < t - x  (only when the exterior branch is alive)
    z_surf_lo = t - x
    if z_surf_lo > 0.0 and gamma_reciprocal(p.beta) != 0.0:
        zl = max(s_lo, 0.0)
        zr = min(z_surf_lo, s_hi)
        if zr > zl:
            e_up = upper_surface_exponent_exterior(p)
            # flatten measure at z=0 and the kernel power at z = t-x
            zm = min(0.5 * zr, max(zl, 0.25 * zr))
            if zl == 0.0:
                q = mu_pow + 1.0

                def near0(u):
                    z = u ** (1.0 / q)
                    return kernel_legendre(p, t, x, z) * f(z) / q
                total += integrate(near0, 0.0, zm ** q, spec, rel_scale=1.0)
            else:
                total += integrate(fk, zl, zm, spec, rel_scale=1.0)
            def near_surf(w):
                kv, zz = kernel_at_gap(p, t, x, "exterior_upper", w)
                return kv * f(zz) * zz ** mu_pow
            total += integrate_endpoint(near_surf, zr - zm, e_up, spec, rel_scale=1.0)
    # interior piece: |x-t| < z < x+t
    zl = max(abs(x - t), s_lo)
    zr = min(x + t, s_hi)
    if zr > zl:
        lo_is_upper_surface = (t > x) and abs(x - t) >= s_lo
        # exponents of the kernel at the two z-endpoints
        e_lo = (upper_surface_exponent_interior(p) if lo_is_upper_surface
                else lower_surface_exponent(p))
        e_hi = lower_surface_exponent(p)
        mid = min(max(x, zl + 0.25 * (zr - zl)), zr - 0.25 * (zr - zl))
        if abs(x - t) >= s_lo:  # surface endpoint inside the support window
            def from_lo(w):
                kv, zz = kernel_at_gap(p, t, x, "interior_lower", w)
                return kv * f(zz) * zz ** mu_pow
            total += integrate_endpoint(from_lo, mid - zl, e_lo, spec, rel_scale=1.0)
        else:
            total += integrate(fk, zl, mid, spec, rel_scale=1.0)
        if x + t <= s_hi:
            def to_hi(w):
                kv, zz = kernel_at_gap(p, t, x, "interior_upper", w)
                return kv * f(zz) * zz ** mu_pow
            total += integrate_endpoint(to_hi, zr - mid, e_hi, spec, rel_scale=1.0)
        else:
            total += integrate(fk, mid, zr, spec, rel_scale=1.0)
    return total


# ---------------------------------------------------------------------------
# auxiliary positive operator and its Hardy components
# ---------------------------------------------------------------------------

def aux_kernel_value(p: Params, r: float, rho: float, x, z):
    """The positive comparison kernel built from the time-norm envelope."""
    a, b = p.alpha, p.beta
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    e1 = (rho + 1.0) / r
    if e1 < 1.0:
        f1 = np.abs(x - z) ** (e1 - 1.0)
    elif e1 == 1.0:
        f1 = 1.0 + np.log((x + z) / np.abs(x - z)) ** (1.0 / r)
    else:
        f1 = (x + z) ** (e1 - 1.0)
    e2 = b + 1.0 / r
    if e2 > 1.0:
        f2 = 1.0
    elif e2 == 1.0:
        f2 = 1.0 + (np.log(np.maximum(x / z, z / x)) ** (1.0 / r) if b != 0.0 else 0.0)
    else:
        f2 = np.minimum(x / z, z / x) ** (e2 - 1.0)
    return (x + z) ** (-2.0 * a - 1.0) * f1 * f2


def aux_k_operator(p: Params, r: float, rho: float, f: RadialProfile, x: float,
                   spec: QuadSpec = QuadSpec()) -> float:
    """Integral of the comparison kernel against f dmu_a, split at x/2, x, 2x."""
    if rho <= -1.0:
        raise DomainError("comparison operator undefined for rho <= -1")
    a = p.alpha
    mu_pow = 2.0 * a + 1.0
    e1 = (rho + 1.0) / r

    def g(z):
        return aux_kernel_value(p, r, rho, x, z) * f(z) * z ** mu_pow

    total = 0.0
    # z near 0: measure power; f may carry its own power (power-bounded probes)
    zc = x / 2.0
    probe = float(f(np.array([zc * 0.5]))[0])
    p0 = math.log(abs(float(f(np.array([zc * 0.25]))[0]) / probe) + 1e-300) / math.log(0.5) \
        if probe != 0.0 else 0.0
    q0 = mu_pow + p0  # local power of the full integrand at 0

    def near0(u):
        z = u ** (1.0 / (q0 + 1.0))
        return aux_kernel_value(p, r, rho, x, z) * f(z) * z ** (mu_pow - q0) / (q0 + 1.0)
    if q0 <= -1.0:
        raise DomainError("probe power makes the operator integral diverge at 0")
    total += integrate(near0, 0.0, zc ** (q0 + 1.0), spec, rel_scale=1.0)
    # diagonal window (x/2, 2x) with the |x-z| power flattened on both sides
    e_diag = e1 - 1.0
    floor = x * 1e-14
    for (lo, hi, side) in [(zc, x, "upper"), (x, 2.0 * x, "lower")]:
        def near_diag(w, lo=lo, hi=hi, side=side):
            z = (hi - np.maximum(w, floor)) if side == "upper" else (lo + np.maximum(w, floor))
            return g(z)
        total += integrate_endpoint(near_diag, hi - lo, e_diag, spec, rel_scale=1.0)
    # far tail: decays like z^(mu_pow - 2a - 1 + min(b + 1/r - 1, 0) + (e1-1 if e1>1) + p_inf)
    z0 = 2.0 * x
    probe_far = float(f(np.array([8.0 * x]))[0])
    p_inf = math.log(abs(float(f(np.array([16.0 * x]))[0]) / probe_far) + 1e-300) / math.log(2.0) \
        if probe_far != 0.0 else -100.0
    decay = (min(p.beta + 1.0 / r - 1.0, 0.0) + (e1 - 1.0)
             + p_inf + mu_pow - 2.0 * a - 1.0)
    if decay >= -1.0:
        raise DomainError("probe power makes the operator integral diverge at infinity")

    def tail(w):
        z = z0 / w
        return g(z) * z0 / (w * w)
    total += integrate_endpoint(tail, 1.0, -decay - 2.0, spec, rel_scale=1.0)
    return total


def hardy_component(selector: str, p: Params, r: float, rho: float, f: RadialProfile,
                    x: float, spec: QuadSpec = QuadSpec(), eta: Optional[float] = None) -> float:
    """One of the positive building blocks of the comparison operator.

    selector: 'H0' (weighted Hardy, exponent eta), 'HInf' (dual), 'H0Log',
    'HInfLog', 'T' (diagonal |x-z| power), 'S' (diagonal log).
    """
    a = p.alpha
    e1 = (rho + 1.0) / r
    if selector in ("H0", "HInf") and eta is None:
        eta = p.beta + 1.0 / r - 1.0
    floor = x * 1e-14
    if selector == "H0":
        def g(z):
            return z ** (2.0 * a + 1.0 + eta) * f(z)
        pw = 2.0 * a + 1.0 + eta
        if pw <= -1.0:
            raise DomainError("H0 integral diverges at 0 for this exponent")

        def near0(u):
            z = u ** (1.0 / (pw + 1.0))
            return f(z) / (pw + 1.0)
        val = integrate(near0, 0.0, x ** (pw + 1.0), spec, rel_scale=1.0)
        return x ** (-2.0 * a - 2.0 + e1 - eta) * val
    if selector == "HInf":
        def tail(w):
            z = x / w
            return z ** (e1 - 1.0 - eta) * f(z) * x / (w * w)
        return x ** eta * integrate(tail, 1e-8, 1.0, spec, rel_scale=1.0)
    if selector == "H0Log":
        def near0(u):
            z = u ** (1.0 / (2.0 * a + 2.0))
            return np.log(2.0 * x / z) ** (1.0 / r) * f(z) / (2.0 * a + 2.0)
        val = integrate(near0, 0.0, x ** (2.0 * a + 2.0), spec, rel_scale=1.0)
        return x ** (-2.0 * a - 2.0 + e1) * val
    if selector == "HInfLog":
        def tail(w):
            z = x / w
            return np.log(2.0 * z / x) ** (1.0 / r) * z ** (e1 - 1.0) * f(z) * x / (w * w)
        return integrate(tail, 1e-8, 1.0, spec, rel_scale=1.0)
    if selector == "T":
        # |x-z|^(e1-1) flattened exactly: u = |x-z|^e1 on each side of x
        e_diag = e1 - 1.0
        if e_diag <= -1.0:
            raise DomainError("T integral diverges for (rho+1)/r <= 0")
        total = 0.0
        for sgn, width in ((-1.0, x / 2.0), (1.0, x)):
            def side(u, sgn=sgn):
                z = x + sgn * u ** (1.0 / e1)
                return f(z) / e1
            total += integrate(side, 0.0, width ** e1, spec, rel_scale=1.0)
        return total
    if selector == "S":
        total = 0.0
        for (lo, hi, side) in [(x / 2.0, x, "upper"), (x, 2.0 * x, "lower")]:
            def near_diag(w, lo=lo, hi=hi, side=side):
                z = (hi - np.maximum(w, floor)) if side == "upper" else (lo + np.maximum(w, floor))
                return np.log((x + z) / np.abs(x - z)) ** (1.0 / r) * f(z)
            total += integrate_transformed(near_diag, exp_map(0.0, hi - lo, "lower"),
                                           spec, rel_scale=1.0)
        return total
    raise DomainError(f"unknown hardy component selector: {selector}")
