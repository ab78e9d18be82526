"""Sharp comparability envelopes for the kernel and its time norms.

The two elementary integrals I and J, the pointwise kernel envelope (with
its exceptional-line variants and the iff sharpness conditions), and the
L^r(t^rho dt) norm envelope with its finiteness conditions.  Each envelope
comes with a quadrature oracle so ratio audits can bound the implied
constants empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, SingularSurfaceError
from .kernel import Regime, classify_regime, kernel_at_time_gap, kernel_legendre
from .quadrature import (QuadSpec, exp_map, integrate, integrate_endpoint,
                         integrate_transformed, power_map, tail_map)
from .special_fun import Params, in_exceptional_p, in_exceptional_q

__all__ = [
    "EnvelopeValue",
    "int_I_envelope", "int_I_oracle",
    "int_J_envelope", "int_J_oracle",
    "lemma_a",
    "pointwise_envelope",
    "one_signed_factor",
    "time_norm_envelope",
    "time_norm_numeric",
    "time_norm_truncated",
    "norm_finite_conditions",
    "lower_surface_exponent",
    "upper_surface_exponent_interior",
    "upper_surface_exponent_exterior",
]

_HALF = 0.5
# default half-width (times sqrt(xz)) of the near-surface sharpness tubes
SHARPNESS_TUBE_EPS = 0.1


@dataclass(frozen=True)
class EnvelopeValue:
    """A non-negative envelope value with its sharpness statement.

    ``sharp`` records whether two-sided comparability is asserted at this
    point; ``sign_suppressible`` whether the kernel is one-signed there so
    the absolute value can be dropped (after the documented sign factor).
    """

    value: float
    sharp: bool
    sign_suppressible: bool


# ---------------------------------------------------------------------------
# elementary integrals
# ---------------------------------------------------------------------------

def int_I_envelope(alpha: float, gamma: float, B: float) -> float:
    """Envelope of int_{-1}^{1} (1-Bs)^gamma (1-s^2)^(alpha-1/2) ds, 0<=B<=1."""
    if not alpha > -0.5:
        raise DomainError("int_I requires alpha > -1/2")
    if not 0.0 <= B <= 1.0:
        raise DomainError("int_I requires 0 <= B <= 1")
    e = alpha + gamma + _HALF
    if e < 0.0:
        return (1.0 - B) ** e if B < 1.0 else math.inf
    if e == 0.0:
        return 1.0 + math.log(1.0 / (1.0 - B)) if B < 1.0 else math.inf
    return 1.0


def int_I_oracle(alpha: float, gamma: float, B: float, spec: QuadSpec = QuadSpec()) -> float:
    """Numerical value of the I integral; diverges (inf) when it must.

    The endpoint factors (1 -+ s)^(alpha-1/2) are absorbed analytically by
    the substitutions u = (1 -+ s)^(alpha+1/2), so no singular factor is
    ever evaluated in floats.
    """
    if not alpha > -0.5:
        raise DomainError("int_I requires alpha > -1/2")
    if not 0.0 <= B <= 1.0:
        raise DomainError("int_I requires 0 <= B <= 1")
    if B == 1.0 and alpha + gamma + _HALF <= 0.0:
        return math.inf
    p = alpha - _HALF
    q = alpha + _HALF

    def left(u):
        s = u ** (1.0 / q) - 1.0
        return (1.0 - B * s) ** gamma * (1.0 - s) ** p / q
    total = integrate(left, 0.0, 1.0, spec, rel_scale=1.0)
    if B == 1.0:
        qq = p + gamma + 1.0

        def right1(u):
            s = 1.0 - u ** (1.0 / qq)
            return (1.0 + s) ** p / qq
        total += integrate(right1, 0.0, 1.0, spec, rel_scale=1.0)
    else:
        def right(u):
            s = 1.0 - u ** (1.0 / q)
            return (1.0 - B * s) ** gamma * (1.0 + s) ** p / q
        brk = [(1.0 - B) ** q * 2.0 ** (q * k) for k in range(1, 60)]
        total += integrate(right, 0.0, 1.0, spec,
                           breakpoints=[v for v in brk if 0.0 < v < 1.0], rel_scale=1.0)
    return total


def int_J_envelope(alpha: float, beta: float, gamma: float, D: float) -> float:
    """Envelope of int_0^1 (D-s)^(alpha-1/2) (1-s)^(beta-1) s^gamma ds, D >= 1."""
    if not beta > 0.0:
        raise DomainError("int_J requires beta > 0")
    if not gamma > -1.0:
        raise DomainError("int_J requires gamma > -1")
    if not D >= 1.0:
        raise DomainError("int_J requires D >= 1")
    if D >= 2.0:
        return D ** (alpha - _HALF)
    e = alpha + beta - _HALF
    if e < 0.0:
        return (D - 1.0) ** e if D > 1.0 else math.inf
    if e == 0.0:
        return 1.0 + math.log(1.0 / (D - 1.0)) if D > 1.0 else math.inf
    return 1.0


def int_J_oracle(alpha: float, beta: float, gamma: float, D: float,
                 spec: QuadSpec = QuadSpec()) -> float:
    """Numerical J integral with all endpoint factors substituted away."""
    if not (beta > 0.0 and gamma > -1.0 and D >= 1.0):
        raise DomainError("int_J oracle domain violation")
    if D == 1.0 and alpha + beta - _HALF <= 0.0:
        return math.inf
    pa = alpha - _HALF
    qg = gamma + 1.0

    def left(u):
        s = u ** (1.0 / qg)
        return (D - s) ** pa * (1.0 - s) ** (beta - 1.0) / qg
    total = integrate(left, 0.0, 0.5 ** qg, spec, rel_scale=1.0)
    if D == 1.0:
        qq = pa + beta

        def right1(u):
            s = 1.0 - u ** (1.0 / qq)
            return s ** gamma / qq
        total += integrate(right1, 0.0, 0.5 ** qq, spec, rel_scale=1.0)
    else:
        def right(u):
            s = 1.0 - u ** (1.0 / beta)
            return (D - s) ** pa * s ** gamma / beta
        brk = [(D - 1.0) ** beta * 2.0 ** (beta * k) for k in range(1, 60)]
        total += integrate(right, 0.0, 0.5 ** beta, spec,
                           breakpoints=[v for v in brk if 0.0 < v < 0.5 ** beta],
                           rel_scale=1.0)
    return total


def lemma_a(gamma: float, delta: float, A: float, C: float) -> float:
    """Envelope of int_0^A w^gamma (1-w)^delta dw with the threshold C."""
    if not (0.0 < A < 1.0 and 0.0 < C < 1.0):
        raise DomainError("lemma_a requires A, C in (0, 1)")
    if gamma <= -1.0:
        raise DivergenceError("integral diverges for gamma <= -1")
    if A <= C:
        return A ** (gamma + 1.0)
    if delta > -1.0:
        return 1.0
    if delta == -1.0:
        return math.log(1.0 / (1.0 - A))
    return (1.0 - A) ** (delta + 1.0)


# ---------------------------------------------------------------------------
# pointwise kernel envelope
# ---------------------------------------------------------------------------

def _p_zero_free(a: float, b: float) -> bool:
    return not ((a > 0.5 and b < 0.0) or (a < -0.5 and b < -2.0 * a))


def _q_zero_free(a: float, b: float) -> bool:
    return not (a < -0.5 and 1.0 < b < -2.0 * a)


def _near_surface(t: float, x: float, z: float, eps: float) -> bool:
    tube = eps * math.sqrt(x * z)
    return (abs(t - abs(x - z)) < tube or abs(t - (x + z)) < tube
            or t > math.sqrt(x * z) / eps)


def one_signed_factor(p: Params, regime: Regime):
    """The sign by which a one-signed kernel must be multiplied to be positive.

    Returns None when the envelope theorem does not assert one-signedness
    for these parameters in the given regime.
    """
    a, b = p.alpha, p.beta
    if regime is Regime.INTERIOR:
        return 1 if _p_zero_free(a, b) else None
    if regime is Regime.EXTERIOR:
        if p.beta_exact_integer is not None and p.beta_exact_integer <= 0:
            return 1  # kernel vanishes identically there
        if not _q_zero_free(a, b):
            return None
        return (-1) ** math.floor(min(b, 0.0))
    return 1


def pointwise_envelope(p: Params, t: float, x: float, z: float,
                       tube_eps: float = SHARPNESS_TUBE_EPS) -> EnvelopeValue:
    """The piecewise pointwise bound on |K_t(x, z)| with its sharpness flag."""
    if not (t > 0 and x > 0 and z > 0):
        raise DomainError("pointwise_envelope requires positive t, x, z")
    reg = classify_regime(t, x, z)
    if reg in (Regime.BOUNDARY_LOWER, Regime.BOUNDARY_UPPER):
        raise SingularSurfaceError("envelope refused on a singular surface")
    if reg is Regime.VANISHING:
        return EnvelopeValue(0.0, True, True)
    a, b = p.alpha, p.beta
    s = p.ab_sum
    q1 = t * t - (x - z) * (x - z)
    q2 = abs((x + z) * (x + z) - t * t)
    xz = x * z
    on_expl_interior = (p.beta_exact_integer is not None and p.beta_exact_integer <= 0) \
        or p.two_alpha_plus_beta_zero
    if reg is Regime.INTERIOR:
        base = xz ** (-a - _HALF) * t ** (-2.0 * s) * q1 ** (s - _HALF)
        if on_expl_interior:
            tail = (q2 / xz) ** (s - _HALF)
        elif p.alpha_exact_half_integer is not None:
            tail = 1.0
        else:
            if s < _HALF:
                tail = (q2 / xz) ** (s - _HALF)
            elif s == _HALF:
                tail = 1.0 + math.log(4.0 * xz / q2)
            else:
                tail = 1.0
        sharp = _p_zero_free(a, b) or _near_surface(t, x, z, tube_eps)
        return EnvelopeValue(base * tail, sharp, _p_zero_free(a, b))

    # Exterior
    if p.beta_exact_integer is not None and p.beta_exact_integer <= 0:
        return EnvelopeValue(0.0, True, True)
    base = t ** (-2.0 * s) * q1 ** (b - 1.0)
    if p.two_alpha_plus_beta_zero and b != 0.0:
        tail = (q2 / q1) ** (s - _HALF)
        return EnvelopeValue(base * tail, True, True)
    if p.beta_exact_integer == 1:
        return EnvelopeValue(base, True, True)
    if s < _HALF:
        tail = (q2 / q1) ** (s - _HALF)
    elif s == _HALF:
        tail = 1.0 + math.log(q1 / q2)
    else:
        tail = 1.0
    sharp = _q_zero_free(a, b) or _near_surface(t, x, z, tube_eps)
    return EnvelopeValue(base * tail, sharp, _q_zero_free(a, b))


# ---------------------------------------------------------------------------
# time-norm envelope and numerics
# ---------------------------------------------------------------------------

def norm_finite_conditions(p: Params, r: float, rho: float) -> bool:
    """Finiteness of ||K_t(x,z)||_{L^r(t^rho dt)}: the two strict conditions."""
    if not 1.0 <= r:
        raise DomainError("r must lie in [1, oo)")
    if not p.ab_sum > _HALF - 1.0 / r:
        return False
    beta_nonpos_int = p.beta_exact_integer is not None and p.beta_exact_integer <= 0
    if not beta_nonpos_int and not (rho + 1.0) / r < 2.0 * p.alpha + 2.0:
        return False
    return True


def time_norm_envelope(p: Params, r: float, rho: float, x: float, z: float) -> EnvelopeValue:
    """Envelope of the L^r(t^rho dt) norm of K_t(x, z); +inf when it diverges."""
    if not (x > 0 and z > 0):
        raise DomainError("time_norm_envelope requires positive x, z")
    if not norm_finite_conditions(p, r, rho):
        return EnvelopeValue(math.inf, True, True)
    a, b = p.alpha, p.beta
    e1 = (rho + 1.0) / r
    if e1 < 1.0:
        if x == z:
            return EnvelopeValue(math.inf, False, True)
        f1 = abs(x - z) ** (e1 - 1.0)
    elif e1 == 1.0:
        if x == z:
            return EnvelopeValue(math.inf, False, True)
        f1 = 1.0 + math.log((x + z) / abs(x - z)) ** (1.0 / r)
    else:
        f1 = (x + z) ** (e1 - 1.0)
    e2 = b + 1.0 / r
    ratio = max(x / z, z / x)
    if e2 > 1.0:
        f2 = 1.0
    elif e2 == 1.0:
        f2 = 1.0 + (math.log(ratio) ** (1.0 / r) if b != 0.0 else 0.0)
    else:
        f2 = min(x / z, z / x) ** (e2 - 1.0)
    value = (x + z) ** (-2.0 * a - 1.0) * f1 * f2
    zero_regions = (a < -0.5 and b < -2.0 * a) or (a > 0.5 and b < 0.0)
    q_matter = (1.0 < b < -2.0 * a) or (p.beta_exact_integer is not None
                                        and p.beta_exact_integer <= 0)
    sharp = (not zero_regions) \
        or (not q_matter and ratio >= 2.0) \
        or (not q_matter and e1 > 1.0)
    return EnvelopeValue(value, sharp, not zero_regions)


def _abs_kernel_pow(p: Params, r: float, rho: float, x: float, z: float):
    def f(t):
        return np.abs(kernel_legendre(p, t, x, z)) ** r * t ** rho
    return f


def upper_surface_exponent_interior(p: Params, r: float = 1.0) -> float:
    """Power of (x+z)^2 - t^2 carried by |K|^r as t -> (x+z)^- ."""
    s = p.ab_sum
    if (p.beta_exact_integer is not None and p.beta_exact_integer <= 0) \
            or p.two_alpha_plus_beta_zero:
        return (s - _HALF) * r
    if p.alpha_exact_half_integer is not None:
        return 0.0
    return (s - _HALF) * r if s < _HALF else 0.0


def upper_surface_exponent_exterior(p: Params, r: float = 1.0) -> float:
    """Power of t^2 - (x+z)^2 carried by |K|^r as t -> (x+z)^+ ."""
    s = p.ab_sum
    if p.two_alpha_plus_beta_zero and p.beta != 0.0:
        return (s - _HALF) * r
    if p.beta_exact_integer == 1:
        return 0.0
    return (s - _HALF) * r if s < _HALF else 0.0


def lower_surface_exponent(p: Params, r: float = 1.0) -> float:
    """Power of t^2 - (x-z)^2 carried by |K|^r as t -> |x-z|^+ (universal)."""
    return (p.ab_sum - _HALF) * r


def time_norm_numeric(p: Params, r: float, rho: float, x: float, z: float,
                      spec: QuadSpec = QuadSpec()) -> float:
    """(int_0^oo |K_t(x,z)|^r t^rho dt)^{1/r} by regime-split quadrature.

    Splits at |x-z|, sqrt(x^2+z^2), x+z and sqrt(2)(x+z); each endpoint
    singularity is removed by the substitution matching its known power
    (exponential maps serve the logarithmic cases).
    """
    if not norm_finite_conditions(p, r, rho):
        raise DomainError("time norm diverges for these parameters; "
                          "use time_norm_truncated to observe the growth")
    if x == z and (rho + 1.0) / r <= 1.0:
        raise DomainError("time norm diverges on the diagonal x = z")
    s = p.ab_sum
    lo = abs(x - z)
    mid_sq = x * x + z * z
    hi = x + z
    total = 0.0

    def from_below(w):
        kv, tt = kernel_at_time_gap(p, x, z, "lower", w)
        return np.abs(kv) ** r * tt ** rho / (2.0 * tt)

    def to_surface(w):
        kv, tt = kernel_at_time_gap(p, x, z, "upper_interior", w)
        return np.abs(kv) ** r * tt ** rho / (2.0 * tt)

    def from_surface(w):
        kv, tt = kernel_at_time_gap(p, x, z, "upper_exterior", w)
        return np.abs(kv) ** r * tt ** rho / (2.0 * tt)
    f = _abs_kernel_pow(p, r, rho, x, z)

    # [|x-z|, sqrt(x^2+z^2)] in w = t^2 - (x-z)^2
    p_lo = lower_surface_exponent(p, r)
    total += integrate_endpoint(from_below, mid_sq - lo * lo, p_lo, spec, rel_scale=1.0)
    # [sqrt(x^2+z^2), x+z] in w = (x+z)^2 - t^2
    p_up = upper_surface_exponent_interior(p, r)
    total += integrate_endpoint(to_surface, hi * hi - mid_sq, p_up, spec, rel_scale=1.0)
    beta_nonpos = p.beta_exact_integer is not None and p.beta_exact_integer <= 0
    if not beta_nonpos:
        # [x+z, sqrt(2)(x+z)] in w = t^2 - (x+z)^2
        p_up = upper_surface_exponent_exterior(p, r)
        total += integrate_endpoint(from_surface, hi * hi, p_up, spec, rel_scale=1.0)
        # tail beyond sqrt(2)(x+z): |K|^r t^rho ~ t^{-(2a+2)r + rho}
        t0 = math.sqrt(2.0) * hi
        p_tail = (2.0 * p.alpha + 2.0) * r - rho - 2.0

        def tail(w):
            return f(t0 / w) * t0 / (w * w)
        total += integrate_endpoint(tail, 1.0, p_tail, spec, rel_scale=1.0)
    return total ** (1.0 / r)


def time_norm_truncated(p: Params, r: float, rho: float, x: float, z: float,
                        t_max: float, spec: QuadSpec = QuadSpec()) -> float:
    """Truncated r-norm over a surface-avoiding window, for divergence audits.

    The window is [|x-z| + d, t_max] with the upper surface excised by the
    same margin d = (x+z)/t_max, so growing t_max simultaneously tightens
    the surface approach and extends the tail.  When the finiteness
    conditions fail this grows without stabilizing.
    """
    if t_max <= 2.0 * (x + z):
        raise DomainError("t_max too small for the truncation window")
    f = _abs_kernel_pow(p, r, rho, x, z)
    lo = abs(x - z)
    hi = x + z
    d = hi / t_max
    total = 0.0

    def from_below(w):
        tt = np.sqrt(w + lo * lo)
        return f(tt) / (2.0 * tt)
    w_lo = (lo + d) ** 2 - lo * lo if lo > 0 else d * d
    w_hi = (hi - d) ** 2 - lo * lo
    if w_lo < w_hi:
        brk = [w_lo * 2.0 ** k for k in range(1, 60)]
        total += integrate(from_below, w_lo, w_hi, spec,
                           breakpoints=[v for v in brk if w_lo < v < w_hi], rel_scale=1.0)
    brk = [hi + (hi / 4.0) * 2.0 ** (-k) for k in range(0, 40)]
    total += integrate(f, hi + d, t_max, spec,
                       breakpoints=[v for v in brk if hi + d < v < t_max], rel_scale=1.0)
    return total ** (1.0 / r)
