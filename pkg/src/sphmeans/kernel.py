"""The integral kernel of the generalized radial mean operator.

Three evaluation routes for K_t(x, z):

* ``kernel_legendre``  — the Legendre-function representation (primary),
* ``kernel_closed_form`` — direct elementary/Jacobi closed forms on the
  explicit parameter lines (beta in -N0, 2*alpha+beta = 0, alpha half of
  an odd integer),
* ``kernel_oracle_quadrature`` — numerical integration of the defining
  triple-Bessel integral, independent of the Legendre machinery.

Values exactly on t = |x-z| and t = x+z are refused: the kernel takes
anomalous values there and they are irrelevant for the operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import optimize as _opt
from scipy import special as _sp

from .errors import DomainError, SingularSurfaceError
from .quadrature import QuadSpec, bessel_product_integral
from .special_fun import (
    LegendreKind,
    Params,
    _ferrers_gaps,
    _olver_q_gaps,
    ferrers_p,
    gamma_reciprocal,
    in_exceptional_p,
    in_exceptional_q,
    jacobi_poly,
    olver_q,
)

__all__ = [
    "Regime",
    "KernelPoint",
    "ExceptionalMembership",
    "ZeroCensus",
    "classify_regime",
    "kernel_legendre",
    "kernel_closed_form",
    "kernel_oracle_quadrature",
    "exceptional_membership",
    "count_legendre_zeros",
]

_HALF = 0.5


class Regime(Enum):
    VANISHING = "Vanishing"          # t < |x - z|
    INTERIOR = "Interior"            # |x - z| < t < x + z
    EXTERIOR = "Exterior"            # t > x + z
    BOUNDARY_LOWER = "BoundaryLower"  # t = |x - z| exactly
    BOUNDARY_UPPER = "BoundaryUpper"  # t = x + z exactly


def classify_regime(t: float, x: float, z: float) -> Regime:
    """Position of (t, x, z) relative to the surfaces t = |x-z|, t = x+z."""
    if not (t > 0 and x > 0 and z > 0):
        raise DomainError("classify_regime requires positive t, x, z")
    lower = abs(x - z)
    upper = x + z
    if t == lower:
        return Regime.BOUNDARY_LOWER
    if t == upper:
        return Regime.BOUNDARY_UPPER
    if t < lower:
        return Regime.VANISHING
    if t < upper:
        return Regime.INTERIOR
    return Regime.EXTERIOR


@dataclass(frozen=True)
class KernelPoint:
    """A classified evaluation point with its Legendre argument."""

    t: float
    x: float
    z: float
    regime: Regime
    cos_v: Optional[float] = None   # Interior: (x^2+z^2-t^2)/(2xz)
    cosh_u: Optional[float] = None  # Exterior: (t^2-x^2-z^2)/(2xz)

    @classmethod
    def classify(cls, t: float, x: float, z: float) -> "KernelPoint":
        reg = classify_regime(t, x, z)
        cos_v = cosh_u = None
        if reg is Regime.INTERIOR:
            cos_v = (x * x + z * z - t * t) / (2.0 * x * z)
        elif reg is Regime.EXTERIOR:
            cosh_u = (t * t - x * x - z * z) / (2.0 * x * z)
        return cls(t, x, z, reg, cos_v, cosh_u)


def _prefactor(p: Params) -> float:
    # 2^(a+b) Gamma(a+b+1) / sqrt(2 pi)
    s = p.ab_sum
    return 2.0 ** s * _sp.gamma(s + 1.0) / math.sqrt(2.0 * math.pi)


def _check_no_boundary(t, x, z):
    lower = np.abs(x - z)
    upper = x + z
    if np.any(t == lower) or np.any(t == upper):
        raise SingularSurfaceError(
            "kernel evaluation on t = |x-z| or t = x+z is refused")


def _kernel_from_quadratics(p: Params, t, x, z, q1, q2, interior_mask):
    """Kernel values from caller-supplied exact quadratics (all 1-D arrays).

    q1 = t^2 - (x-z)^2 and q2 = |(x+z)^2 - t^2|, both strictly positive;
    ``interior_mask`` marks |x-z| < t < x+z points, the rest are exterior.
    Working in the quadratics keeps full relative accuracy arbitrarily
    close to the singular surfaces.
    """
    s = p.ab_sum
    xz2 = 2.0 * x * z
    common = _prefactor(p) * (x * z) ** (p.beta - 1.0) * t ** (-2.0 * s)
    out = np.zeros_like(t)
    if np.any(interior_mask):
        om = q1[interior_mask] / xz2[interior_mask]   # 1 - cos v
        op = q2[interior_mask] / xz2[interior_mask]   # 1 + cos v
        sin_pow = (om * op) ** ((s - _HALF) / 2.0)
        out[interior_mask] = (common[interior_mask] * sin_pow
                              * _ferrers_gaps(p, om, op))
    exterior_mask = ~interior_mask
    if np.any(exterior_mask):
        gr_b = gamma_reciprocal(p.beta)
        if gr_b != 0.0:
            om = q2[exterior_mask] / xz2[exterior_mask]   # cosh u - 1
            op = q1[exterior_mask] / xz2[exterior_mask]   # cosh u + 1
            sinh_pow = (om * op) ** ((s - _HALF) / 2.0)
            out[exterior_mask] = (common[exterior_mask] * 2.0 * gr_b
                                  * sinh_pow * _olver_q_gaps(p, om, op))
    return out


def kernel_legendre(p: Params, t, x, z):
    """K_t(x, z) via the Legendre representation; scalars or arrays."""
    t_a, x_a, z_a = np.broadcast_arrays(
        np.asarray(t, dtype=float), np.asarray(x, dtype=float), np.asarray(z, dtype=float))
    if np.any(t_a <= 0) or np.any(x_a <= 0) or np.any(z_a <= 0):
        raise DomainError("kernel_legendre requires positive t, x, z")
    _check_no_boundary(t_a, x_a, z_a)
    scalar = np.ndim(t) == 0 and np.ndim(x) == 0 and np.ndim(z) == 0
    t1 = np.atleast_1d(t_a).ravel()
    x1 = np.atleast_1d(x_a).ravel()
    z1 = np.atleast_1d(z_a).ravel()
    out = np.zeros_like(t1)
    interior = (t1 > np.abs(x1 - z1)) & (t1 < x1 + z1)
    exterior = t1 > x1 + z1
    alive = interior | exterior
    if np.any(alive):
        ta, xa, za = t1[alive], x1[alive], z1[alive]
        d = np.abs(xa - za)
        sm = xa + za
        q1 = (ta - d) * (ta + d)
        q2 = np.abs(sm - ta) * (sm + ta)
        out[alive] = _kernel_from_quadratics(p, ta, xa, za, q1, q2, interior[alive])
    if scalar:
        return float(out[0])
    return out.reshape(t_a.shape)


def kernel_at_gap(p: Params, t: float, x: float, surface: str, w):
    """K_t(x, z) with z placed an exact distance w from a kernel surface.

    surface 'interior_lower': z = |x-t| + w (inside the interior window);
    'interior_upper': z = (x+t) - w; 'exterior_upper': z = (t-x) - w
    (requires t > x).  Quadrature near the surfaces must use this entry:
    the vanishing quadratic is formed from w exactly, so no cancellation
    occurs no matter how small w is.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if np.any(w <= 0.0):
        raise DomainError("kernel_at_gap requires w > 0")
    tv = np.full_like(w, t)
    xv = np.full_like(w, x)
    if surface == "interior_upper":
        # window top z = x + t sits on the vanishing surface t = |x - z|
        z = (x + t) - w
        q1 = (t - np.abs(w - t)) * (t + np.abs(w - t))   # = w (2t - w) exactly
        q2 = (2.0 * x - w) * (x + z + tv)
        interior = np.ones_like(w, dtype=bool)
    elif surface == "interior_lower":
        z = abs(x - t) + w
        if t > x:
            # the nearby surface is t = x + z
            q2 = w * (2.0 * t + w)
            d = np.abs(x - z)
            q1 = (tv - d) * (tv + d)
        else:
            # the nearby surface is t = |x - z|
            q1 = w * (2.0 * t - w)
            sm = x + z
            q2 = (sm - tv) * (sm + tv)
        interior = np.ones_like(w, dtype=bool)
    elif surface == "exterior_upper":
        if t <= x:
            raise DomainError("exterior_upper needs t > x")
        z = (t - x) - w
        if np.any(z <= 0.0):
            raise DomainError("gap exceeds the exterior window")
        q2 = w * (tv + x + z)
        d = np.abs(x - z)
        q1 = (tv - d) * (tv + d)
        interior = np.zeros_like(w, dtype=bool)
    else:
        raise DomainError(f"unknown surface tag {surface!r}")
    return _kernel_from_quadratics(p, tv, xv, z, q1, q2, interior), z


def kernel_at_time_gap(p: Params, x: float, z: float, surface: str, w):
    """K_t(x, z) with t^2 placed an exact distance w from a surface.

    surface 'lower': t^2 = (x-z)^2 + w; 'upper_interior': t^2 = (x+z)^2 - w;
    'upper_exterior': t^2 = (x+z)^2 + w.  Returns (values, t).
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if np.any(w <= 0.0):
        raise DomainError("kernel_at_time_gap requires w > 0")
    lo = abs(x - z)
    hi = x + z
    span = (hi - lo) * (hi + lo)  # hi^2 - lo^2 = 4 x z
    if surface == "lower":
        t = np.sqrt(lo * lo + w)
        q1 = w
        q2 = span - w
        interior = np.ones_like(w, dtype=bool)
    elif surface == "upper_interior":
        t = np.sqrt(hi * hi - w)
        q2 = w
        q1 = span - w
        interior = np.ones_like(w, dtype=bool)
    elif surface == "upper_exterior":
        t = np.sqrt(hi * hi + w)
        q2 = w
        q1 = span + w
        interior = np.zeros_like(w, dtype=bool)
    else:
        raise DomainError(f"unknown surface tag {surface!r}")
    if np.any(q1 <= 0.0) or np.any(q2 <= 0.0):
        raise DomainError("gap exceeds the regime window")
    xv = np.full_like(w, x)
    zv = np.full_like(w, z)
    return _kernel_from_quadratics(p, t, xv, zv, q1, q2, interior), t


# ---------------------------------------------------------------------------
# closed forms on the explicit parameter lines
# ---------------------------------------------------------------------------

def _on_explicit_line(p: Params) -> Optional[str]:
    if p.beta_exact_integer is not None and p.beta_exact_integer <= 0:
        return "beta_nonpositive_integer"
    if p.two_alpha_plus_beta_zero:
        return "two_alpha_plus_beta_zero"
    if p.alpha_exact_half_integer is not None:
        return "alpha_half_integer"
    return None


def kernel_closed_form(p: Params, t, x, z) -> Optional[float]:
    """Elementary/Jacobi closed form of K_t(x, z), or None off the explicit lines.

    Assembled directly from the quadratics q1 = t^2-(x-z)^2 and
    q2 = |(x+z)^2 - t^2| rather than through the hypergeometric machinery.
    """
    line = _on_explicit_line(p)
    if line is None:
        return None
    t, x, z = float(t), float(x), float(z)
    reg = classify_regime(t, x, z)
    if reg in (Regime.BOUNDARY_LOWER, Regime.BOUNDARY_UPPER):
        raise SingularSurfaceError("closed form refused on a singular surface")
    if reg is Regime.VANISHING:
        return 0.0
    a, b = p.alpha, p.beta
    s = p.ab_sum
    q1 = (t - abs(x - z)) * (t + abs(x - z))
    q2 = abs(x + z - t) * (x + z + t)
    xz = x * z
    pref = _prefactor(p) * xz ** (b - 1.0) * t ** (-2.0 * s)
    sin_like = math.sqrt(q1 * q2) / (2.0 * xz)      # sin v or sinh u
    plus = q2 / (2.0 * xz)                           # 1+cos v or cosh u - 1
    minus = q1 / (2.0 * xz)                          # 1-cos v or cosh u + 1
    # the Legendre-side variable, built from whichever side is better conditioned
    if reg is Regime.INTERIOR:
        y = 1.0 - minus if minus <= plus else plus - 1.0
    else:
        y = 1.0 + plus

    if reg is Regime.INTERIOR:
        body = sin_like ** (s - _HALF)
        if line == "beta_nonpositive_integer":
            n = -p.beta_exact_integer
            c = 2.0 ** (n - a + _HALF) * math.factorial(n) * gamma_reciprocal(a + _HALF)
            val = c * (plus * minus) ** ((a - n - _HALF) / 2.0) * jacobi_poly(
                n, a - n - _HALF, a - n - _HALF, y)
        elif line == "two_alpha_plus_beta_zero":
            c = 2.0 ** (a + _HALF) * gamma_reciprocal(_HALF - a)
            val = c * (plus * minus) ** (-(a + _HALF) / 2.0)
        else:
            n = p.alpha_exact_half_integer
            if n == -1:
                val = gamma_reciprocal(b) * (plus / minus) ** ((1.0 - b) / 2.0)
            else:
                c = math.factorial(n) * gamma_reciprocal(2 * n + b + 1.0)
                val = c * (plus / minus) ** (-(n + b) / 2.0) * jacobi_poly(
                    n, n + b, -n - b, y)
        return float(pref * body * val)

    # Exterior: note plus/minus now mean cosh u -+ 1
    gr_b = gamma_reciprocal(b)
    if line == "beta_nonpositive_integer":
        return 0.0
    body = 2.0 * gr_b * sin_like ** (s - _HALF)
    if line == "two_alpha_plus_beta_zero":
        c = math.sqrt(math.pi) / 2.0 ** (a + _HALF) * gamma_reciprocal(a + 1.0)
        val = c * (plus * minus) ** (-(a + _HALF) / 2.0)
    else:
        n = p.alpha_exact_half_integer
        if n == -1:
            e = (1.0 - b) / 2.0
            val = 0.5 * ((minus / plus) ** e + (plus / minus) ** e)
        elif p.beta_exact_integer is not None and p.beta_exact_integer >= 1:
            m = p.beta_exact_integer
            c = ((-1.0) ** (m + 1) * math.factorial(m - 1) * 2.0 ** (a + m - 1.5)
                 * _sp.gamma(a + _HALF) * gamma_reciprocal(2.0 * a + m))
            val = c * (plus * minus) ** ((_HALF - a - m) / 2.0) * jacobi_poly(
                m - 1, _HALF - a - m, _HALF - a - m, y)
        else:
            c = (math.pi * math.factorial(n) / (2.0 * math.sin(math.pi * (n + b)))
                 * gamma_reciprocal(1.0 - b) * gamma_reciprocal(2 * n + b + 1.0))
            e = (n + b) / 2.0
            val = c * ((minus / plus) ** e * jacobi_poly(n, -n - b, n + b, y)
                       - (plus / minus) ** e * jacobi_poly(n, n + b, -n - b, y))
    return float(pref * body * val)


# ---------------------------------------------------------------------------
# direct quadrature oracle
# ---------------------------------------------------------------------------

def kernel_oracle_quadrature(p: Params, t: float, x: float, z: float,
                             spec: QuadSpec = QuadSpec()) -> float:
    """K_t(x, z) by direct integration of the defining triple-Bessel integral."""
    t, x, z = float(t), float(x), float(z)
    reg = classify_regime(t, x, z)
    if reg in (Regime.BOUNDARY_LOWER, Regime.BOUNDARY_UPPER):
        raise SingularSurfaceError("oracle quadrature refused on a singular surface")
    s = p.ab_sum
    y0 = 40.0 / max(t, x, z, 1.0)
    integral = bessel_product_integral(
        (s, p.alpha, p.alpha), (t, x, z), 2.0 * p.alpha + 1.0, spec, y0=y0)
    return 2.0 ** s * _sp.gamma(s + 1.0) * integral


# ---------------------------------------------------------------------------
# exceptional sets and zero census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalMembership:
    in_E_P: bool
    in_E_Q: bool
    explicit_line: Optional[str]


def exceptional_membership(p: Params) -> ExceptionalMembership:
    """Membership in the phase-shift sets of P and Q, from exactness flags only."""
    return ExceptionalMembership(
        in_E_P=in_exceptional_p(p),
        in_E_Q=in_exceptional_q(p),
        explicit_line=_on_explicit_line(p),
    )


@dataclass(frozen=True)
class ZeroCensus:
    predicted: int            # minimum number of zeros guaranteed
    predicted_exact: bool     # True when `predicted` is the exact count
    observed: int
    locations: tuple
    inconclusive: bool = False


def _predict_zeros(p: Params, which: LegendreKind):
    a, b = p.alpha, p.beta
    if which is LegendreKind.FERRERS_P:
        # zero-free except in the two open regions of the zero census
        if (a > 0.5 and b < 0.0) or (a < -0.5 and b < -2.0 * a):
            return 1, False
        return 0, True
    if a < -0.5 and 1.0 < b < -2.0 * a:
        return 1, True
    return 0, True


def _scan_grid(which: LegendreKind):
    if which is LegendreKind.FERRERS_P:
        close = 1.0 - 10.0 ** (-np.arange(2.0, 13.0))
        return np.sort(np.concatenate([-close, np.linspace(-0.99, 0.99, 397), close]))
    return 1.0 + 1e-4 * 2.0 ** np.arange(0.0, 61.0)


def count_legendre_zeros(p: Params, which: LegendreKind,
                         spec: QuadSpec = QuadSpec()) -> ZeroCensus:
    """Predicted vs observed sign changes of P on (-1,1) / Q on (1, oo)."""
    predicted, exact = _predict_zeros(p, which)
    fun = ferrers_p if which is LegendreKind.FERRERS_P else olver_q
    grid = _scan_grid(which)
    vals = fun(p, grid)
    locations = [float(grid[i]) for i in np.nonzero(vals == 0.0)[0]]
    nz = np.nonzero(vals != 0.0)[0]
    sgn = np.sign(vals[nz])
    for k in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        i, j = nz[k], nz[k + 1]
        if j > i + 1:
            continue  # crossing passes through an exact grid zero, already counted
        try:
            loc = _opt.brentq(lambda yy: fun(p, yy), grid[i], grid[j],
                              xtol=1e-12, rtol=1e-12)
            locations.append(float(loc))
        except ValueError:
            locations.append(float(0.5 * (grid[i] + grid[j])))
    locations.sort()
    observed = len(locations)
    inconclusive = predicted > 0 and observed == 0
    return ZeroCensus(predicted, exact, observed, tuple(locations), inconclusive)
