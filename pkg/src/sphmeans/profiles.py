"""Radial profile functions and the standard test families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

__all__ = ["DecayClass", "RadialProfile", "gaussian_profile", "bump_profile",
           "power_profile", "constant_profile"]


class DecayClass(Enum):
    COMPACT_SUPPORT = "CompactSupport"
    GAUSSIAN = "Gaussian"
    POLYNOMIAL = "Polynomial"


@dataclass(frozen=True)
class RadialProfile:
    """A function on (0, oo) with decay/smoothness metadata.

    ``eval`` must accept numpy arrays.  Compact-support profiles vanish
    outside ``support_hint``; for polynomial decay ``rate`` is the power
    such that |f(y)| = O(y^-rate) at infinity.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    decay_class: DecayClass
    support_hint: Optional[Tuple[float, float]] = None
    rate: Optional[float] = None
    smooth: bool = True

    def __call__(self, y):
        return self.eval(np.asarray(y, dtype=float))


def gaussian_profile(sigma: float = 1.0, amplitude: float = 1.0) -> RadialProfile:
    """amplitude * exp(-y^2 / (2 sigma^2))."""
    s2 = 2.0 * sigma * sigma

    def f(y):
        return amplitude * np.exp(-y * y / s2)
    return RadialProfile(f, DecayClass.GAUSSIAN, support_hint=None, smooth=True)


def bump_profile(a: float, b: float, amplitude: float = 1.0) -> RadialProfile:
    """C-infinity bump supported on [a, b], normalized to peak `amplitude`."""
    if not 0.0 <= a < b:
        raise ValueError("bump_profile requires 0 <= a < b")
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    def f(y):
        u = (y - mid) / half
        out = np.zeros_like(y)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = amplitude * np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out
    return RadialProfile(f, DecayClass.COMPACT_SUPPORT, support_hint=(a, b), smooth=True)


def power_profile(exponent: float, y_min: float = 0.0) -> RadialProfile:
    """y^exponent (optionally cut below y_min); the power-law probe family."""
    def f(y):
        out = np.where(y > y_min, y, np.inf) ** exponent if y_min > 0 else y ** exponent
        if y_min > 0:
            out = np.where(y > y_min, out, 0.0)
        return out
    return RadialProfile(f, DecayClass.POLYNOMIAL, rate=-exponent, smooth=(y_min == 0.0))


def constant_profile(value: float = 1.0, cutoff: Optional[float] = None) -> RadialProfile:
    """f == value, optionally truncated to [0, cutoff]."""
    def f(y):
        out = np.full_like(y, value)
        if cutoff is not None:
            out = np.where(y <= cutoff, out, 0.0)
        return out
    if cutoff is None:
        return RadialProfile(f, DecayClass.POLYNOMIAL, rate=0.0, smooth=True)
    return RadialProfile(f, DecayClass.COMPACT_SUPPORT, support_hint=(0.0, cutoff),
                         smooth=False)
