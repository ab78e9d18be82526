"""Exact-rational admissibility logic for the mixed-norm estimate.

Everything here runs in Fraction arithmetic: the finiteness conditions
for the time norm, the scaling balance, the four admissibility conditions
(C1)-(C4) with their equality-allowance subcases, domain inclusion, the
two-power-weight Hardy characterizations, and the classification of the
admissible (1/p, 1/q) set into its five possible shapes.  Floats are
deliberately refused: every condition involves strict-versus-weak
inequality subcases that float comparison would corrupt.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .errors import DomainError
from .special_fun import Params

__all__ = [
    "INF",
    "MixedIndices",
    "Condition",
    "Verdict",
    "Shape",
    "SetScan",
    "norm_finite",
    "scaling_exponent",
    "conditions_c1_c4",
    "domain_inclusion",
    "hardy_admissible",
    "exchange_of_norms_valid",
    "admissible_set_scan",
]

INF = "inf"
_Extended = Union[Fraction, str]


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise DomainError("regions require exact rational input, got a float")
    return Fraction(v)


def _inv(p: _Extended) -> Fraction:
    """1/p with 1/inf = 0, exact."""
    if p == INF:
        return Fraction(0)
    return 1 / _frac(p)


def _conjugate_inv(p: _Extended) -> Fraction:
    """1/p' = 1 - 1/p."""
    return 1 - _inv(p)


def _exact_params(p: Params) -> Tuple[Fraction, Fraction]:
    if p.exact_alpha is None or p.exact_beta is None:
        raise DomainError("regions require Params built from exact rationals")
    return p.exact_alpha, p.exact_beta


@dataclass(frozen=True)
class MixedIndices:
    """The exponent tuple (p, q, r, rho, A, B), all exact rationals.

    ``p`` and ``q`` may be the string "inf"; r is finite, 1 <= r.
    """

    p: _Extended
    q: _Extended
    r: Fraction
    rho: Fraction
    A: Fraction
    B: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", _frac(self.r))
        object.__setattr__(self, "rho", _frac(self.rho))
        object.__setattr__(self, "A", _frac(self.A))
        object.__setattr__(self, "B", _frac(self.B))
        for name in ("p", "q"):
            v = getattr(self, name)
            if v != INF:
                v = _frac(v)
                object.__setattr__(self, name, v)
                if v < 1:
                    raise DomainError(f"{name} must lie in [1, inf]")
        if self.r < 1:
            raise DomainError("r must lie in [1, oo)")

    @property
    def inv_p(self) -> Fraction:
        return _inv(self.p)

    @property
    def inv_q(self) -> Fraction:
        return _inv(self.q)


class Condition(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_WITH_EQUALITY = "holds-with-equality-allowed"


@dataclass(frozen=True)
class Verdict:
    admissible: bool
    per_condition: Dict[str, Condition]
    failure_witness: Optional[str] = None


def norm_finite(p: Params, r, rho) -> bool:
    """Exact test of the time-norm finiteness conditions."""
    a, b = _exact_params(p)
    r = _frac(r)
    rho = _frac(rho)
    if not a + b > Fraction(1, 2) - 1 / r:
        return False
    beta_nonpos_int = b.denominator == 1 and b <= 0
    if not beta_nonpos_int and not (rho + 1) / r < 2 * a + 2:
        return False
    return True


def scaling_exponent(p: Params, idx: MixedIndices) -> Fraction:
    """The homogeneity mismatch (2a+2)(1/q - 1/p) - A - B + (rho+1)/r.

    Zero exactly when the scaling-balance condition holds; otherwise it is
    the exact power of the dilation factor by which the two sides of the
    estimate drift apart.
    """
    a, _ = _exact_params(p)
    return (2 * a + 2) * (idx.inv_q - idx.inv_p) - idx.A - idx.B + (idx.rho + 1) / idx.r


def _min0(v: Fraction) -> Fraction:
    return v if v < 0 else Fraction(0)


def conditions_c1_c4(p: Params, idx: MixedIndices) -> Verdict:
    """The four admissibility conditions with exact equality subcases."""
    a, b = _exact_params(p)
    per: Dict[str, Condition] = {}
    # C1: p <= q
    per["C1"] = Condition.HOLDS if idx.inv_p >= idx.inv_q else Condition.FAILS
    # C2: scaling balance
    per["C2"] = Condition.HOLDS if scaling_exponent(p, idx) == 0 else Condition.FAILS
    # C3: (A - (2a+2)/p') v (B - (2a+2)/q) < (b + 1/r - 1) ^ 0
    lhs = max(idx.A - (2 * a + 2) * _conjugate_inv(idx.p),
              idx.B - (2 * a + 2) * idx.inv_q)
    rhs = _min0(b + 1 / idx.r - 1)
    if lhs < rhs:
        per["C3"] = Condition.HOLDS
    else:
        eq_ok = (idx.p == 1 and idx.q == INF
                 and (b == 0 or b + 1 / idx.r != 1))
        per["C3"] = (Condition.HOLDS_WITH_EQUALITY if (lhs == rhs and eq_ok)
                     else Condition.FAILS)
    # C4: 1/q >= 1/p - (rho+1)/r, strict when p = 1 or q = inf
    lhs4 = idx.inv_q
    rhs4 = idx.inv_p - (idx.rho + 1) / idx.r
    strict_needed = (idx.p == 1) or (idx.q == INF)
    if lhs4 > rhs4:
        per["C4"] = Condition.HOLDS
    elif lhs4 == rhs4 and not strict_needed:
        per["C4"] = Condition.HOLDS_WITH_EQUALITY
    else:
        per["C4"] = Condition.FAILS
    admissible = all(v is not Condition.FAILS for v in per.values())
    witness = None
    if not admissible:
        bad = [k for k, v in per.items() if v is Condition.FAILS]
        witness = "failing: " + ", ".join(bad)
    return Verdict(admissible, per, witness)


def domain_inclusion(p: Params, idx: MixedIndices) -> bool:
    """Whether L^p(x^{Ap} dmu) lies inside the operator's natural domain."""
    a, b = _exact_params(p)
    if not idx.rho > -1:
        return False
    m = _min0(b + 1 / idx.r - 1)
    lo = (idx.rho + 1) / idx.r - (2 * a + 2) * idx.inv_p - m
    hi = (2 * a + 2) * _conjugate_inv(idx.p) + m
    weak = idx.p == 1 and (b == 0 or b + 1 / idx.r - 1 != 0)
    if weak:
        return lo <= idx.A <= hi
    return lo < idx.A < hi


def hardy_admissible(a, b, p, q, which: str = "Hardy") -> bool:
    """Two-power-weight L^p -> L^q boundedness of the Hardy operator or its dual."""
    a = _frac(a)
    b = _frac(b)
    inv_p, inv_q = _inv(p), _inv(q)
    if inv_p < inv_q:  # p > q
        return False
    if a - _conjugate_inv(p) != b + inv_q:
        return False
    eq_case = (p == 1 and inv_q == 0)  # p = q' = 1, i.e. (p, q) = (1, inf)
    if which == "Hardy":
        return a < _conjugate_inv(p) or (eq_case and a == _conjugate_inv(p))
    if which == "DualHardy":
        return b > -inv_q or (eq_case and b == -inv_q)
    raise DomainError("which must be 'Hardy' or 'DualHardy'")


def exchange_of_norms_valid(idx: MixedIndices) -> bool:
    """Whether the t-outer mixed norm is dominated by the x-outer one (q <= r)."""
    return idx.inv_q >= 1 / idx.r


class Shape(Enum):
    S1 = "S1"  # closed segment, endpoints on the square's boundary, below diagonal
    S2 = "S2"  # sub-segment of S1 with off-boundary endpoints excluded
    S3 = "S3"  # proper sub-segment of the diagonal
    S4 = "S4"  # the single lower-right vertex
    S5 = "S5"  # empty
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class SetScan:
    shape: Shape
    points: Tuple[Tuple[Fraction, Fraction], ...]
    # exact segment data: u runs over 1/p, v = u + offset over 1/q
    offset: Optional[Fraction] = None
    u_lo: Optional[Fraction] = None
    u_hi: Optional[Fraction] = None
    lo_included: bool = False
    hi_included: bool = False
    excluded_points: Tuple[Tuple[Fraction, Fraction], ...] = ()


def _idx_at(u: Fraction, v: Fraction, base: MixedIndices) -> MixedIndices:
    pp = INF if u == 0 else 1 / u
    qq = INF if v == 0 else 1 / v
    return MixedIndices(pp, qq, base.r, base.rho, base.A, base.B)


def admissible_set_scan(p: Params, A, B, r, rho, grid_denominator: int = 24) -> SetScan:
    """Exact reconstruction and classification of the admissible (1/p, 1/q) set.

    The scaling balance confines the set to a line v = u + c; the interval
    on that line cut out by the remaining conditions is reconstructed
    symbolically with exact endpoint membership, then classified against
    the five possible shapes.  A rational grid scan cross-checks the
    segment and supplies the point list.
    """
    if grid_denominator > 1000:
        raise DomainError("grid_denominator capped at 1000")
    a_ex, b_ex = _exact_params(p)
    A = _frac(A)
    B = _frac(B)
    r = _frac(r)
    rho = _frac(rho)
    base = MixedIndices(1, 1, r, rho, A, B)
    two_a2 = 2 * a_ex + 2
    c = (A + B - (rho + 1) / r) / two_a2  # v - u along the C2 line

    # grid scan (cross-check and point list)
    pts: List[Tuple[Fraction, Fraction]] = []
    n = grid_denominator
    for iu in range(n + 1):
        u = Fraction(iu, n)
        v = u + c
        if not 0 <= v <= 1:
            continue
        verdict = conditions_c1_c4(p, _idx_at(u, v, base))
        if verdict.admissible:
            pts.append((u, v))

    # exact interval on the line v = u + c within the unit square
    u_min_sq = max(Fraction(0), -c)
    u_max_sq = min(Fraction(1), 1 - c)
    if c > 0 or u_min_sq > u_max_sq:
        return SetScan(Shape.S5, tuple(pts), offset=c)
    # C4 is constant along the line (up to its positional strictness);
    # a strict global failure empties the set
    if A + B < (2 * a_ex + 1) * c:
        return SetScan(Shape.S5, tuple(pts), offset=c)
    # C3 cuts the line to an interval; the exact bounds
    m = _min0(b_ex + 1 / r - 1)
    u_hi_c3 = 1 + (m - A) / two_a2          # from A - (2a+2)(1-u) < m
    u_lo_c3 = (B - m) / two_a2 - c          # from B - (2a+2)(u + c) < m
    u_lo = max(u_min_sq, u_lo_c3)
    u_hi = min(u_max_sq, u_hi_c3)
    if u_lo > u_hi:
        return SetScan(Shape.S5, tuple(pts), offset=c)

    def included(u: Fraction) -> bool:
        return conditions_c1_c4(p, _idx_at(u, u + c, base)).admissible

    def on_square_boundary(u: Fraction) -> bool:
        v = u + c
        return u == 0 or u == 1 or v == 0 or v == 1

    lo_included = included(u_lo)
    hi_included = included(u_hi)
    if u_lo == u_hi:
        if not lo_included:
            return SetScan(Shape.S5, tuple(pts), offset=c)
        shape = Shape.S4 if (u_lo == 1 and u_lo + c == 0) else Shape.UNCLASSIFIED
        return SetScan(shape, tuple(pts), offset=c, u_lo=u_lo, u_hi=u_hi,
                       lo_included=True, hi_included=True)
    excluded = []
    if not lo_included:
        excluded.append((u_lo, u_lo + c))
    if not hi_included:
        excluded.append((u_hi, u_hi + c))
    # any endpoint included despite lying off the square boundary would
    # contradict the advertised shape list
    if (lo_included and not on_square_boundary(u_lo)) \
            or (hi_included and not on_square_boundary(u_hi)):
        shape = Shape.UNCLASSIFIED
    elif c == 0:
        shape = Shape.S3 if (u_hi - u_lo) < 1 else Shape.UNCLASSIFIED
    elif lo_included and hi_included:
        shape = Shape.S1  # both endpoints on the boundary by the check above
    else:
        shape = Shape.S2
    return SetScan(shape, tuple(pts), offset=c, u_lo=u_lo, u_hi=u_hi,
                   lo_included=lo_included, hi_included=hi_included,
                   excluded_points=tuple(excluded))
