"""Command-line front end: grid scans, audits, and reports.

Subcommands: kernel, tnorm, regions, pde, verify.  Rational parameters in
"num/den" form set the exactness flags; decimal input never does.  Output
is CSV (header line, 17 significant digits, LF endings) or a single JSON
object with a schema_version field.  Identical configuration and seed
produce byte-identical output.

Exit codes: 0 success, 2 configuration error, 3 convergence error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .envelopes import (
    norm_finite_conditions,
    pointwise_envelope,
    time_norm_envelope,
    time_norm_numeric,
    time_norm_truncated,
)
from .errors import ConvergenceError, DomainError, SingularSurfaceError
from .kernel import (
    classify_regime,
    count_legendre_zeros,
    exceptional_membership,
    kernel_closed_form,
    kernel_legendre,
    kernel_oracle_quadrature,
)
from .profiles import bump_profile, gaussian_profile
from .pde import CauchySpec, DataRole, ProblemKind, richardson_ratio, solve, strichartz_ratio
from .quadrature import QuadSpec
from .regions import INF, MixedIndices, admissible_set_scan, conditions_c1_c4, scaling_exponent
from .special_fun import LegendreKind, Params

SCHEMA_VERSION = 1


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.17g}"
    return str(v)


def _parse_number(text: str, exact_ok: bool = True):
    """Rational 'num/den' (or integer) -> Fraction; decimal -> float."""
    text = text.strip()
    if "/" in text or (exact_ok and "." not in text and "e" not in text.lower()):
        return Fraction(text)
    return float(text)


def _parse_params(alpha_text: str, beta_text: str) -> Params:
    a = _parse_number(alpha_text)
    b = _parse_number(beta_text)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return Params.from_rationals(a, b)
    return Params(alpha=float(a), beta=float(b))


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise DomainError(f"grid must be lo:hi:count[:log], got {text!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or count > 10 ** 6:
        raise DomainError("grid count must lie in [1, 10^6]")
    if len(parts) == 4 and parts[3] == "log":
        return np.geomspace(lo, hi, count)
    if len(parts) == 4:
        raise DomainError(f"unknown grid modifier {parts[3]!r}")
    return np.linspace(lo, hi, count)


def _emit(args, header: List[str], rows: List[List[object]], summary=None) -> None:
    out = io.StringIO()
    if args.format == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "config_echo": {k: v for k, v in sorted(vars(args).items())
                            if k != "func" and v is not None},
            "rows": [dict(zip(header, row)) for row in rows],
        }
        if summary is not None:
            payload["summary"] = summary
        json.dump(payload, out, sort_keys=True, default=_fmt)
        out.write("\n")
    data = out.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_kernel(args) -> int:
    p = _parse_params(args.alpha, args.beta)
    spec = QuadSpec(tol=args.tol)
    ts = _parse_grid(args.grid_t)
    xs = _parse_grid(args.grid_x)
    zs = _parse_grid(args.grid_z)
    header = ["t", "x", "z", "regime", "K_legendre", "K_closed", "K_oracle",
              "envelope", "ratio", "sharp", "path"]
    rows = []
    max_dev = 0.0
    for t in ts:
        for x in xs:
            for z in zs:
                reg = classify_regime(float(t), float(x), float(z))
                if reg.value.startswith("Boundary"):
                    continue
                kl = kernel_legendre(p, float(t), float(x), float(z))
                kc = kernel_closed_form(p, float(t), float(x), float(z)) \
                    if args.closed else None
                ko = kernel_oracle_quadrature(p, float(t), float(x), float(z), spec) \
                    if args.oracle else None
                ev = pointwise_envelope(p, float(t), float(x), float(z)) \
                    if args.envelope else None
                ratio = (abs(kl) / ev.value if ev is not None and ev.value > 0
                         else (0.0 if ev is not None else None))
                if ko is not None:
                    max_dev = max(max_dev, abs(kl - ko))
                path = "closed" if kc is not None else "legendre"
                rows.append([float(t), float(x), float(z), reg.value, kl, kc, ko,
                             ev.value if ev else None, ratio,
                             ev.sharp if ev else None, path])
    summary = {"max_legendre_oracle_deviation": max_dev} if args.oracle else None
    _emit(args, header, rows, summary)
    return 0


def cmd_tnorm(args) -> int:
    p = _parse_params(args.alpha, args.beta)
    r = float(_parse_number(args.r, exact_ok=False)) if args.r else 1.0
    rho = float(_parse_number(args.rho, exact_ok=False)) if args.rho else 0.0
    spec = QuadSpec(tol=args.tol)
    xs = _parse_grid(args.grid_x)
    zs = _parse_grid(args.grid_z)
    finite = norm_finite_conditions(p, r, rho)
    header = ["x", "z", "r", "rho", "finite", "envelope", "numeric", "ratio",
              "sharp", "trunc_8", "trunc_16", "trunc_32", "trunc_64",
              "monotone_growth"]
    rows = []
    for x in xs:
        for z in zs:
            x = float(x)
            z = float(z)
            ev = time_norm_envelope(p, r, rho, x, z)
            if finite and not (x == z and (rho + 1.0) / r <= 1.0):
                num = time_norm_numeric(p, r, rho, x, z, spec)
                rows.append([x, z, r, rho, True, ev.value, num,
                             num / ev.value if ev.value not in (0.0, math.inf) else None,
                             ev.sharp, None, None, None, None, None])
            else:
                base = 8.0 * max(1.0, x + z)
                vals = [time_norm_truncated(p, r, rho, x, z, base * 2.0 ** k, spec)
                        for k in range(4)]
                mono = all(b > a for a, b in zip(vals, vals[1:]))
                rows.append([x, z, r, rho, False, ev.value, None, None, ev.sharp,
                             vals[0], vals[1], vals[2], vals[3], mono])
    _emit(args, header, rows)
    return 0


def cmd_regions(args) -> int:
    p = _parse_params(args.alpha, args.beta)
    if p.exact_alpha is None:
        raise DomainError("regions requires rational --alpha/--beta (num/den form)")
    r = _parse_number(args.r)
    rho = _parse_number(args.rho)
    A = _parse_number(args.A)
    B = _parse_number(args.B)
    den = args.grid_denominator
    header = ["inv_p", "inv_q", "C1", "C2", "C3", "C4", "admissible"]
    rows = []
    for iu in range(den + 1):
        for iv in range(den + 1):
            u = Fraction(iu, den)
            v = Fraction(iv, den)
            idx = MixedIndices(INF if u == 0 else 1 / u, INF if v == 0 else 1 / v,
                               r, rho, A, B)
            verdict = conditions_c1_c4(p, idx)
            rows.append([str(u), str(v),
                         verdict.per_condition["C1"].value,
                         verdict.per_condition["C2"].value,
                         verdict.per_condition["C3"].value,
                         verdict.per_condition["C4"].value,
                         verdict.admissible])
    scan = admissible_set_scan(p, A, B, r, rho, den)
    exc = exceptional_membership(p)
    spec = QuadSpec(tol=args.tol)
    zp = count_legendre_zeros(p, LegendreKind.FERRERS_P, spec)
    zq = count_legendre_zeros(p, LegendreKind.OLVER_Q, spec)
    summary = {
        "shape": scan.shape.value,
        "segment_offset": str(scan.offset),
        "u_range": [str(scan.u_lo), str(scan.u_hi)] if scan.u_lo is not None else None,
        "endpoints_included": [scan.lo_included, scan.hi_included],
        "norm_finite": norm_finite_conditions(p, float(r), float(rho)),
        "in_E_P": exc.in_E_P,
        "in_E_Q": exc.in_E_Q,
        "explicit_line": exc.explicit_line,
        "zeros_P": {"predicted_min": zp.predicted, "exact": zp.predicted_exact,
                    "observed": zp.observed},
        "zeros_Q": {"predicted": zq.predicted, "observed": zq.observed},
    }
    _emit(args, header, rows, summary)
    return 0


def cmd_pde(args) -> int:
    p = _parse_params(args.alpha, args.beta if args.beta else "0")
    quad = QuadSpec(tol=args.tol)
    if args.strichartz:
        if not (args.p and args.q and args.r and args.rho):
            raise DomainError("strichartz mode needs --p --q --r --rho")
        idx = MixedIndices(_parse_number(args.p), _parse_number(args.q),
                           _parse_number(args.r), _parse_number(args.rho),
                           _parse_number(args.A or "0"), _parse_number(args.B or "0"))
        f = bump_profile(0.5, 2.0)
        scales = [2.0 ** k for k in range(-4, 5)]
        res = strichartz_ratio(p, idx, f, scales, quad)
        logs = np.log([s for s, _ in res])
        slope = float(np.polyfit(logs, np.log([r_ for _, r_ in res]), 1)[0])
        header = ["scale", "ratio"]
        rows = [[s, r_] for (s, r_) in res]
        _emit(args, header, rows, {"slope": slope,
                                   "delta": str(scaling_exponent(p, idx))})
        return 0
    kind = {"epd": ProblemKind.EPD, "wave": ProblemKind.WAVE,
            "besselepd": ProblemKind.BESSEL_EPD,
            "besselwave": ProblemKind.BESSEL_WAVE}[args.problem]
    data = gaussian_profile() if args.data == "gauss" else bump_profile(0.5, 3.0)
    role = (DataRole.INITIAL_SPEED if kind in (ProblemKind.WAVE, ProblemKind.BESSEL_WAVE)
            else DataRole.INITIAL_POSITION)
    a_frac = _parse_number(args.alpha) if kind.name.startswith("BESSEL") else None
    b_frac = _parse_number(args.beta) if args.beta else None
    cspec = CauchySpec(kind, data, role, n=args.n, alpha=a_frac, beta=b_frac)
    header = ["problem", "x", "t", "u", "residual", "h", "richardson_ratio"]
    rows = []
    for x in _parse_grid(args.grid_x):
        for t in _parse_grid(args.grid_t):
            u = solve(cspec, float(x), float(t), quad)
            try:
                r1, _, ratio = richardson_ratio(cspec, float(x), float(t), args.h, quad)
            except DomainError:
                r1, ratio = None, None
            rows.append([kind.value, float(x), float(t), u, r1, args.h, ratio])
    _emit(args, header, rows)
    return 0


def cmd_verify(args) -> int:
    from .acceptance import run_suite
    checks = [int(c) for c in args.checks.split(",")] if args.checks else None
    results = run_suite(checks=checks, seed=args.seed, tol_scale=args.tol_scale,
                        echo=True)
    summary = {
        "all_passed": all(r.passed for r in results),
        "results": [{
            "criterion": r.criterion, "name": r.name, "passed": r.passed,
            "tolerance": r.tolerance, "worst": r.worst,
            "runtime_s": round(r.runtime_s, 2),
        } for r in results],
    }
    first_fail = next((r for r in results if not r.passed), None)
    if first_fail is not None:
        summary["first_failure"] = {"criterion": first_fail.criterion,
                                    "achieved": first_fail.worst,
                                    "tolerance": first_fail.tolerance}
    if args.out:
        with open(args.out, "w", newline="") as fh:
            json.dump({"schema_version": SCHEMA_VERSION, "summary": summary},
                      fh, sort_keys=True, default=_fmt)
            fh.write("\n")
    return 0 if summary["all_passed"] else 4


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_common(sp, needs_beta=True):
    sp.add_argument("--alpha", required=True,
                    help="alpha as rational 'n/d' (exact) or decimal")
    sp.add_argument("--beta", required=needs_beta, default=None,
                    help="beta as rational 'n/d' (exact) or decimal")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sphmeans",
        description="Generalized spherical-mean kernel numerics and audits")
    sub = ap.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="kernel values along a (t,x,z) grid")
    _add_common(k)
    k.add_argument("--grid-t", required=True)
    k.add_argument("--grid-x", required=True)
    k.add_argument("--grid-z", required=True)
    k.add_argument("--closed", action="store_true", help="include closed-form column")
    k.add_argument("--oracle", action="store_true", help="include quadrature oracle column")
    k.add_argument("--envelope", action="store_true", help="include envelope columns")
    k.set_defaults(func=cmd_kernel)

    tn = sub.add_parser("tnorm", help="time-norm numerics vs envelope")
    _add_common(tn)
    tn.add_argument("--r", required=True)
    tn.add_argument("--rho", required=True)
    tn.add_argument("--grid-x", required=True)
    tn.add_argument("--grid-z", required=True)
    tn.set_defaults(func=cmd_tnorm)

    rg = sub.add_parser("regions", help="exact admissibility truth table and shape")
    _add_common(rg)
    rg.add_argument("--r", required=True)
    rg.add_argument("--rho", required=True)
    rg.add_argument("--A", required=True)
    rg.add_argument("--B", required=True)
    rg.add_argument("--grid-denominator", type=int, default=24)
    rg.set_defaults(func=cmd_regions)

    pd = sub.add_parser("pde", help="PDE solutions, residuals, scaling sweeps")
    _add_common(pd, needs_beta=False)
    pd.add_argument("--problem", choices=("epd", "wave", "besselepd", "besselwave"),
                    default="besselepd")
    pd.add_argument("--n", type=int, default=None)
    pd.add_argument("--data", choices=("gauss", "bump"), default="gauss")
    pd.add_argument("--grid-x", default="1:2:2")
    pd.add_argument("--grid-t", default="0.5:1:2")
    pd.add_argument("--h", type=float, default=0.02)
    pd.add_argument("--strichartz", action="store_true")
    pd.add_argument("--p", default=None)
    pd.add_argument("--q", default=None)
    pd.add_argument("--r", default=None)
    pd.add_argument("--rho", default=None)
    pd.add_argument("--A", default=None)
    pd.add_argument("--B", default=None)
    pd.set_defaults(func=cmd_pde)

    vf = sub.add_parser("verify", help="run the acceptance suite")
    vf.add_argument("--checks", default=None, help="comma-separated criterion numbers")
    vf.add_argument("--tol-scale", type=float, default=1.0,
                    help="multiply all tolerances (use <1 to tighten)")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--out", default=None)
    vf.add_argument("--format", choices=("csv", "json"), default="json")
    vf.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, SingularSurfaceError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence error: {exc} (achieved {exc.achieved})", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
