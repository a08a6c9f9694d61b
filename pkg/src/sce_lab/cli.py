"""Benchmark harness: parameter sweeps, method comparisons, CSV emission.

Every run writes one flat CSV with the fixed column set

    problem, q, g_re, g_im, N, M, alpha, value_re, value_im,
    rel_err, bound, method, precision_digits, wall_ms

in sweep-axis order, decimal point, no locale.  Reruns with the same
configuration are byte-identical: wall_ms is written as 0 unless timing
is explicitly requested.  Failures of individual points are recorded in
the log and surface as a nonzero exit code without aborting the sweep.

Precision defaults come from the SCE_LAB_PRECISION environment variable,
may be set in a key=value config file, and are overridden by flags.
"""

from __future__ import annotations

import argparse
import enum
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpc, mpf

from . import rivals
from .airy import AirySCEParams, airy_sce
from .fitting import fit_convergence
from .general_q import (GeneralQParams, critical_alpha, large_r_asymptotics, optimal_alpha,
                        sce_partition_general, sce_partition_radial)
from .precision import PrecisionPolicy, to_mpf
from .quartic import (QuarticSCEParams, Well, error_bound_quartic, sce_partition_quartic)
from .special import (airy_reference, exact_Z_double_well, exact_Z_quartic, quadrature_Z)

CSV_COLUMNS = ("problem", "q", "g_re", "g_im", "N", "M", "alpha", "value_re", "value_im",
               "rel_err", "bound", "method", "precision_digits", "wall_ms")

DEFAULT_TARGET_DIGITS = int(os.environ.get("SCE_LAB_PRECISION", "24"))


class SweepTarget(enum.Enum):
    QUARTIC = "quartic"
    DOUBLE_WELL = "double_well"
    GENERAL_Q = "general_q"
    AIRY = "airy"
    RADIAL = "radial"


@dataclass(frozen=True)
class SweepSpec:
    """One family of evaluations along a single strictly monotone axis."""

    target: SweepTarget
    axis: str                      # "N" | "alpha" | "g" | "arg_z"
    points: tuple
    g: object = 1
    alpha: Optional[Fraction] = None
    N: Optional[int] = None
    q: object = 4
    z_abs: object = 8
    dimension: int = 1
    target_digits: int = 0         # 0: choose per point from the order
    output: Optional[str] = None
    timing: bool = False

    def __post_init__(self):
        if not self.points:
            raise ValueError("swept axis must be nonempty")
        vals = [float(p) for p in self.points]
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("swept axis must be strictly monotone increasing")
        if self.axis not in ("N", "alpha", "g", "arg_z"):
            raise ValueError(f"unknown axis {self.axis}")


@dataclass(frozen=True)
class SweepRecord:
    inputs: dict
    value: object
    rel_err: object
    bound: object
    precision_digits: int
    wall_ms: int
    error: Optional[str] = None


@dataclass(frozen=True)
class ConvergenceSeries:
    spec: SweepSpec
    records: tuple

    @property
    def failures(self):
        return [r for r in self.records if r.error]


def _auto_target(N: int, base: int) -> int:
    # worst-case observed decay is ~0.29 digits/order plus a stretched term
    return max(base, int(0.36 * N) + 30)


def _fmt(v, digits):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return mp.nstr(mpf(v) if not isinstance(v, (mpf, mpc)) else v, digits,
                   strip_zeros=True)


def _quartic_point(spec: SweepSpec, point):
    g = to_mpf(spec.g)
    alpha = spec.alpha
    N = spec.N
    if spec.axis == "N":
        N = int(point)
    elif spec.axis == "alpha":
        alpha = Fraction(point).limit_denominator(10 ** 6)
    elif spec.axis == "g":
        g = to_mpf(point)
    M = to_mpf(Fraction(alpha) * N)
    tgt = spec.target_digits or _auto_target(N, DEFAULT_TARGET_DIGITS)
    well = Well.SINGLE if spec.target is SweepTarget.QUARTIC else Well.DOUBLE
    params = QuarticSCEParams(g=g, N=N, M=M, well=well,
                              precision=PrecisionPolicy.for_target(tgt))
    ev = sce_partition_quartic(params)
    with mp.workdps(ev.working_digits):
        oracle = (exact_Z_quartic if well is Well.SINGLE else exact_Z_double_well)(
            g, dps=ev.working_digits)
        rel = abs(ev.value.value / oracle - 1)
    return {
        "problem": spec.target.value, "q": 4, "g_re": g, "g_im": 0, "N": N, "M": M,
        "alpha": to_mpf(Fraction(alpha)), "value_re": ev.value.value, "value_im": 0,
        "rel_err": rel, "bound": ev.remainder_bound, "method": "sce",
        "precision_digits": ev.working_digits,
    }


def _general_point(spec: SweepSpec, point):
    g = to_mpf(spec.g)
    alpha = spec.alpha
    N = spec.N
    if spec.axis == "N":
        N = int(point)
    elif spec.axis == "alpha":
        alpha = Fraction(point).limit_denominator(10 ** 6)
    elif spec.axis == "g":
        g = to_mpf(point)
    M = to_mpf(Fraction(alpha) * N)
    tgt = spec.target_digits or _auto_target(N, DEFAULT_TARGET_DIGITS)
    ev = sce_partition_general(GeneralQParams(q=spec.q, g=g, N=N, M=M,
                                              precision=PrecisionPolicy.for_target(tgt)))
    with mp.workdps(ev.working_digits):
        oracle = quadrature_Z(spec.q, g, d=1, dps=min(ev.working_digits, 2 * tgt))
        rel = abs(ev.value.value / oracle - 1)
    return {
        "problem": "general_q", "q": to_mpf(spec.q), "g_re": g, "g_im": 0, "N": N, "M": M,
        "alpha": to_mpf(Fraction(alpha)), "value_re": ev.value.value, "value_im": 0,
        "rel_err": rel, "bound": ev.remainder_bound, "method": "sce",
        "precision_digits": ev.working_digits,
    }


def _airy_point(spec: SweepSpec, point):
    alpha = spec.alpha or Fraction(1)
    N = spec.N
    arg_z = mpf(0)
    z_abs = to_mpf(spec.z_abs)
    if spec.axis == "N":
        N = int(point)
    elif spec.axis == "arg_z":
        arg_z = to_mpf(point)
    elif spec.axis == "alpha":
        alpha = Fraction(point).limit_denominator(10 ** 6)
    else:
        raise ValueError("airy sweeps support axes N, alpha, arg_z")
    M = to_mpf(Fraction(alpha) * N)
    tgt = spec.target_digits or max(DEFAULT_TARGET_DIGITS, int(0.6 * N) + 25)
    with mp.workdps(3 * tgt):
        z = z_abs * mp.exp(mpc(0, 1) * arg_z)
        ev = airy_sce(AirySCEParams(z=z, N=N, M=M, precision=PrecisionPolicy.for_target(tgt)))
        oracle = airy_reference(z, prec=ev.working_digits)
        rel = abs((ev.value.value - oracle) / oracle)
    return {
        "problem": "airy", "q": 3, "g_re": z.real, "g_im": z.imag, "N": N, "M": M,
        "alpha": to_mpf(Fraction(alpha)), "value_re": ev.value.value.real,
        "value_im": ev.value.value.imag, "rel_err": rel, "bound": None, "method": "sce",
        "precision_digits": ev.working_digits,
    }


def _radial_point(spec: SweepSpec, point):
    g = to_mpf(spec.g)
    N = int(point) if spec.axis == "N" else spec.N
    alpha = spec.alpha or Fraction(4, 3)
    M = to_mpf(Fraction(alpha) * N)
    tgt = spec.target_digits or _auto_target(N, DEFAULT_TARGET_DIGITS)
    ev = sce_partition_radial(spec.dimension, N, M, g,
                              precision=PrecisionPolicy.for_target(tgt))
    with mp.workdps(ev.working_digits):
        oracle = quadrature_Z(4, g, d=spec.dimension + 1, dps=min(ev.working_digits, 2 * tgt))
        rel = abs(ev.value.value / oracle - 1)
    return {
        "problem": f"radial_{spec.dimension}", "q": 4, "g_re": g, "g_im": 0, "N": N, "M": M,
        "alpha": to_mpf(Fraction(alpha)), "value_re": ev.value.value, "value_im": 0,
        "rel_err": rel, "bound": None, "method": "sce",
        "precision_digits": ev.working_digits,
    }


_POINT_FUNCS = {
    SweepTarget.QUARTIC: _quartic_point,
    SweepTarget.DOUBLE_WELL: _quartic_point,
    SweepTarget.GENERAL_Q: _general_point,
    SweepTarget.AIRY: _airy_point,
    SweepTarget.RADIAL: _radial_point,
}


def run_sweep(spec: SweepSpec, log=None) -> ConvergenceSeries:
    """Evaluate every point of the sweep, in order; errors are recorded
    per point and never abort the run.  Writes CSV when an output path
    is configured."""
    func = _POINT_FUNCS[spec.target]
    records = []
    for point in spec.points:
        t0 = time.perf_counter()
        try:
            row = func(spec, point)
            wall = int(1000 * (time.perf_counter() - t0)) if spec.timing else 0
            records.append(SweepRecord(
                inputs={k: row[k] for k in ("problem", "q", "g_re", "g_im", "N", "M", "alpha")},
                value=mpc(row["value_re"], row["value_im"]),
                rel_err=row["rel_err"], bound=row["bound"],
                precision_digits=row["precision_digits"], wall_ms=wall))
        except Exception as exc:  # per-point failure: log and continue
            records.append(SweepRecord(inputs={"point": point}, value=None, rel_err=None,
                                       bound=None, precision_digits=0, wall_ms=0,
                                       error=f"{type(exc).__name__}: {exc}"))
            if log:
                print(f"error at point {point}: {exc}", file=log)
    series = ConvergenceSeries(spec=spec, records=tuple(records))
    if spec.output:
        write_csv(series, spec.output)
    return series


def write_csv(series: ConvergenceSeries, path: str, digits: int = 0):
    digits = digits or max(series.spec.target_digits, DEFAULT_TARGET_DIGITS)
    lines = [",".join(CSV_COLUMNS)]
    for rec in series.records:
        if rec.error:
            lines.append(",".join([str(rec.inputs.get("point", "")), *[""] * 11,
                                   "error:" + rec.error.split(":")[0], "0"]))
            continue
        ins = rec.inputs
        row = [
            str(ins["problem"]), _fmt(ins["q"], 6), _fmt(ins["g_re"], digits),
            _fmt(ins["g_im"], digits), str(ins["N"]), _fmt(ins["M"], digits),
            _fmt(ins["alpha"], digits), _fmt(rec.value.real, digits),
            _fmt(rec.value.imag, digits), _fmt(rec.rel_err, 8), _fmt(rec.bound, 8),
            "sce", str(rec.precision_digits), str(rec.wall_ms),
        ]
        lines.append(",".join(row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class ComparisonRow:
    coupling: object
    truncations: dict
    rel_errors: dict           # method name -> relative error, or error-class string
    oracle: object


def compare_methods(problem: rivals.Problem, coupling_grid: Sequence, order_rule,
                    alpha=Fraction(4, 3), dps: int = 40) -> list:
    """Error table of all methods on one grid against one oracle per row.

    order_rule is 'at_N0' (every convergent method truncated where the
    superasymptotic series stops) or ('fixed_N', k).  Per-cell failures
    are recorded as strings so a singular Pade system cannot corrupt the
    rest of the table.
    """
    rows = []
    for coupling in coupling_grid:
        coupling = to_mpf(coupling)
        with mp.workdps(3 * dps):
            if problem is rivals.Problem.QUARTIC_Z:
                oracle = exact_Z_quartic(coupling, dps=3 * dps)
            else:
                oracle = airy_reference(coupling, prec=3 * dps)
        if order_rule == "at_N0":
            n_use = max(int(mp.floor(rivals.singulant(problem, coupling))), 1)
        else:
            n_use = int(order_rule[1])
        errs = {}
        truncs = {}

        def record(name, fn, order):
            truncs[name] = order
            try:
                with mp.workdps(3 * dps):
                    val = fn()
                    errs[name] = abs((val - oracle) / oracle)
            except Exception as exc:
                errs[name] = f"{type(exc).__name__}"

        sa = rivals.superasymptotic(problem, coupling)
        record("superasymptotic", lambda: sa.value, sa.n0)
        if problem is rivals.Problem.QUARTIC_Z:
            record("borel_tail", lambda: rivals.borel_tail(coupling, sa.n0, dps=2 * dps), sa.n0)
        record("pade", lambda: rivals.pade(problem, coupling, n_use if n_use % 2 == 0 else n_use - 1,
                                           dps=2 * dps), n_use - (n_use % 2))
        record("hyper1", lambda: rivals.hyper_level1(problem, coupling, dps=2 * dps).value,
               sa.n0 + int(mp.nint(mpf(sa.n0) / 2)))
        record("tau", lambda: rivals.lanczos_tau(problem, coupling, n_use, dps=2 * dps), n_use)

        def sce_value():
            M = to_mpf(Fraction(alpha) * n_use)
            if problem is rivals.Problem.QUARTIC_Z:
                ev = sce_partition_quartic(QuarticSCEParams(
                    g=coupling, N=n_use, M=M, precision=PrecisionPolicy.for_target(dps)))
            else:
                ev = airy_sce(AirySCEParams(z=coupling, N=n_use, M=M,
                                            precision=PrecisionPolicy.for_target(dps)))
            return ev.value.value

        record("sce", sce_value, n_use)
        rows.append(ComparisonRow(coupling=coupling, truncations=truncs,
                                  rel_errors=errs, oracle=oracle))
    return rows


def comparison_csv(problem, rows, path: str, digits: int = 16):
    name = "quartic" if problem is rivals.Problem.QUARTIC_Z else "airy"
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        for method, err in sorted(row.rel_errors.items()):
            lines.append(",".join([
                name, "4" if name == "quartic" else "3", _fmt(row.coupling, digits), "0",
                str(row.truncations.get(method, "")), "", "", "", "",
                _fmt(err, 8) if not isinstance(err, str) else err, "",
                method, str(mp.dps), "0",
            ]))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def table1(path: Optional[str] = None) -> list:
    """Convergence constants for q in {3,4,6,8,10,12}: the critical and
    optimal moment ratios and the certified digits per order, plus the
    large-r closed-form estimates appended as a final formula row."""
    rows = []
    with mp.workdps(30):
        for q in (3, 4, 6, 8, 10, 12):
            ac = critical_alpha(q)
            astar, rate = optimal_alpha(q)
            one_minus = 1 - mpf(10) ** (-rate)
            rows.append({
                "q": q, "r": mpf(q) / 2 - 1, "alpha_c": ac, "alpha_star": astar,
                "one_minus_Q": one_minus, "digits_per_order": rate,
            })
    if path:
        lines = ["q,r,alpha_c,alpha_star,one_minus_Q_star,minus_log10_Q_star"]
        for r in rows:
            lines.append(",".join([str(r["q"]), _fmt(r["r"], 6), _fmt(r["alpha_c"], 8),
                                   _fmt(r["alpha_star"], 8), _fmt(r["one_minus_Q"], 6),
                                   _fmt(r["digits_per_order"], 6)]))
        lines.append("large-r,r>>1,(r+ln r+1)/e,-,(1/(e r))(e/r)^r,-")
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    return rows


# ---------------------------------------------------------------------------
# command-line front end

def _load_config(path):
    cfg = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            cfg[key.strip()] = val.strip()
    return cfg


def _parse_grid(text: str) -> tuple:
    return tuple(Fraction(tok) for tok in text.split(","))


def _odd_range(lo, hi):
    return tuple(range(lo if lo % 2 == 1 else lo + 1, hi + 1, 2))


def _recipe_specs(name: str, full: bool, out_dir: str):
    fig2_top = 301 if full else 121
    fig5_top = 301 if full else 121
    recipes = {
        "fig1a": [SweepSpec(SweepTarget.QUARTIC, "alpha",
                            tuple(Fraction(k, 20) for k in range(16, 41)), g=1, N=n,
                            output=f"{out_dir}/fig1a_N{n}.csv") for n in (20, 21)],
        "fig2": [SweepSpec(SweepTarget.QUARTIC, "N", _odd_range(21, fig2_top), g=1,
                           alpha=a, output=f"{out_dir}/fig2_alpha{a.numerator}_{a.denominator}.csv")
                 for a in (Fraction(1), Fraction(2), Fraction(4, 3))],
        "fig5a": [SweepSpec(SweepTarget.DOUBLE_WELL, "N", _odd_range(21, fig5_top),
                            g=Fraction(1, 100), alpha=a,
                            output=f"{out_dir}/fig5a_alpha{a.numerator}_{a.denominator}.csv")
                  for a in (Fraction(1), Fraction(2), Fraction(4, 3))],
        "fig8b": [SweepSpec(SweepTarget.AIRY, "arg_z",
                            tuple(Fraction(9 * k, 120) for k in range(0, 13)), z_abs=8,
                            N=60, alpha=Fraction(1), output=f"{out_dir}/fig8b.csv")],
        "fig9": [SweepSpec(SweepTarget.AIRY, "N", tuple(range(1, 62)), z_abs=0,
                           alpha=Fraction(1), output=f"{out_dir}/fig9.csv")],
    }
    if name not in recipes:
        raise SystemExit(f"unknown recipe {name}; have {sorted(recipes)}")
    return recipes[name]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sce-lab",
                                     description="benchmarks for the self-consistent expansion")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--precision", type=int, default=0,
                        help="target digits (default from SCE_LAB_PRECISION or 24)")
    parser.add_argument("--full", action="store_true",
                        help="enable the long presets (N to 301, deep scans)")
    parser.add_argument("--timing", action="store_true",
                        help="record real wall times (breaks byte-reproducibility)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, target in [("quartic", SweepTarget.QUARTIC), ("double-well", SweepTarget.DOUBLE_WELL),
                         ("general", SweepTarget.GENERAL_Q), ("radial", SweepTarget.RADIAL)]:
        p = sub.add_parser(name, help=f"{name} convergence sweep over N")
        p.add_argument("--g", default="1")
        p.add_argument("--alpha", default="4/3")
        p.add_argument("--n-max", type=int, default=41)
        p.add_argument("--n-min", type=int, default=1)
        p.add_argument("--q", default="4")
        p.add_argument("--dimension", type=int, default=1)
        p.add_argument("--out", default=f"{name.replace('-', '_')}.csv")

    p = sub.add_parser("airy", help="Airy convergence sweep over N")
    p.add_argument("--z-abs", default="8")
    p.add_argument("--arg-z", default="0")
    p.add_argument("--alpha", default="1")
    p.add_argument("--n-max", type=int, default=41)
    p.add_argument("--out", default="airy.csv")

    p = sub.add_parser("stokes", help="arg-z profile at fixed |z| and N")
    p.add_argument("--z-abs", default="8")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--points", type=int, default=13)
    p.add_argument("--out", default="stokes.csv")

    p = sub.add_parser("sweep", help="explicit sweep specification")
    p.add_argument("--target", choices=[t.value for t in SweepTarget], required=True)
    p.add_argument("--axis", choices=["N", "alpha", "g", "arg_z"], required=True)
    p.add_argument("--points", required=True, help="comma-separated monotone grid")
    p.add_argument("--g", default="1")
    p.add_argument("--alpha", default="4/3")
    p.add_argument("--n", type=int, default=21)
    p.add_argument("--q", default="4")
    p.add_argument("--z-abs", default="8")
    p.add_argument("--out", required=True)

    p = sub.add_parser("compare", help="method comparison table")
    p.add_argument("--problem", choices=["quartic", "airy"], default="quartic")
    p.add_argument("--couplings", default="1/160,1/320")
    p.add_argument("--order-rule", default="at_N0", help="'at_N0' or an integer N")
    p.add_argument("--out", default="compare.csv")

    p = sub.add_parser("fit", help="fit log10 err = C - A N - B N^s to a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--exponent", default="1/2", choices=["1/2", "2/3"])
    p.add_argument("--n-min", type=int, default=21, help="lower fit cutoff (default 21)")

    p = sub.add_parser("table1", help="convergence constants for q = 3..12")
    p.add_argument("--out", default="table1.csv")

    p = sub.add_parser("emit", help="reproduce a preset figure dataset")
    p.add_argument("recipe", help="e.g. recipes/fig2")
    p.add_argument("--out-dir", default=".")

    args = parser.parse_args(argv)
    cfg = _load_config(args.config) if args.config else {}
    precision = args.precision or int(cfg.get("precision", 0)) or DEFAULT_TARGET_DIGITS
    failures = 0

    def finish(series_list):
        nonlocal failures
        for s in series_list:
            failures += len(s.failures)

    if args.command in ("quartic", "double-well", "general", "radial"):
        target = {"quartic": SweepTarget.QUARTIC, "double-well": SweepTarget.DOUBLE_WELL,
                  "general": SweepTarget.GENERAL_Q, "radial": SweepTarget.RADIAL}[args.command]
        spec = SweepSpec(target, "N", _odd_range(args.n_min, args.n_max),
                         g=Fraction(cfg.get("g", args.g)), alpha=Fraction(cfg.get("alpha", args.alpha)),
                         q=Fraction(args.q), dimension=args.dimension,
                         target_digits=precision, output=args.out, timing=args.timing)
        finish([run_sweep(spec, log=sys.stderr)])
        print(f"wrote {args.out}")
    elif args.command == "airy":
        spec = SweepSpec(SweepTarget.AIRY, "N", tuple(range(1, args.n_max + 1)),
                         alpha=Fraction(args.alpha), z_abs=Fraction(args.z_abs),
                         target_digits=precision, output=args.out, timing=args.timing)
        finish([run_sweep(spec, log=sys.stderr)])
        print(f"wrote {args.out}")
    elif args.command == "stokes":
        pts = tuple(Fraction(9 * k, 10 * (args.points - 1)) for k in range(args.points))
        spec = SweepSpec(SweepTarget.AIRY, "arg_z", pts, z_abs=Fraction(args.z_abs),
                         N=args.n, alpha=Fraction(1), target_digits=precision,
                         output=args.out, timing=args.timing)
        finish([run_sweep(spec, log=sys.stderr)])
        print(f"wrote {args.out}")
    elif args.command == "sweep":
        spec = SweepSpec(SweepTarget(args.target), args.axis, _parse_grid(args.points),
                         g=Fraction(args.g), alpha=Fraction(args.alpha), N=args.n,
                         q=Fraction(args.q), z_abs=Fraction(args.z_abs),
                         target_digits=precision, output=args.out, timing=args.timing)
        finish([run_sweep(spec, log=sys.stderr)])
        print(f"wrote {args.out}")
    elif args.command == "compare":
        problem = rivals.Problem.QUARTIC_Z if args.problem == "quartic" else rivals.Problem.AIRY_TILDE
        rule = "at_N0" if args.order_rule == "at_N0" else ("fixed_N", int(args.order_rule))
        rows = compare_methods(problem, _parse_grid(args.couplings), rule, dps=precision)
        comparison_csv(problem, rows, args.out)
        failures += sum(1 for row in rows for e in row.rel_errors.values() if isinstance(e, str))
        print(f"wrote {args.out}")
    elif args.command == "fit":
        ns, errs = [], []
        with open(args.csv) as fh:
            header = fh.readline().strip().split(",")
            for line in fh:
                parts = line.strip().split(",")
                row = dict(zip(header, parts))
                if row.get("rel_err") and not row["rel_err"].startswith("error"):
                    n = int(row["N"])
                    if n >= args.n_min and mpf(row["rel_err"]) > 0:
                        ns.append(n)
                        errs.append(mp.log10(mpf(row["rel_err"])))
        s = mpf(1) / 2 if args.exponent == "1/2" else mpf(2) / 3
        model = fit_convergence(ns, errs, exponent_s=s)
        print(f"A = {mp.nstr(model.A, 6)}  B = {mp.nstr(model.B, 6)}  C = {mp.nstr(model.C, 6)}")
        print(f"chi2 = {mp.nstr(model.chi2, 4)}  chi2(B=0) = {mp.nstr(model.chi2_B0, 4)}")
    elif args.command == "table1":
        table1(args.out)
        print(f"wrote {args.out}")
    elif args.command == "emit":
        name = args.recipe.split("/")[-1]
        os.makedirs(args.out_dir, exist_ok=True)
        finish([run_sweep(s, log=sys.stderr) for s in _recipe_specs(name, args.full, args.out_dir)])
        print(f"emitted {name} into {args.out_dir}")

    if failures:
        print(f"{failures} point(s) failed", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
