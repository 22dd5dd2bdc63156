"""Command-line front end: curve loading, verification runs and data export."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import boundary, hasse, lfunc, meanper, suite
from .errors import InputError, ZetalabError
from .report import VerificationReport, to_jsonable

EXPORT_KINDS = ("h", "w", "v", "poles", "report")
DEFAULT_CURVE = "11a1"
DEFAULT_BOUNDARY_GRID = "0.1:0.9:9"


class UsageError(InputError):
    """Bad command-line input; exits with status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by itself; keep that contract explicit
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def parse_grid(text: str) -> np.ndarray:
    """'lo:hi:n' -> n log-spaced points in [lo, hi]."""
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--grid expects lo:hi:n, got {text!r}") from exc
    if not (0 < lo < hi) or n < 1:
        raise argparse.ArgumentTypeError(f"--grid needs 0 < lo < hi and n >= 1, got {text!r}")
    return np.geomspace(lo, hi, n)


def _dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _write_text(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def export(kind: str, artifact, path) -> None:
    """Write a computed artifact: CSV for grid functions, JSON for catalogs and reports."""
    if kind not in EXPORT_KINDS:
        raise UsageError(f"unknown export kind {kind!r}; expected one of {EXPORT_KINDS}")
    if kind in ("h", "w", "v"):
        if not isinstance(artifact, meanper.GridFunction):
            raise InputError(f"export {kind}: expected a GridFunction")
        artifact.to_csv(path)
    elif kind == "poles":
        _write_text(_dumps(artifact.to_json()), path)
    else:
        reports = artifact if isinstance(artifact, list) else [artifact]
        _write_text(_dumps([r.to_dict() for r in reports]), path)


# ---------------------------------------------------------------- subcommands

def _curve_and_table(args, N: int | None = None):
    curve = lfunc.load_curve(args.curve)
    return curve, lfunc.coefficients(curve, N or args.N)


def cmd_curve(args) -> int:
    curve, table = _curve_and_table(args)
    resid = lfunc.check_root_number(curve, table)
    out = {"curve": curve.to_dict(), "root_number_residual": resid,
           "a_n": [table[k] for k in range(1, min(args.show, table.N) + 1)]}
    _write_text(_dumps(out), args.out)
    return 0


def cmd_lseries(args) -> int:
    curve, table = _curve_and_table(args)
    s = args.s
    lam, err = lfunc.lambda_E(curve, table, s, return_error=True)
    out = {"s": s, "Lambda": lam, "Lambda_err": err, "L": lfunc.l_value(curve, table, s)}
    if s.real > 2:
        val, bound = lfunc.l_dirichlet(curve, table, s)
        out["L_dirichlet"] = val
        out["tail_bound"] = bound
    _write_text(_dumps(out), args.out)
    return 0


def cmd_z(args) -> int:
    curve, table = _curve_and_table(args)
    out = {"s": args.s, "Z": hasse.zeta_integral_Z(curve, table, args.s),
           "zeta_E": hasse.zeta_model(curve, table, args.s)}
    _write_text(_dumps(out), args.out)
    return 0


def cmd_poles(args) -> int:
    curve, table = _curve_and_table(args)
    cat = hasse.pole_catalog(curve, table, args.tmax, radius=args.radius, nodes=args.nodes)
    export("poles", cat, args.out)
    return 0


def cmd_scan(args) -> int:
    curve, table = _curve_and_table(args)
    rep = hasse.cancellation_scan(curve, table, args.tmax, distance=args.distance)
    _write_text(_dumps(rep), args.out)
    return 0 if not rep["coincidences"] else 1


def cmd_boundary(args) -> int:
    curve, table = _curve_and_table(args)
    spec = boundary.ContourSpec(args.abscissa, args.truncation)
    x = args.grid
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # est_err carries the same information
        h, err = boundary.h_E(curve, table, spec, x, return_error=True)
    h, err = np.atleast_1d(h), np.atleast_1d(err)
    if args.tmax is not None:
        cat = hasse.pole_catalog(curve, table, args.tmax)
        series = np.atleast_1d(boundary.h_series(cat, x))
        err = np.abs(series - h)
        h = series
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "Re h", "Im h", "est_err"])
    for xi, hi, ei in zip(x, h, err):
        w.writerow([repr(float(xi)), repr(float(hi.real)), repr(float(hi.imag)), repr(float(ei))])
    _write_text(buf.getvalue(), args.out)
    return 0


def cmd_toy(args) -> int:
    toy = meanper.ToyBoundary(args.mu, args.f0, args.fhat0)
    exact, mc = meanper.tate_toy(toy, args.s, args.L, args.n)
    tol = suite.TOLERANCES["toy.closed_form"]
    err = abs(mc - exact) / max(abs(exact), 1e-300)
    print(f"closed form: {exact.real:.12g}{exact.imag:+.12g}i")
    print(f"mellin-carleman: {mc.real:.12g}{mc.imag:+.12g}i")
    print(f"rel_err={err:.3e} tol={tol:.1e} {'PASS' if err <= tol else 'FAIL'}")
    return 0 if err <= tol else 1


def cmd_mc(args) -> int:
    if (args.h is None) != (args.f is None):
        raise UsageError("mc needs both --h and --f, or neither (toy boundary)")
    if args.h is None:
        h = meanper.GridFunction.from_function(meanper.ToyBoundary().h, args.L, args.n)
        f = meanper.toy_annihilators(args.L, args.n)[0]
    else:
        h, f = meanper.GridFunction.from_csv(args.h), meanper.GridFunction.from_csv(args.f)
    res = meanper.mellin_carleman(h, f, args.s, tol=args.tol)
    out = {"s": args.s, "value": res.value, "variant": res.variant,
           "discrepancy": res.discrepancy, "residual": res.residual}
    _write_text(_dumps(out), args.out)
    return 0


def cmd_annihilate(args) -> int:
    curve = lfunc.load_curve(args.curve)
    ws = suite.Workspace(curve, args.L, args.n, args.tmax, N=args.N)
    w = ws.w0 if args.control else ws.w
    rep = meanper.annihilation_test(w, ws.h, ws.catalog, tol=args.grid_tol,
                                    order_tol=args.order_tol)
    if args.export_h:
        export("h", ws.h, args.export_h)
    if args.export_w:
        export("w", w, args.export_w)
    if args.export_v:
        export("v", ws.v, args.export_v)
    if args.report:
        export("report", rep, args.report)
    print(rep.line())
    return 0 if rep.passed else 1


def cmd_verify(args) -> int:
    tol = suite.parse_tolerances(args.tol)
    if args.which == "all":
        criteria = sorted(suite.CRITERIA)
    else:
        try:
            criteria = [int(k) for k in args.which.split(",")]
        except ValueError as exc:
            raise UsageError(f"verify expects 'all' or criterion numbers, got {args.which!r}") \
                from exc
        bad = [k for k in criteria if k not in suite.CRITERIA]
        if bad:
            raise UsageError(f"unknown acceptance criteria {bad}")
    curve = lfunc.load_curve(args.curve)
    ws = suite.Workspace(curve, N=args.N)
    reports: list[VerificationReport] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for k in criteria:
            batch = suite.run_criterion(k, curve, tol, ws)
            reports.extend(batch)
            for r in batch:
                print(f"criterion {k:2d} {r.line()}", flush=True)
    if args.report:
        export("report", reports, args.report)
    failed = [r.check for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed")
    return 1 if failed else 0


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zetalab", description="Hasse zeta integrals of elliptic curves: "
                "L-series, pole catalogs, boundary terms and convolution annihilators.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, curve=True, s=False):
        sp = sub.add_parser(name, help=help_)
        if curve:
            sp.add_argument("--curve", default=DEFAULT_CURVE,
                            help="curve JSON path or fixture label (searched in "
                                 "$ZETALAB_CURVE_DIR, then the bundled fixtures)")
            sp.add_argument("--N", type=int, default=suite.TABLE_N,
                            help="number of Dirichlet coefficients (default %(default)s)")
        if s:
            sp.add_argument("--s", type=parse_complex, required=True, help="complex point, e.g. 2+1i")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = add("curve", cmd_curve, "validate a curve file and show its coefficients")
    sp.add_argument("--show", type=int, default=20, help="coefficients to print (default 20)")
    add("lseries", cmd_lseries, "Lambda(E,s) and L(E,s); the Dirichlet route for Re s > 2", s=True)
    add("z", cmd_z, "the zeta-integral product Z(s)", s=True)

    sp = add("poles", cmd_poles, "pole catalog of Z as JSON")
    sp.add_argument("--tmax", type=float, default=suite.CATALOG_T_MAX,
                    help="height cutoff (default %(default)s)")
    sp.add_argument("--radius", type=float, default=hasse.CIRCLE_RADIUS,
                    help="Laurent circle radius (default %(default)s)")
    sp.add_argument("--nodes", type=int, default=hasse.CIRCLE_NODES,
                    help="Laurent circle nodes (default %(default)s)")

    sp = add("scan", cmd_scan, "zero-coincidence scan between the two factor blocks")
    sp.add_argument("--tmax", type=float, default=suite.SCAN_T_MAX,
                    help="height cutoff (default %(default)s)")
    sp.add_argument("--distance", type=float, default=suite.TOLERANCES["hasse.cancellation"],
                    help="coincidence threshold (default %(default)s)")

    spec = boundary.ContourSpec()
    sp = add("boundary", cmd_boundary, "boundary function h_E on a log grid as CSV")
    sp.add_argument("--grid", type=parse_grid, default=parse_grid(DEFAULT_BOUNDARY_GRID),
                    help=f"lo:hi:n log-spaced samples (default {DEFAULT_BOUNDARY_GRID})")
    sp.add_argument("--abscissa", type=float, default=spec.c,
                    help="contour abscissa c (default %(default)s)")
    sp.add_argument("--truncation", type=float, default=spec.T,
                    help="contour half-height T (default %(default)s)")
    sp.add_argument("--tmax", type=float, default=None,
                    help="use the residue expansion up to this height; est_err is then its "
                         "distance from the contour route")

    sp = add("toy", cmd_toy, "toy boundary term: closed form against Mellin-Carleman",
             curve=False)
    sp.add_argument("--s", type=parse_complex, default=complex(3.0), help="point (default 3)")
    toy = meanper.ToyBoundary()
    sp.add_argument("--mu", type=float, default=toy.mu, help="scale mu (default %(default)s)")
    sp.add_argument("--f0", type=float, default=toy.f0, help="f(0) (default %(default)s)")
    sp.add_argument("--fhat0", type=float, default=toy.fhat0,
                    help="Fourier value at 0 (default %(default)s)")
    sp.add_argument("--L", type=float, default=meanper.GRID_L,
                    help="grid half-width (default %(default)s)")
    sp.add_argument("--n", type=int, default=meanper.GRID_N, help="grid size (default %(default)s)")

    sp = add("mc", cmd_mc, "Mellin-Carleman transform of a grid function", curve=False, s=True)
    sp.add_argument("--h", default=None, help="boundary function CSV (t,re,im)")
    sp.add_argument("--f", default=None, help="annihilator CSV (t,re,im)")
    sp.add_argument("--tol", type=float, default=meanper.ANNIHILATION_TOL,
                    help="annihilation tolerance (default %(default)s)")
    sp.add_argument("--L", type=float, default=meanper.GRID_L,
                    help="grid half-width for the toy (default %(default)s)")
    sp.add_argument("--n", type=int, default=meanper.GRID_N,
                    help="grid size for the toy (default %(default)s)")

    sp = add("annihilate", cmd_annihilate, "grid and Mellin verdicts for w * h_E")
    sp.add_argument("--L", type=float, default=meanper.GRID_L,
                    help="grid half-width (default %(default)s)")
    sp.add_argument("--n", type=int, default=meanper.GRID_N, help="grid size (default %(default)s)")
    sp.add_argument("--tmax", type=float, default=suite.CATALOG_T_MAX,
                    help="catalog height (default %(default)s)")
    sp.add_argument("--grid-tol", type=float, default=meanper.ANNIHILATION_TOL,
                    help="grid verdict tolerance (default %(default)s)")
    sp.add_argument("--order-tol", type=float, default=meanper.ORDER_TOL,
                    help="vanishing-order tolerance (default %(default)s)")
    sp.add_argument("--control", action="store_true", help="use w0 alone (negative control)")
    sp.add_argument("--export-h", default=None, help="write h_E on the grid as CSV")
    sp.add_argument("--export-w", default=None, help="write the annihilator as CSV")
    sp.add_argument("--export-v", default=None, help="write the theta profile v as CSV")
    sp.add_argument("--report", default=None, help="write the report as JSON")

    sp = add("verify", cmd_verify, "run acceptance checks; exit 0 iff all pass")
    sp.add_argument("which", help="'all' or comma-separated criterion numbers")
    sp.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                    help="override a tolerance from the check table (repeatable)")
    sp.add_argument("--report", default=None, help="write all reports as JSON")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, InputError) as exc:
        print(f"zetalab: error: {exc}", file=sys.stderr)
        return 2
    except (ZetalabError, OSError) as exc:
        print(f"zetalab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
