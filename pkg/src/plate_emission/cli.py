"""Command-line front end.

Subcommands: ``rate``, ``sweep``, ``figure``, ``threshold``, ``oracle-check``.
Tables are written as CSV with the header
``config,orientation,l,s,perp_ratio,par_ratio,iso_ratio``.

Exit codes: 0 success, 2 usage error, 3 numerical check failure,
4 oracle non-convergence.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys

import numpy as np

from .core import CP, PC, DipoleOrientation, GeometryError, PlateConfiguration, check_geometry
from .modes import distance_to_onset
from .oracle import OracleConvergenceError, QuadratureSpec, bruteforce_ratio
from .rates import par_ratio, perp_ratio, suppression_threshold

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3
EXIT_NOT_CONVERGED = 4

HEADER = ("config", "orientation", "l", "s", "perp_ratio", "par_ratio", "iso_ratio")

ORACLE_TOLERANCE = 1e-3
ONSET_MARGIN = 0.05


class UsageError(Exception):
    pass


def fmt(value: float) -> str:
    # adding 0.0 turns -0.0 into 0.0
    return format(float(value) + 0.0, ".12g")


def table_rows(config: PlateConfiguration, orientation: DipoleOrientation, l, s):
    """CSV rows for the sample points ``(l[i], s[i])``."""
    l = np.atleast_1d(np.asarray(l, dtype=float))
    s = np.broadcast_to(np.atleast_1d(np.asarray(s, dtype=float)), l.shape)
    w_perp, w_par = orientation.weights
    rows = []
    for li, si in zip(l, s):
        perp = perp_ratio(config, li, si) if w_perp else 0.0
        par = par_ratio(config, li, si) if w_par else 0.0
        iso = w_perp * perp + w_par * par
        rows.append((config.code, orientation.value, fmt(li), fmt(si), fmt(perp), fmt(par), fmt(iso)))
    return rows


def sweep_s(config, orientation, l, count):
    if count < 2:
        raise UsageError("grid count must be at least 2")
    check_geometry(l, 0.0)
    s = np.linspace(0.0, l, count)
    # linspace may overshoot l in the last digit
    s[-1] = l
    return table_rows(config, orientation, np.full(count, float(l)), s)


def sweep_l(config, orientation, start, stop, count):
    if count < 2:
        raise UsageError("grid count must be at least 2")
    if not 0.0 < start < stop:
        raise UsageError("l-sweeps need 0 < start < stop")
    l = np.linspace(start, stop, count)
    return table_rows(config, orientation, l, 0.5 * l)


FIGURES = {
    # name: (kind, [(config, orientation or None for the --orientation flag)])
    "fig1": ("s", [("cc", None), ("cp", None)]),
    "fig2": ("s", [("cc", None), ("pp", None)]),
    "fig3": ("l", [("cc", "par"), ("pp", "perp")]),
    "fig4": ("l", [("cp", "perp")]),
}

FIGURE_L_RANGE = {"fig3": (0.01, 12.0), "fig4": (0.01, 8.0)}


def figure_rows(name, l=None, count=1000, orientation="iso", l_range=None):
    """Rows for every curve of one of the four figures."""
    kind, curves = FIGURES[name]
    rows = []
    if kind == "s":
        if l is None:
            raise UsageError(f"{name} needs --l: the plate separation of this figure is not published")
        for code, _ in curves:
            rows += sweep_s(PlateConfiguration.from_code(code), DipoleOrientation.parse(orientation), l, count)
    else:
        start, stop = l_range or FIGURE_L_RANGE[name]
        for code, orient in curves:
            rows += sweep_l(PlateConfiguration.from_code(code), DipoleOrientation.parse(orient), start, stop, count)
    return rows


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def write_csv(rows, path=None):
    with _output(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(HEADER)
        writer.writerows(rows)


def _cmd_rate(args):
    check_geometry(args.l, args.s)
    write_csv(table_rows(args.config, args.orientation, args.l, args.s), args.out)
    return EXIT_OK


def _cmd_sweep(args):
    if args.vary == "s":
        if args.l is None:
            raise UsageError("an s-sweep needs --l")
        rows = sweep_s(args.config, args.orientation, args.l, args.grid)
    else:
        if args.start is None or args.stop is None:
            raise UsageError("an l-sweep needs --start and --stop")
        rows = sweep_l(args.config, args.orientation, args.start, args.stop, args.grid)
    write_csv(rows, args.out)
    return EXIT_OK


def _cmd_figure(args):
    l_range = None
    if args.l_min is not None or args.l_max is not None:
        default = FIGURE_L_RANGE.get(args.name, (0.01, 12.0))
        l_range = (args.l_min if args.l_min is not None else default[0],
                   args.l_max if args.l_max is not None else default[1])
    rows = figure_rows(args.name, args.l, args.grid, args.orientation.value, l_range)
    write_csv(rows, args.out)
    return EXIT_OK


def _cmd_threshold(args):
    if args.orientation is DipoleOrientation.ISOTROPIC:
        raise UsageError("threshold needs --orientation perp or par")
    report = suppression_threshold(args.config, args.orientation)
    print(f"config: {args.config.code}")
    print(f"orientation: {args.orientation.value}")
    if not report.has_window:
        print("no suppression window")
        if report.numeric_l is not None:
            print(f"numeric threshold: {fmt(report.numeric_l)}")
    else:
        print(f"analytic threshold: {fmt(report.threshold_l)}")
        numeric = "none" if report.numeric_l is None else fmt(report.numeric_l)
        print(f"numeric threshold: {numeric}")
        print(f"resolution: {report.resolution:g}")
    print(f"confirmed: {'yes' if report.confirmed else 'no'}")
    return EXIT_OK if report.confirmed else EXIT_CHECK_FAILED


def _cmd_oracle_check(args):
    check_geometry(args.l, args.s)
    spec = QuadratureSpec(k_max=args.k_max, radial=args.radial, angular=args.angular, delta_width=args.delta_width)
    w_perp, w_par = args.orientation.weights
    closed = w_perp * perp_ratio(args.config, args.l, args.s) + w_par * par_ratio(args.config, args.l, args.s)
    print(f"closed_form: {fmt(closed)}")
    try:
        oracle = bruteforce_ratio(args.config, args.l, args.s, args.orientation, spec)
    except OracleConvergenceError as exc:
        print(f"oracle: not converged ({fmt(exc.coarse)} -> {fmt(exc.fine)})")
        return EXIT_NOT_CONVERGED
    error = abs(oracle - closed) / max(closed, 0.05)
    canonical = CP if args.config == PC else args.config
    near_onset = distance_to_onset(canonical, args.l) <= ONSET_MARGIN
    print(f"oracle: {fmt(oracle)}")
    print(f"relative_error: {error:.3e}")
    print(f"near_mode_onset: {'yes' if near_onset else 'no'}")
    if error > ORACLE_TOLERANCE and not near_onset:
        print(f"FAIL: relative error exceeds {ORACLE_TOLERANCE:g}")
        return EXIT_CHECK_FAILED
    print("OK")
    return EXIT_OK


def _config(value):
    try:
        return PlateConfiguration.from_code(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _orientation(value):
    try:
        return DipoleOrientation.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plate-emission",
        description="Spontaneous emission rate of a two-level atom between conducting and permeable plates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_geometry=True, orientation_default="iso"):
        p.add_argument("--config", type=_config, required=True, metavar="{cc,cp,pp}")
        p.add_argument("--orientation", type=_orientation, default=orientation_default,
                       metavar="{perp,par,iso}")
        if need_geometry:
            p.add_argument("--l", type=float, required=True, help="plate separation k0 L")
            p.add_argument("--s", type=float, required=True, help="atom position k0 z")

    p = sub.add_parser("rate", help="ratios at a single point")
    common(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_rate)

    p = sub.add_parser("sweep", help="sweep s at fixed l, or l with the atom at the midpoint")
    common(p, need_geometry=False)
    p.add_argument("--vary", choices=("s", "l"), default="s")
    p.add_argument("--l", type=float, default=None, help="plate separation for an s-sweep")
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--stop", type=float, default=None)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", help="CSV data for fig1..fig4")
    p.add_argument("name", choices=sorted(FIGURES))
    p.add_argument("--l", type=float, default=None, help="plate separation for fig1/fig2 (required there)")
    p.add_argument("--orientation", type=_orientation, default="iso", help="dipole orientation for fig1/fig2")
    p.add_argument("--l-min", type=float, default=None)
    p.add_argument("--l-max", type=float, default=None)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("threshold", help="suppression threshold, analytic and scanned")
    common(p, need_geometry=False, orientation_default="perp")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("oracle-check", help="compare the closed form against brute-force mode summation")
    common(p)
    p.add_argument("--k-max", type=float, default=QuadratureSpec.k_max)
    p.add_argument("--radial", type=int, default=QuadratureSpec.radial)
    p.add_argument("--angular", type=int, default=QuadratureSpec.angular)
    p.add_argument("--delta-width", type=float, default=QuadratureSpec.delta_width)
    p.set_defaults(func=_cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GeometryError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
