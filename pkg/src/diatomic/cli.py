"""Command-line front end.

Subcommands::

    simulate   amplitudes of one method as CSV (z,n,re,im,intensity)
    compare    JSON error report between two methods
    sweep      rotation-vs-exact worst error for several couplings
    plot       SVG intensity traces from simulate CSV files
    figures    CSV + SVG for the four standard comparison figures

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
import warnings

import numpy as np

from . import svg
from .analysis import METHODS, compare, default_z_grid, regime_sweep, solve
from .errors import ConvergenceError, CsvFormatError, DomainError
from .model import LatticeParams
from .ode import OdeConfig
from .perturbation import MAX_ORDER, RsOrderConfig

log = logging.getLogger("diatomic")

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4
CSV_HEADER = ("z", "n", "re", "im", "intensity")


class ConfigError(DomainError):
    pass


# -- output helpers -------------------------------------------------------------


def _num(x):
    # repr gives the shortest round-tripping decimal (<= 17 significant digits)
    return repr(float(x))


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def field_csv(z_grid, window, amplitudes):
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for z, row in zip(z_grid, amplitudes):
        zs = _num(z)
        for n, u in zip(range(-window, window + 1), row):
            buf.write(f"{zs},{n},{_num(u.real)},{_num(u.imag)},{_num(abs(u) ** 2)}\n")
    return buf.getvalue()


def read_field_csv(path):
    """Parse a simulate CSV into ``{n: (zs, intensities)}``.

    Raises
    ------
    CsvFormatError
        Naming the first malformed line.
    """
    traces = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
            raise CsvFormatError(f"expected header {','.join(CSV_HEADER)}", 1)
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(CSV_HEADER):
                raise CsvFormatError(f"expected 5 fields, got {len(row)}", line)
            try:
                z = float(row[0])
                n = int(row[1])
                float(row[2]), float(row[3])
                intensity = float(row[4])
            except ValueError as exc:
                raise CsvFormatError(str(exc), line) from None
            zs, ys = traces.setdefault(n, ([], []))
            zs.append(z)
            ys.append(intensity)
    if not traces:
        raise CsvFormatError("no data rows", 2)
    return traces


# -- argument handling ------------------------------------------------------------


def _physics_flags(p, method_flag=True):
    if method_flag:
        p.add_argument("--method", choices=METHODS, default="exact")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.3)
    p.add_argument("--m", type=int, default=0, help="excited guide")
    p.add_argument("--z-max", type=float, default=100.0)
    p.add_argument("--z-steps", type=int, default=1000)
    p.add_argument("--window", type=int, default=10, help="report guides -N..N")
    p.add_argument("--rs-order", type=int, default=3)
    p.add_argument("--step", type=float, default=1e-3, help="RK4 step for the ode method")
    p.add_argument("--ode-window", type=int, default=None,
                   help="lattice half-width for the ode method (default: automatic)")


def _parse_guides(text):
    guides = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition(":") if ":" in part else part.rpartition("..")
        if sep:
            guides.extend(range(int(lo), int(hi) + 1))
        else:
            guides.append(int(part))
    return guides


def build_parser():
    parser = argparse.ArgumentParser(prog="diatomic", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write amplitudes as CSV")
    _physics_flags(p)
    p.add_argument("-o", "--output", default="simulate.csv")

    p = sub.add_parser("compare", help="write a JSON comparison report")
    _physics_flags(p, method_flag=False)
    p.add_argument("--method-a", choices=METHODS, default="exact")
    p.add_argument("--method-b", choices=METHODS, default="ode")
    p.add_argument("-o", "--output", default="report.json")

    p = sub.add_parser("sweep", help="rotation-vs-exact error for several alphas")
    _physics_flags(p, method_flag=False)
    p.add_argument("--alphas", default="0.05,0.1,0.2,0.3")
    p.add_argument("-o", "--output", default="sweep.json")

    p = sub.add_parser("plot", help="SVG intensity plot from simulate CSV")
    p.add_argument("input")
    p.add_argument("--overlay", help="second CSV drawn with dashed lines")
    p.add_argument("--guides", default="0:10", help="e.g. '0:10' or '0,1,2'")
    p.add_argument("--title", default="")
    p.add_argument("--y-max", type=float, default=None, help="clip the intensity axis")
    p.add_argument("-o", "--output", default="plot.svg")

    p = sub.add_parser("figures", help="reproduce the four standard figures")
    p.add_argument("--outdir", default="figures")
    p.add_argument("--z-steps", type=int, default=1000)
    return parser


def _config(args):
    try:
        params = LatticeParams(args.omega, args.alpha)
        rs = RsOrderConfig(args.rs_order)
        ode = OdeConfig(step=args.step, window=args.ode_window)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    if args.z_steps < 1:
        raise ConfigError("--z-steps must be >= 1")
    if not args.z_max >= 0:
        raise ConfigError("--z-max must be >= 0")
    if args.window < 1 or abs(args.m) > args.window:
        raise ConfigError("--window must be >= 1 and contain --m")
    if args.rs_order > MAX_ORDER:
        raise ConfigError(f"--rs-order must be <= {MAX_ORDER}")
    z = default_z_grid(args.z_max, args.z_steps)
    return params, z, {"rs": rs, "ode": ode}


# -- subcommands ------------------------------------------------------------------


def cmd_simulate(args):
    params, z, opts = _config(args)
    amps = solve(args.method, params, args.m, z, args.window, **opts)
    write_atomic(args.output, field_csv(z, args.window, amps))


def cmd_compare(args):
    params, z, opts = _config(args)
    report = compare(args.method_a, args.method_b, params, args.m, z, args.window, **opts)
    write_atomic(args.output, json.dumps(report.to_dict(), indent=2) + "\n")


def cmd_sweep(args):
    params, z, opts = _config(args)
    try:
        alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    except ValueError as exc:
        raise ConfigError(f"--alphas: {exc}") from None
    result = regime_sweep(alphas, params, z, args.window, m=args.m, **opts)
    payload = {
        "omega": params.omega,
        "z_max": float(z[-1]),
        "window": args.window,
        "global_max_intensity_error": {repr(a): e for a, e in result.items()},
    }
    write_atomic(args.output, json.dumps(payload, indent=2) + "\n")


def plot_svg(primary, guides, overlay=None, title="", y_max=None):
    curves = []
    for i, n in enumerate(guides):
        color = svg.PALETTE[i % len(svg.PALETTE)]
        if n in primary:
            zs, ys = primary[n]
            curves.append(svg.Curve(f"n = {n}", zs, ys, color))
        if overlay and n in overlay:
            zs, ys = overlay[n]
            curves.append(svg.Curve(f"n = {n}", zs, ys, color, dashed=True))
    note = "solid: input\ndashed: overlay" if overlay else ""
    return svg.render(curves, title=title, legend_note=note, y_max=y_max)


def cmd_plot(args):
    try:
        guides = _parse_guides(args.guides)
    except ValueError:
        raise ConfigError(f"bad --guides {args.guides!r}") from None
    primary = read_field_csv(args.input)
    overlay = read_field_csv(args.overlay) if args.overlay else None
    write_atomic(args.output, plot_svg(primary, guides, overlay, args.title, args.y_max))


FIGURES = {
    # name: (alpha, guides, dashed method)
    "fig1": (0.3, list(range(0, 11)), None),
    "fig2": (0.1, [0, 1, 2], "rotation"),
    "fig3": (0.3, [0, 1, 2], "rotation"),
    "fig4": (0.3, [0, 1], "rs"),
}


def _traces(z, window, amps):
    return {n: (list(map(float, z)), list(map(float, np.abs(amps[:, n + window]) ** 2)))
            for n in range(-window, window + 1)}


def cmd_figures(args):
    os.makedirs(args.outdir, exist_ok=True)
    z = default_z_grid(100.0, args.z_steps)
    for name, (alpha, guides, dashed) in FIGURES.items():
        params = LatticeParams(1.0, alpha)
        window = max(guides)
        exact = solve("exact", params, 0, z, window)
        write_atomic(os.path.join(args.outdir, f"{name}_exact.csv"), field_csv(z, window, exact))
        overlay = None
        title = f"omega=1, alpha={alpha}: exact"
        if dashed:
            approx = solve(dashed, params, 0, z, window)
            write_atomic(os.path.join(args.outdir, f"{name}_{dashed}.csv"),
                         field_csv(z, window, approx))
            overlay = _traces(z, window, approx)
            title += f" (solid) vs {dashed} (dashed)"
        # intensities never exceed 1; the divergent series would flatten the plot
        y_max = 1.0 if dashed == "rs" else None
        doc = plot_svg(_traces(z, window, exact), guides, overlay, title, y_max)
        write_atomic(os.path.join(args.outdir, f"{name}.svg"), doc)
        log.info("wrote %s", name)


COMMANDS = {
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "plot": cmd_plot,
    "figures": cmd_figures,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        try:
            COMMANDS[args.command](args)
        except (CsvFormatError, OSError) as exc:
            print(f"diatomic: I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
        except ConvergenceError as exc:
            print(f"diatomic: solver error: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        except DomainError as exc:
            print(f"diatomic: configuration error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
