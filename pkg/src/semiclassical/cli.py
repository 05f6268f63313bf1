"""Command-line front end.

Subcommands write CSV or JSON tables; ``--figure`` also renders a PNG/PDF of
the same data, and ``figures`` regenerates the whole Morse study.

Exit codes: 0 success, 2 usage or configuration error, 3 numerical
failure, 4 the well holds too few bound levels.
"""
import argparse
import os
import sys

import numpy as np

from . import plotting
from .classical import NearCriticalPointError, QuadratureError
from .density import ContinuationError
from .output import write_table
from .potentials import BUILTIN_PARAMS, load_table, make_potential, parse_params
from .profiles import KINETIC_METHODS, NUMBER_METHODS, auto_grid, build_profiles, error_scan, fermi_setup
from .quantization import CapacityError, capacity, spectrum
from .reference import BoxTooSmallError, analytic_levels, solve_auto, solve_box

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_CAPACITY = 0, 2, 3, 4

DEFAULT_METHODS = {"number": "tf,uniform,exact", "kinetic": "tf,uniform,exact,local_functional"}
OBSERVABLE_NAMES = {"density": "number", "ked": "kinetic", "number": "number", "kinetic": "kinetic"}


class UsageError(ValueError):
    pass


def _potential(args):
    if args.table:
        if args.potential or args.params:
            raise UsageError("--table excludes --potential/--params")
        return load_table(args.table)
    if not args.potential:
        raise UsageError("one of --potential or --table is required")
    try:
        params = parse_params(args.params or "")
        return make_potential(args.potential, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _grid(args, setup):
    text = args.grid or "auto"
    if text == "auto":
        return auto_grid(setup)
    try:
        lo, hi, n = text.split(",")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"--grid expects lo,hi,npts or auto; got {text!r}") from None
    if not (hi > lo and n >= 2):
        raise UsageError("--grid needs lo < hi and npts >= 2")
    return np.linspace(lo, hi, n)


def _oracle(args, pot, nstates, grid=None):
    text = args.oracle or "auto"
    if text == "none":
        return None
    if text == "auto":
        cover = None if grid is None else (grid[0], grid[-1])
        return solve_auto(pot, nstates, args.hbar, cover=cover)
    try:
        lo, hi, n = text.split(",")
        return solve_box(pot, (float(lo), float(hi)), int(n), nstates, args.hbar)
    except ValueError as exc:
        if isinstance(exc, BoxTooSmallError):
            raise
        raise UsageError(f"--oracle expects auto, none or lo,hi,npts: {exc}") from None


def _methods(args, observable):
    text = args.methods or DEFAULT_METHODS[observable]
    methods = [m.strip() for m in text.split(",") if m.strip()]
    allowed = NUMBER_METHODS if observable == "number" else KINETIC_METHODS
    bad = [m for m in methods if m not in allowed]
    if bad:
        raise UsageError(f"unknown methods {bad} for {observable}; choose from {', '.join(allowed)}")
    return methods


def _emit(args, columns, meta):
    text = write_table(args.out, columns, meta, args.format)
    if not args.out or args.out == "-":
        sys.stdout.write(text)


def cmd_spectrum(args):
    pot = _potential(args)
    sp = spectrum(pot, args.n, args.hbar)
    j = np.array([lv[0] for lv in sp.levels])
    e_wkb = np.array([lv[1] for lv in sp.levels])
    cols = {"j": j, "E_wkb": e_wkb}
    if pot.name in ("morse", "harmonic"):
        ref = np.asarray(analytic_levels(pot.name, pot.params, j, args.hbar))
        cols["E_analytic"] = ref
    states = _oracle(args, pot, args.n)
    if states is not None:
        cols["E_oracle"] = states.energies
        ref = cols.get("E_analytic", states.energies)
    if "E_analytic" in cols or states is not None:
        cols["dE"] = e_wkb - ref
    cap = capacity(pot, args.hbar)
    meta = {"potential": pot.label(), "N": sp.N, "hbar": args.hbar, "E_F": sp.E_F, "omega_F": sp.omega_F,
            "lambda_max": cap["lambda_max"], "bound_states": cap["bound_states"],
            "max_particles": cap["max_particles"]}
    _emit(args, cols, meta)
    if args.figure:
        table = {"N": j + 1, "E_wkb": e_wkb, **({"E_oracle": cols["E_oracle"]} if "E_oracle" in cols else {})}
        plotting.plot_scan(table, [c for c in ("E_wkb", "E_oracle") if c in table], args.figure,
                           title=pot.label(), ylabel="E_j  (plotted at j + 1)", logy=False)
    return EXIT_OK


def cmd_profile(args, observable=None):
    observable = observable or OBSERVABLE_NAMES[args.observable]
    pot = _potential(args)
    methods = _methods(args, observable)
    setup = fermi_setup(pot, args.n, args.hbar)
    grid = _grid(args, setup)
    states = _oracle(args, pot, args.n, grid) if "exact" in methods else None
    if "exact" in methods and states is None:
        raise UsageError("method exact needs an oracle; drop --oracle none")
    profiles = build_profiles(setup, grid, methods, observable, states)
    cols = {"x": grid}
    cols.update({m: p.values for m, p in profiles.items()})
    meta = setup.meta()
    meta["observable"] = observable
    if states is not None:
        meta["oracle_box"] = list(states.box)
        meta["oracle_spacing"] = states.spacing
    _emit(args, cols, meta)
    if args.figure:
        plotting.plot_profiles(profiles, args.figure, title=f"{pot.label()}, N = {args.n}",
                               marks={"x_m": setup.x_m})
    return EXIT_OK


def _parse_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--scan expects lo..hi, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise UsageError("--scan needs 1 <= lo <= hi")
    return lo, hi


def cmd_scan(args):
    pot = _potential(args)
    lo, hi = _parse_range(args.scan)
    cap = capacity(pot, args.hbar)
    if hi > cap["max_particles"]:
        raise CapacityError(f"{pot.label()} holds at most {cap['max_particles']} particles; scan asks for {hi}",
                            max_particles=cap["max_particles"])
    cols = error_scan(pot, range(lo, hi + 1), args.hbar)
    meta = {"potential": pot.label(), "hbar": args.hbar, "max_particles": cap["max_particles"]}
    _emit(args, cols, meta)
    if args.figure:
        plotting.plot_scan(cols, ["eta_uniform", "eta_tf"], args.figure, title=pot.label(), scale={"eta_tf": 0.1})
    return EXIT_OK


def cmd_figures(args):
    """Regenerate the Morse study: profiles, errors, KED and both scans."""
    pot = make_potential("morse", {"D": 15.0, "a": 0.25}) if not (args.potential or args.table) else _potential(args)
    hbar = args.hbar
    os.makedirs(args.outdir, exist_ok=True)
    out = lambda name: os.path.join(args.outdir, name)  # noqa: E731
    ext = args.image_format
    written = []

    s2 = fermi_setup(pot, 2, hbar)
    g2 = auto_grid(s2)
    n2 = build_profiles(s2, g2, ("tf", "uniform", "exact"), "number")
    write_table(out("fig1_density_N2.csv"), {"x": g2, **{m: p.values for m, p in n2.items()}}, s2.meta())
    written.append(plotting.plot_profiles(n2, out(f"fig1_density_N2.{ext}"), title=f"{pot.label()}, N = 2"))

    curves = []
    for N in (2, 8):
        s = fermi_setup(pot, N, hbar)
        g = auto_grid(s)
        p = build_profiles(s, g, ("uniform", "exact"), "number")
        diff = p["uniform"].values - p["exact"].values
        curves.append((f"N = {N}", g, diff, s.x_m))
        write_table(out(f"fig2_error_N{N}.csv"), {"x": g, "diff": diff}, s.meta())
    written.append(plotting.plot_differences(curves, out(f"fig2_errors.{ext}"), title="uniform minus exact"))

    t2 = build_profiles(s2, g2, ("tf", "uniform", "exact", "local_functional"), "kinetic")
    write_table(out("fig4_ked_N2.csv"), {"x": g2, **{m: p.values for m, p in t2.items()}}, s2.meta())
    written.append(plotting.plot_profiles(t2, out(f"fig4_ked_N2.{ext}"), title=f"{pot.label()}, N = 2"))

    hi = min(args.scan_max, capacity(pot, hbar)["max_particles"])
    scan = error_scan(pot, range(1, hi + 1), hbar)
    write_table(out("fig3_fig5_scan.csv"), scan, {"potential": pot.label(), "hbar": hbar})
    written.append(plotting.plot_scan(scan, ["eta_uniform", "eta_tf"], out(f"fig3_eta.{ext}"),
                                      title=pot.label(), scale={"eta_tf": 0.1}))
    written.append(plotting.plot_scan(scan, ["eta_t_uniform", "eta_t_tf", "eta_t_local"], out(f"fig5_eta_t.{ext}"),
                                      title=pot.label(), ylabel=r"$\eta_T$"))
    for path in written:
        print(path)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--potential", choices=sorted(BUILTIN_PARAMS), help="built-in potential family")
    common.add_argument("--params", help="comma-separated key=value pairs, e.g. D=15,a=0.25")
    common.add_argument("--table", help="two-column x v(x) file instead of a built-in potential")
    common.add_argument("--n", type=int, default=2, help="particle number N (default 2)")
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--grid", default="auto", help="lo,hi,npts or auto (default)")
    common.add_argument("--methods", help="comma-separated method list")
    common.add_argument("--oracle", default="auto", help="exact solver box: auto, none or lo,hi,npts")
    common.add_argument("--out", default="-", help="output file ('-' for stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--figure", help="also render a figure to this path")

    parser = argparse.ArgumentParser(prog="semiclassical", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="WKB levels against analytic/oracle levels")
    sub.add_parser("density", parents=[common], help="number-density profiles")
    sub.add_parser("ked", parents=[common], help="kinetic-energy-density profiles")
    p = sub.add_parser("profile", parents=[common], help="either observable")
    p.add_argument("--observable", choices=("density", "ked"), default="density")
    p = sub.add_parser("scan", parents=[common], help="error measures against N")
    p.add_argument("--scan", default="1..16", help="N range lo..hi (default 1..16)")
    p = sub.add_parser("figures", parents=[common], help="render the Morse study figures and their data")
    p.add_argument("--outdir", default="figures")
    p.add_argument("--scan-max", type=int, default=17)
    p.add_argument("--image-format", choices=("png", "pdf", "svg"), default="png")
    return parser


COMMANDS = {
    "spectrum": cmd_spectrum,
    "density": lambda a: cmd_profile(a, "number"),
    "ked": lambda a: cmd_profile(a, "kinetic"),
    "profile": cmd_profile,
    "scan": cmd_scan,
    "figures": cmd_figures,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("--n must be >= 1")
    if not args.hbar > 0:
        parser.error("--hbar must be positive")
    try:
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (BoxTooSmallError, QuadratureError, ContinuationError, NearCriticalPointError,
            FloatingPointError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError, OSError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
