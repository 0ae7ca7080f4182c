"""Command-line front end: ``fockmix {wigner,stats,hom,verify}``.

Exit codes: 0 ok, 1 verification failure, 2 invalid configuration,
3 cutoff too small for the requested state.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import circuit as circuits
from .analytic import hom_mzi_output, mean_photon_analytic, output_mixture
from .circuit import ConfigError, PRESETS
from .fock import CutoffError
from .phase_space import (
    DEFAULT_HALF_WIDTH,
    DEFAULT_POINTS,
    CutoffWarning,
    GridSpec,
    phase_space_center,
    wigner_from_mixture,
    wigner_numeric,
)
from .simulator import Coherent, Fock, auto_cutoff, photon_stats, reduced_output
from .verification import CHECKS, report, run_checks

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_CUTOFF = 0, 1, 2, 3

CONVENTION = "hbar = omega = 1 (q0 = 1); w is the raw Wigner function unless times_pi is true"


def fmt(x) -> str:
    """Shortest round-trip decimal for a double."""
    return repr(float(x))


def write_table(columns, rows, out, fmt_name: str):
    if fmt_name == "json":
        payload = {"columns": list(columns), "rows": [[float(v) for v in row] for row in rows]}
        text = json.dumps(payload) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(v) for v in row])
        text = buf.getvalue()
    _emit(text, out)


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _circuit(args):
    if args.circuit:
        return circuits.load(args.circuit)
    return PRESETS[args.preset]


def _cutoff(args, spec) -> int:
    if args.cutoff is not None:
        return args.cutoff
    if spec.cutoff is not None:
        return spec.cutoff
    return auto_cutoff(spec.input0, spec.input1)


def _theta_grid(args) -> np.ndarray:
    if args.theta_steps < 1:
        raise ConfigError("--theta-steps must be >= 1")
    return np.linspace(args.theta_min, args.theta_max, args.theta_steps)


def _is_oracle_pair(spec) -> bool:
    return spec.input0 == Fock(1) and isinstance(spec.input1, Coherent)


def cmd_wigner(args) -> int:
    spec = _circuit(args)
    s = spec.matrix()
    meta = {"convention": CONVENTION, "times_pi": bool(args.times_pi), "port": args.port,
            "circuit": circuits.to_dict(spec)}
    if _is_oracle_pair(spec) and not args.numeric:
        mix = output_mixture(s, spec.input1.alpha, args.port)
        center = phase_space_center(mix.displacement)
        meta.update(method="analytic", weights={"coherent": mix.weight_coherent,
                                                "displaced_fock": mix.weight_displaced_fock},
                    displacement=[mix.displacement.real, mix.displacement.imag])
        make_field = lambda grid: wigner_from_mixture(mix, grid)  # noqa: E731
    else:
        n_max = _cutoff(args, spec)
        rho = reduced_output(s, spec.input0, spec.input1, args.port, n_max=n_max)
        a_mean = complex(np.trace(rho.elements @ np.diag(np.sqrt(np.arange(1, n_max + 1)), 1)))
        center = phase_space_center(a_mean)
        meta.update(method="numeric", cutoff=n_max, weights=None, displacement=None)

        def make_field(grid):
            with warnings.catch_warnings():
                warnings.simplefilter("error", CutoffWarning)
                try:
                    return wigner_numeric(rho, grid)
                except CutoffWarning as exc:
                    raise CutoffError(str(exc)) from None

    hw, pts = args.half_width, args.points
    grid = GridSpec(
        args.q_min if args.q_min is not None else center[0] - hw,
        args.q_max if args.q_max is not None else center[0] + hw,
        args.p_min if args.p_min is not None else center[1] - hw,
        args.p_max if args.p_max is not None else center[1] + hw,
        args.nq or pts, args.np or pts,
    )
    field = make_field(grid)
    scale = math.pi if args.times_pi else 1.0
    meta["grid"] = {"q_min": grid.q_min, "q_max": grid.q_max, "p_min": grid.p_min, "p_max": grid.p_max,
                    "nq": grid.nq, "np": grid.np, "samples": "cell centers, q-major"}
    q, p = grid.mesh()
    rows = zip(q.ravel(), p.ravel(), (scale * field.values).ravel())
    write_table(("q", "p", "w"), rows, args.out, args.format)
    if args.out not in (None, "-"):
        with open(args.out + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    spec = _circuit(args)
    if not _is_oracle_pair(spec):
        raise ConfigError("stats needs a single photon on input0 and a coherent state on input1")
    if args.alpha:
        mags = [float(a) for a in args.alpha.split(",")]
    elif args.circuit:
        mags = [abs(spec.input1.alpha)]
    else:
        mags = [0.0, 1.0, 2.0]
    thetas = _theta_grid(args) if spec.has_sweep else [math.nan]
    cols = ["theta", "alpha_mag", "mean_upper", "mean_lower", "msd_upper", "msd_lower"]
    if args.numeric:
        cols += ["mean_upper_numeric", "mean_lower_numeric"]
    rows = []
    for a in mags:
        for theta in thetas:
            sp = spec.with_alpha_mag(a)
            if spec.has_sweep:
                sp = sp.with_theta(theta)
            s = sp.matrix()
            alpha = sp.input1.alpha
            up, lo = mean_photon_analytic(s, alpha, "upper"), mean_photon_analytic(s, alpha, "lower")
            row = [theta, a, up.mean, lo.mean, up.msd, lo.msd]
            if args.numeric:
                n_max = _cutoff(args, sp)
                row += [photon_stats(reduced_output(s, sp.input0, sp.input1, port, n_max=n_max)).mean
                        for port in ("upper", "lower")]
            rows.append(row)
    write_table(cols, rows, args.out, args.format)
    return EXIT_OK


def cmd_hom(args) -> int:
    rows = []
    for theta in _theta_grid(args):
        h = hom_mzi_output(theta)
        rows.append([theta, h.w_coincidence, h.w_20, h.w_02, h.mean_upper, h.mean_lower])
    write_table(("theta", "w_coincidence", "w_20", "w_02", "mean_upper", "mean_lower"), rows, args.out, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        _emit("".join(f"{c.name}\t{c.tolerance:g}\n" for c in CHECKS), args.out)
        return EXIT_OK
    try:
        results = run_checks(args.only, args.tolerance)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None
    rep = report(results)
    _emit(json.dumps(rep, indent=2) + "\n", args.out)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<24} max_error={r.max_error:.3e}  tol={r.tolerance:.1e}",
              file=sys.stderr)
    return EXIT_OK if rep["passed"] else EXIT_VERIFY


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--cutoff", type=int, default=default, help="Fock cutoff n_max (default: adaptive)")
    g.add_argument("--out", default=default, help="output path (default: stdout)")
    g.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS if suppress else "csv")
    return g


def _source_options(p: argparse.ArgumentParser, default_preset: str):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=sorted(PRESETS), default=default_preset)
    src.add_argument("--circuit", metavar="FILE", help="TOML circuit description")


def _theta_options(p: argparse.ArgumentParser, theta_max: float, steps: int):
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=theta_max)
    p.add_argument("--theta-steps", type=int, default=steps)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockmix", parents=[_global_options(False)],
                                     description="Single photon meets coherent state at lossless four-ports.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _global_options(True)

    w = sub.add_parser("wigner", parents=[common], help="Wigner function of one output port")
    _source_options(w, "fig2a")
    w.add_argument("--port", choices=("lower", "upper"), default="lower")
    w.add_argument("--half-width", type=float, default=DEFAULT_HALF_WIDTH)
    w.add_argument("--points", type=int, default=DEFAULT_POINTS)
    for name in ("q-min", "q-max", "p-min", "p-max"):
        w.add_argument(f"--{name}", type=float)
    w.add_argument("--nq", type=int)
    w.add_argument("--np", type=int)
    w.add_argument("--times-pi", action="store_true", help="scale values by pi")
    w.add_argument("--numeric", action="store_true", help="use the Fock-space simulation even when a closed form exists")
    w.set_defaults(func=cmd_wigner)

    s = sub.add_parser("stats", parents=[common], help="photon-number means and variances over a phase sweep")
    _source_options(s, "fig4")
    s.add_argument("--alpha", help="comma-separated |alpha| values (preset default 0,1,2)")
    _theta_options(s, 2 * math.pi, 73)
    s.add_argument("--numeric", action="store_true", help="add simulated means")
    s.set_defaults(func=cmd_stats)

    h = sub.add_parser("hom", parents=[common], help="two single photons through the balanced MZI")
    _theta_options(h, math.pi, 25)
    h.set_defaults(func=cmd_hom)

    v = sub.add_parser("verify", parents=[common], help="run the oracle-vs-simulator checks")
    v.add_argument("--tolerance", type=float, help="override every check's tolerance")
    v.add_argument("--only", action="append", metavar="CHECK", help="run only this check (repeatable)")
    v.add_argument("--list", action="store_true", help="list the available checks")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CutoffError as exc:
        print(f"fockmix: cutoff inadequate: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except (ConfigError, ValueError, OSError) as exc:
        print(f"fockmix: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
