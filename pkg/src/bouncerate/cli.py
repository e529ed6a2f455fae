"""Command-line front end: single solves, sweeps, figure datasets, selftest.

Exit codes: 0 success, 2 usage/configuration error, 3 numerical failure,
4 unwritable output.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .model import INFINITE, ModelParams, QuadratureConfig
from .quadrature import NumericalError
from .sweep import (
    SweepSpec,
    run_sweep,
    single_row_result,
    solve_report,
    write_csv,
)

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_OUTPUT = 4

_MODEL_KEYS = ("v0", "sigma", "gamma", "tau_p", "cutoff")
_QUAD_KEYS = ("rel_tol", "abs_tol", "max_depth", "tail_mult")
_DEFAULTS = {
    "v0": 12.5, "sigma": 1.0, "gamma": 0.0, "tau_p": 0.0, "cutoff": 8000.0,
    "rel_tol": 1e-10, "abs_tol": 1e-14, "max_depth": 2000, "tail_mult": 50.0,
}
_SWEEP_PARAMS = {
    "gamma": "gamma", "tau_p": "tau_p",
    "sigma": "sigma_ratio", "cutoff": "cutoff_w",
}


def _parse_sigma(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return INFINITE
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid sigma value {text!r}")


def load_config(path: str) -> dict[str, float]:
    """Parse a flat key=value file; unknown keys and malformed numbers are
    usage errors (exit 2)."""
    values: dict[str, float] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _usage(f"cannot read config {path}: {exc}")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            _usage(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _MODEL_KEYS + _QUAD_KEYS:
            _usage(f"{path}:{lineno}: unknown key {key!r}")
        if key == "sigma" and val.lower() in ("inf", "infinity"):
            values[key] = INFINITE
            continue
        try:
            values[key] = int(val) if key == "max_depth" else float(val)
        except ValueError:
            _usage(f"{path}:{lineno}: malformed number {val!r} for key {key!r}")
    return values


def _usage(message: str) -> None:
    print(f"bouncerate: error: {message}", file=sys.stderr)
    raise SystemExit(EXIT_USAGE)


def _build_params(args) -> tuple[ModelParams, QuadratureConfig]:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(load_config(args.config))
    for cli_key, merged_key in (
        ("v0", "v0"), ("sigma", "sigma"), ("gamma", "gamma"),
        ("tau_p", "tau_p"), ("cutoff", "cutoff"),
    ):
        val = getattr(args, cli_key, None)
        if val is not None:
            merged[merged_key] = val

    sigma = merged["sigma"]
    if not (sigma > 0.0) or math.isnan(sigma):
        _usage("sigma must be > 0 or inf")
    if merged["v0"] <= 0.0:
        _usage("v0 must be > 0")
    if merged["gamma"] < 0.0 or merged["tau_p"] < 0.0:
        _usage("couplings must be >= 0")
    if merged["cutoff"] <= 0.0:
        _usage("cutoff must be > 0")
    try:
        params = ModelParams(
            barrier_b=merged["v0"], sigma_ratio=sigma,
            gamma=merged["gamma"], tau_p=merged["tau_p"], cutoff_w=merged["cutoff"],
        )
        cfg = QuadratureConfig(
            rel_tol=merged["rel_tol"], abs_tol=merged["abs_tol"],
            max_depth=int(merged["max_depth"]), tail_mult=merged["tail_mult"],
        )
    except ValueError as exc:
        _usage(str(exc))
    return params, cfg


def _add_model_flags(sub) -> None:
    sub.add_argument("--v0", type=float, help="barrier height V0/(hbar omega0)")
    sub.add_argument("--sigma", type=_parse_sigma, help="Sigma/V0 (> 0 or 'inf')")
    sub.add_argument("--gamma", type=float, help="position coupling gamma/omega0")
    sub.add_argument("--tau-p", dest="tau_p", type=float, help="momentum coupling tau_p*omega0")
    sub.add_argument("--cutoff", type=float, help="bath cutoff omega_c/omega0")
    sub.add_argument("--config", help="flat key=value configuration file")
    sub.add_argument("--oracle", action="store_true",
                     help="force direct-quadrature evaluation (slow, independent)")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bouncerate",
        description="Dissipation-modified quantum escape rates via the bounce method",
    )
    parser.add_argument("--version", action="version", version=f"bouncerate {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="single-point report")
    _add_model_flags(solve)
    solve.add_argument("--prefactor", action="store_true", help="include prefactor K/K0")
    solve.add_argument("--out", help="also write a single-row CSV here")

    sweep = subs.add_parser("sweep", help="sweep one parameter, write CSV")
    _add_model_flags(sweep)
    sweep.add_argument("--param", required=True, choices=sorted(_SWEEP_PARAMS),
                       help="parameter to sweep")
    sweep.add_argument("--from", dest="lo", type=float, required=True)
    sweep.add_argument("--to", dest="hi", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--scale", choices=("linear", "log"), default="linear")
    sweep.add_argument("--ratio", type=float, default=None,
                       help="hold tau_p = ratio * gamma while sweeping gamma")
    sweep.add_argument("--prefactor", action="store_true")
    sweep.add_argument("--out", required=True, help="output CSV path")

    figure = subs.add_parser("figure", help="reproduce a published figure dataset")
    from .figures import FIGURES

    figure.add_argument("name", choices=FIGURES)
    figure.add_argument("--outdir", default=".", help="output directory")
    figure.add_argument("--jobs", type=int, default=1)

    subs.add_parser("selftest", help="run the fast independent-oracle suite")
    return parser


def cmd_solve(args) -> int:
    params, cfg = _build_params(args)
    try:
        text, row = solve_report(params, cfg, with_prefactor=args.prefactor,
                                 oracle=args.oracle)
    except (NumericalError, ArithmeticError, RuntimeError) as exc:
        print(f"bouncerate: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(text)
    if args.out:
        result = single_row_result(params, cfg, row, args.prefactor, args.oracle)
        try:
            write_csv(result, args.out)
        except OSError as exc:
            print(f"bouncerate: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_OUTPUT
    return 0


def cmd_sweep(args) -> int:
    params, cfg = _build_params(args)
    try:
        spec = SweepSpec(
            param=_SWEEP_PARAMS[args.param], lo=args.lo, hi=args.hi,
            points=args.points, baseline=params, scale=args.scale,
            linked_ratio=args.ratio,
        )
    except ValueError as exc:
        _usage(str(exc))
    result = run_sweep(spec, cfg, with_prefactor=args.prefactor,
                       oracle=args.oracle, jobs=args.jobs)
    try:
        write_csv(result, args.out)
    except OSError as exc:
        print(f"bouncerate: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    if result.n_failed == len(result.rows):
        print("bouncerate: all sweep points failed", file=sys.stderr)
        return EXIT_NUMERICAL
    if result.n_failed:
        print(f"bouncerate: warning: {result.n_failed}/{len(result.rows)} "
              "points failed; see the error column", file=sys.stderr)
    return 0


def cmd_figure(args) -> int:
    from .figures import run_figure

    cfg = QuadratureConfig()
    try:
        written = run_figure(args.name, args.outdir, cfg, jobs=args.jobs)
    except OSError as exc:
        print(f"bouncerate: cannot write into {args.outdir}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    for path in written:
        print(path)
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    return run_selftest()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "solve": cmd_solve,
        "sweep": cmd_sweep,
        "figure": cmd_figure,
        "selftest": cmd_selftest,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
