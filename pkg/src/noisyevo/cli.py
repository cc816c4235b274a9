"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 runtime error, 3 failed theory check.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .checks import format_report, run_theory_suite
from .harness import ALGORITHMS, ExperimentConfig, run_experiment, summarize, sweep
from .optimizers import DEFAULT_CK, DEFAULT_CM, DEFAULT_CT
from .tableio import TableWriteError, format_raw, format_summary_table

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_THEORY = 0, 1, 2, 3
SEED_ENV = "NOISYEVO_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return values


def _budget(text: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid budget {text!r}")
    if value != int(value):
        raise argparse.ArgumentTypeError(f"budget must be an integer, got {text}")
    return int(value)


def _experiment_flags(p: argparse.ArgumentParser, *, grid: bool) -> None:
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--n", type=int, default=100)
    if not grid:
        p.add_argument("--sigma2", type=float, default=0.0)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--budget", type=_budget, default=10 ** 8,
                   help="maximum noisy evaluations per run (accepts 1e6 style)")
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--K", type=int, default=None, help="cGA population size (default: auto)")
    p.add_argument("--mu", type=int, default=None, help="EA population size (default 1)")
    p.add_argument("--resamples", type=int, default=None,
                   help="reRLS evaluations per point (default: auto)")
    p.add_argument("--ck", type=float, default=None, help=f"auto K constant ({DEFAULT_CK:g})")
    p.add_argument("--cm", type=float, default=None, help=f"auto resample constant ({DEFAULT_CM:g})")
    p.add_argument("--ct", type=float, default=None, help=f"phase length constant ({DEFAULT_CT:g})")
    p.add_argument("--margin", action="store_true",
                   help="keep cGA frequencies inside [1/n, 1-1/n]")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, default=None)
    if grid:
        p.add_argument("--grid", type=_grid, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="noisyevo",
                     description="cGA vs (mu+1) EA vs reRLS on noisy OneMax")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _experiment_flags(sub.add_parser("run", help="one experiment, one summary row"), grid=False)
    _experiment_flags(sub.add_parser("sweep-variance", help="sweep sigma2 at fixed n"), grid=True)
    _experiment_flags(sub.add_parser("sweep-n", help="sweep n with sigma2 = sqrt(n)"), grid=True)
    _experiment_flags(sub.add_parser("export-raw", help="per-run records as CSV"), grid=False)
    vt = sub.add_parser("verify-theory", help="numerical checks of the analytic bounds")
    vt.add_argument("--seed", type=int, default=None)
    vt.add_argument("--out", type=Path, default=None)
    return parser


def _master_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}")


def _config(args) -> ExperimentConfig:
    if args.K is not None and args.ck is not None:
        raise UsageError("--K fixes the cGA size; it cannot be combined with --ck")
    if args.resamples is not None and args.cm is not None:
        raise UsageError("--resamples fixes the resample count; it cannot be combined with --cm")
    if args.algo.startswith("no-") and (args.K is not None or args.resamples is not None):
        raise UsageError("noise-oblivious variants size themselves; drop --K/--resamples")
    config = ExperimentConfig(
        algo=args.algo, n=args.n, sigma2=getattr(args, "sigma2", 0.0), runs=args.runs,
        budget=args.budget, master_seed=_master_seed(args), K=args.K, mu=args.mu,
        resamples=args.resamples,
        ck=DEFAULT_CK if args.ck is None else args.ck,
        cm=DEFAULT_CM if args.cm is None else args.cm,
        ct=DEFAULT_CT if args.ct is None else args.ct,
        margin=args.margin)
    try:
        config.validate()
    except ValueError as err:
        raise UsageError(str(err))
    return config


def parse_cli(argv=None):
    """Parse and validate ``argv``; returns ``(namespace, config_or_None)``.

    Raises ``SystemExit(1)`` for unknown flags or missing values and
    :class:`UsageError` for semantically conflicting options.
    """
    args = build_parser().parse_args(argv)
    if args.command == "verify-theory":
        return args, None
    return args, _config(args)


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="ascii")
    except OSError as err:
        raise TableWriteError(f"cannot write {out}: {err.strerror or err}") from err


def _sidecar(out: Path, suffix: str) -> Path:
    return out.with_name(out.stem + suffix)


def _run_command(args, config) -> int:
    if args.command == "verify-theory":
        seed = _master_seed(args)
        results = run_theory_suite(seed)
        _emit(format_report(results), args.out)
        return EXIT_OK if all(r.passed for r in results) else EXIT_THEORY

    if args.command == "export-raw":
        _emit(format_raw(run_experiment(config, args.workers)), args.out)
        return EXIT_OK

    if args.command == "run":
        records = run_experiment(config, args.workers)
        _emit(format_summary_table([summarize(records, config.sigma2)]), args.out)
        return EXIT_OK

    axis = "variance" if args.command == "sweep-variance" else "dimension"
    result = sweep(axis, args.grid, config, args.workers)
    _emit(format_summary_table(result.rows), args.out)
    if args.out is not None:
        _emit(format_summary_table(result.size_rows), _sidecar(args.out, ".sizes.dat"))
        meta = {"axis": axis, "points": result.points}
        _emit(json.dumps(meta, indent=1, sort_keys=True) + "\n",
              _sidecar(args.out, ".meta.json"))
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args, config = parse_cli(argv)
    except UsageError as err:
        print(f"noisyevo: error: {err}", file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run_command(args, config)
    except (OSError, ValueError) as err:
        print(f"noisyevo: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
