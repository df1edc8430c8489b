"""Command line: ``bubblestat analyze | validate | simulate``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import montecarlo
from .detector import DetectionConfig, two_sided_threshold
from .errors import BubbleStatError
from .pipeline import analyze
from .reporting import (
    dump_report,
    round4,
    write_null_draws_csv,
    write_null_hist_csv,
    write_statistics_csv,
)
from .stats import KINDS, WindowConfig
from .synthetic import generate_series, get_scenario, load_scenario, scenario_library
from .timeseries import read_prices, write_prices

LOW_POWER_REPS = 1000


class StageError(Exception):
    def __init__(self, stage, exc):
        self.stage = stage
        super().__init__(f"{stage}: {exc}")


def _formats(text, allowed):
    fmts = [f.strip() for f in text.split(",") if f.strip()]
    bad = sorted(set(fmts) - set(allowed))
    if bad:
        raise argparse.ArgumentTypeError(f"unknown format(s) {bad}; choose from {sorted(allowed)}")
    return fmts


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (BubbleStatError, OSError, ValueError) as exc:
        raise StageError(name, exc) from exc


def _mkdir(path):
    Path(path).mkdir(parents=True, exist_ok=True)
    return Path(path)


def cmd_analyze(args):
    window = _stage("config", WindowConfig, args.window)
    detection = _stage("config", DetectionConfig, args.alpha, args.merge_gap, args.min_run)
    prices = _stage("ingest", read_prices, args.input)
    result = _stage(
        "analysis", analyze, prices, window, detection, mode=args.returns, drop_zero=args.drop_zero
    )
    out = _stage("output", _mkdir, args.out)

    run_config = {
        "input": str(args.input),
        "window": window.n,
        "alpha": detection.alpha,
        "merge_gap": detection.merge_gap,
        "min_run": detection.min_run,
        "returns": args.returns,
        "drop_zero_returns": args.drop_zero,
        "formats": list(args.formats),
    }
    if "json" in args.formats:
        text = dump_report(
            result.report,
            run_config=run_config,
            summary=result.summary,
            threshold=two_sided_threshold(detection.alpha),
            n_returns=len(result.returns),
        )
        _stage("output", (out / "report.json").write_text, text, encoding="utf-8", newline="\n")
    if "csv" in args.formats:
        _stage("output", write_statistics_csv, result.series, out / "statistics.csv")
    if "svg" in args.formats:
        from .plotting import plot_overview

        _stage("plot", plot_overview, result, out / "overview.svg")

    s = result.sigma
    print(f"sigma: raw {s.raw_std:.6g}, truncated {s.truncated_std:.6g}, corrected {s.corrected_sigma:.6g} "
          f"({s.kept_count}/{len(result.returns)} kept)")
    for k in KINDS:
        periods = result.report.periods[k]
        if not periods:
            print(f"{k}: no exceedance periods")
            continue
        spans = "; ".join(
            f"{p.start_date}..{p.end_date} {p.direction} z={round4(p.extremum_z):.4f} p={round4(p.p_value):.4f}"
            for p in periods
        )
        print(f"{k}: {len(periods)} period(s): {spans}")
    return 0


def cmd_validate(args):
    cfg = _stage("config", montecarlo.SimulationConfig, args.window, args.reps, args.seed)
    if args.reps < LOW_POWER_REPS:
        print(f"warning: {args.reps} replications is low power; the checks are calibrated for 10000")
    sim = montecarlo.simulate_null(cfg)
    out = _stage("output", _mkdir, args.out)
    hists = {k: montecarlo.histogram(sim.samples[k], args.bins) for k in KINDS}
    if "csv" in args.formats:
        _stage("output", write_null_draws_csv, sim, out / "null_draws.csv")
        _stage("output", write_null_hist_csv, hists, out / "null_hist.csv")
    if "svg" in args.formats:
        from .plotting import plot_null_densities

        _stage("plot", plot_null_densities, hists, out / "fig1.svg")

    checks = montecarlo.null_checks(sim)
    for c in checks:
        print(c.line())
    print(f"degenerate redraws: {sim.redraws}")
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_simulate(args):
    name = args.scenario
    scn = get_scenario(name, args.seed)
    if scn is None:
        path = Path(name)
        if not path.is_file():
            names = ", ".join(scenario_library())
            raise StageError("scenario", f"unknown scenario {name!r}; available: {names}")
        scn = _stage("scenario", load_scenario, path)
        if args.seed is not None:
            scn = replace(scn, seed=args.seed)
        name = path.stem
    prices = _stage("simulate", generate_series, scn)
    out = _stage("output", _mkdir, args.out)
    target = out / f"{name}.csv"
    _stage("output", write_prices, prices, target)
    print(f"wrote {len(prices)} prices to {target}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="bubblestat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="detect exceedance periods in a price CSV")
    a.add_argument("--input", required=True, type=Path, help="CSV with date,close columns")
    a.add_argument("--window", type=int, default=100)
    a.add_argument("--alpha", type=float, default=0.05)
    a.add_argument("--merge-gap", type=int, default=10)
    a.add_argument("--min-run", type=int, default=1)
    a.add_argument("--returns", choices=("simple", "log"), default="simple")
    a.add_argument("--drop-zero", action="store_true", help="drop zero-return days before windowing")
    a.add_argument("--out", type=Path, default=Path("out"))
    a.add_argument("--formats", type=lambda t: _formats(t, {"json", "csv", "svg"}), default=["json", "csv", "svg"])
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("validate", help="Monte Carlo check of the null distributions")
    v.add_argument("--window", type=int, default=100)
    v.add_argument("--reps", type=int, default=10000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--bins", type=int, default=50)
    v.add_argument("--out", type=Path, default=Path("out"))
    v.add_argument("--formats", type=lambda t: _formats(t, {"csv", "svg"}), default=["csv", "svg"])
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("simulate", help="write a synthetic bubble price series")
    s.add_argument("--scenario", required=True, help="library name or JSON scenario file")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out", type=Path, default=Path("out"))
    s.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StageError as exc:
        print(f"error in {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
