"""Command-line front door: backtest, hurst, stable-cdf.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
error. All numeric file output uses fixed 6-decimal precision so repeated
runs over identical inputs produce byte-identical artifacts (the manifest's
timestamp is the only permitted difference).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import datetime as dt
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .allocation import StrategyVariant
from .backtest import EquityCurve, PeriodResult, run_benchmark, run_walk_forward
from .data import load_series_csv
from .errors import ConfigError, DataError, NumericError
from .fractal import HurstConfig, StableParams, build_path, estimate_hurst, stable_cdf_with_error
from .metrics import PerformanceReport, build_report
from .riskstats import log_returns
from .runconfig import RunSettings, load_run_settings, load_universe_panel

BENCHMARK_LABEL = "benchmark"


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _print_error(category: str, exc: BaseException) -> None:
    print(f"error: {category}: {type(exc).__name__}: {exc}", file=sys.stderr)


# --- backtest artifacts -----------------------------------------------------


def _report_table(
    reports: dict[str, PerformanceReport], benchmark_ticker: str
) -> str:
    headers = ["", "Sharpe", "Treynor x 0.01", "Return, %", "Protection, %", "STD, %", "beta"]
    rows = []
    for name, rep in reports.items():
        label = f"{BENCHMARK_LABEL} ({benchmark_ticker})" if name == BENCHMARK_LABEL else name
        rows.append(
            [
                label,
                f"{rep.sharpe:.2f}",
                f"{rep.treynor_x001:.2f}",
                f"{rep.avg_annual_return:.2f}",
                f"{rep.protection:.2f}",
                f"{rep.annualized_std:.2f}",
                f"{rep.beta:.2f}",
            ]
        )
    widths = [max(len(headers[j]), *(len(r[j]) for r in rows)) for j in range(len(headers))]
    lines = ["  ".join(h.rjust(widths[j]) for j, h in enumerate(headers)).rstrip()]
    for r in rows:
        lines.append(
            r[0].ljust(widths[0]) + "  " + "  ".join(r[j].rjust(widths[j]) for j in range(1, len(r)))
        )
    return "\n".join(lines) + "\n"


def _write_report_json(path: Path, reports: dict[str, PerformanceReport], settings: RunSettings):
    def round6(obj):
        if isinstance(obj, float):
            return round(obj, 6)
        if isinstance(obj, list):
            return [round6(v) for v in obj]
        if isinstance(obj, dict):
            return {k: round6(v) for k, v in obj.items()}
        return obj

    doc = {
        "horizon_n": settings.horizon_n,
        "mode": settings.compounding,
        "risk_free_rate": settings.risk_free_rate,
        "benchmark": settings.benchmark,
        "reports": {name: round6(rep.to_dict()) for name, rep in reports.items()},
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _write_period_csv(
    path: Path,
    names: list[str],
    periods: dict[str, list[PeriodResult]],
):
    first = periods[names[0]]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["period", "start_date", "end_date", *names])
        for i, ref in enumerate(first):
            writer.writerow(
                [
                    i,
                    ref.start_date.isoformat(),
                    ref.end_date.isoformat(),
                    *(_fmt(periods[n][i].net_return) for n in names),
                ]
            )


def _cumulated_percent(curve: EquityCurve) -> np.ndarray:
    return 100.0 * (curve.values / curve.values[0] - 1.0)


def _write_cumulated_csv(path: Path, names: list[str], curves: dict[str, EquityCurve]):
    ref = curves[names[0]]
    cum = {n: _cumulated_percent(curves[n]) for n in names}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["date", *names])
        for i, date in enumerate(ref.dates):
            writer.writerow([date.isoformat(), *(_fmt(cum[n][i]) for n in names)])


def _write_difference_csv(path: Path, pair: tuple[str, str], curves: dict[str, EquityCurve]):
    a, b = pair
    cum_a = _cumulated_percent(curves[a])
    cum_b = _cumulated_percent(curves[b])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["date", f"{a}_minus_{b}"])
        for i, date in enumerate(curves[a].dates):
            writer.writerow([date.isoformat(), _fmt(cum_a[i] - cum_b[i])])


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    digest.update(path.read_bytes())
    return digest.hexdigest()


def _write_manifest(
    path: Path,
    settings: RunSettings,
    outputs: list[Path],
    seed: int | None,
):
    inputs = {str(settings.config_path): _sha256(settings.config_path)}
    for entry in settings.universe:
        inputs[str(entry.csv_path)] = _sha256(entry.csv_path)
    doc = {
        "engine_version": __version__,
        "timestamp": dt.datetime.now(dt.timezone.utc).isoformat(),
        "seed": seed,
        "config": {
            "benchmark": settings.benchmark,
            "horizon_n": settings.horizon_n,
            "variants": [v.value for v in settings.variants],
            "initial_capital": settings.initial_capital,
            "compounding": settings.compounding,
            "risk_free_rate": settings.risk_free_rate,
            "commission": dataclasses.asdict(settings.commission),
            "hurst": settings.hurst_options,
            "universe": [
                {
                    "ticker": e.spec.ticker,
                    "expense_ratio": e.spec.expense_ratio,
                    "role": e.spec.role,
                    "csv": str(e.csv_path),
                }
                for e in settings.universe
            ],
        },
        "inputs": inputs,
        "outputs": [p.name for p in outputs],
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _pick_figure_pair(settings: RunSettings, names: list[str]) -> tuple[str, str]:
    if settings.figure_pair is not None:
        a, b = settings.figure_pair
        known = set(names) | {BENCHMARK_LABEL}
        if a not in known or b not in known:
            raise ConfigError(f"figure_pair {settings.figure_pair} not among {sorted(known)}")
        return a, b
    fractal = StrategyVariant.FRACTAL_BIASED.value
    standard = StrategyVariant.STANDARD_BIASED.value
    if fractal in names and standard in names:
        return fractal, standard
    if len(names) >= 2:
        return names[0], names[1]
    return names[0], BENCHMARK_LABEL


def cmd_backtest(args) -> int:
    settings = load_run_settings(args.config)
    if args.horizon is not None:
        settings.horizon_n = args.horizon
    if args.variant:
        try:
            settings.variants = [StrategyVariant(v) for v in args.variant]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    panel = load_universe_panel(settings)
    base = settings.base_config()

    bench_results, bench_equity = run_benchmark(panel, base)
    names = [v.value for v in settings.variants]
    periods: dict[str, list[PeriodResult]] = {}
    curves: dict[str, EquityCurve] = {}
    reports: dict[str, PerformanceReport] = {}
    for variant in settings.variants:
        cfg = dataclasses.replace(base, variant=variant)
        results, equity = run_walk_forward(panel, cfg)
        periods[variant.value] = results
        curves[variant.value] = equity
        reports[variant.value] = build_report(
            results, equity, bench_results, settings.horizon_n,
            mode=settings.compounding, risk_free_rate=settings.risk_free_rate,
        )
    periods[BENCHMARK_LABEL] = bench_results
    curves[BENCHMARK_LABEL] = bench_equity
    reports[BENCHMARK_LABEL] = build_report(
        bench_results, bench_equity, bench_results, settings.horizon_n,
        mode=settings.compounding, risk_free_rate=settings.risk_free_rate,
    )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_json = out_dir / "report.json"
    report_txt = out_dir / "report.txt"
    period_csv = out_dir / "period_returns.csv"
    cumulated_csv = out_dir / "cumulated_returns.csv"
    difference_csv = out_dir / "difference.csv"

    _write_report_json(report_json, reports, settings)
    table = _report_table(reports, settings.benchmark)
    report_txt.write_text(table)
    all_names = [*names, BENCHMARK_LABEL]
    _write_period_csv(period_csv, all_names, periods)
    _write_cumulated_csv(cumulated_csv, all_names, curves)
    pair = _pick_figure_pair(settings, names)
    _write_difference_csv(difference_csv, pair, curves)
    outputs = [report_json, report_txt, period_csv, cumulated_csv, difference_csv]
    _write_manifest(out_dir / "manifest.json", settings, outputs, args.seed)

    print(table, end="")
    print(f"artifacts written to {out_dir}")
    return 0


def cmd_hurst(args) -> int:
    values = load_series_csv(args.csv, args.column)
    if args.prices:
        path = build_path(log_returns(values).values)
    else:
        path = np.asarray(values, dtype=float)
    config = HurstConfig(
        h_min=args.h_min,
        h_max=args.h_max,
        min_windows=args.min_windows,
        max_rungs=args.max_rungs,
    )
    est = estimate_hurst(path, config)
    print(f"h,{_fmt(est.h)}")
    print(f"mu_index,{_fmt(est.mu_index)}")
    print(f"r_squared,{_fmt(est.r_squared)}")
    print("delta,variation")
    for scale, variation in zip(est.scales, est.variations):
        print(f"{scale},{_fmt(variation)}")
    return 0


def cmd_stable_cdf(args) -> int:
    params = StableParams(alpha=args.alpha, beta=args.beta, sigma=args.sigma, mu_loc=args.mu)
    value, err = stable_cdf_with_error(args.r, params)
    print(f"cdf,{_fmt(value)}")
    print(f"error_estimate,{err:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracparity",
        description="Risk parity backtesting with a fractal volatility model",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bt = sub.add_parser("backtest", help="run a walk-forward backtest from a config file")
    p_bt.add_argument("--config", required=True, help="YAML run configuration")
    p_bt.add_argument("--out", default="out", help="output directory (default: ./out)")
    p_bt.add_argument("--horizon", type=int, default=None, help="override horizon in trading days")
    p_bt.add_argument(
        "--variant",
        action="append",
        default=None,
        help="strategy variant to run (repeatable; overrides config)",
    )
    p_bt.add_argument("--seed", type=int, default=None, help="recorded in the manifest; fixtures only")
    p_bt.set_defaults(func=cmd_backtest)

    p_h = sub.add_parser("hurst", help="estimate the Hurst exponent of a CSV series")
    p_h.add_argument("csv", help="input CSV path")
    p_h.add_argument("--column", default="value", help="column to read (default: value)")
    p_h.add_argument(
        "--prices",
        action="store_true",
        help="treat the column as prices: estimate on the cumulative log-return path",
    )
    p_h.add_argument("--min-windows", type=int, default=4)
    p_h.add_argument("--max-rungs", type=int, default=4)
    p_h.add_argument("--h-min", type=float, default=0.1)
    p_h.add_argument("--h-max", type=float, default=1.0)
    p_h.set_defaults(func=cmd_hurst)

    p_s = sub.add_parser("stable-cdf", help="evaluate the stable distribution function")
    p_s.add_argument("r", type=float, help="point of evaluation")
    p_s.add_argument("--alpha", type=float, required=True, help="stability index in (0, 2]")
    p_s.add_argument("--beta", type=float, default=0.0, help="skewness in [-1, 1]")
    p_s.add_argument("--sigma", type=float, default=1.0, help="scale, positive")
    p_s.add_argument("--mu", type=float, default=0.0, help="location")
    p_s.set_defaults(func=cmd_stable_cdf)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _print_error("config", exc)
        return 2
    except (DataError, FileNotFoundError) as exc:
        _print_error("data", exc)
        return 3
    except NumericError as exc:
        _print_error("numeric", exc)
        return 4


if __name__ == "__main__":
    sys.exit(main())
