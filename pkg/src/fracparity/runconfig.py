"""Run configuration: one YAML document describing a whole backtest.

The document lists the universe (ticker, csv path, expense ratio, role),
the benchmark ticker, horizon, variants to run, capital, compounding mode,
commission plan and estimator knobs. CSV paths are resolved relative to the
config file so committed fixtures stay relocatable.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .allocation import StrategyVariant
from .backtest import FIXED_CAPITAL, REINVEST, BacktestConfig, CommissionPlan
from .data import (
    DEFAULT_DATE_COLUMN,
    DEFAULT_PRICE_COLUMN,
    AlignedPanel,
    AssetSpec,
    align_panel,
    load_price_csv,
)
from .errors import ConfigError


@dataclass(frozen=True)
class UniverseEntry:
    spec: AssetSpec
    csv_path: Path


@dataclass(eq=False)
class RunSettings:
    universe: list[UniverseEntry]
    benchmark: str
    horizon_n: int
    variants: list[StrategyVariant]
    initial_capital: float
    compounding: str
    commission: CommissionPlan
    hurst_options: dict
    risk_free_rate: float = 0.0
    figure_pair: tuple[str, str] | None = None
    date_column: str = DEFAULT_DATE_COLUMN
    price_column: str = DEFAULT_PRICE_COLUMN
    config_path: Path | None = None

    def base_config(self) -> BacktestConfig:
        from .fractal import HurstConfig

        return BacktestConfig(
            horizon_n=self.horizon_n,
            initial_capital=self.initial_capital,
            commission=self.commission,
            compounding=self.compounding,
            benchmark=self.benchmark,
            hurst=HurstConfig(**self.hurst_options),
        )


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ConfigError(f"{context}: missing required key {key!r}")
    return mapping[key]


def load_run_settings(path: str | Path) -> RunSettings:
    """Parse and validate a YAML run configuration."""
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except FileNotFoundError:
        raise
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML ({exc})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")

    universe_raw = _require(raw, "universe", str(path))
    if not isinstance(universe_raw, list) or not universe_raw:
        raise ConfigError(f"{path}: universe must be a non-empty list")
    universe: list[UniverseEntry] = []
    for i, entry in enumerate(universe_raw):
        if not isinstance(entry, dict):
            raise ConfigError(f"{path}: universe[{i}] must be a mapping")
        ticker = str(_require(entry, "ticker", f"universe[{i}]"))
        csv_rel = str(_require(entry, "csv", f"universe[{i}]"))
        try:
            spec = AssetSpec(
                ticker=ticker,
                expense_ratio=float(entry.get("expense_ratio", 0.0)),
                role=str(entry.get("role", "portfolio_asset")),
            )
        except ValueError as exc:
            raise ConfigError(f"{path}: universe[{i}]: {exc}") from None
        csv_path = Path(csv_rel)
        if not csv_path.is_absolute():
            csv_path = path.parent / csv_path
        universe.append(UniverseEntry(spec=spec, csv_path=csv_path))

    tickers = [u.spec.ticker for u in universe]
    if len(set(tickers)) != len(tickers):
        raise ConfigError(f"{path}: duplicate tickers in universe: {tickers}")

    benchmark = str(_require(raw, "benchmark", str(path)))
    if benchmark not in tickers:
        raise ConfigError(f"{path}: benchmark {benchmark!r} is not in the universe")

    horizon = raw.get("horizon", 252)
    if not isinstance(horizon, int) or horizon < 8:
        raise ConfigError(f"{path}: horizon must be an integer >= 8, got {horizon!r}")

    variants_raw = raw.get("variants", [v.value for v in StrategyVariant])
    try:
        variants = [StrategyVariant(v) for v in variants_raw]
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not variants:
        raise ConfigError(f"{path}: variants must not be empty")

    compounding = str(raw.get("compounding", FIXED_CAPITAL))
    if compounding not in (FIXED_CAPITAL, REINVEST):
        raise ConfigError(f"{path}: unknown compounding mode {compounding!r}")

    commission_raw = raw.get("commission", {})
    if not isinstance(commission_raw, dict):
        raise ConfigError(f"{path}: commission must be a mapping")
    try:
        commission = CommissionPlan(**commission_raw)
    except (TypeError, ConfigError) as exc:
        raise ConfigError(f"{path}: commission: {exc}") from None

    hurst_options = raw.get("hurst", {})
    if not isinstance(hurst_options, dict):
        raise ConfigError(f"{path}: hurst must be a mapping")

    figure_pair = None
    if "figure_pair" in raw:
        pair = raw["figure_pair"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError(f"{path}: figure_pair must list exactly two strategy names")
        figure_pair = (str(pair[0]), str(pair[1]))

    columns = raw.get("columns", {})
    if not isinstance(columns, dict):
        raise ConfigError(f"{path}: columns must be a mapping")

    initial_capital = float(raw.get("initial_capital", 1_000_000.0))
    if initial_capital <= 0.0:
        raise ConfigError(f"{path}: initial_capital must be positive")

    return RunSettings(
        universe=universe,
        benchmark=benchmark,
        horizon_n=horizon,
        variants=variants,
        initial_capital=initial_capital,
        compounding=compounding,
        commission=commission,
        hurst_options=hurst_options,
        risk_free_rate=float(raw.get("risk_free_rate", 0.0)),
        figure_pair=figure_pair,
        date_column=str(columns.get("date", DEFAULT_DATE_COLUMN)),
        price_column=str(columns.get("price", DEFAULT_PRICE_COLUMN)),
        config_path=path,
    )


def load_universe_panel(settings: RunSettings) -> AlignedPanel:
    """Load every universe CSV and align the series into one panel."""
    series = [
        load_price_csv(
            str(entry.csv_path),
            entry.spec.ticker,
            date_column=settings.date_column,
            price_column=settings.price_column,
        )
        for entry in settings.universe
    ]
    specs = [entry.spec for entry in settings.universe]
    return align_panel(series, specs)
