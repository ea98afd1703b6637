"""Turning a lookback window into portfolio weights.

Three variants share one skeleton. Both biased variants drop assets whose
mean lookback return is non-positive, rescale each survivor's daily
volatility to the holding horizon, and weight survivors by inverse rescaled
volatility; they differ only in where the exponent comes from (estimated
per asset vs pinned at 0.5). Naive risk parity skips the trend filter and
weights every asset by inverse daily volatility, which matches the biased
pipelines up to the horizon factor that normalization cancels anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .data import AlignedPanel
from .errors import DegenerateVolatility, Empty, LengthMismatch
from .fractal import HurstConfig, HurstEstimate, build_path, estimate_hurst
from .riskstats import RiskEstimate, log_returns, mean_return, rescale_volatility, unbiased_std

WEIGHT_BUDGET_TOL = 1e-12


class StrategyVariant(str, Enum):
    FRACTAL_BIASED = "fractal_biased"
    STANDARD_BIASED = "standard_biased"
    NAIVE_RISK_PARITY = "naive_risk_parity"


@dataclass(eq=False)
class PortfolioWeights:
    """Long-only weights per asset plus the cash remainder.

    Weights are normalized to full investment whenever any asset survives;
    cash is 1 only when the trend filter removed everything. ``risk`` and
    ``hurst`` carry the per-asset diagnostics the weights were built from.
    """

    tickers: tuple[str, ...]
    weights: np.ndarray
    cash: float
    risk: dict[str, RiskEstimate] = field(default_factory=dict)
    hurst: dict[str, HurstEstimate] = field(default_factory=dict)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape != (len(self.tickers),):
            raise LengthMismatch(
                f"{len(self.tickers)} tickers vs weights shape {self.weights.shape}"
            )
        if np.any(self.weights < 0.0):
            raise ValueError("weights must be non-negative (long-only)")
        if self.cash < 0.0:
            raise ValueError(f"cash must be non-negative, got {self.cash}")
        budget = float(np.sum(self.weights)) + self.cash
        if abs(budget - 1.0) > WEIGHT_BUDGET_TOL:
            raise ValueError(f"weights + cash = {budget!r}, expected 1")
        if np.any(self.weights > 0.0) and self.cash != 0.0:
            raise ValueError("cash must be zero when any asset is held")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.tickers, (float(w) for w in self.weights)))


def trend_filter(risk: list[RiskEstimate]) -> np.ndarray:
    """Active mask: asset i stays investable iff its mean return is positive."""
    if not risk:
        raise Empty("trend filter needs at least one estimate")
    return np.array([r.mu > 0.0 for r in risk], dtype=bool)


def inverse_volatility_weights(stds: np.ndarray) -> np.ndarray:
    """Normalize 1/std across assets; uniform rescaling of stds cancels."""
    stds = np.asarray(stds, dtype=float)
    if stds.size == 0:
        raise Empty("no volatilities to weight")
    if np.any(stds <= 0.0):
        raise DegenerateVolatility(f"non-positive volatility among {stds}")
    inv = 1.0 / stds
    return inv / np.sum(inv)


def compute_weights(
    window: AlignedPanel,
    variant: StrategyVariant,
    n: int,
    hurst_config: HurstConfig = HurstConfig(),
) -> PortfolioWeights:
    """Run one variant's pipeline on a lookback window of exactly ``n`` rows.

    Benchmark-role columns ride along in the panel but never receive
    weight. When a biased variant filters out every asset the result is all
    zeros with cash = 1.
    """
    if window.n_rows != n:
        raise LengthMismatch(f"window has {window.n_rows} rows, expected horizon {n}")
    assets = window.portfolio_assets()
    if not assets:
        raise Empty("window contains no portfolio assets")
    variant = StrategyVariant(variant)

    returns = [log_returns(window.column(a.ticker), a.ticker) for a in assets]
    mus = [mean_return(r) for r in returns]
    std0s = [unbiased_std(r) for r in returns]
    tickers = tuple(a.ticker for a in assets)

    if variant is StrategyVariant.NAIVE_RISK_PARITY:
        active = np.ones(len(assets), dtype=bool)
    else:
        active = np.array([mu > 0.0 for mu in mus], dtype=bool)

    hurst_diag: dict[str, HurstEstimate] = {}
    risk_diag: dict[str, RiskEstimate] = {}
    std_invest = np.zeros(len(assets))
    for i, a in enumerate(assets):
        h = 0.5
        if active[i] and variant is StrategyVariant.FRACTAL_BIASED:
            est = estimate_hurst(build_path(returns[i].values), hurst_config)
            hurst_diag[a.ticker] = est
            h = est.h
        if active[i] and std0s[i] == 0.0:
            raise DegenerateVolatility(f"{a.ticker}: zero volatility over the window")
        std_n = rescale_volatility(std0s[i], n, h)
        risk_diag[a.ticker] = RiskEstimate(
            ticker=a.ticker, mu=mus[i], std0=std0s[i], h=h, std_n=std_n
        )
        if active[i]:
            # naive weighting uses the daily deviation; biased variants the
            # horizon-rescaled one (a shared factor would cancel anyway)
            std_invest[i] = std0s[i] if variant is StrategyVariant.NAIVE_RISK_PARITY else std_n

    weights = np.zeros(len(assets))
    if active.any():
        weights[active] = inverse_volatility_weights(std_invest[active])
        cash = 0.0
    else:
        cash = 1.0
    return PortfolioWeights(
        tickers=tickers, weights=weights, cash=cash, risk=risk_diag, hurst=hurst_diag
    )
