"""Per-asset return statistics and horizon rescaling of volatility.

Returns are daily log returns in percent (100 * delta-log-price); every
standard deviation downstream inherits those units. The horizon rescaling
``std_n = std0 * n**h`` reduces to the familiar square-root-of-time rule at
``h = 0.5`` and is the only place the two allocation pipelines differ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import PriceSeries
from .errors import Empty, InvalidHurst, NonPositivePrice, TooShort


@dataclass(eq=False)
class ReturnSeries:
    """Daily log returns in percent for one ticker."""

    ticker: str
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(self.values)):
            raise ValueError(f"{self.ticker}: non-finite return")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RiskEstimate:
    """Mean, daily volatility, exponent and rescaled volatility for one asset."""

    ticker: str
    mu: float       # percent per day
    std0: float     # percent per day
    h: float
    std_n: float    # percent per horizon


def log_returns(prices, ticker: str | None = None) -> ReturnSeries:
    """Percent log returns: ``values[k] = 100 * (ln p[k+1] - ln p[k])``."""
    if isinstance(prices, PriceSeries):
        ticker = prices.ticker if ticker is None else ticker
        p = prices.closes
    else:
        p = np.asarray(prices, dtype=float)
    if p.size < 2:
        raise TooShort(f"need at least 2 prices, got {p.size}")
    if np.any(p <= 0.0):
        raise NonPositivePrice(ticker or "<series>", None, float(p.min()))
    return ReturnSeries(ticker=ticker or "", values=100.0 * np.diff(np.log(p)))


def _values(returns) -> np.ndarray:
    if isinstance(returns, ReturnSeries):
        return returns.values
    return np.asarray(returns, dtype=float)


def mean_return(returns) -> float:
    """Arithmetic mean of the returns, percent per day."""
    v = _values(returns)
    if v.size == 0:
        raise Empty("mean of an empty return series")
    return float(np.mean(v))


def unbiased_std(returns) -> float:
    """Sample standard deviation with the n-1 denominator."""
    v = _values(returns)
    if v.size < 2:
        raise TooShort(f"need at least 2 returns for a standard deviation, got {v.size}")
    return float(np.std(v, ddof=1))


def rescale_volatility(std0: float, n: int, h: float) -> float:
    """Rescale a one-day standard deviation to an n-day horizon: std0 * n**h."""
    if std0 < 0.0:
        raise ValueError(f"std0 must be non-negative, got {std0}")
    if n < 1:
        raise ValueError(f"horizon must be >= 1 day, got {n}")
    if not 0.0 < h <= 1.0:
        raise InvalidHurst(f"h must be in (0, 1], got {h}")
    return std0 * float(n) ** h
