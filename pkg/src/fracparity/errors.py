"""Exception hierarchy shared across the package.

Three branches matter to the CLI exit-code mapping: ConfigError (bad run
configuration or parameters), DataError (bad or insufficient input data) and
NumericError (a numerical procedure failed or hit a degenerate input).
"""

from __future__ import annotations


class FracparityError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(FracparityError):
    """Invalid run configuration or invalid user-supplied parameters."""


class DataError(FracparityError):
    """Input data is malformed, inconsistent, or too short for the task."""


class NumericError(FracparityError):
    """A numerical routine failed or was handed a degenerate input."""


# --- data ingestion -------------------------------------------------------

class MalformedRow(DataError):
    """A CSV row (or header) could not be parsed."""

    def __init__(self, path: str, line: int, detail: str):
        super().__init__(f"{path}:{line}: {detail}")
        self.path = path
        self.line = line


class NonPositivePrice(DataError):
    """A close price of zero or below was encountered."""

    def __init__(self, ticker: str, date, price: float):
        super().__init__(f"{ticker}: non-positive price {price} on {date}")
        self.date = date


class DuplicateDate(DataError):
    """The same calendar date appears twice in one series."""

    def __init__(self, ticker: str, date):
        super().__init__(f"{ticker}: duplicate date {date}")
        self.date = date


class EmptyIntersection(DataError):
    """Aligning the series left fewer than two common dates."""


class TickerMismatch(DataError):
    """Series tickers and asset specs do not match one-to-one."""


class OutOfRange(DataError):
    """A requested window does not fit inside the available history."""


class TooShort(DataError):
    """The series is too short for the requested computation."""


class Empty(DataError):
    """An operation that needs at least one element got none."""


class LengthMismatch(DataError):
    """Two series that must be aligned have different lengths."""


class InsufficientHistory(DataError):
    """The panel cannot accommodate even one lookback-plus-holding cycle."""


# --- numerics -------------------------------------------------------------

class DeltaTooLarge(NumericError):
    """The cover scale does not fit at least twice into the path."""


class DegeneratePath(NumericError):
    """The path is constant at some scale, so no scaling law can be fit."""


class OutOfStableRange(NumericError):
    """1/H falls outside the admissible stability interval (0, 2]."""


class QuadratureFailure(NumericError):
    """Adaptive quadrature could not reach the requested tolerance."""

    def __init__(self, achieved_error: float, tolerance: float):
        super().__init__(
            f"quadrature error estimate {achieved_error:.3e} exceeds "
            f"tolerance {tolerance:.3e}"
        )
        self.achieved_error = achieved_error
        self.tolerance = tolerance


class InvalidHurst(ConfigError):
    """A Hurst exponent outside (0, 1] was supplied for rescaling."""


class DegenerateVolatility(NumericError):
    """An asset selected for investment has zero return volatility."""


class InsufficientCapital(NumericError):
    """Commissions for the required trades exceed the available capital."""


class ZeroVolatility(NumericError):
    """Sharpe ratio is undefined at zero standard deviation."""


class ZeroBeta(NumericError):
    """Treynor ratio is undefined at zero beta."""


class DegenerateBenchmark(NumericError):
    """Benchmark returns have zero variance; beta is undefined."""


class InvalidStableParams(ConfigError):
    """Stable-distribution parameters violate their admissible ranges."""
