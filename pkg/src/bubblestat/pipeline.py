"""Prices in, detection report out."""

from __future__ import annotations

from dataclasses import dataclass

from .detector import DetectionConfig, DetectionReport, build_report
from .errors import DegenerateSeriesError, InsufficientDataError
from .sigma import SigmaEstimate, estimate_sigma
from .stats import WindowConfig, rolling_statistics
from .timeseries import PriceSeries, ReturnSeries, SummaryStats, compute_returns, summary_stats


@dataclass(frozen=True, eq=False)
class Analysis:
    prices: PriceSeries
    returns: ReturnSeries
    summary: SummaryStats | None
    sigma: SigmaEstimate
    series: dict
    report: DetectionReport
    window: WindowConfig


def analyze(prices: PriceSeries, window=WindowConfig(), detection=DetectionConfig(), mode="simple",
            drop_zero=False) -> Analysis:
    returns = compute_returns(prices, mode=mode, drop_zero=drop_zero)
    if len(returns) < window.n:
        raise InsufficientDataError(
            f"insufficient data: {len(returns)} returns, window needs {window.n}"
        )
    try:
        summary = summary_stats(returns)
    except DegenerateSeriesError:
        summary = None
    sigma = estimate_sigma(returns)
    series = rolling_statistics(returns, window, sigma.corrected_sigma)
    report = build_report(series, sigma, detection)
    return Analysis(prices, returns, summary, sigma, series, report, window)
