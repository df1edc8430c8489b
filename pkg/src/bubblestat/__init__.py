"""Asset-price bubble detection from daily closes with windowed U, V, C statistics.

Typical use::

    from bubblestat import read_prices, analyze
    result = analyze(read_prices("index.csv"))
    result.report.periods["U"]
"""

from .detector import (
    DetectionConfig,
    DetectionReport,
    ExceedancePeriod,
    build_report,
    extract_periods,
    tail_p_value,
    two_sided_threshold,
)
from .errors import BubbleStatError
from .pipeline import Analysis, analyze
from .sigma import SigmaEstimate, estimate_sigma, truncation_factor
from .stats import (
    StatisticSeries,
    WindowConfig,
    null_moments_C,
    null_moments_U,
    null_moments_V,
    rolling_statistics,
    statistic_C,
    statistic_U,
    statistic_V,
)
from .timeseries import PriceSeries, ReturnSeries, compute_returns, load_prices, read_prices, summary_stats

__version__ = "0.1.0"
