"""Price ingestion, returns and descriptive statistics of daily returns."""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateSeriesError, InsufficientDataError, ParseError, ValidationError

__all__ = [
    "PriceSeries",
    "ReturnSeries",
    "SummaryStats",
    "JB_CRITICAL_1PCT",
    "load_prices",
    "read_prices",
    "write_prices",
    "compute_returns",
    "summary_stats",
    "jarque_bera",
]

# chi-square(2) upper 1% point, -2 ln(0.01)
JB_CRITICAL_1PCT = 9.2103


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Daily closes indexed by trading date.

    ``dates`` is a ``datetime64[D]`` array, strictly increasing; ``closes``
    holds positive prices of the same length.
    """

    dates: np.ndarray
    closes: np.ndarray

    def __post_init__(self):
        dates = _frozen(self.dates, "datetime64[D]")
        closes = _frozen(self.closes, float)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "closes", closes)
        if dates.ndim != 1 or dates.shape != closes.shape:
            raise ValidationError("dates and closes must be 1-d and of equal length")
        if len(closes) < 2:
            raise InsufficientDataError(f"need at least 2 prices, got {len(closes)}")
        if not np.all(np.isfinite(closes)) or np.any(closes <= 0):
            raise ValidationError("every close must be finite and > 0")
        steps = np.diff(dates).astype(np.int64)
        if np.any(steps == 0):
            raise ValidationError("duplicate date")
        if np.any(steps < 0):
            raise ValidationError("dates must be strictly increasing")

    def __len__(self):
        return len(self.closes)


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Returns ``returns[i]`` for the price pair ``(i, i+1)``, dated at ``i+1``."""

    dates: np.ndarray
    returns: np.ndarray
    mode: str = "simple"

    def __post_init__(self):
        dates = _frozen(self.dates, "datetime64[D]")
        returns = _frozen(self.returns, float)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "returns", returns)
        if dates.shape != returns.shape or returns.ndim != 1:
            raise ValidationError("dates and returns must be 1-d and of equal length")
        if not np.all(np.isfinite(returns)):
            raise ValidationError("returns must be finite")

    def __len__(self):
        return len(self.returns)


@dataclass(frozen=True)
class SummaryStats:
    count: int
    mean: float
    std_dev: float
    skewness: float
    kurtosis: float
    jarque_bera: float
    jb_reject_at_1pct: bool


def _parse_date(text, line):
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError:
        raise ParseError(f"bad date {text!r}, expected YYYY-MM-DD", line) from None


def _parse_close(text, line):
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"bad close {text!r}", line) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite close {text!r}", line)
    return value


def load_prices(source) -> PriceSeries:
    """Read ``date,close`` CSV text into a :class:`PriceSeries`.

    Parameters
    ----------
    source : binary or text file object, or str
        CSV with a header row naming ``date`` and ``close`` columns (other
        columns are ignored). A ``str`` is taken as the CSV text itself.

    Rows are sorted by date. Raises :class:`ParseError` (with line number)
    on malformed rows, :class:`ValidationError` on non-positive closes or
    duplicate dates, and :class:`InsufficientDataError` below two rows.
    """
    if isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8-sig") if isinstance(raw, bytes) else raw

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InsufficientDataError("empty CSV") from None
    names = [h.strip().lower() for h in header]
    for col in ("date", "close"):
        if col not in names:
            raise ParseError(f"missing column {col!r} in header", 1)
    i_date, i_close = names.index("date"), names.index("close")

    rows = []
    seen = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) <= max(i_date, i_close):
            raise ParseError(f"expected at least {max(i_date, i_close) + 1} fields, got {len(row)}", line)
        day = _parse_date(row[i_date], line)
        close = _parse_close(row[i_close], line)
        if close <= 0:
            raise ValidationError(f"line {line}: close must be > 0, got {close}")
        if day in seen:
            raise ValidationError(f"line {line}: duplicate date {day} (first on line {seen[day]})")
        seen[day] = line
        rows.append((day, close))

    if len(rows) < 2:
        raise InsufficientDataError(f"need at least 2 price rows, got {len(rows)}")
    rows.sort(key=lambda r: r[0])
    return PriceSeries(
        dates=np.array([r[0] for r in rows], dtype="datetime64[D]"),
        closes=np.array([r[1] for r in rows], dtype=float),
    )


def read_prices(path) -> PriceSeries:
    with open(path, "rb") as fh:
        return load_prices(fh)


def write_prices(prices: PriceSeries, path) -> None:
    """Write ``prices`` in the CSV layout :func:`load_prices` reads."""
    lines = ["date,close"]
    lines += [f"{d},{c!r}" for d, c in zip(prices.dates.astype(str), prices.closes.tolist())]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def compute_returns(prices: PriceSeries, mode: str = "simple", drop_zero: bool = False) -> ReturnSeries:
    """Daily returns between consecutive closes.

    ``mode="simple"`` gives ``(P[t+1] - P[t]) / P[t]``; ``mode="log"`` gives
    ``log(P[t+1] / P[t])``. Calendar gaps are ignored. With ``drop_zero``
    the days whose return is exactly zero are removed (stale quotes).
    """
    p = prices.closes
    if mode == "simple":
        r = (p[1:] - p[:-1]) / p[:-1]
    elif mode == "log":
        r = np.log(p[1:] / p[:-1])
    else:
        raise ValueError(f"unknown return mode {mode!r}")
    dates = prices.dates[1:]
    if drop_zero:
        keep = r != 0.0
        r, dates = r[keep], dates[keep]
    return ReturnSeries(dates=dates, returns=r, mode=mode)


def jarque_bera(count, skewness, kurtosis):
    """JB statistic from sample size, skewness and raw (normal = 3) kurtosis."""
    return count / 6.0 * (skewness**2 + (kurtosis - 3.0) ** 2 / 4.0)


def summary_stats(returns) -> SummaryStats:
    """Mean, sample std, skewness, raw kurtosis and the Jarque-Bera test.

    Skewness and kurtosis use biased central moments, ``m3 / m2**1.5`` and
    ``m4 / m2**2``; the standard deviation uses divisor ``L - 1``.
    """
    r = np.asarray(getattr(returns, "returns", returns), dtype=float)
    n = len(r)
    if n < 4:
        raise InsufficientDataError(f"need at least 4 returns, got {n}")
    mean = r.mean()
    d = r - mean
    m2 = np.mean(d**2)
    # rounding noise around a constant series counts as zero variance
    if m2 <= (64 * np.finfo(float).eps * np.abs(r).max()) ** 2:
        raise DegenerateSeriesError("zero variance; skewness and kurtosis undefined")
    m3 = np.mean(d**3)
    m4 = np.mean(d**4)
    skew = m3 / m2**1.5
    kurt = m4 / m2**2
    jb = jarque_bera(n, skew, kurt)
    return SummaryStats(
        count=n,
        mean=float(mean),
        std_dev=float(np.sqrt(np.sum(d**2) / (n - 1))),
        skewness=float(skew),
        kurtosis=float(kurt),
        jarque_bera=float(jb),
        jb_reject_at_1pct=bool(jb > JB_CRITICAL_1PCT),
    )
