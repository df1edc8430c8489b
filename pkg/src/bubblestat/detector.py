"""Exceedance periods of normalised statistics and their p-values.

A window centre exceeds when its z-score lies outside the two-sided band
``+/- z_{1 - alpha/2}``. Reported p-values are one-sided tail probabilities
of the period's extremum, the convention used for published tables of this
method (e.g. z = 3.4 gives p = 0.0003).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError, ConsistencyError
from .normal import norm_cdf, norm_ppf
from .sigma import SigmaEstimate
from .stats import KINDS, StatisticSeries

__all__ = [
    "DetectionConfig",
    "ExceedancePeriod",
    "DetectionReport",
    "two_sided_threshold",
    "tail_p_value",
    "extract_periods",
    "build_report",
]


@dataclass(frozen=True)
class DetectionConfig:
    """Detection settings.

    ``merge_gap`` is the largest number of sub-threshold valid centres
    allowed between two same-direction runs for them to be joined;
    ``min_run`` is the shortest reported period, counted in valid centres.
    """

    alpha: float = 0.05
    merge_gap: int = 10
    min_run: int = 1

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if int(self.merge_gap) != self.merge_gap or self.merge_gap < 0:
            raise ConfigError(f"merge_gap must be an integer >= 0, got {self.merge_gap}")
        if int(self.min_run) != self.min_run or self.min_run < 1:
            raise ConfigError(f"min_run must be an integer >= 1, got {self.min_run}")


@dataclass(frozen=True)
class ExceedancePeriod:
    statistic: str
    start_date: str
    end_date: str
    extremum_z: float
    p_value: float
    direction: str
    length: int = 0


@dataclass
class DetectionReport:
    periods: dict
    config: DetectionConfig
    sigma: SigmaEstimate | None
    invalid_counts: dict = field(default_factory=dict)
    degenerate_counts: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "config": asdict(self.config),
            "sigma": None if self.sigma is None else asdict(self.sigma),
            "periods": {k: [asdict(p) for p in v] for k, v in self.periods.items()},
            "invalid_counts": dict(self.invalid_counts),
            "degenerate_counts": dict(self.degenerate_counts),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            periods={k: [ExceedancePeriod(**p) for p in v] for k, v in d["periods"].items()},
            config=DetectionConfig(**d["config"]),
            sigma=None if d.get("sigma") is None else SigmaEstimate(**d["sigma"]),
            invalid_counts=dict(d.get("invalid_counts", {})),
            degenerate_counts=dict(d.get("degenerate_counts", {})),
        )


def two_sided_threshold(alpha):
    """``z_{1 - alpha/2}``; ``|z|`` above it is outside the confidence band."""
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must be in (0, 1), got {alpha}")
    return -norm_ppf(alpha / 2.0)


def tail_p_value(z):
    """One-sided tail beyond ``z``: ``1 - Phi(z)`` for ``z >= 0``, else ``Phi(z)``."""
    return norm_cdf(-abs(z))


def _runs(signs):
    """(start, end, sign) for maximal blocks of equal nonzero sign, end inclusive."""
    runs = []
    start = None
    for i, s in enumerate(signs):
        if start is not None and s != signs[start]:
            runs.append((start, i - 1, signs[start]))
            start = None
        if start is None and s != 0:
            start = i
    if start is not None:
        runs.append((start, len(signs) - 1, signs[start]))
    return runs


def extract_periods(series: StatisticSeries, cfg: DetectionConfig) -> list[ExceedancePeriod]:
    """Group exceeding window centres into periods.

    Works on the valid centres only, so invalid centres neither split runs
    nor count towards gaps. Adjacent runs in the same direction separated by
    at most ``cfg.merge_gap`` sub-threshold centres are merged; an upper run
    never merges with a lower one.
    """
    valid_idx = np.flatnonzero(series.valid)
    if len(valid_idx) == 0:
        return []
    z = np.asarray(series.normalized, dtype=float)[valid_idx]
    thr = two_sided_threshold(cfg.alpha)
    signs = np.where(z > thr, 1, np.where(z < -thr, -1, 0)).tolist()

    merged = []
    for start, end, sign in _runs(signs):
        if merged:
            p_start, p_end, p_sign = merged[-1]
            gap = start - p_end - 1  # only sub-threshold centres lie between
            if p_sign == sign and gap <= cfg.merge_gap:
                merged[-1] = (p_start, end, sign)
                continue
        merged.append((start, end, sign))

    dates = np.asarray(series.index_dates)[valid_idx]
    periods = []
    for start, end, sign in merged:
        length = end - start + 1
        if length < cfg.min_run:
            continue
        seg = z[start : end + 1]
        k = int(np.argmax(seg) if sign > 0 else np.argmin(seg))
        ext = float(seg[k])
        periods.append(
            ExceedancePeriod(
                statistic=series.kind,
                start_date=str(dates[start]),
                end_date=str(dates[end]),
                extremum_z=ext,
                p_value=tail_p_value(ext),
                direction="upper" if sign > 0 else "lower",
                length=int(length),
            )
        )
    return periods


def build_report(series, sigma: SigmaEstimate | None, cfg: DetectionConfig) -> DetectionReport:
    """Run :func:`extract_periods` on each of the U, V, C series.

    ``series`` maps kind to :class:`StatisticSeries` (as returned by
    :func:`bubblestat.stats.rolling_statistics`).
    """
    lengths = {k: len(s) for k, s in series.items()}
    if len(set(lengths.values())) > 1:
        raise ConsistencyError(f"statistic series lengths differ: {lengths}")
    ref = next(iter(series.values()), None)
    for k, s in series.items():
        if ref is not None and not np.array_equal(np.asarray(s.index_dates), np.asarray(ref.index_dates)):
            raise ConsistencyError(f"series {k} does not share index dates")

    u_valid = series["U"].valid if "U" in series else None
    periods, invalid, degenerate = {}, {}, {}
    for kind in KINDS:
        if kind not in series:
            continue
        s = series[kind]
        periods[kind] = extract_periods(s, cfg)
        invalid[kind] = int(np.count_nonzero(~s.valid))
        # centres that have a full window but are unusable
        degenerate[kind] = 0 if u_valid is None else int(np.count_nonzero(u_valid & ~s.valid))
    return DetectionReport(periods, cfg, sigma, invalid, degenerate)
