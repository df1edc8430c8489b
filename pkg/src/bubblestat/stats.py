"""Window statistics U, V, C and their moments under the no-bubble null.

For a window of ``n`` returns centred at index ``t`` (offsets
``-(n // 2)`` to ``n - n // 2 - 1``):

* ``U`` is the fraction of strictly positive returns,
* ``V`` is the mean of the positive returns plus the mean of the
  non-positive ones,
* ``C`` weights those two means by ``U`` and ``1 - U``.

Under i.i.d. ``N(0, sigma**2)`` returns all three are approximately normal;
:func:`rolling_statistics` turns them into z-scores with the analytic null
moments below, plugging in each window's realised positive/non-positive
counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConfigError, DegenerateWindowError, InsufficientDataError, WindowBoundsError

__all__ = [
    "WindowConfig",
    "WindowDecomposition",
    "StatisticSeries",
    "NullMoments",
    "KINDS",
    "indicator_u",
    "window_slice",
    "decompose_window",
    "statistic_U",
    "statistic_V",
    "statistic_C",
    "null_moments_U",
    "null_moments_V",
    "null_moments_C",
    "rolling_statistics",
    "window_statistics",
    "z_scores",
]

KINDS = ("U", "V", "C")

# Var(r+) / sigma**2 for the half-normal
_HALF_NORMAL_VAR = (math.pi - 2.0) / math.pi


@dataclass(frozen=True)
class WindowConfig:
    """Window length ``n``; windows are always centred (see module docs)."""

    n: int = 100

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 4:
            raise ConfigError(f"window length must be an integer >= 4, got {self.n}")

    @property
    def before(self):
        """Observations before the centre."""
        return self.n // 2

    @property
    def after(self):
        """Observations after the centre."""
        return self.n - self.n // 2 - 1


@dataclass(frozen=True)
class WindowDecomposition:
    """Split of a window into positive (``S+``) and non-positive (``S-``) returns.

    A mean is ``None`` when its set is empty.
    """

    n_pos: int
    n_neg: int
    mean_pos: float | None
    mean_neg: float | None

    @property
    def degenerate(self):
        return self.n_pos == 0 or self.n_neg == 0


@dataclass(frozen=True, eq=False)
class StatisticSeries:
    """One statistic evaluated at every window centre of a return series.

    ``raw`` and ``normalized`` are NaN wherever ``valid`` is False (edges
    without a full window, or degenerate windows for V and C).
    """

    kind: str
    index_dates: np.ndarray
    raw: np.ndarray
    normalized: np.ndarray
    valid: np.ndarray

    def __post_init__(self):
        n = len(self.raw)
        if not (len(self.index_dates) == len(self.normalized) == len(self.valid) == n):
            raise ValueError("StatisticSeries fields must share length")

    def __len__(self):
        return len(self.raw)


@dataclass(frozen=True)
class NullMoments:
    mean: float
    variance: float

    @property
    def std(self):
        return math.sqrt(self.variance)


def _values(returns):
    return np.asarray(getattr(returns, "returns", returns), dtype=float)


def indicator_u(r):
    """1 if ``r > 0`` else 0. Zero counts as non-positive."""
    return 1 if r > 0 else 0


def window_slice(t, cfg: WindowConfig, length):
    """Slice of the window centred at ``t`` within a series of ``length``."""
    lo = t - cfg.before
    hi = t + cfg.after + 1
    if lo < 0 or hi > length:
        raise WindowBoundsError(
            f"window of {cfg.n} centred at {t} does not fit in series of length {length}"
        )
    return slice(lo, hi)


def _window(returns, t, cfg):
    r = _values(returns)
    return r[window_slice(t, cfg, len(r))]


def _decompose(w):
    pos = w > 0
    n_pos = int(pos.sum())
    n_neg = len(w) - n_pos
    mean_pos = float(w[pos].mean()) if n_pos else None
    mean_neg = float(w[~pos].mean()) if n_neg else None
    return WindowDecomposition(n_pos, n_neg, mean_pos, mean_neg)


def decompose_window(returns, t, cfg: WindowConfig) -> WindowDecomposition:
    return _decompose(_window(returns, t, cfg))


def statistic_U(returns, t, cfg: WindowConfig) -> float:
    w = _window(returns, t, cfg)
    return int((w > 0).sum()) / len(w)


def statistic_V(returns, t, cfg: WindowConfig) -> float:
    """Mean of positive plus mean of non-positive returns in the window.

    Raises :class:`DegenerateWindowError` when either set is empty.
    """
    d = decompose_window(returns, t, cfg)
    if d.degenerate:
        raise DegenerateWindowError(f"window at {t}: n_pos={d.n_pos}, n_neg={d.n_neg}")
    return d.mean_pos + d.mean_neg


def statistic_C(returns, t, cfg: WindowConfig) -> float:
    """``mean(S+) * U + mean(S-) * (1 - U)`` over the window at ``t``."""
    w = _window(returns, t, cfg)
    d = _decompose(w)
    if d.degenerate:
        raise DegenerateWindowError(f"window at {t}: n_pos={d.n_pos}, n_neg={d.n_neg}")
    u = d.n_pos / len(w)
    return d.mean_pos * u + d.mean_neg * (1.0 - u)


def null_moments_U(cfg: WindowConfig | int) -> NullMoments:
    n = getattr(cfg, "n", cfg)
    if n < 1:
        raise ConfigError("window length must be >= 1")
    return NullMoments(0.5, 1.0 / (4.0 * n))


def _check_counts(n_pos, n_neg, sigma):
    if n_pos < 1 or n_neg < 1:
        raise DegenerateWindowError(f"n_pos={n_pos}, n_neg={n_neg}")
    if not sigma > 0:
        raise ConfigError(f"sigma must be > 0, got {sigma}")


def null_moments_V(n_pos, n_neg, sigma) -> NullMoments:
    _check_counts(n_pos, n_neg, sigma)
    return NullMoments(0.0, (1.0 / n_pos + 1.0 / n_neg) * _HALF_NORMAL_VAR * sigma**2)


def null_moments_C(cfg: WindowConfig | int, n_pos, n_neg, sigma) -> NullMoments:
    _check_counts(n_pos, n_neg, sigma)
    n = getattr(cfg, "n", cfg)
    var = (
        (math.pi - 2.0) * (n + 1) / (4.0 * math.pi * n_pos * n_neg) + 2.0 / (n * math.pi)
    ) * sigma**2
    return NullMoments(0.0, var)


def window_statistics(windows):
    """Raw U, V, C and counts for a 2-d array with one window per row.

    V and C are NaN for degenerate rows.
    """
    windows = np.atleast_2d(np.asarray(windows, dtype=float))
    n = windows.shape[1]
    pos = windows > 0
    n_pos = pos.sum(axis=1)
    n_neg = n - n_pos
    with np.errstate(invalid="ignore", divide="ignore"):
        mean_pos = np.where(pos, windows, 0.0).sum(axis=1) / n_pos
        mean_neg = np.where(pos, 0.0, windows).sum(axis=1) / n_neg
    u = n_pos / n
    degenerate = (n_pos == 0) | (n_neg == 0)
    v = np.where(degenerate, np.nan, mean_pos + mean_neg)
    c = np.where(degenerate, np.nan, mean_pos * u + mean_neg * (1.0 - u))
    return u, v, c, n_pos, n_neg


def z_scores(u, v, c, n_pos, n_neg, n, sigma):
    """Normalise raw statistics with the null moments (vectorised)."""
    n_pos = np.asarray(n_pos, dtype=float)
    n_neg = np.asarray(n_neg, dtype=float)
    mu = null_moments_U(n)
    zu = (np.asarray(u) - mu.mean) / mu.std
    with np.errstate(invalid="ignore", divide="ignore"):
        var_v = (1.0 / n_pos + 1.0 / n_neg) * _HALF_NORMAL_VAR * sigma**2
        var_c = ((math.pi - 2.0) * (n + 1) / (4.0 * math.pi * n_pos * n_neg) + 2.0 / (n * math.pi)) * sigma**2
        zv = np.asarray(v) / np.sqrt(var_v)
        zc = np.asarray(c) / np.sqrt(var_c)
    return zu, zv, zc


def rolling_statistics(returns, cfg: WindowConfig, sigma: float):
    """U, V and C at every window centre, raw and normalised.

    Parameters
    ----------
    returns : ReturnSeries or array_like
        Daily returns. Plain arrays get integer positions as index dates.
    cfg : WindowConfig
    sigma : float
        One series-level return standard deviation (normally the corrected
        estimate from :func:`bubblestat.sigma.estimate_sigma`).

    Returns
    -------
    dict
        ``{"U": StatisticSeries, "V": ..., "C": ...}``, each of the return
        series' length. The first ``n // 2`` and last ``n - n // 2 - 1``
        centres are invalid, as are V/C at degenerate windows.
    """
    r = _values(returns)
    n = cfg.n
    if len(r) < n:
        raise InsufficientDataError(f"insufficient data: {len(r)} returns for a window of {n}")
    if not sigma > 0:
        raise ConfigError(f"sigma must be > 0, got {sigma}")
    dates = getattr(returns, "dates", None)
    if dates is None:
        dates = np.arange(len(r))

    u, v, c, n_pos, n_neg = window_statistics(sliding_window_view(r, n))
    zu, zv, zc = z_scores(u, v, c, n_pos, n_neg, n, sigma)
    degenerate = (n_pos == 0) | (n_neg == 0)

    centres = slice(cfg.before, cfg.before + len(u))
    out = {}
    for kind, raw_w, z_w, bad in (
        ("U", u, zu, np.zeros_like(degenerate)),
        ("V", v, zv, degenerate),
        ("C", c, zc, degenerate),
    ):
        raw = np.full(len(r), np.nan)
        z = np.full(len(r), np.nan)
        valid = np.zeros(len(r), dtype=bool)
        raw[centres] = np.where(bad, np.nan, raw_w)
        z[centres] = np.where(bad, np.nan, z_w)
        valid[centres] = ~bad
        out[kind] = StatisticSeries(kind, dates, raw, z, valid)
    return out
