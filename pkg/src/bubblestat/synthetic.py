"""Synthetic price series with an injected rational bubble.

Price is fundamental plus bubble, ``P_t = F_t + B_t``. The fundamental is a
driftless multiplicative random walk starting at 100. Inside
``[bubble_start, bubble_end)`` the bubble follows the deterministic
expectation path ``B_{t+1} = theta_inv * B_t`` from
``B_start = initial_bubble * F_start``; after ``bubble_end`` it is removed
according to ``burst``. The bubble path is a simplification: it carries no
noise and no collapse probability.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import rng
from .errors import ConfigError
from .timeseries import PriceSeries

__all__ = ["BubbleScenario", "generate_series", "bubble_path", "scenario_library", "get_scenario", "load_scenario"]

EPOCH = np.datetime64("2005-01-03", "D")  # a Monday
INITIAL_PRICE = 100.0
BURST_MODES = ("none", "instant", "linear")


@dataclass(frozen=True)
class BubbleScenario:
    """Parameters of one synthetic series.

    ``burst`` is ``"none"`` (bubble stays at its last level), ``"instant"``
    (removed at ``bubble_end``) or ``"linear"`` (wound down to zero over
    ``burst_periods`` observations starting at ``bubble_end``).
    """

    length: int = 1000
    base_sigma: float = 0.01
    theta_inv: float = 1.0
    bubble_start: int = 350
    bubble_end: int = 650
    initial_bubble: float = 0.0
    burst: str = "none"
    burst_periods: int = 1
    seed: int = 0
    second_bubble: tuple | None = None

    def __post_init__(self):
        if self.length < 2:
            raise ConfigError("length must be >= 2")
        if not 0 <= self.bubble_start < self.bubble_end <= self.length:
            raise ConfigError("need 0 <= bubble_start < bubble_end <= length")
        if self.theta_inv < 1.0:
            raise ConfigError(f"theta_inv must be >= 1, got {self.theta_inv}")
        if self.initial_bubble < 0:
            raise ConfigError("initial_bubble must be >= 0")
        if not self.base_sigma > 0:
            raise ConfigError("base_sigma must be > 0")
        if self.burst not in BURST_MODES:
            raise ConfigError(f"burst must be one of {BURST_MODES}, got {self.burst!r}")
        if self.burst_periods < 1:
            raise ConfigError("burst_periods must be >= 1")
        if self.second_bubble is not None:
            s, e = self.second_bubble
            if not self.bubble_end <= s < e <= self.length:
                raise ConfigError("second_bubble must lie after the first and inside the series")
            object.__setattr__(self, "second_bubble", (int(s), int(e)))


def _fundamental(scn: BubbleScenario):
    eps = rng.normals(rng.stream(scn.seed, 0), scn.length - 1, scale=scn.base_sigma)
    return INITIAL_PRICE * np.exp(np.concatenate([[0.0], np.cumsum(eps)]))


def _add_episode(b, f, start, end, scn):
    level = scn.initial_bubble * f[start]
    for t in range(start, end):
        b[t] = level
        level *= scn.theta_inv
    last = b[end - 1]
    if scn.burst == "none":
        b[end:] = last
    elif scn.burst == "linear":
        k = scn.burst_periods
        steps = np.arange(1, k + 1)
        tail = last * (1.0 - steps / k)
        stop = min(len(b), end + k)
        b[end:stop] = tail[: stop - end]


def bubble_path(scn: BubbleScenario, fundamental=None):
    """Bubble component ``B_t`` for every observation."""
    f = _fundamental(scn) if fundamental is None else fundamental
    b = np.zeros(scn.length)
    if scn.initial_bubble > 0:
        _add_episode(b, f, scn.bubble_start, scn.bubble_end, scn)
        if scn.second_bubble is not None:
            s, e = scn.second_bubble
            second = np.zeros(scn.length)
            _add_episode(second, f, s, e, scn)
            b[s:] = second[s:]
    return b


def synthetic_dates(length):
    return np.busday_offset(EPOCH, np.arange(length), roll="forward")


def generate_series(scn: BubbleScenario) -> PriceSeries:
    f = _fundamental(scn)
    prices = f + bubble_path(scn, f)
    return PriceSeries(dates=synthetic_dates(scn.length), closes=prices)


_LIBRARY = {
    "null": BubbleScenario(),
    "bloom": BubbleScenario(theta_inv=1.004, initial_bubble=0.05, bubble_start=350, bubble_end=650),
    "bloom-and-crash": BubbleScenario(
        theta_inv=1.004, initial_bubble=0.05, bubble_start=350, bubble_end=650, burst="instant"
    ),
    "double-bubble": BubbleScenario(
        length=1500,
        theta_inv=1.004,
        initial_bubble=0.05,
        bubble_start=250,
        bubble_end=550,
        burst="instant",
        second_bubble=(900, 1200),
    ),
}


def scenario_library():
    """Named, fully pinned scenarios."""
    return dict(_LIBRARY)


def get_scenario(name, seed=None):
    """Library scenario ``name`` (optionally re-seeded), or ``None`` if unknown."""
    scn = _LIBRARY.get(name)
    if scn is not None and seed is not None:
        scn = replace(scn, seed=int(seed))
    return scn


def load_scenario(path):
    """Read a scenario from a JSON object of :class:`BubbleScenario` fields."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if "second_bubble" in data and data["second_bubble"] is not None:
        data["second_bubble"] = tuple(data["second_bubble"])
    try:
        return BubbleScenario(**data)
    except TypeError as exc:
        raise ConfigError(f"bad scenario file {path}: {exc}") from None


def scenario_to_dict(scn: BubbleScenario):
    d = asdict(scn)
    if d["second_bubble"] is not None:
        d["second_bubble"] = list(d["second_bubble"])
    return d
