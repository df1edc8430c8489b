"""Monte Carlo checks of the null distributions of U, V and C.

:func:`simulate_null` draws independent windows of i.i.d. normal returns,
normalises U, V and C with the analytic null moments (sigma known), and
:func:`null_checks` compares the resulting draws with a standard normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import ConfigError
from .normal import norm_cdf, norm_ppf
from .stats import KINDS, null_moments_C, null_moments_U, null_moments_V, window_statistics, z_scores

__all__ = [
    "SimulationConfig",
    "NullSample",
    "NullSimulation",
    "CheckResult",
    "simulate_null",
    "null_checks",
    "ks_statistic",
    "ks_critical_1pct",
    "histogram",
    "brute_force_window_oracle",
]


@dataclass(frozen=True)
class SimulationConfig:
    window_n: int = 100
    replications: int = 10000
    seed: int = 0
    sigma: float = 1.0

    def __post_init__(self):
        if self.replications < 100:
            raise ConfigError(f"replications must be >= 100, got {self.replications}")
        if self.window_n < 4:
            raise ConfigError(f"window_n must be >= 4, got {self.window_n}")
        if not self.sigma > 0:
            raise ConfigError(f"sigma must be > 0, got {self.sigma}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")


def _moments(x):
    m = x.mean()
    d = x - m
    m2 = np.mean(d**2)
    return (
        float(m),
        float(np.var(x, ddof=1)),
        float(np.mean(d**3) / m2**1.5),
        float(np.mean(d**4) / m2**2 - 3.0),
    )


@dataclass(frozen=True, eq=False)
class NullSample:
    """Normalised draws of one statistic, one per replication."""

    kind: str
    draws: np.ndarray
    mean: float = field(init=False)
    variance: float = field(init=False)
    skewness: float = field(init=False)
    excess_kurtosis: float = field(init=False)

    def __post_init__(self):
        draws = np.asarray(self.draws, dtype=float)
        object.__setattr__(self, "draws", draws)
        m, v, s, k = _moments(draws)
        object.__setattr__(self, "mean", m)
        object.__setattr__(self, "variance", v)
        object.__setattr__(self, "skewness", s)
        object.__setattr__(self, "excess_kurtosis", k)


@dataclass(frozen=True, eq=False)
class NullSimulation:
    config: SimulationConfig
    samples: dict
    raw: dict
    n_pos: np.ndarray
    redraws: int

    def __getitem__(self, kind):
        return self.samples[kind]


def simulate_null(cfg: SimulationConfig) -> NullSimulation:
    """Run the null experiment.

    Replication ``i`` draws its window from :func:`bubblestat.rng.stream`
    ``(seed, i)``. A window whose returns all share a sign is redrawn from
    the same stream; the number of such redraws is reported.
    """
    n, reps = cfg.window_n, cfg.replications
    u = np.empty((reps, n))
    redraws = 0
    for i in range(reps):
        gen = rng.stream(cfg.seed, i)
        row = rng.uniforms(gen, n)
        # sign of the normal is the side of 0.5; 0.5 itself is never drawn
        while np.all(row > 0.5) or np.all(row < 0.5):
            redraws += 1
            row = rng.uniforms(gen, n)
        u[i] = row

    windows = cfg.sigma * norm_ppf(u)
    raw_u, raw_v, raw_c, n_pos, n_neg = window_statistics(windows)
    zu, zv, zc = z_scores(raw_u, raw_v, raw_c, n_pos, n_neg, n, cfg.sigma)
    samples = {k: NullSample(k, z) for k, z in zip(KINDS, (zu, zv, zc))}
    raw = {"U": raw_u, "V": raw_v, "C": raw_c}
    return NullSimulation(cfg, samples, raw, n_pos, redraws)


def ks_statistic(draws):
    """Kolmogorov-Smirnov distance between the sample and N(0, 1)."""
    x = np.sort(np.asarray(draws, dtype=float))
    m = len(x)
    f = norm_cdf(x)
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))


def ks_critical_1pct(m):
    """Asymptotic 1% critical value of the one-sample KS distance."""
    return 1.628 / math.sqrt(m)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    bound: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.value:.6g} (target {self.bound})"


def expected_raw_variances(sim: NullSimulation):
    """Null variances of raw U, V, C, averaging the V/C formulas over realised counts."""
    n, sigma = sim.config.window_n, sim.config.sigma
    n_pos = sim.n_pos
    n_neg = n - n_pos
    var_v = np.mean([null_moments_V(p, q, sigma).variance for p, q in zip(n_pos, n_neg)])
    var_c = np.mean([null_moments_C(n, p, q, sigma).variance for p, q in zip(n_pos, n_neg)])
    return {"U": null_moments_U(n).variance, "V": float(var_v), "C": float(var_c)}


def null_checks(sim: NullSimulation):
    """All distributional checks of a null simulation, in a fixed order.

    Normalised draws: ``|mean| < 0.05`` and variance in ``[0.9, 1.1]`` for
    each statistic; KS at 1% for V and C (U lives on a lattice); for C,
    ``|skew| < 0.1`` and ``|excess kurtosis| < 0.2``. Raw draws: variance
    within 5% (U) / 7% (V, C) of the analytic value and means within three
    standard errors of 1/2, 0, 0.
    """
    out = []
    reps = sim.config.replications
    for k in KINDS:
        s = sim.samples[k]
        out.append(CheckResult(f"{k} normalized mean", abs(s.mean) < 0.05, s.mean, "|x| < 0.05"))
        out.append(CheckResult(f"{k} normalized variance", 0.9 <= s.variance <= 1.1, s.variance, "[0.9, 1.1]"))
    crit = ks_critical_1pct(reps)
    for k in ("V", "C"):
        d = ks_statistic(sim.samples[k].draws)
        out.append(CheckResult(f"{k} KS distance", d < crit, d, f"< {crit:.4f}"))
    c = sim.samples["C"]
    out.append(CheckResult("C skewness", abs(c.skewness) < 0.1, c.skewness, "|x| < 0.1"))
    out.append(CheckResult("C excess kurtosis", abs(c.excess_kurtosis) < 0.2, c.excess_kurtosis, "|x| < 0.2"))

    expected = expected_raw_variances(sim)
    tol = {"U": 0.05, "V": 0.07, "C": 0.07}
    target_mean = {"U": 0.5, "V": 0.0, "C": 0.0}
    for k in KINDS:
        x = sim.raw[k]
        var = float(np.var(x, ddof=1))
        rel = var / expected[k] - 1.0
        out.append(CheckResult(f"{k} raw variance rel. error", abs(rel) <= tol[k], rel, f"|x| <= {tol[k]}"))
        se = math.sqrt(var / len(x))
        dev = (float(x.mean()) - target_mean[k]) / se
        out.append(CheckResult(f"{k} raw mean deviation (SE)", abs(dev) < 3.0, dev, "|x| < 3"))
    return out


def histogram(sample, bins=50):
    """Density-normalised histogram: ``(bin_centers, densities)``."""
    if bins < 2:
        raise ConfigError("bins must be >= 2")
    draws = getattr(sample, "draws", sample)
    dens, edges = np.histogram(np.asarray(draws, dtype=float), bins=bins, density=True)
    return 0.5 * (edges[:-1] + edges[1:]), dens


def brute_force_window_oracle(window):
    """U, V, C of one window by literal summation, for cross-checking.

    Returns ``(U, V, C)``; V and C are ``None`` when the window has no
    positive or no non-positive return.
    """
    values = [float(r) for r in window]
    n = len(values)
    if n < 1:
        raise ValueError("empty window")

    ind = []
    for r in values:
        ind.append(1 if r > 0 else 0)
    u_stat = 0.0
    for k in ind:
        u_stat += k
    u_stat /= n

    pos_sum, pos_cnt, neg_sum, neg_cnt = 0.0, 0, 0.0, 0
    for r in values:
        if r > 0:
            pos_sum += r
            pos_cnt += 1
        else:
            neg_sum += r
            neg_cnt += 1
    if pos_cnt == 0 or neg_cnt == 0:
        return u_stat, None, None

    v_stat = pos_sum / pos_cnt + neg_sum / neg_cnt

    up_frac = 0.0
    down_frac = 0.0
    for k in ind:
        up_frac += k
        down_frac += 1 - k
    c_stat = (pos_sum / pos_cnt) * (up_frac / n) + (neg_sum / neg_cnt) * (down_frac / n)
    return u_stat, v_stat, c_stat
