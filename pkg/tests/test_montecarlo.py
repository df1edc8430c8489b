import numpy as np
import pytest
from numpy.testing import assert_array_equal
from scipy import stats

from bubblestat import rng
from bubblestat.errors import ConfigError
from bubblestat.montecarlo import (
    SimulationConfig,
    brute_force_window_oracle,
    histogram,
    ks_critical_1pct,
    ks_statistic,
    null_checks,
    simulate_null,
)
from bubblestat.normal import norm_pdf


@pytest.fixture(scope="module")
def sim():
    return simulate_null(SimulationConfig(seed=20240101))


def test_moments(sim):
    for k in "UVC":
        s = sim.samples[k]
        assert len(s.draws) == 10000
        assert -0.05 <= s.mean <= 0.05
        assert 0.9 <= s.variance <= 1.1


def test_ks_against_scipy(sim):
    for k in "VC":
        d = ks_statistic(sim.samples[k].draws)
        assert d == pytest.approx(stats.kstest(sim.samples[k].draws, "norm").statistic, abs=1e-12)
        assert d < ks_critical_1pct(10000)
    assert ks_critical_1pct(10000) == pytest.approx(0.0163, abs=1e-4)


def test_all_checks_pass(sim):
    failed = [c.line() for c in null_checks(sim) if not c.passed]
    assert not failed


def test_determinism():
    a = simulate_null(SimulationConfig(window_n=20, replications=300, seed=9))
    b = simulate_null(SimulationConfig(window_n=20, replications=300, seed=9))
    for k in "UVC":
        assert_array_equal(a.samples[k].draws, b.samples[k].draws)
    c = simulate_null(SimulationConfig(window_n=20, replications=300, seed=10))
    assert not np.array_equal(a.samples["V"].draws, c.samples["V"].draws)


def test_replications_are_independent_of_count():
    a = simulate_null(SimulationConfig(window_n=12, replications=100, seed=5))
    b = simulate_null(SimulationConfig(window_n=12, replications=400, seed=5))
    assert_array_equal(a.samples["C"].draws, b.samples["C"].draws[:100])


def test_degenerate_replications_are_redrawn():
    # with n = 4, one window in eight is single-signed
    sim = simulate_null(SimulationConfig(window_n=4, replications=2000, seed=1))
    assert 150 < sim.redraws < 350
    assert np.all(np.isfinite(sim.samples["V"].draws))


@pytest.mark.parametrize("kw", [{"replications": 99}, {"window_n": 3}, {"sigma": 0.0}, {"seed": -1}])
def test_config_invariants(kw):
    with pytest.raises(ConfigError):
        SimulationConfig(**kw)


class TestStreams:
    def test_uniforms_open(self):
        u = rng.uniforms(rng.stream(1, 2), 100000)
        assert u.min() > 0 and u.max() < 1

    def test_normals(self):
        x = rng.normals(rng.stream(3), 200000)
        assert abs(x.mean()) < 0.01 and abs(x.std() - 1) < 0.01

    def test_stream_identity(self):
        assert_array_equal(rng.uniforms(rng.stream(7, 3), 5), rng.uniforms(rng.stream(7, 3), 5))
        assert not np.array_equal(rng.uniforms(rng.stream(7, 3), 5), rng.uniforms(rng.stream(7, 4), 5))


class TestHistogram:
    def test_normalised(self):
        x = np.random.default_rng(0).standard_t(3, 5000)
        centers, dens = histogram(x, 37)
        width = centers[1] - centers[0]
        assert np.sum(dens * width) == pytest.approx(1.0, abs=1e-9)

    def test_normal_shape(self):
        x = np.random.default_rng(1).standard_normal(10000)
        centers, dens = histogram(x, 50)
        assert np.max(np.abs(dens - norm_pdf(centers))) < 0.05

    def test_single_value(self):
        _, dens = histogram(np.full(20, 1.5), 10)
        assert np.count_nonzero(dens) == 1

    def test_bins(self):
        with pytest.raises(ConfigError):
            histogram(np.zeros(3), 1)


class TestOracle:
    def test_hand_example(self):
        u, v, c = brute_force_window_oracle([0.03, -0.01])
        assert u == 0.5
        assert v == pytest.approx(0.02, abs=1e-15)
        assert c == pytest.approx(0.01, abs=1e-15)

    def test_zeros(self):
        assert brute_force_window_oracle([0.0] * 6) == (0.0, None, None)

    def test_empty(self):
        with pytest.raises(ValueError):
            brute_force_window_oracle([])
