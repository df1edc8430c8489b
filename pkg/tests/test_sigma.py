import math

import numpy as np
import pytest
from scipy import integrate

from bubblestat.errors import DegenerateSeriesError, InsufficientDataError
from bubblestat.sigma import estimate_sigma, truncation_factor


def quadrature_k():
    """Oracle: E(r^2 | |r| <= 3) for r ~ N(0, 1) by numerical integration."""
    pdf = lambda x: math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)  # noqa: E731
    num, _ = integrate.quad(lambda x: x * x * pdf(x), -3, 3, epsabs=1e-14)
    den, _ = integrate.quad(pdf, -3, 3, epsabs=1e-14)
    return num / den


class TestTruncationFactor:
    def test_value(self):
        k = truncation_factor()
        assert k == pytest.approx(0.9733, abs=1e-4)
        assert 1 - k == pytest.approx(0.0267, abs=1e-4)

    def test_quadrature(self):
        assert truncation_factor() == pytest.approx(quadrature_k(), abs=1e-12)

    def test_monte_carlo(self):
        x = np.random.default_rng(123).standard_normal(1_000_000)
        kept = x[np.abs(x) <= 3]
        assert np.var(kept) == pytest.approx(truncation_factor(), rel=0.005)

    def test_limits(self):
        assert truncation_factor(10.0) == pytest.approx(1.0, abs=1e-15)
        assert 0 < truncation_factor(1.0) < truncation_factor(2.0) < 1


class TestEstimateSigma:
    def test_recovers_sigma(self):
        r = np.random.default_rng(7).normal(0, 0.01, 100_000)
        est = estimate_sigma(r)
        assert est.corrected_sigma == pytest.approx(0.01, rel=0.01)
        assert 0 < est.truncated_std <= est.raw_std
        assert 0 < est.k_factor < 1
        assert est.corrected_sigma > est.truncated_std

    def test_no_truncation(self):
        r = np.random.default_rng(0).uniform(-1, 1, 500)  # |r| <= sqrt(3) S
        est = estimate_sigma(r)
        assert est.kept_count == 500
        assert est.corrected_sigma == est.raw_std / math.sqrt(est.k_factor)

    @pytest.mark.parametrize("seed", range(20))
    def test_contamination(self, seed):
        rng = np.random.default_rng(seed)
        r = rng.normal(0, 0.01, 5000)
        idx = rng.choice(len(r), 50, replace=False)
        r[idx] = rng.choice([-0.1, 0.1], 50)
        est = estimate_sigma(r)
        assert abs(est.corrected_sigma - 0.01) < abs(est.raw_std - 0.01)

    @pytest.mark.parametrize("c", [1e-3, 0.5, 3.0, 250.0])
    def test_scale_equivariance(self, c):
        r = np.random.default_rng(2).standard_t(3, 3000)
        a, b = estimate_sigma(r), estimate_sigma(c * r)
        assert b.corrected_sigma == pytest.approx(c * a.corrected_sigma, rel=1e-12)
        assert a.kept_count == b.kept_count

    def test_kept_fraction(self):
        for seed in range(200):
            r = np.random.default_rng(seed).normal(0, 0.02, 1000)
            assert estimate_sigma(r).kept_count >= 950

    def test_unbiased(self):
        ratios = [estimate_sigma(np.random.default_rng(s).normal(0, 0.01, 10000)).corrected_sigma / 0.01
                  for s in range(200)]
        assert 0.995 <= np.mean(ratios) <= 1.005

    def test_degenerate(self):
        with pytest.raises(DegenerateSeriesError):
            estimate_sigma(np.full(50, 0.001))

    def test_short(self):
        with pytest.raises(InsufficientDataError):
            estimate_sigma(np.arange(29.0))
