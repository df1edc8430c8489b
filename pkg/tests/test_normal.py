import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bubblestat.normal import norm_cdf, norm_pdf, norm_ppf


def erfc_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def bisect_quantile(p, lo=-40.0, hi=40.0):
    """Oracle: invert the erfc-based CDF by bisection (lower tail, reflected)."""
    if p > 0.5:
        return -bisect_quantile(1.0 - p)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if erfc_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize("x", [-8.0, -3.0, -1.5, 0.0, 0.3, 2.5, 6.0])
def test_cdf_matches_erfc(x):
    assert norm_cdf(x) == pytest.approx(erfc_cdf(x), abs=1e-15, rel=1e-13)


def test_cdf_accuracy_target():
    xs = np.linspace(-8, 8, 2001)
    worst = max(abs(norm_cdf(x) - erfc_cdf(x)) for x in xs)
    assert worst < 1e-7


@pytest.mark.parametrize("p", [1e-12, 1e-6, 0.001, 0.01, 0.02425, 0.025, 0.3, 0.5, 0.7, 0.975, 0.999, 1 - 1e-9])
def test_ppf_against_bisection(p):
    assert norm_ppf(p) == pytest.approx(bisect_quantile(p), abs=1e-9)


def test_ppf_known_quantiles():
    assert norm_ppf(0.975) == pytest.approx(1.959963984540054, abs=1e-12)
    assert norm_ppf(0.995) == pytest.approx(2.5758293035489, abs=1e-12)


def test_ppf_edges():
    assert norm_ppf(0.0) == -math.inf
    assert norm_ppf(1.0) == math.inf
    assert math.isnan(norm_ppf(1.5))
    out = norm_ppf(np.array([[0.5, 0.0]]))
    assert out.shape == (1, 2) and out[0, 0] == 0.0


@given(st.floats(1e-300, 1 - 1e-12))
def test_ppf_inverts_cdf(p):
    x = norm_ppf(p)
    assert norm_cdf(x) == pytest.approx(p, rel=1e-9)


def test_pdf():
    assert norm_pdf(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
