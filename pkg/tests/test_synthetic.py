import numpy as np
import pytest
from numpy.testing import assert_array_equal

from bubblestat.errors import ConfigError
from bubblestat.synthetic import (
    BubbleScenario,
    bubble_path,
    generate_series,
    get_scenario,
    load_scenario,
    scenario_library,
    scenario_to_dict,
)


def test_library_names():
    lib = scenario_library()
    assert set(lib) == {"null", "bloom", "bloom-and-crash", "double-bubble"}
    assert lib["null"].theta_inv == 1.0 and lib["null"].initial_bubble == 0.0
    bloom = lib["bloom"]
    assert (bloom.theta_inv, bloom.initial_bubble, bloom.base_sigma) == (1.004, 0.05, 0.01)
    assert bloom.bubble_end - bloom.bubble_start == 300
    assert lib["bloom-and-crash"].burst == "instant"


def test_unknown_name():
    assert get_scenario("no-such-thing") is None


def test_reseed():
    assert get_scenario("bloom", 42).seed == 42
    assert get_scenario("bloom").seed == 0


def test_deterministic():
    a = generate_series(get_scenario("bloom", 42))
    b = generate_series(get_scenario("bloom", 42))
    assert_array_equal(a.closes, b.closes)
    assert_array_equal(a.dates, b.dates)


def test_zero_bubble_is_random_walk():
    base = BubbleScenario(seed=5)
    no_bubble = BubbleScenario(seed=5, theta_inv=1.01, initial_bubble=0.0, burst="instant")
    assert_array_equal(generate_series(base).closes, generate_series(no_bubble).closes)


def test_geometric_growth():
    scn = get_scenario("bloom", 3)
    b = bubble_path(scn)
    inside = b[scn.bubble_start : scn.bubble_end]
    assert np.all(inside > 0)
    assert np.all(inside[1:] == inside[:-1] * scn.theta_inv)
    assert np.all(b[: scn.bubble_start] == 0)


def test_burst_modes():
    kw = dict(length=200, theta_inv=1.01, initial_bubble=0.1, bubble_start=50, bubble_end=100, seed=1)
    none = bubble_path(BubbleScenario(burst="none", **kw))
    instant = bubble_path(BubbleScenario(burst="instant", **kw))
    linear = bubble_path(BubbleScenario(burst="linear", burst_periods=10, **kw))
    assert np.all(none[100:] == none[99])
    assert np.all(instant[100:] == 0)
    assert np.all(np.diff(linear[99:110]) < 0) and linear[109] == 0 and np.all(linear[110:] == 0)


def test_double_bubble():
    scn = get_scenario("double-bubble", 2)
    b = bubble_path(scn)
    s, e = scn.second_bubble
    assert np.all(b[scn.bubble_end : s] == 0)
    assert np.all(b[s:e] > 0)


def test_weekday_dates():
    p = generate_series(get_scenario("null"))
    weekdays = p.dates.astype("datetime64[D]").view("int64") % 7
    # 1970-01-01 was a Thursday: Saturday and Sunday are 2 and 3
    assert not np.isin(weekdays, [2, 3]).any()
    assert str(p.dates[0]) == "2005-01-03"


def test_prices_positive():
    for name in scenario_library():
        for seed in range(1000):
            assert generate_series(get_scenario(name, seed)).closes.min() > 0


@pytest.mark.parametrize(
    "kw",
    [
        {"theta_inv": 0.99},
        {"bubble_start": 700, "bubble_end": 600},
        {"bubble_end": 1001},
        {"initial_bubble": -0.1},
        {"burst": "slow"},
        {"second_bubble": (500, 900)},
    ],
)
def test_invalid(kw):
    with pytest.raises(ConfigError):
        BubbleScenario(**kw)


def test_scenario_file(tmp_path):
    import json

    scn = get_scenario("double-bubble", 8)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario_to_dict(scn)))
    assert load_scenario(path) == scn
    path.write_text(json.dumps({"lenght": 10}))
    with pytest.raises(ConfigError):
        load_scenario(path)
