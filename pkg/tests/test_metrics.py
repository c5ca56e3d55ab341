"""Metric tests: window means against a hand-rolled fold, ratio algebra,
stability conditions and trend slopes."""

from types import SimpleNamespace

import numpy as np
import pytest

from slicelab import (
    InvariantError, SimConfig, SymbolUniverse, WindowBoundsError,
    stability_report, trend_slope, utilization_ratio_series,
    window_mean_ratio, window_mean_utilization, window_stats,
)

FIG_UNIVERSE = SymbolUniverse(n_s=0, n_a=500, n_c=350, n_1=50, n_2=100)


def fake_trace(u, delta=None, queue=None):
    u = np.asarray(u, dtype=float)
    delta = np.ones_like(u) if delta is None else np.asarray(delta, dtype=float)
    queue = np.zeros_like(u) if queue is None else np.asarray(queue, dtype=float)
    return SimpleNamespace(t=np.arange(1, len(u) + 1), u=u, delta=delta,
                           queue_len=queue)


def make_config(**overrides):
    base = dict(universe=FIG_UNIVERSE, p_c=0.141429, p_a=0.198, lam=10.0,
                mu=34.0, ticks=1000, runs=10, seed=42, strategy="heuristic",
                window_start=100, window_end=1000)
    base.update(overrides)
    return SimConfig(**base)


class TestWindowMeans:
    def test_constant(self):
        trace = fake_trace([7.0] * 10)
        assert window_mean_utilization(trace, 1, 11) == 7.0
        assert window_mean_utilization(trace, 3, 7) == 7.0

    def test_two_point_window(self):
        trace = fake_trace([0.0, 10.0])
        assert window_mean_utilization(trace, 1, 3) == 5.0

    def test_half_open_convention(self):
        trace = fake_trace([1.0, 2.0, 100.0])
        # [1, 3) covers ticks 1 and 2 only
        assert window_mean_utilization(trace, 1, 3) == 1.5

    def test_matches_plain_fold(self):
        rng = np.random.default_rng(0)
        u = rng.integers(0, 300, size=500).astype(float)
        trace = fake_trace(u)
        t1, t2 = 50, 450
        acc = 0.0
        for t in range(t1, t2):
            acc += u[t - 1]
        expected = acc / (t2 - t1)
        got = window_mean_utilization(trace, t1, t2)
        assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))

    @pytest.mark.parametrize("t1,t2", [(0, 5), (5, 5), (6, 5), (1, 12)])
    def test_bad_windows(self, t1, t2):
        with pytest.raises(WindowBoundsError):
            window_mean_utilization(fake_trace([1.0] * 10), t1, t2)


class TestRatioSeries:
    def test_elementwise(self):
        trace = fake_trace([100.0, 346.0, 0.0], delta=[1.0, 3.5, 2.0])
        w = utilization_ratio_series(trace)
        assert w[0] == 100.0
        assert abs(w[1] - 98.857142857) < 1e-6
        assert w[2] == 0.0

    def test_rejects_delta_below_one(self):
        with pytest.raises(InvariantError):
            utilization_ratio_series(fake_trace([1.0], delta=[0.5]))

    def test_window_composes_with_series(self):
        rng = np.random.default_rng(1)
        u = rng.uniform(0, 300, size=200)
        delta = rng.uniform(1, 9, size=200)
        trace = fake_trace(u, delta=delta)
        direct = window_mean_ratio(trace, 20, 180)
        series = utilization_ratio_series(trace)
        assert abs(direct - float(np.mean(series[19:179]))) < 1e-12

    def test_constant_ratio(self):
        trace = fake_trace([50.0] * 8, delta=[2.0] * 8)
        assert window_mean_ratio(trace, 1, 9) == 25.0


class TestWindowStats:
    def test_fields(self):
        trace = fake_trace([10.0, 20.0], delta=[1.0, 2.0], queue=[3.0, 5.0])
        stats = window_stats(trace, 1, 3)
        assert stats.v == 15.0
        assert stats.w == (10.0 / 1.0 + 20.0 / 2.0) / 2
        assert stats.mean_delta == 1.5
        assert stats.mean_queue == 4.0


class TestStabilityReport:
    def test_compliant_operating_point(self):
        report = stability_report(make_config())
        assert report.compliant
        assert all(m > 0 for m in report.margins)

    def test_boundary_load_violates_strict_inequality(self):
        report = stability_report(make_config(mu=35.0))  # mu*lambda == 350
        assert not report.cond_load
        assert not report.compliant
        assert report.margins[2] == 0.0

    def test_all_slack(self):
        cfg = make_config(p_c=0.0, p_a=0.0, lam=1.0, mu=1.0)
        assert stability_report(cfg).compliant

    def test_margin_values(self):
        report = stability_report(make_config())
        assert abs(report.margins[0] - (50 / 350 - 0.141429)) < 1e-12
        assert abs(report.margins[1] - (100 / 500 - 0.198)) < 1e-12
        assert abs(report.margins[2] - (350 - 340)) < 1e-12

    @pytest.mark.parametrize("key,delta", [
        ("p_c", 0.05), ("p_a", 0.05), ("lam", 5.0), ("mu", 5.0)])
    def test_monotone_in_load(self, key, delta):
        base = make_config()
        bumped = make_config(**{key: getattr(base, key) + delta})
        before = stability_report(base)
        after = stability_report(bumped)
        for b, a in zip(before.margins, after.margins):
            assert a <= b
        # a condition that already failed can never flip back to true
        assert not (not before.cond_pc and after.cond_pc)
        assert not (not before.cond_pa and after.cond_pa)
        assert not (not before.cond_load and after.cond_load)


class TestTrendSlope:
    def test_constant_series(self):
        assert trend_slope([5.0] * 100) == pytest.approx(0.0, abs=1e-12)

    def test_exact_linear(self):
        k = 0.37
        series = [k * t for t in range(200)]
        assert trend_slope(series) == pytest.approx(k, rel=1e-9)

    def test_too_short(self):
        with pytest.raises(WindowBoundsError):
            trend_slope([1.0])
