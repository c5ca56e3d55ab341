"""Workload sampling tests: distribution means against analytic oracles,
support bounds and seeded determinism."""

import math

import pytest

from slicelab import (
    HARD, SOFT, ConfigError, RngStream, SimConfig, SymbolUniverse,
    generate_requests, sample_class, sample_lifetime, sample_poisson,
)

UNIVERSE = SymbolUniverse(n_s=0, n_a=500, n_c=350, n_1=50, n_2=100)


def make_config(**overrides):
    base = dict(universe=UNIVERSE, p_c=0.141429, p_a=0.198, lam=10.0, mu=34.0,
                ticks=100, runs=1, seed=42, strategy="heuristic",
                window_start=10, window_end=100)
    base.update(overrides)
    return SimConfig(**base)


def ceil_exponential_mean(mu, tail=1e-12):
    """Series oracle for E[max(1, ceil(X))], X exponential with mean mu.

    P(ceil = j) = exp(-(j-1)/mu) - exp(-j/mu); summed until the tail mass
    is negligible.  Independent of the sampling code.
    """
    total, j = 0.0, 1
    while True:
        p = math.exp(-(j - 1) / mu) - math.exp(-j / mu)
        total += j * p
        if math.exp(-j / mu) < tail:
            return total
        j += 1


class TestSamplePoisson:
    def test_long_run_mean(self):
        rng = RngStream(7)
        n = 10**6
        total = sum(sample_poisson(10.0, rng) for _ in range(n))
        assert 9.9 <= total / n <= 10.1

    def test_support_nonnegative(self):
        rng = RngStream(1)
        assert all(sample_poisson(10.0, rng) >= 0 for _ in range(10_000))

    def test_tiny_lambda_mostly_zero(self):
        rng = RngStream(3)
        draws = [sample_poisson(0.0001, rng) for _ in range(10_000)]
        assert sum(d == 0 for d in draws) >= 9_900

    def test_rejects_nonpositive(self):
        with pytest.raises(ConfigError):
            sample_poisson(0.0, RngStream(1))


class TestSampleLifetime:
    def test_mean_against_series_oracle(self):
        oracle = ceil_exponential_mean(34.0)
        assert 34.0 <= oracle <= 35.2  # rounding up adds less than one tick
        rng = RngStream(11)
        n = 10**6
        mean = sum(sample_lifetime(34.0, rng) for _ in range(n)) / n
        assert abs(mean - oracle) < 0.1
        assert 34.0 <= mean <= 35.2

    def test_at_least_one(self):
        rng = RngStream(5)
        assert all(sample_lifetime(34.0, rng) >= 1 for _ in range(10_000))

    def test_tiny_mu_clamps_to_one(self):
        rng = RngStream(5)
        assert all(sample_lifetime(0.001, rng) == 1 for _ in range(1_000))

    def test_rejects_nonpositive(self):
        with pytest.raises(ConfigError):
            sample_lifetime(-1.0, RngStream(1))


class TestSampleClass:
    def test_p_zero_always_soft(self):
        rng = RngStream(2)
        assert all(sample_class(0.0, rng) == SOFT for _ in range(1_000))

    def test_p_one_always_hard(self):
        rng = RngStream(2)
        assert all(sample_class(1.0, rng) == HARD for _ in range(1_000))

    def test_concentration(self):
        rng = RngStream(13)
        n = 10**6
        hard = sum(sample_class(0.198, rng) == HARD for _ in range(n))
        assert 0.195 <= hard / n <= 0.201

    def test_rejects_out_of_range(self):
        with pytest.raises(ConfigError):
            sample_class(1.5, RngStream(1))


class TestGenerateRequests:
    def test_empty(self):
        assert generate_requests(0, make_config(), 1, RngStream(1)) == []

    def test_fresh_requests_wait_one(self):
        reqs = generate_requests(5, make_config(), tick=3, rng=RngStream(1))
        assert len(reqs) == 5
        assert all(r.t_w == 1 for r in reqs)
        assert all(r.t_s >= 1 for r in reqs)
        assert all(r.issued_at == 3 for r in reqs)

    def test_ids_ascend_from_start(self):
        reqs = generate_requests(4, make_config(), 1, RngStream(1), start_id=10)
        assert [r.service for r in reqs] == [10, 11, 12, 13]

    def test_hard_fraction_concentrates(self):
        cfg = make_config(p_c=0.141429)
        reqs = generate_requests(10**5, cfg, 1, RngStream(17))
        hard = sum(r.core_class == HARD for r in reqs) / len(reqs)
        assert abs(hard - cfg.p_c) <= 0.005


class TestDeterminism:
    def test_same_seed_same_sequence(self):
        cfg = make_config()
        a = generate_requests(1_000, cfg, 1, RngStream(99))
        b = generate_requests(1_000, cfg, 1, RngStream(99))
        assert a == b

    def test_adjacent_seeds_differ(self):
        cfg = make_config()
        a = generate_requests(1_000, cfg, 1, RngStream(42))
        b = generate_requests(1_000, cfg, 1, RngStream(43))
        assert a != b


class TestConfigValidation:
    def test_valid(self):
        make_config().validate()

    @pytest.mark.parametrize("overrides", [
        {"p_c": -0.1}, {"p_c": 1.0001}, {"p_a": 2.0},
        {"lam": 0.0}, {"mu": -3}, {"ticks": 0}, {"runs": 0},
        {"strategy": "random"}, {"window_start": 0},
        {"window_start": 50, "window_end": 50}, {"window_end": 101},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ConfigError):
            make_config(**overrides).validate()
