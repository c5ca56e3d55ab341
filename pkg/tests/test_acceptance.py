"""Acceptance suite: every operating-regime criterion at its stated
tolerance, one printed PASS/FAIL line per criterion.

All stochastic criteria average 10 repetitions (seeds 42..51).  The
strategy-comparison criterion is currently expected to fail: with
whole-tick lifetimes the rounding bias (~+0.5 ticks per slice) pushes
that operating point (lambda=34, mu=10 against 350 cores) past the
stability boundary, so the fcfs ratio collapses below its required band
while the heuristic/fcfs dominance clause still holds by a wide margin.
"""

import itertools
from pathlib import Path

import numpy as np
import pytest

from slicelab import (
    ORDER_SAC, ORDER_SCA,
    SimConfig, SliceTriple, SymbolUniverse, TripleSet,
    check_hard_access, check_hard_core, conjugate_view, is_partial_latin,
    mean_trace, run_many,
)
from slicelab.cli import EXIT_OK, main
from slicelab.metrics import trend_slope, window_mean_ratio

SEED = 42
FIG_UNIVERSE = SymbolUniverse(n_s=0, n_a=500, n_c=350, n_1=50, n_2=100)

STATIONARY = SimConfig(
    universe=FIG_UNIVERSE, p_c=0.141429, p_a=0.198, lam=10.0, mu=34.0,
    ticks=50_000, runs=10, seed=SEED, strategy="heuristic",
    window_start=20_000, window_end=50_000)

BOUNDARY = SimConfig(
    universe=FIG_UNIVERSE, p_c=50 / 350, p_a=100 / 500, lam=10.0, mu=35.0,
    ticks=10_000, runs=10, seed=SEED, strategy="heuristic",
    window_start=4_000, window_end=10_000)

COMPARISON = SimConfig(
    universe=FIG_UNIVERSE, p_c=0.95 * 50 / 350, p_a=0.95 * 100 / 500,
    lam=34.0, mu=10.0, ticks=10_000, runs=10, seed=SEED,
    strategy="heuristic", window_start=4_000, window_end=10_000)

LIGHTLOAD = SimConfig(
    universe=SymbolUniverse(n_s=0, n_a=1000, n_c=1000, n_1=1, n_2=1),
    p_c=0.0, p_a=0.0, lam=2.0, mu=5.0, ticks=20_000, runs=10, seed=SEED,
    strategy="heuristic", window_start=2_000, window_end=20_000)


def report(name: str, ok: bool, detail: str) -> bool:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def window(arr, t1, t2):
    return arr[t1 - 1:t2 - 1]


@pytest.fixture(scope="module")
def stationary_traces():
    return run_many(STATIONARY)


@pytest.fixture(scope="module")
def boundary_traces():
    return run_many(BOUNDARY)


@pytest.fixture(scope="module")
def comparison_traces():
    from dataclasses import replace
    return {s: run_many(replace(COMPARISON, strategy=s))
            for s in ("fcfs", "heuristic")}


@pytest.fixture(scope="module")
def lightload_traces():
    return run_many(LIGHTLOAD)


def test_stationary_delay(stationary_traces):
    mt = mean_trace(stationary_traces)
    t1, t2 = STATIONARY.window_start, STATIONARY.window_end
    mean_delta = float(np.mean(window(mt.delta, t1, t2)))
    slope = trend_slope(window(mt.queue_len, t1, t2))
    ok = report(
        "stationary delay", 2.0 <= mean_delta <= 5.5 and abs(slope) < 1e-3,
        f"mean delta {mean_delta:.3f} (need [2.0, 5.5]), "
        f"queue slope {slope:.2e} (need |s| < 1e-3)")
    assert ok


def test_stationary_queue_band(stationary_traces):
    mt = mean_trace(stationary_traces)
    q = window(mt.queue_len, STATIONARY.window_start, STATIONARY.window_end)
    in_band = float(np.mean((q >= 5.0) & (q <= 100.0)))
    ok = report(
        "stationary queue band", in_band >= 0.99,
        f"{in_band:.2%} of ticks in [5, 100] (need >= 99%), "
        f"queue range [{q.min():.1f}, {q.max():.1f}]")
    assert ok


def test_boundary_instability(boundary_traces):
    mt = mean_trace(boundary_traces)
    slope = trend_slope(mt.queue_len)
    early = float(np.mean(mt.queue_len[100 - 1:1_100 - 1]))
    late = float(np.mean(mt.queue_len[-1_000:]))
    ok = report(
        "boundary instability", slope > 0 and late >= 5.0 * early,
        f"queue slope {slope:.4f} (need > 0), late/early mean "
        f"{late:.1f}/{early:.1f} = {late / early:.1f}x (need >= 5x)")
    assert ok


def test_strategy_comparison(comparison_traces):
    t1, t2 = COMPARISON.window_start, COMPARISON.window_end
    w_fcfs = window_mean_ratio(mean_trace(comparison_traces["fcfs"]), t1, t2)
    w_heur = window_mean_ratio(mean_trace(comparison_traces["heuristic"]), t1, t2)
    ratio = w_heur / w_fcfs
    ok = report(
        "strategy comparison",
        ratio >= 1.8 and 60.0 <= w_heur <= 140.0 and 20.0 <= w_fcfs <= 70.0,
        f"W_heuristic {w_heur:.2f} (need [60, 140]), W_fcfs {w_fcfs:.2f} "
        f"(need [20, 70]), ratio {ratio:.2f} (need >= 1.8)")
    assert ok


def all_triple_sets_up_to_3(n):
    """Every triple set of size <= 3 over an n x n x n universe."""
    universe = SymbolUniverse(n_s=n, n_a=n, n_c=n, n_1=1, n_2=1)
    symbols = [SliceTriple(core=c, access=a, service=s)
               for c in range(1, n + 1) for a in range(1, n + 1)
               for s in range(1, n + 1)]
    for size in range(4):
        for combo in itertools.combinations(symbols, size):
            yield TripleSet(universe=universe, triples=frozenset(combo))


def random_triple_sets(n, count, seed):
    universe = SymbolUniverse(n_s=n, n_a=n, n_c=n, n_1=2, n_2=2)
    rng = np.random.default_rng(seed)
    for _ in range(count):
        size = int(rng.integers(0, 13))
        coords = rng.integers(1, n + 1, size=(size, 3))
        triples = frozenset(SliceTriple(core=int(c), access=int(a), service=int(s))
                            for c, a, s in coords)
        yield TripleSet(universe=universe, triples=triples)


def test_hard_slicing_latin_equivalence():
    checked = 0
    mismatches = 0
    for ts in itertools.chain(all_triple_sets_up_to_3(3),
                              random_triple_sets(6, 10_000, seed=SEED)):
        core_ok = check_hard_core(ts).holds
        access_ok = check_hard_access(ts).holds
        if core_ok != is_partial_latin(conjugate_view(ts, ORDER_SAC)):
            mismatches += 1
        if access_ok != is_partial_latin(conjugate_view(ts, ORDER_SCA)):
            mismatches += 1
        checked += 1
    ok = report(
        "hard slicing <-> partial latin equivalence", mismatches == 0,
        f"{checked} triple sets (3304 exhaustive + 10000 random), "
        f"{mismatches} discrepancies (need 0)")
    assert ok


def test_lightload_littles_law(lightload_traces):
    mt = mean_trace(lightload_traces)
    t1, t2 = LIGHTLOAD.window_start, LIGHTLOAD.window_end
    mean_u = float(np.mean(window(mt.u, t1, t2)))
    mean_delta = float(np.mean(window(mt.delta, t1, t2)))
    ok = report(
        "light-load sanity", 9.0 <= mean_u <= 11.0 and 1.0 <= mean_delta <= 1.05,
        f"mean u {mean_u:.3f} (need 10 +/- 10%), "
        f"mean delta {mean_delta:.4f} (need [1.0, 1.05])")
    assert ok


def test_pointwise_bound_and_conservation(stationary_traces, boundary_traces,
                                          comparison_traces, lightload_traces):
    all_traces = (stationary_traces + boundary_traces + lightload_traces
                  + comparison_traces["fcfs"] + comparison_traces["heuristic"])
    violations = 0
    ticks_checked = 0
    for tr in all_traces:
        u = tr.config.universe
        cap = min(u.n_c, u.n_a)
        ticks_checked += len(tr)
        violations += int(np.sum(tr.u > cap))
        violations += int(np.sum(tr.free_core_hard + tr.free_core_soft + tr.u != u.n_c))
        violations += int(np.sum(tr.free_access_hard + tr.free_access_soft + tr.u != u.n_a))
        # every generated request is active, waiting or completed
        violations += int(np.sum(
            np.cumsum(tr.arrivals) != np.cumsum(tr.activated) + tr.queue_len))
    ok = report(
        "pointwise bound and conservation", violations == 0,
        f"{len(all_traces)} runs / {ticks_checked} ticks checked, "
        f"{violations} violations (need 0)")
    assert ok


def test_cli_determinism(tmp_path):
    out1, out2 = tmp_path / "first.csv", tmp_path / "second.csv"
    config = str(Path(__file__).resolve().parent.parent / "configs" / "stationary.cfg")
    assert main(["run", "--config", config, "--out", str(out1)]) == EXIT_OK
    assert main(["run", "--config", config, "--out", str(out2)]) == EXIT_OK
    identical = out1.read_bytes() == out2.read_bytes()
    ok = report(
        "run determinism", identical,
        f"two identical invocations, byte-identical CSV: {identical}")
    assert ok
