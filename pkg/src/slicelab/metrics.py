"""Trace metrics: windowed utilization, utilization ratio, stability
conditions and trend detection.

Windows are half-open tick intervals [t1, t2) with divisor t2 - t1; ticks
are 1-based, matching the trace's ``t`` column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantError, WindowBoundsError
from .workload import SimConfig


@dataclass(frozen=True)
class StabilityReport:
    """The three necessary conditions for a stationary ergodic regime.

    Margins are the signed slacks (n_1/n_c - p_c), (n_2/n_a - p_a) and
    (min(n_c, n_a) - mu*lambda); a condition holds iff its margin is
    strictly positive.
    """

    cond_pc: bool
    cond_pa: bool
    cond_load: bool
    compliant: bool
    margins: tuple[float, float, float]


@dataclass(frozen=True)
class WindowStats:
    """Mean trace quantities over one window [t1, t2)."""

    t1: int
    t2: int
    v: float
    w: float
    mean_delta: float
    mean_queue: float


def _window_slice(trace, t1: int, t2: int) -> slice:
    n = len(trace.t)
    if not (1 <= t1 < t2 <= n + 1) or t2 - 1 > n:
        raise WindowBoundsError(f"window [{t1}, {t2}) outside trace of {n} ticks")
    return slice(t1 - 1, t2 - 1)


def window_mean_utilization(trace, t1: int, t2: int) -> float:
    """Mean active-slice count over ticks t1 <= t < t2."""
    return float(np.mean(trace.u[_window_slice(trace, t1, t2)]))


def utilization_ratio_series(trace) -> np.ndarray:
    """Per-tick utilization ratio u/delta."""
    delta = np.asarray(trace.delta, dtype=np.float64)
    if np.any(delta < 1.0):
        raise InvariantError("trace contains delta < 1")
    return np.asarray(trace.u, dtype=np.float64) / delta


def window_mean_ratio(trace, t1: int, t2: int) -> float:
    """Mean utilization ratio over ticks t1 <= t < t2."""
    return float(np.mean(utilization_ratio_series(trace)[_window_slice(trace, t1, t2)]))


def window_stats(trace, t1: int, t2: int) -> WindowStats:
    sl = _window_slice(trace, t1, t2)
    return WindowStats(
        t1=t1, t2=t2,
        v=float(np.mean(trace.u[sl])),
        w=window_mean_ratio(trace, t1, t2),
        mean_delta=float(np.mean(trace.delta[sl])),
        mean_queue=float(np.mean(trace.queue_len[sl])),
    )


def stability_report(cfg: SimConfig) -> StabilityReport:
    """Evaluate the three strict stability inequalities for a config."""
    u = cfg.universe
    m_pc = u.n_1 / u.n_c - cfg.p_c
    m_pa = u.n_2 / u.n_a - cfg.p_a
    m_load = min(u.n_c, u.n_a) - cfg.mu * cfg.lam
    cond_pc, cond_pa, cond_load = m_pc > 0, m_pa > 0, m_load > 0
    return StabilityReport(
        cond_pc=cond_pc, cond_pa=cond_pa, cond_load=cond_load,
        compliant=cond_pc and cond_pa and cond_load,
        margins=(m_pc, m_pa, m_load),
    )


def trend_slope(series) -> float:
    """Ordinary least-squares slope of a series against its index."""
    y = np.asarray(series, dtype=np.float64)
    if y.size < 2:
        raise WindowBoundsError(f"need at least 2 points for a slope, got {y.size}")
    x = np.arange(y.size, dtype=np.float64)
    return float(np.polyfit(x, y, 1)[0])
