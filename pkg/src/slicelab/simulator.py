"""Slice manager simulation: per-tick admission, re-queuing and release.

Each tick runs five phases in order: new arrivals join the queue of
previously rejected requests; the queue is rearranged by the configured
strategy; requests are dispatched in queue order (all-or-nothing binding
of one core and one access component, lowest free index first); lifetimes
of all active slices, including those activated this tick, are decremented
and expired slices return their components to the pools; finally a trace
record is snapshotted.

Two engines produce bit-identical traces: the pure-Python reference in
this module and the compiled kernel in ``slicelab._kernel`` (used by
default when built).  Both consume the same PCG64 stream in the same
order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .workload import (
    HARD, STRATEGY_FCFS, STRATEGY_HEURISTIC,
    RngStream, SimConfig, SliceRequest,
    generate_requests, sample_poisson,
)

try:  # compiled hot loop; optional at runtime
    from . import _kernel
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = None

BACKEND_COMPILED = "compiled"
BACKEND_PYTHON = "python"
DEFAULT_BACKEND = BACKEND_COMPILED if _kernel is not None else BACKEND_PYTHON

TRACE_COLUMNS = (
    "t", "arrivals", "activated", "rejected", "u", "queue_len", "delta", "w",
    "free_core_hard", "free_core_soft", "free_access_hard", "free_access_soft",
)


class ResourcePools:
    """Four free-pools of component ids with lowest-id-first allocation.

    Core ids 1..n_1 are hard, n_1+1..n_c soft; access ids likewise split
    at n_2.  An id is either in its free pool or bound to exactly one
    active slice.
    """

    def __init__(self, universe):
        self.n_1 = universe.n_1
        self.n_c = universe.n_c
        self.n_2 = universe.n_2
        self.n_a = universe.n_a
        self.core_hard = list(range(1, self.n_1 + 1))
        self.core_soft = list(range(self.n_1 + 1, self.n_c + 1))
        self.access_hard = list(range(1, self.n_2 + 1))
        self.access_soft = list(range(self.n_2 + 1, self.n_a + 1))

    def _core_pool(self, demand_class: str) -> list[int]:
        return self.core_hard if demand_class == HARD else self.core_soft

    def _access_pool(self, demand_class: str) -> list[int]:
        return self.access_hard if demand_class == HARD else self.access_soft

    def acquire(self, core_class: str, access_class: str) -> tuple[int, int] | None:
        """Take the lowest free id from each matching pool, or neither."""
        pool_c = self._core_pool(core_class)
        pool_a = self._access_pool(access_class)
        if not pool_c or not pool_a:
            return None
        return heapq.heappop(pool_c), heapq.heappop(pool_a)

    def release(self, core_id: int, access_id: int) -> None:
        heapq.heappush(self.core_hard if core_id <= self.n_1 else self.core_soft, core_id)
        heapq.heappush(self.access_hard if access_id <= self.n_2 else self.access_soft, access_id)

    def free_counts(self) -> tuple[int, int, int, int]:
        return (len(self.core_hard), len(self.core_soft),
                len(self.access_hard), len(self.access_soft))


@dataclass
class ActiveSlice:
    """A deployed slice holding one core and one access component."""

    request: SliceRequest
    core_id: int
    access_id: int
    activated_at: int


@dataclass
class SimState:
    """Mutable simulation state; single-owner, advanced by :func:`tick`."""

    config: SimConfig
    pools: ResourcePools
    rng: RngStream
    clock: int = 0
    waiting: list[SliceRequest] = field(default_factory=list)
    active: list[ActiveSlice] = field(default_factory=list)
    next_service_id: int = 1
    last_delta: float = 1.0
    total_generated: int = 0
    total_completed: int = 0

    @classmethod
    def fresh(cls, cfg: SimConfig, seed: int) -> "SimState":
        return cls(config=cfg, pools=ResourcePools(cfg.universe), rng=RngStream(seed))


@dataclass(frozen=True)
class TraceRecord:
    """Snapshot of one tick."""

    t: int
    arrivals: int
    activated: int
    rejected: int
    u: int
    queue_len: int
    delta: float
    w: float
    free_core_hard: int
    free_core_soft: int
    free_access_hard: int
    free_access_soft: int


@dataclass(frozen=True)
class Trace:
    """Per-tick series of one seeded run."""

    config: SimConfig
    seed: int
    t: np.ndarray
    arrivals: np.ndarray
    activated: np.ndarray
    rejected: np.ndarray
    u: np.ndarray
    queue_len: np.ndarray
    delta: np.ndarray
    w: np.ndarray
    free_core_hard: np.ndarray
    free_core_soft: np.ndarray
    free_access_hard: np.ndarray
    free_access_soft: np.ndarray

    def __len__(self):
        return len(self.t)

    def column(self, name: str) -> np.ndarray:
        return getattr(self, name)


@dataclass(frozen=True)
class MeanTrace:
    """Pointwise mean of several runs (seeds seed+0 .. seed+runs-1)."""

    config: SimConfig
    seeds: tuple[int, ...]
    t: np.ndarray
    arrivals: np.ndarray
    activated: np.ndarray
    rejected: np.ndarray
    u: np.ndarray
    queue_len: np.ndarray
    delta: np.ndarray
    w: np.ndarray
    free_core_hard: np.ndarray
    free_core_soft: np.ndarray
    free_access_hard: np.ndarray
    free_access_soft: np.ndarray

    def __len__(self):
        return len(self.t)

    def column(self, name: str) -> np.ndarray:
        return getattr(self, name)


def rearrange(strategy: str, req_queue: list[SliceRequest]) -> list[SliceRequest]:
    """Order the working queue for dispatch.

    FCFS keeps the queue as is.  The heuristic splits requests into the
    four demand-class blocks (hard,hard), (hard,soft), (soft,hard),
    (soft,soft), sorts each block ascending by remaining lifetime (stable,
    so ties keep arrival order) and concatenates the blocks in that
    priority order.
    """
    if strategy == STRATEGY_FCFS:
        return list(req_queue)
    if strategy == STRATEGY_HEURISTIC:
        return sorted(req_queue, key=SliceRequest.sort_key)
    raise ConfigError(f"unknown strategy {strategy!r}")


def dispatch(req: SliceRequest, pools: ResourcePools) -> tuple[int, int] | None:
    """Bind the lowest free matching core and access ids, all or nothing."""
    return pools.acquire(req.core_class, req.access_class)


def tick(state: SimState, cfg: SimConfig) -> TraceRecord:
    """Advance the simulation by one tick and snapshot it."""
    t = state.clock + 1
    n_req = sample_poisson(cfg.lam, state.rng)
    fresh = generate_requests(n_req, cfg, t, state.rng, start_id=state.next_service_id)
    state.next_service_id += n_req
    state.total_generated += n_req

    queue = rearrange(cfg.strategy, state.waiting + fresh)

    activated: list[SliceRequest] = []
    rejected: list[SliceRequest] = []
    for req in queue:
        bound = dispatch(req, state.pools)
        if bound is not None:
            core_id, access_id = bound
            state.active.append(ActiveSlice(req, core_id, access_id, t))
            activated.append(req)
        else:
            req.t_w += 1
            rejected.append(req)
    state.waiting = rejected

    survivors: list[ActiveSlice] = []
    for sl in state.active:  # includes slices activated this tick
        sl.request.t_s -= 1
        if sl.request.t_s > 0:
            survivors.append(sl)
        else:
            state.pools.release(sl.core_id, sl.access_id)
            state.total_completed += 1
    state.active = survivors

    if activated:
        state.last_delta = sum(r.t_w for r in activated) / len(activated)
    delta = state.last_delta
    u = len(state.active)
    fch, fcs, fah, fas = state.pools.free_counts()
    state.clock = t
    return TraceRecord(
        t=t, arrivals=n_req, activated=len(activated), rejected=len(rejected),
        u=u, queue_len=len(state.waiting), delta=delta, w=u / delta,
        free_core_hard=fch, free_core_soft=fcs,
        free_access_hard=fah, free_access_soft=fas,
    )


def _trace_from_records(cfg: SimConfig, seed: int, records: list[TraceRecord]) -> Trace:
    ints = lambda name: np.array([getattr(r, name) for r in records], dtype=np.int64)
    flts = lambda name: np.array([getattr(r, name) for r in records], dtype=np.float64)
    return Trace(
        config=cfg, seed=seed,
        t=ints("t"), arrivals=ints("arrivals"), activated=ints("activated"),
        rejected=ints("rejected"), u=ints("u"), queue_len=ints("queue_len"),
        delta=flts("delta"), w=flts("w"),
        free_core_hard=ints("free_core_hard"), free_core_soft=ints("free_core_soft"),
        free_access_hard=ints("free_access_hard"), free_access_soft=ints("free_access_soft"),
    )


def _run_python(cfg: SimConfig, seed: int) -> Trace:
    state = SimState.fresh(cfg, seed)
    records = [tick(state, cfg) for _ in range(cfg.ticks)]
    return _trace_from_records(cfg, seed, records)


def _run_compiled(cfg: SimConfig, seed: int) -> Trace:
    u = cfg.universe
    cols = _kernel.run_trace(
        u.n_1, u.n_c, u.n_2, u.n_a, cfg.p_c, cfg.p_a, cfg.lam, cfg.mu,
        cfg.ticks, cfg.strategy == STRATEGY_HEURISTIC,
        np.random.PCG64(seed),
    )
    return Trace(config=cfg, seed=seed, **cols)


def run(cfg: SimConfig, seed: int | None = None, backend: str | None = None) -> Trace:
    """Simulate one seeded run of ``cfg.ticks`` ticks.

    ``backend`` picks the engine: "compiled" (default when built) or
    "python" (reference).  Identical seeds give identical traces on both.
    """
    seed = cfg.seed if seed is None else seed
    backend = DEFAULT_BACKEND if backend is None else backend
    if backend == BACKEND_COMPILED:
        if _kernel is None:
            raise ConfigError("compiled kernel not available; rebuild or use backend='python'")
        return _run_compiled(cfg, seed)
    if backend == BACKEND_PYTHON:
        return _run_python(cfg, seed)
    raise ConfigError(f"unknown backend {backend!r}")


def run_many(cfg: SimConfig, backend: str | None = None) -> list[Trace]:
    """Run ``cfg.runs`` independent repetitions seeded seed+0 .. seed+runs-1."""
    if cfg.runs < 1:
        raise ConfigError(f"runs must be >= 1, got {cfg.runs}")
    return [run(cfg, seed=cfg.seed + i, backend=backend) for i in range(cfg.runs)]


def mean_trace(traces: list[Trace]) -> MeanTrace:
    """Pointwise arithmetic mean of equally long runs of one config."""
    mean = lambda name: np.mean([tr.column(name) for tr in traces], axis=0)
    return MeanTrace(
        config=traces[0].config, seeds=tuple(tr.seed for tr in traces),
        t=traces[0].t.copy(),
        arrivals=mean("arrivals"), activated=mean("activated"),
        rejected=mean("rejected"), u=mean("u"), queue_len=mean("queue_len"),
        delta=mean("delta"), w=mean("w"),
        free_core_hard=mean("free_core_hard"), free_core_soft=mean("free_core_soft"),
        free_access_hard=mean("free_access_hard"), free_access_soft=mean("free_access_soft"),
    )


def run_averaged(cfg: SimConfig, backend: str | None = None) -> MeanTrace:
    """Average ``cfg.runs`` independent runs seeded seed+0 .. seed+runs-1."""
    return mean_trace(run_many(cfg, backend=backend))


def compare_strategies(cfg: SimConfig, backend: str | None = None) -> dict[str, MeanTrace]:
    """Run the same seeds under both strategies; workload is identical."""
    return {
        STRATEGY_FCFS: run_averaged(replace(cfg, strategy=STRATEGY_FCFS), backend=backend),
        STRATEGY_HEURISTIC: run_averaged(replace(cfg, strategy=STRATEGY_HEURISTIC), backend=backend),
    }
