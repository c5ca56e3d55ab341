"""Random workload for the slice manager simulation.

Arrivals per tick are Poisson, slice lifetimes are exponential rounded up
to whole ticks, and each request independently asks for a hard or soft
component on the core and access side.  All draws come from a single
seeded PCG64 stream per run, in a fixed order (arrival count, then per
request: core class, access class, lifetime), so a seed fully determines
the workload regardless of the dispatch strategy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .designs import SymbolUniverse
from .errors import ConfigError

HARD = "hard"
SOFT = "soft"

STRATEGY_FCFS = "fcfs"
STRATEGY_HEURISTIC = "heuristic"
STRATEGIES = (STRATEGY_FCFS, STRATEGY_HEURISTIC)

DEFAULT_SEED = 42


class RngStream:
    """Deterministic pseudo-random stream, single-owner per run."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.bit_generator = np.random.PCG64(self.seed)
        self.generator = np.random.Generator(self.bit_generator)

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


@dataclass(frozen=True)
class SimConfig:
    """Full parameter set for one simulation experiment."""

    universe: SymbolUniverse
    p_c: float                 # P(core demand is hard)
    p_a: float                 # P(access demand is hard)
    lam: float                 # mean arrivals per tick ("lambda" in config files)
    mu: float                  # mean slice lifetime in ticks
    ticks: int
    runs: int = 10
    seed: int = DEFAULT_SEED
    strategy: str = STRATEGY_HEURISTIC
    window_start: int = 1
    window_end: int = 2

    def validate(self) -> "SimConfig":
        if not (0.0 <= self.p_c <= 1.0):
            raise ConfigError(f"p_c must be in [0,1], got {self.p_c}")
        if not (0.0 <= self.p_a <= 1.0):
            raise ConfigError(f"p_a must be in [0,1], got {self.p_a}")
        if not self.lam > 0:
            raise ConfigError(f"lambda must be positive, got {self.lam}")
        if not self.mu > 0:
            raise ConfigError(f"mu must be positive, got {self.mu}")
        if self.ticks < 1:
            raise ConfigError(f"ticks must be >= 1, got {self.ticks}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if not (1 <= self.window_start < self.window_end <= self.ticks):
            raise ConfigError(
                f"need 1 <= window_start < window_end <= ticks, got "
                f"[{self.window_start}, {self.window_end}) with ticks={self.ticks}")
        return self


@dataclass
class SliceRequest:
    """A pending slice request: demand classes plus lifetime/wait counters.

    ``t_w`` starts at 1 and grows by one for every tick the request is
    turned away; ``t_s`` is the remaining lifetime once activated.
    Concrete component ids are bound at dispatch, not here.
    """

    service: int
    core_class: str
    access_class: str
    t_s: int
    t_w: int = 1
    issued_at: int = 0

    def sort_key(self) -> tuple[int, int]:
        # class rank: (hard,hard) < (hard,soft) < (soft,hard) < (soft,soft)
        rank = (0 if self.core_class == HARD else 2) + (0 if self.access_class == HARD else 1)
        return (rank, self.t_s)


def sample_poisson(lam: float, rng: RngStream) -> int:
    """Poisson-distributed arrival count with mean ``lam``."""
    if not lam > 0:
        raise ConfigError(f"lambda must be positive, got {lam}")
    return int(rng.generator.poisson(lam))


def sample_lifetime(mu: float, rng: RngStream) -> int:
    """Whole-tick lifetime: an exponential of mean ``mu`` rounded up, >= 1."""
    if not mu > 0:
        raise ConfigError(f"mu must be positive, got {mu}")
    return max(1, math.ceil(rng.generator.exponential(mu)))


def sample_class(p: float, rng: RngStream) -> str:
    """HARD with probability ``p``, SOFT otherwise."""
    if not (0.0 <= p <= 1.0):
        raise ConfigError(f"probability must be in [0,1], got {p}")
    return HARD if rng.generator.random() < p else SOFT


def generate_requests(n: int, cfg: SimConfig, tick: int, rng: RngStream,
                      start_id: int = 1) -> list[SliceRequest]:
    """Create ``n`` fresh requests for the given tick.

    Ids ascend from ``start_id``; every request begins with ``t_w = 1``.
    Draw order per request is fixed: core class, access class, lifetime.
    """
    requests = []
    for i in range(n):
        core = sample_class(cfg.p_c, rng)
        access = sample_class(cfg.p_a, rng)
        t_s = sample_lifetime(cfg.mu, rng)
        requests.append(SliceRequest(
            service=start_id + i,
            core_class=core,
            access_class=access,
            t_s=t_s,
            t_w=1,
            issued_at=tick,
        ))
    return requests
