"""slicelab: end-to-end network slicing as combinatorial designs.

Two halves:

* ``designs`` - slicing triples, conjugate rectangular views, partial
  Latin rectangle checks and the hard/soft block partition;
* ``workload`` / ``simulator`` / ``metrics`` - a discrete-tick simulator
  of a slice manager with dynamic deployment and re-queuing of rejected
  requests, plus the utilization/stability metrics evaluated on traces.

The simulator ships a compiled kernel (``slicelab._kernel``) and a pure
Python reference engine that produce bit-identical traces; the compiled
one is used automatically when built.
"""

__version__ = "0.1.0"

from .designs import (  # noqa: F401
    ORDER_CAS, ORDER_SAC, ORDER_SCA, ORDERINGS,
    Partition, RectView, SliceTriple, SymbolUniverse, TripleSet, Verdict,
    Violation, check_hard_access, check_hard_core, conjugate_view,
    flatten_view, is_partial_latin, parse_triples, partition_cas,
    verify_partition_claims,
)
from .errors import (  # noqa: F401
    ConfigError, InvariantError, SliceLabError, TripleRangeError,
    TriplesParseError, WindowBoundsError,
)
from .metrics import (  # noqa: F401
    StabilityReport, WindowStats, stability_report, trend_slope,
    utilization_ratio_series, window_mean_ratio, window_mean_utilization,
    window_stats,
)
from .simulator import (  # noqa: F401
    BACKEND_COMPILED, BACKEND_PYTHON, DEFAULT_BACKEND,
    ActiveSlice, MeanTrace, ResourcePools, SimState, Trace, TraceRecord,
    compare_strategies, dispatch, mean_trace, rearrange, run, run_averaged,
    run_many, tick,
)
from .workload import (  # noqa: F401
    HARD, SOFT, STRATEGIES, STRATEGY_FCFS, STRATEGY_HEURISTIC,
    RngStream, SimConfig, SliceRequest, generate_requests, sample_class,
    sample_lifetime, sample_poisson,
)
