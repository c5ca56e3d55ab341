"""Command line front end.

Subcommands: ``run`` (averaged simulation to CSV), ``compare`` (both
strategies on identical seeds), ``stability`` (condition check), and
``validate`` (combinatorial checks on a triples file).

Config files are flat ``key = value`` text with ``#`` comments; keys:
n1, nc, n2, na, p_c, p_a, lambda, mu, ticks, runs, seed, strategy,
window_start, window_end.

Exit codes: 0 ok; 1 bad config/input; 2 combinatorial violations;
3 non-compliant under --strict; 4 simulation invariant violation.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace

from . import __version__
from .designs import (
    ORDER_CAS, ORDER_SAC, ORDER_SCA, SymbolUniverse,
    check_hard_access, check_hard_core, conjugate_view, is_partial_latin,
    parse_triples, partition_cas, verify_partition_claims,
)
from .errors import (
    ConfigError, InvariantError, SliceLabError,
    TripleRangeError, TriplesParseError,
)
from .metrics import stability_report, window_mean_ratio, window_stats
from .simulator import run_averaged
from .traceio import RunManifest, write_trace_csv
from .workload import STRATEGY_FCFS, STRATEGY_HEURISTIC, SimConfig

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VIOLATIONS = 2
EXIT_NONCOMPLIANT = 3
EXIT_INVARIANT = 4

_CONFIG_TYPES = {
    "n1": int, "nc": int, "n2": int, "na": int,
    "p_c": float, "p_a": float, "lambda": float, "mu": float,
    "ticks": int, "runs": int, "seed": int, "strategy": str,
    "window_start": int, "window_end": int,
}
_REQUIRED_KEYS = ("n1", "nc", "n2", "na", "p_c", "p_a", "lambda", "mu", "ticks")


def parse_config_text(text: str) -> SimConfig:
    values: dict[str, object] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw!r}")
        if key not in _CONFIG_TYPES:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_TYPES[key](value)
        except ValueError:
            raise ConfigError(f"line {line_no}: bad value for {key}: {value!r}") from None
    missing = [k for k in _REQUIRED_KEYS if k not in values]
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(missing)}")
    try:
        universe = SymbolUniverse(n_s=0, n_a=values["na"], n_c=values["nc"],
                                  n_1=values["n1"], n_2=values["n2"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    ticks = values["ticks"]
    cfg = SimConfig(
        universe=universe,
        p_c=values["p_c"], p_a=values["p_a"],
        lam=values["lambda"], mu=values["mu"],
        ticks=ticks,
        runs=values.get("runs", 10),
        seed=values.get("seed", 42),
        strategy=values.get("strategy", STRATEGY_HEURISTIC),
        window_start=values.get("window_start", max(1, ticks // 2)),
        window_end=values.get("window_end", max(2, ticks)),
    )
    return cfg.validate()


def load_config(path: str, seed_override: int | None = None) -> SimConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if seed_override is not None:
        cfg = replace(cfg, seed=seed_override).validate()
    return cfg


def _print_window_stats(label: str, trace, cfg: SimConfig) -> None:
    stats = window_stats(trace, cfg.window_start, cfg.window_end)
    print(f"{label} window [{stats.t1}, {stats.t2}):")
    print(f"  mean utilization V    = {stats.v:.6g}")
    print(f"  mean ratio W          = {stats.w:.6g}")
    print(f"  mean delay delta      = {stats.mean_delta:.6g}")
    print(f"  mean queue length     = {stats.mean_queue:.6g}")


def cmd_run(args) -> int:
    cfg = load_config(args.config, args.seed)
    started = time.perf_counter()
    trace = run_averaged(cfg)
    duration = time.perf_counter() - started
    manifest = RunManifest(config=cfg, seeds=trace.seeds, version=__version__,
                           durations=(duration,))
    write_trace_csv(args.out, trace, manifest)
    print(f"wrote {args.out}: {len(trace)} ticks x {cfg.runs} runs "
          f"(strategy={cfg.strategy}, seeds {trace.seeds[0]}..{trace.seeds[-1]}) "
          f"in {duration:.2f}s")
    _print_window_stats("mean trace", trace, cfg)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = load_config(args.config, args.seed)
    results = {}
    for strategy in (STRATEGY_FCFS, STRATEGY_HEURISTIC):
        started = time.perf_counter()
        trace = run_averaged(replace(cfg, strategy=strategy))
        duration = time.perf_counter() - started
        results[strategy] = trace
        if args.out:
            manifest = RunManifest(config=replace(cfg, strategy=strategy),
                                   seeds=trace.seeds, version=__version__,
                                   durations=(duration,))
            write_trace_csv(f"{args.out}.{strategy}.csv", trace, manifest)
    t1, t2 = cfg.window_start, cfg.window_end
    w_fcfs = window_mean_ratio(results[STRATEGY_FCFS], t1, t2)
    w_heur = window_mean_ratio(results[STRATEGY_HEURISTIC], t1, t2)
    print(f"W[{t1},{t2}) fcfs      = {w_fcfs:.6g}")
    print(f"W[{t1},{t2}) heuristic = {w_heur:.6g}")
    ratio = "n/a" if w_fcfs == 0 else f"{w_heur / w_fcfs:.6g}"
    print(f"ratio heuristic/fcfs = {ratio}")
    if args.out:
        print(f"wrote {args.out}.fcfs.csv and {args.out}.heuristic.csv")
    return EXIT_OK


def cmd_stability(args) -> int:
    cfg = load_config(args.config, None)
    report = stability_report(cfg)
    u = cfg.universe
    rows = (
        ("p_c < n1/nc", cfg.p_c, u.n_1 / u.n_c, report.cond_pc, report.margins[0]),
        ("p_a < n2/na", cfg.p_a, u.n_2 / u.n_a, report.cond_pa, report.margins[1]),
        ("mu*lambda < min(nc,na)", cfg.mu * cfg.lam, min(u.n_c, u.n_a),
         report.cond_load, report.margins[2]),
    )
    for name, lhs, rhs, ok, margin in rows:
        state = "ok" if ok else "VIOLATED"
        print(f"{name}: {lhs:.6g} vs {rhs:.6g} -> {state} (margin {margin:+.6g})")
    print(f"compliant: {'yes' if report.compliant else 'no'}")
    if args.strict and not report.compliant:
        return EXIT_NONCOMPLIANT
    return EXIT_OK


def _infer_universe(path: str, n1: int, n2: int,
                    ns: int | None, na: int | None, nc: int | None) -> SymbolUniverse:
    max_c = max_a = max_s = 0
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) == 3:
                try:
                    c, a, s = (int(p) for p in parts)
                except ValueError:
                    continue  # parse_triples reports the precise error later
                max_c, max_a, max_s = max(max_c, c), max(max_a, a), max(max_s, s)
    return SymbolUniverse(
        n_s=ns if ns is not None else max(max_s, 1),
        n_a=na if na is not None else max(max_a, n2, 1),
        n_c=nc if nc is not None else max(max_c, n1, 1),
        n_1=n1, n_2=n2,
    )


def cmd_validate(args) -> int:
    try:
        universe = _infer_universe(args.triples, args.n1, args.n2,
                                   args.ns, args.na, args.nc)
        with open(args.triples, "r", encoding="utf-8") as fh:
            triples = parse_triples(fh.read(), universe)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TriplesParseError, TripleRangeError) as exc:
        print(f"error: {args.triples}: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    print(f"{args.triples}: {len(triples)} triples over "
          f"universe(ns={universe.n_s}, na={universe.n_a}, nc={universe.n_c}, "
          f"n1={universe.n_1}, n2={universe.n_2})")
    failed = False

    def report(name: str, verdict) -> None:
        nonlocal failed
        if verdict.holds:
            print(f"{name}: ok")
        else:
            failed = True
            print(f"{name}: VIOLATED ({len(verdict.violations)})")
            for v in verdict.violations:
                print(f"  {v}")

    report("hard-core slicing", check_hard_core(triples))
    report("hard-access slicing", check_hard_access(triples))
    for ordering in (ORDER_SAC, ORDER_SCA, ORDER_CAS):
        ok = is_partial_latin(conjugate_view(triples, ordering))
        print(f"partial-latin {ordering} view: {'ok' if ok else 'VIOLATED'}")
        failed = failed or not ok
    report(f"partition claims (n1={universe.n_1}, n2={universe.n_2})",
           verify_partition_claims(partition_cas(triples)))
    return EXIT_VIOLATIONS if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicelab",
        description="Network slice manager simulator and combinatorial design checks")
    parser.add_argument("--version", action="version", version=f"slicelab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the averaged simulation, write a trace CSV")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="run fcfs and heuristic on identical seeds")
    p_cmp.add_argument("--config", required=True)
    p_cmp.add_argument("--out", default=None,
                       help="base path; writes <out>.fcfs.csv and <out>.heuristic.csv")
    p_cmp.add_argument("--seed", type=int, default=None)
    p_cmp.set_defaults(func=cmd_compare)

    p_stab = sub.add_parser("stability", help="check the stability conditions")
    p_stab.add_argument("--config", required=True)
    p_stab.add_argument("--strict", action="store_true",
                        help="exit 3 when the config is non-compliant")
    p_stab.set_defaults(func=cmd_stability)

    p_val = sub.add_parser("validate", help="combinatorial checks on a triples file")
    p_val.add_argument("--triples", required=True)
    p_val.add_argument("--n1", type=int, default=1, help="hard core components (prefix)")
    p_val.add_argument("--n2", type=int, default=1, help="hard access components (prefix)")
    p_val.add_argument("--ns", type=int, default=None, help="services (default: inferred)")
    p_val.add_argument("--na", type=int, default=None, help="access components (default: inferred)")
    p_val.add_argument("--nc", type=int, default=None, help="core components (default: inferred)")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TriplesParseError, TripleRangeError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SliceLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
