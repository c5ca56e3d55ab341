"""CSV persistence for traces plus the run manifest preamble.

Schema: a ``#``-prefixed preamble (manifest), one header row, then one
data row per tick.  Floats are printed with 6 significant digits; output
is written to a temp file and renamed so failures never leave a partial
CSV.  Wall-clock timings are deliberately kept out of the file so that
identical config + seed produces byte-identical output.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import ConfigError
from .simulator import TRACE_COLUMNS, MeanTrace
from .workload import SimConfig
from .designs import SymbolUniverse

_CONFIG_KEYS = ("n1", "nc", "n2", "na", "p_c", "p_a", "lambda", "mu",
                "ticks", "runs", "seed", "strategy", "window_start", "window_end")


@dataclass(frozen=True)
class RunManifest:
    """What produced a trace: config echo, seeds, version, timings."""

    config: SimConfig
    seeds: tuple[int, ...]
    version: str
    durations: tuple[float, ...] = ()   # seconds per run; stdout only

    def config_items(self) -> list[tuple[str, str]]:
        cfg = self.config
        u = cfg.universe
        values = {
            "n1": u.n_1, "nc": u.n_c, "n2": u.n_2, "na": u.n_a,
            "p_c": repr(cfg.p_c), "p_a": repr(cfg.p_a),
            "lambda": repr(cfg.lam), "mu": repr(cfg.mu),
            "ticks": cfg.ticks, "runs": cfg.runs, "seed": cfg.seed,
            "strategy": cfg.strategy,
            "window_start": cfg.window_start, "window_end": cfg.window_end,
        }
        return [(k, str(values[k])) for k in _CONFIG_KEYS]


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def write_trace_csv(path: str, trace: MeanTrace, manifest: RunManifest) -> None:
    """Atomically write a (mean) trace with its manifest preamble."""
    columns = [trace.column(name) for name in TRACE_COLUMNS]
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix=".trace-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# slicelab trace v1 (slicelab {manifest.version})\n")
            for key, value in manifest.config_items():
                fh.write(f"# {key} = {value}\n")
            fh.write(f"# seeds = {','.join(str(s) for s in manifest.seeds)}\n")
            fh.write(",".join(TRACE_COLUMNS) + "\n")
            for i in range(len(trace)):
                row = [str(int(columns[0][i]))]
                row += [_fmt(float(col[i])) for col in columns[1:]]
                fh.write(",".join(row) + "\n")
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def read_trace_csv(path: str) -> tuple[dict[str, str], dict[str, np.ndarray]]:
    """Read a trace CSV back: (manifest key/values, column arrays)."""
    meta: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                if header != list(TRACE_COLUMNS):
                    raise ConfigError(f"unexpected trace header in {path}: {header}")
                continue
            rows.append([float(v) for v in line.split(",")])
    if header is None:
        raise ConfigError(f"no trace header found in {path}")
    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(TRACE_COLUMNS))
    return meta, {name: data[:, i] for i, name in enumerate(TRACE_COLUMNS)}


def manifest_to_config(meta: dict[str, str]) -> SimConfig:
    """Rebuild a SimConfig from a manifest read by :func:`read_trace_csv`."""
    try:
        universe = SymbolUniverse(
            n_s=0,
            n_a=int(meta["na"]), n_c=int(meta["nc"]),
            n_1=int(meta["n1"]), n_2=int(meta["n2"]),
        )
        return SimConfig(
            universe=universe,
            p_c=float(meta["p_c"]), p_a=float(meta["p_a"]),
            lam=float(meta["lambda"]), mu=float(meta["mu"]),
            ticks=int(meta["ticks"]), runs=int(meta["runs"]),
            seed=int(meta["seed"]), strategy=meta["strategy"],
            window_start=int(meta["window_start"]), window_end=int(meta["window_end"]),
        )
    except KeyError as exc:
        raise ConfigError(f"manifest missing key {exc}") from None
