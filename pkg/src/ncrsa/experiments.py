"""Seeded experiment sweeps: repeated runs, aggregate CSV, plot-ready series.

One experiment = a grid of (k, demand count) combos, each repeated over
consecutive seeds.  Pre-processing is shared per k, demand sets are shared
per seed across policies (same seed, same demands), and every artifact lands
under the output directory:

    run_<seed>.json        per-run report (per combo)
    demands_<seed>.csv     the generated demand set (generator mode)
    trace_<seed>.txt       confidential scoring trace (with tracing on)
    aggregate.csv          one row per combo: mean and sample stddev per metric
    series_vs_k.csv        combo means keyed by k
    series_vs_demands.csv  combo means keyed by demand count
"""

from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

from .demands import generate_demands, read_demand_csv, write_demand_csv
from .planner import PlanConfig, PlanContext, plan, write_report_json
from .security import TraceLog
from .topology import load_topology

__all__ = ["GeneratorSpec", "ExperimentConfig", "ExperimentRunError", "run_experiment"]

METRIC_COLUMNS = [
    "blocking_probability",
    "slots_utilized",
    "avg_min_xor",
    "avg_xor_per_link",
    "pct_secured",
]


class ExperimentRunError(RuntimeError):
    """A run inside a sweep failed; carries the seed for the diagnostic."""

    def __init__(self, seed, combo, cause):
        super().__init__(f"run failed for seed {seed} ({combo}): {cause}")
        self.seed = seed


@dataclass(frozen=True)
class GeneratorSpec:
    counts: tuple = (100,)
    confidential_fraction: float = 0.3
    bitrate_min: float = 20.0
    bitrate_max: float = 100.0
    seed: int = 1

    def validate(self):
        if any(c < 1 for c in self.counts):
            raise ValueError("demand counts must be >= 1")
        if not 0 <= self.confidential_fraction <= 1:
            raise ValueError("confidential fraction must be within [0, 1]")
        if self.bitrate_min <= 0 or self.bitrate_max < self.bitrate_min:
            raise ValueError("bit-rate range must be positive with low <= high")


@dataclass(frozen=True)
class ExperimentConfig:
    topology_path: str | None = None
    demand_file: str | None = None
    generator: GeneratorSpec = field(default_factory=GeneratorSpec)
    k_values: tuple = (5,)
    threshold: int = 1
    routing: str = "mse"
    metric: str = "mxor"
    reps: int = 1
    out_dir: str = "out"
    trace: bool = False
    benchmark: bool = False

    def validate(self):
        if any(k < 1 for k in self.k_values):
            raise ValueError("k must be >= 1")
        if self.reps < 1:
            raise ValueError("repetitions must be >= 1")
        if self.demand_file is not None and self.reps > 1:
            raise ValueError("a fixed demand file with --reps > 1 repeats identical runs")
        self.generator.validate()


def _mean_std(values):
    values = [v for v in values if v is not None]
    if not values:
        return None, None
    mean = sum(values) / len(values)
    if len(values) < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(var)


def _fmt(value):
    return "" if value is None else repr(float(value))


def run_experiment(config):
    """Execute the sweep and write all artifacts; returns combo -> metric stats."""
    config.validate()
    topology = load_topology(config.topology_path)
    effective_routing = "mse" if config.benchmark else config.routing
    plan_metric = config.metric

    file_demands = None
    if config.demand_file is not None:
        with open(config.demand_file) as f:
            file_demands = read_demand_csv(f)
        counts = (len(file_demands),)
    else:
        counts = tuple(config.generator.counts)

    out_root = Path(config.out_dir)
    out_root.mkdir(parents=True, exist_ok=True)
    single_combo = len(config.k_values) == 1 and len(counts) == 1

    results = {}
    for k in config.k_values:
        context = PlanContext.build(topology, k)
        cfg = PlanConfig.create(k, config.threshold, effective_routing, plan_metric)
        for count in counts:
            combo = f"k{k}_n{count}"
            combo_dir = out_root if single_combo else out_root / combo
            combo_dir.mkdir(parents=True, exist_ok=True)
            per_metric = {name: [] for name in METRIC_COLUMNS}
            for rep in range(config.reps):
                seed = config.generator.seed + rep
                demands = _demands_for(config, topology, file_demands, count, seed, combo_dir)
                label = "file" if file_demands is not None else seed
                try:
                    if config.trace:
                        with open(combo_dir / f"trace_{label}.txt", "w") as tf:
                            result = plan(topology, demands, cfg, context, trace=TraceLog(tf))
                    else:
                        result = plan(topology, demands, cfg, context)
                except Exception as exc:
                    raise ExperimentRunError(label, combo, exc) from exc
                write_report_json(result.report, combo_dir / f"run_{label}.json", seed=label)
                summary = result.report.summary()
                for name in METRIC_COLUMNS:
                    per_metric[name].append(summary[name])
            results[(k, count)] = {name: _mean_std(vals) for name, vals in per_metric.items()}

    _write_aggregate(out_root / "aggregate.csv", config, effective_routing, results)
    _write_series(out_root / "series_vs_k.csv", "k", results, key=lambda kc: (kc[0], kc[1]))
    _write_series(
        out_root / "series_vs_demands.csv", "demand_count", results, key=lambda kc: (kc[1], kc[0])
    )
    return results


def _demands_for(config, topology, file_demands, count, seed, combo_dir):
    if file_demands is not None:
        demands = file_demands
        if config.benchmark:
            demands = [dataclasses.replace(d, confidential=False) for d in demands]
        return demands
    gen = config.generator
    fraction = 0.0 if config.benchmark else gen.confidential_fraction
    demands = generate_demands(
        topology, count, fraction, (gen.bitrate_min, gen.bitrate_max), seed
    )
    with open(combo_dir / f"demands_{seed}.csv", "w", newline="") as f:
        write_demand_csv(demands, f)
    return demands


def _write_aggregate(path, config, routing, results):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        header = ["k", "demand_count", "routing", "metric", "threshold", "reps", "seed"]
        for name in METRIC_COLUMNS:
            header += [f"{name}_mean", f"{name}_std"]
        writer.writerow(header)
        for (k, count), stats in sorted(results.items()):
            row = [k, count, routing, config.metric, config.threshold, config.reps,
                   config.generator.seed]
            for name in METRIC_COLUMNS:
                mean, std = stats[name]
                row += [_fmt(mean), _fmt(std)]
            writer.writerow(row)


def _write_series(path, axis, results, key):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([axis, "k", "demand_count"] + [f"{m}_mean" for m in METRIC_COLUMNS])
        for (k, count) in sorted(results, key=key):
            stats = results[(k, count)]
            x = k if axis == "k" else count
            writer.writerow(
                [x, k, count] + [_fmt(stats[name][0]) for name in METRIC_COLUMNS]
            )
