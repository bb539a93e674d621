"""Whole-plan orchestration: pre-processing, demand loop, re-entry, reporting.

A run works the demand list in order: non-confidential demands are first-fit
along policy-sorted candidates, confidential ones are XOR-scored.  Confidential
demands that fail only the security threshold are parked, re-solved once after
everything else landed (the network is fuller then), and finally force-placed
at their best window regardless of threshold, so the only blocking left is
lack of spectrum.  Security counts are recomputed against the final network
state before the report is assembled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .coverage import CoverageTable
from .demands import (
    BLOCKED,
    NONCONFIDENTIAL,
    REASON_BELOW_THRESHOLD,
    REASON_NO_SPECTRUM,
    SECURED,
    UNSECURED,
    Connection,
)
from .routing import RoutingStrategy, UtilizationCounters, establish_nonconfidential, sort_candidates
from .security import XorMetric, assess, solve_confidential
from .spectrum import SpectrumGrid
from .topology import k_shortest_paths

__all__ = [
    "PlanConfig",
    "PlanContext",
    "PlanResult",
    "PlanReport",
    "plan",
    "run_plan",
    "recompute_security",
    "aggregate_report",
    "write_report_json",
]


@dataclass(frozen=True)
class PlanConfig:
    k: int
    threshold: int
    routing: RoutingStrategy
    metric: XorMetric

    @classmethod
    def create(cls, k, threshold, routing, metric):
        """Coerce CLI-style strings; raises ValueError on anything unknown."""
        try:
            routing = routing if isinstance(routing, RoutingStrategy) else RoutingStrategy(routing)
            metric = metric if isinstance(metric, XorMetric) else XorMetric(metric)
        except ValueError as exc:
            raise ValueError(f"unknown routing strategy or metric: {exc}") from None
        cfg = cls(k=int(k), threshold=int(threshold), routing=routing, metric=metric)
        cfg.validate()
        return cfg

    def validate(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")
        if not isinstance(self.routing, RoutingStrategy):
            raise ValueError(f"unknown routing strategy {self.routing!r}")
        if not isinstance(self.metric, XorMetric):
            raise ValueError(f"unknown metric {self.metric!r}")


class PlanContext:
    """Per-(topology, k) pre-processing: candidate paths and their coverage table.

    Building this is demand-independent, so experiment sweeps share one context
    across seeds and policies.
    """

    def __init__(self, topology, k, candidates, coverage):
        self.topology = topology
        self.k = k
        self.candidates = candidates
        self.coverage = coverage

    @classmethod
    def build(cls, topology, k):
        candidates = {}
        usable = []
        next_id = 0
        for s in topology.nodes:
            for d in topology.nodes:
                if s == d:
                    continue
                paths = k_shortest_paths(topology, s, d, k, first_id=next_id)
                next_id += len(paths)
                # Paths beyond every format's reach can never carry traffic.
                good = [p for p in paths if p.modulation is not None]
                if good:
                    candidates[(s, d)] = good
                    usable.extend(good)
        return cls(topology, k, candidates, CoverageTable(usable))


@dataclass
class PlanReport:
    """Aggregate metrics of one run plus the per-demand records they come from."""

    total_demands: int
    established: int
    blocked: int
    blocking_probability: float
    blocked_no_spectrum: int
    blocked_security: int
    confidential_total: int
    confidential_established: int
    secured: int
    unsecured: int
    pct_secured: float | None
    avg_min_xor: float | None
    avg_xor_per_link: float | None
    slots_utilized: int
    records: list = field(default_factory=list, repr=False)

    def summary(self):
        return {
            "total_demands": self.total_demands,
            "established": self.established,
            "blocked": self.blocked,
            "blocking_probability": self.blocking_probability,
            "blocked_no_spectrum": self.blocked_no_spectrum,
            "blocked_security": self.blocked_security,
            "confidential_total": self.confidential_total,
            "confidential_established": self.confidential_established,
            "secured": self.secured,
            "unsecured": self.unsecured,
            "pct_secured": self.pct_secured,
            "avg_min_xor": self.avg_min_xor,
            "avg_xor_per_link": self.avg_xor_per_link,
            "slots_utilized": self.slots_utilized,
        }

    def to_dict(self):
        return {"summary": self.summary(), "demands": self.records}


@dataclass
class PlanResult:
    """Full end state of a run; tests and demos poke at the internals."""

    report: PlanReport
    connections: list
    grid: SpectrumGrid
    counters: UtilizationCounters
    context: PlanContext


def _validate_demands(topology, demands):
    seen = set()
    for d in demands:
        if d.demand_id in seen:
            raise ValueError(f"duplicate demand id {d.demand_id}")
        seen.add(d.demand_id)
        if not topology.has_node(d.src) or not topology.has_node(d.dst):
            raise ValueError(f"demand {d.demand_id} references unknown nodes {d.src}->{d.dst}")


def plan(topology, demands, config, context=None, trace=None):
    """Run the full pipeline; returns the report plus grid/counters/connections."""
    config.validate()
    demands = list(demands)
    _validate_demands(topology, demands)
    if context is None:
        context = PlanContext.build(topology, config.k)
    elif context.k != config.k or context.topology is not topology:
        raise ValueError("context was built for a different topology or k")

    grid = SpectrumGrid(topology)
    counters = UtilizationCounters()
    established = []
    by_demand = {}

    def register(conn):
        by_demand[conn.demand.demand_id] = conn
        if conn.established:
            established.append(conn)

    def solve(demand, ignore_threshold=False):
        return solve_confidential(
            demand,
            context.candidates[(demand.src, demand.dst)],
            established,
            context.coverage,
            grid,
            config.metric,
            config.threshold,
            counters=counters,
            ignore_threshold=ignore_threshold,
            trace=trace,
        )

    # First pass over the demand list in input order.
    parked = []
    for demand in demands:
        if (demand.src, demand.dst) not in context.candidates:
            register(Connection(demand, BLOCKED, blocked_reason=REASON_NO_SPECTRUM))
            continue
        if not demand.confidential:
            order = sort_candidates(
                context.candidates[(demand.src, demand.dst)],
                config.routing,
                counters,
                demand.bitrate_gbps,
                topology.slot_baud_rate,
            )
            register(establish_nonconfidential(demand, order, grid, counters))
            continue
        outcome = solve(demand)
        if outcome.established:
            register(
                Connection(demand, SECURED, outcome.path, outcome.interval, outcome.assessment)
            )
        elif outcome.reason == REASON_NO_SPECTRUM:
            register(Connection(demand, BLOCKED, blocked_reason=REASON_NO_SPECTRUM))
        else:
            parked.append(demand)

    # Re-entry: parked demands see every connection placed after their first try.
    still_parked = []
    for demand in parked:
        outcome = solve(demand)
        if outcome.established:
            register(
                Connection(demand, SECURED, outcome.path, outcome.interval, outcome.assessment)
            )
        elif outcome.reason == REASON_NO_SPECTRUM:
            register(Connection(demand, BLOCKED, blocked_reason=REASON_NO_SPECTRUM))
        else:
            still_parked.append(demand)

    # Forced pass: best window regardless of threshold; blocking from here on
    # can only mean the spectrum ran out.
    for demand in still_parked:
        outcome = solve(demand, ignore_threshold=True)
        if outcome.established:
            status = SECURED if outcome.assessment.secured else UNSECURED
            register(
                Connection(demand, status, outcome.path, outcome.interval, outcome.assessment)
            )
        else:
            register(Connection(demand, BLOCKED, blocked_reason=REASON_NO_SPECTRUM))

    recompute_security(established, context.coverage, config.metric, config.threshold)

    records = [_record(by_demand[d.demand_id]) for d in demands]
    report = aggregate_report(records)
    return PlanResult(report, [by_demand[d.demand_id] for d in demands], grid, counters, context)


def run_plan(topology, demands, config, context=None, trace=None):
    """Plan and return the report only."""
    return plan(topology, demands, config, context=context, trace=trace).report


def recompute_security(established, coverage, metric, threshold):
    """Refresh every confidential connection's counts against the final state.

    Partners are only ever added during a run, so per-link counts can only
    grow; statuses flip unsecured -> secured, never the other way.
    """
    for conn in established:
        if not conn.demand.confidential:
            continue
        conn.assessment = assess(
            conn.path, conn.interval, conn.id, established, coverage, metric, threshold
        )
        conn.status = SECURED if conn.assessment.secured else UNSECURED


def _record(conn):
    demand = conn.demand
    rec = {
        "demand_id": demand.demand_id,
        "src": demand.src,
        "dst": demand.dst,
        "bitrate_gbps": demand.bitrate_gbps,
        "confidential": int(demand.confidential),
        "status": conn.status,
        "blocked_reason": conn.blocked_reason,
        "path_id": None,
        "path_nodes": None,
        "hops": None,
        "modulation": None,
        "slot_start": None,
        "slot_end": None,
        "width": None,
        "min_xor": None,
        "avg_xor": None,
        "secured": None,
        "partners_per_link": None,
    }
    if conn.established:
        rec.update(
            path_id=conn.path.path_id,
            path_nodes=list(conn.path.nodes),
            hops=conn.path.hops,
            modulation=conn.path.modulation.name,
            slot_start=conn.interval.start,
            slot_end=conn.interval.end,
            width=conn.interval.width,
        )
    if conn.assessment is not None:
        rec.update(
            min_xor=int(conn.assessment.min_xor),
            avg_xor=float(conn.assessment.avg_xor),
            secured=bool(conn.assessment.secured),
            partners_per_link=list(conn.assessment.partners_per_link),
        )
    return rec


def aggregate_report(records):
    """Assemble the aggregate metrics back out of per-demand records."""
    total = len(records)
    blocked = [r for r in records if r["status"] == BLOCKED]
    established = [r for r in records if r["status"] != BLOCKED]
    confidential = [r for r in records if r["confidential"]]
    conf_established = [r for r in confidential if r["status"] != BLOCKED]
    secured = sum(1 for r in conf_established if r["status"] == SECURED)
    unsecured = sum(1 for r in conf_established if r["status"] == UNSECURED)
    n_conf = len(conf_established)
    return PlanReport(
        total_demands=total,
        established=len(established),
        blocked=len(blocked),
        blocking_probability=(len(blocked) / total) if total else 0.0,
        blocked_no_spectrum=sum(1 for r in blocked if r["blocked_reason"] == REASON_NO_SPECTRUM),
        blocked_security=sum(1 for r in blocked if r["blocked_reason"] == REASON_BELOW_THRESHOLD),
        confidential_total=len(confidential),
        confidential_established=n_conf,
        secured=secured,
        unsecured=unsecured,
        pct_secured=(100.0 * secured / n_conf) if n_conf else None,
        avg_min_xor=(sum(r["min_xor"] for r in conf_established) / n_conf) if n_conf else None,
        avg_xor_per_link=(sum(r["avg_xor"] for r in conf_established) / n_conf) if n_conf else None,
        slots_utilized=sum(r["hops"] * r["width"] for r in established),
        records=list(records),
    )


def write_report_json(report, path, seed=None):
    """Stable-layout JSON dump of one run (seed label plus the report body)."""
    doc = {"seed": seed}
    doc.update(report.to_dict())
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")
