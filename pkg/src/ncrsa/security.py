"""XOR-based scoring and establishment of confidential demands.

For one candidate path, every established connection that can cover at least
one of its links contributes +1 to the covered links over the partner's own
slot range, yielding a per-(link, slot) count matrix.  Slot columns occupied
anywhere on the candidate path are masked out: the same slots must be free on
every link, so no usable window can touch them.  Each free window is then
scored per link (c_z = sum of counts inside the window) and reduced to one
number: the minimum over links (mxor) or, when every link meets the security
threshold, the per-link average (axor).  The best (path, window) wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .demands import REASON_BELOW_THRESHOLD, REASON_NO_SPECTRUM
from .spectrum import SlotInterval

__all__ = [
    "XorMetric",
    "XorSlotMatrix",
    "SecurityAssessment",
    "ConfidentialOutcome",
    "build_xor_slot_matrix",
    "score_interval",
    "solve_confidential",
    "partner_ledger",
    "TraceLog",
]

# Score gaps below this are ties (axor averages small integer counts).
SCORE_EPS = 1e-9


class XorMetric(Enum):
    MIN_XOR = "mxor"  # maximize the weakest link's XOR count
    AVG_XOR = "axor"  # maximize the per-link average, gated on the threshold


@dataclass
class XorSlotMatrix:
    """Per-(link, slot) partner coverage counts for one candidate path.

    `masked` flags slot columns occupied on at least one link of the path;
    counts under a mask are never scored.
    """

    path: object
    counts: np.ndarray  # shape (hops, slot_count), int
    masked: np.ndarray  # shape (slot_count,), bool

    def interval_counts(self, interval):
        """Per-link XOR counts c_z for a slot window."""
        return self.counts[:, interval.as_slice].sum(axis=1)

    def table(self):
        """Rows of per-slot counts with '-' in masked columns (debug/trace view)."""
        rows = []
        for link_row in self.counts:
            rows.append(["-" if m else int(v) for v, m in zip(link_row, self.masked)])
        return rows


def _group_by_path(established):
    groups = {}
    for conn in established:
        groups.setdefault(conn.path.path_id, []).append(conn)
    return groups


def build_xor_slot_matrix(path, established, coverage, grid, groups=None):
    """Coverage-count matrix of `path` against the established connections.

    `groups` (established connections keyed by path id) lets a caller scoring
    many candidates against the same state share the grouping work.
    """
    if groups is None:
        groups = _group_by_path(established)
    hops, slot_count = path.hops, grid.slot_count
    rows = coverage.rows_for(path.path_id)
    link_idx, starts, stops = [], [], []
    for q_id, conns in groups.items():
        row = rows.get(q_id)
        if row is None:
            if q_id in rows:
                continue
            row = coverage.row(path.path_id, q_id)
            if row is None:
                continue
        covered = [l for l, bit in enumerate(row) if bit]
        for conn in conns:
            a, b = conn.interval.start, conn.interval.end
            for l in covered:
                link_idx.append(l)
                starts.append(a - 1)
                stops.append(b)
    # Difference-array accumulation: +1 at each contribution's start, -1 one
    # past its end, then a per-link running sum yields the counts.
    diff = np.zeros((hops, slot_count + 1), dtype=np.int64)
    if link_idx:
        np.add.at(diff, (link_idx, starts), 1)
        np.add.at(diff, (link_idx, stops), -1)
    counts = np.cumsum(diff[:, :-1], axis=1)
    return XorSlotMatrix(path=path, counts=counts, masked=grid.column_occupied(path))


def score_interval(matrix, interval, metric, threshold):
    """Score one free window: (per-link counts, score).

    Score is None when the axor gate fails (some link below the threshold).
    The window must come from the grid's availability query; a masked column
    inside it means the caller skipped that step.
    """
    if matrix.masked[interval.as_slice].any():
        raise ValueError(f"window {interval} overlaps occupied slots on the path")
    c = matrix.interval_counts(interval)
    c_min = int(c.min())
    if metric is XorMetric.MIN_XOR:
        return c, c_min
    if metric is XorMetric.AVG_XOR:
        if c_min < threshold:
            return c, None
        return c, float(c.mean())
    raise ValueError(f"unknown metric {metric!r}")


@dataclass
class SecurityAssessment:
    """Security readout of one confidential connection on its chosen window."""

    interval: SlotInterval
    per_link_xor: tuple  # c_z per link of the path
    score: float
    metric: XorMetric
    threshold: int
    secured: bool  # every link meets the threshold
    ledger: tuple  # per link: tuple of (partner connection id, shared slot ids)

    @property
    def min_xor(self):
        return min(self.per_link_xor)

    @property
    def avg_xor(self):
        return sum(self.per_link_xor) / len(self.per_link_xor)

    @property
    def partners_per_link(self):
        """Distinct partner count per link (more conservative than slot counts)."""
        return tuple(len({pid for pid, _ in entries}) for entries in self.ledger)


@dataclass
class ConfidentialOutcome:
    """Either an establishment (path, interval, assessment) or a reasoned rejection."""

    established: bool
    path: object = None
    interval: SlotInterval | None = None
    assessment: SecurityAssessment | None = None
    reason: str | None = None


def ledger_for(path, interval, self_id, established, coverage):
    """Per-link XOR partners: covering connections sharing slot ids with the window."""
    entries = [[] for _ in range(path.hops)]
    for conn in established:
        if conn.id == self_id:
            continue
        row = coverage.row(path.path_id, conn.path.path_id)
        if row is None:
            continue
        shared = interval.overlap(conn.interval)
        if not shared:
            continue
        for link_idx, bit in enumerate(row):
            if bit:
                entries[link_idx].append((conn.id, shared))
    return tuple(tuple(sorted(link_entries)) for link_entries in entries)


def partner_ledger(connection, established, coverage):
    """Ledger of an established connection against the current network state."""
    return ledger_for(connection.path, connection.interval, connection.id, established, coverage)


def assess(path, interval, self_id, established, coverage, metric, threshold):
    """Build the full assessment for a fixed (path, window) choice."""
    ledger = ledger_for(path, interval, self_id, established, coverage)
    c = tuple(sum(len(slots) for _, slots in entries) for entries in ledger)
    c_min = min(c)
    score = float(c_min) if metric is XorMetric.MIN_XOR else sum(c) / len(c)
    return SecurityAssessment(
        interval=interval,
        per_link_xor=c,
        score=score,
        metric=metric,
        threshold=threshold,
        secured=c_min >= threshold,
        ledger=ledger,
    )


def solve_confidential(
    demand,
    candidates,
    established,
    coverage,
    grid,
    metric,
    threshold,
    counters=None,
    ignore_threshold=False,
    trace=None,
):
    """Pick the best (candidate path, slot window) for a confidential demand.

    Scores every free window on every candidate, keeps the highest score, and
    establishes there when it reaches the threshold (or unconditionally with
    `ignore_threshold`, the forced final pass).  Ties go to the earlier path
    in km order, then the lower window start.  Rejections say why: no free
    window anywhere (resource) versus not enough XOR partners (security).
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    baud = grid.topology.slot_baud_rate
    any_spectrum = False
    best = None  # (score, path_index, path, interval, c vector)
    groups = _group_by_path(established)
    for path_index, path in enumerate(candidates):
        width = path.slots_for(demand.bitrate_gbps, baud)
        if width > grid.slot_count:
            continue
        intervals = grid.available_intervals(path, width)
        matrix = build_xor_slot_matrix(path, established, coverage, grid, groups=groups)
        scored = _score_windows(matrix, intervals, width, metric, threshold, ignore_threshold)
        if trace is not None:
            trace.record_path(demand, path, matrix, intervals, scored)
        if not intervals:
            continue
        any_spectrum = True
        for interval, c, score in scored:
            if score is None:
                continue
            if best is None or score > best[0] + SCORE_EPS:
                best = (score, path_index, path, interval, c)

    if best is None:
        reason = REASON_BELOW_THRESHOLD if any_spectrum else REASON_NO_SPECTRUM
        outcome = ConfidentialOutcome(established=False, reason=reason)
    elif not ignore_threshold and best[0] < threshold - SCORE_EPS:
        outcome = ConfidentialOutcome(established=False, reason=REASON_BELOW_THRESHOLD)
    else:
        score, _, path, interval, c = best
        grid.allocate(demand.demand_id, path, interval)
        if counters is not None:
            counters.record(path)
        ledger = ledger_for(path, interval, demand.demand_id, established, coverage)
        assessment = SecurityAssessment(
            interval=interval,
            per_link_xor=tuple(int(v) for v in c),
            score=score,
            metric=metric,
            threshold=threshold,
            secured=int(c.min()) >= threshold,
            ledger=ledger,
        )
        outcome = ConfidentialOutcome(
            established=True, path=path, interval=interval, assessment=assessment
        )
    if trace is not None:
        trace.record_choice(demand, outcome)
    return outcome


def _score_windows(matrix, intervals, width, metric, threshold, ignore_threshold):
    """Score every free window at once: list of (interval, c vector, score|None)."""
    if not intervals:
        return []
    prefix = np.zeros((matrix.counts.shape[0], matrix.counts.shape[1] + 1), dtype=np.int64)
    np.cumsum(matrix.counts, axis=1, out=prefix[:, 1:])
    starts = np.array([iv.start - 1 for iv in intervals])
    c_all = prefix[:, starts + width] - prefix[:, starts]  # (links, windows)
    mins = c_all.min(axis=0)
    if metric is XorMetric.MIN_XOR:
        scores = mins.astype(float)
        feasible = np.ones(len(intervals), dtype=bool)
    else:
        scores = c_all.mean(axis=0)
        feasible = np.ones(len(intervals), dtype=bool) if ignore_threshold else mins >= threshold
    return [
        (iv, c_all[:, i], float(scores[i]) if feasible[i] else None)
        for i, iv in enumerate(intervals)
    ]


class TraceLog:
    """Plain-text trace of confidential scoring: count matrices, window scores, choice."""

    def __init__(self, fileobj):
        self.f = fileobj

    def record_path(self, demand, path, matrix, intervals, scored):
        route = "-".join(str(n) for n in path.nodes)
        self.f.write(f"demand,{demand.demand_id},path,{path.path_id},{route}\n")
        for link, row in zip(path.links, matrix.table()):
            cells = ",".join(str(v) for v in row)
            self.f.write(f"counts,{link[0]}->{link[1]},{cells}\n")
        if not intervals:
            self.f.write("windows,none\n")
        for interval, c, score in scored:
            cs = ",".join(str(int(v)) for v in c)
            label = "skipped" if score is None else f"{score:g}"
            self.f.write(f"window,{interval},c,{cs},score,{label}\n")

    def record_choice(self, demand, outcome):
        if outcome.established:
            self.f.write(
                f"choice,{demand.demand_id},path,{outcome.path.path_id},"
                f"window,{outcome.interval},score,{outcome.assessment.score:g}\n"
            )
        else:
            self.f.write(f"choice,{demand.demand_id},rejected,{outcome.reason}\n")
        self.f.write("\n")
