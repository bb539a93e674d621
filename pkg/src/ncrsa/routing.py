"""Candidate-path ordering policies and the non-confidential establishment rule.

Non-confidential demands take the first path, in policy order, that has any
free window, and the lowest-start window on it.  MUN/MUL deliberately steer
traffic onto busy nodes/links so later confidential demands find more
encryption partners; MSE instead minimizes the spectral footprint.
"""

from __future__ import annotations

from collections import defaultdict
from enum import Enum

from .demands import BLOCKED, NONCONFIDENTIAL, REASON_NO_SPECTRUM, Connection
from .topology import required_slots

__all__ = [
    "RoutingStrategy",
    "UtilizationCounters",
    "path_score",
    "sort_candidates",
    "establish_nonconfidential",
]


class RoutingStrategy(Enum):
    MUN = "mun"  # most used nodes first
    MUL = "mul"  # most used links first
    MSE = "mse"  # maximum spectrum efficiency first


class UtilizationCounters:
    """How many established connections use each node and each directed link."""

    def __init__(self):
        self.node_use = defaultdict(int)
        self.link_use = defaultdict(int)

    def record(self, path):
        for n in path.nodes:
            self.node_use[n] += 1
        for link in path.links:
            self.link_use[link] += 1

    def remove(self, path):
        for n in path.nodes:
            self.node_use[n] -= 1
            if self.node_use[n] < 0:
                raise ValueError(f"node counter for {n} went negative")
        for link in path.links:
            self.link_use[link] -= 1
            if self.link_use[link] < 0:
                raise ValueError(f"link counter for {link} went negative")


def path_score(path, strategy, counters, bitrate_gbps=None, baud_rate_gbaud=None):
    """Sort key for one path.  MUN/MUL: busiest node/link count (higher = earlier).

    MSE scores ascending as (required slots, hops, km length) and therefore
    needs the demand bit-rate and the grid's baud rate.
    """
    if strategy is RoutingStrategy.MUN:
        return max(counters.node_use[n] for n in path.nodes)
    if strategy is RoutingStrategy.MUL:
        return max(counters.link_use[link] for link in path.links)
    if strategy is RoutingStrategy.MSE:
        if bitrate_gbps is None or baud_rate_gbaud is None:
            raise ValueError("MSE scoring needs bitrate_gbps and baud_rate_gbaud")
        slots = required_slots(bitrate_gbps, baud_rate_gbaud, path.modulation.bits_per_symbol)
        return (slots, path.hops, path.length_km)
    raise ValueError(f"unknown routing strategy {strategy!r}")


def sort_candidates(paths, strategy, counters, bitrate_gbps=None, baud_rate_gbaud=None):
    """Order candidates by policy; stable, so km order survives as the tie-break."""
    if not paths:
        raise ValueError("candidate path list must not be empty")
    key = lambda p: path_score(p, strategy, counters, bitrate_gbps, baud_rate_gbaud)
    if strategy is RoutingStrategy.MSE:
        return sorted(paths, key=key)
    return sorted(paths, key=key, reverse=True)


def establish_nonconfidential(demand, sorted_paths, grid, counters):
    """First-fit the demand onto the first sorted path with any free window."""
    if demand.confidential:
        raise ValueError("confidential demands take the XOR-scored route")
    baud = grid.topology.slot_baud_rate
    for path in sorted_paths:
        width = path.slots_for(demand.bitrate_gbps, baud)
        if width > grid.slot_count:
            continue
        intervals = grid.available_intervals(path, width)
        if intervals:
            interval = intervals[0]
            grid.allocate(demand.demand_id, path, interval)
            counters.record(path)
            return Connection(demand, NONCONFIDENTIAL, path=path, interval=interval)
    return Connection(demand, BLOCKED, blocked_reason=REASON_NO_SPECTRUM)
