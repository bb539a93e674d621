"""Traffic demands: the request tuple, generated demand sets, and CSV files."""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .security import SecurityAssessment
    from .spectrum import SlotInterval
    from .topology import CandidatePath

__all__ = [
    "Demand",
    "Connection",
    "NONCONFIDENTIAL",
    "SECURED",
    "UNSECURED",
    "BLOCKED",
    "REASON_BELOW_THRESHOLD",
    "REASON_NO_SPECTRUM",
    "generate_demands",
    "read_demand_csv",
    "write_demand_csv",
]

# Terminal connection statuses.
NONCONFIDENTIAL = "established-nonconfidential"
SECURED = "established-secured"
UNSECURED = "established-unsecured"
BLOCKED = "blocked"

# Why a confidential demand could not be established on a pass.
REASON_BELOW_THRESHOLD = "below-threshold"
REASON_NO_SPECTRUM = "no-spectrum"


@dataclass(frozen=True)
class Demand:
    """Connection request: source, destination, bit-rate (Gbps), confidentiality."""

    demand_id: int
    src: object
    dst: object
    bitrate_gbps: float
    confidential: bool

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"demand {self.demand_id}: source equals destination")
        if self.bitrate_gbps <= 0:
            raise ValueError(f"demand {self.demand_id}: bit-rate must be positive")
        if self.demand_id < 0:
            raise ValueError("demand ids must be non-negative")


@dataclass
class Connection:
    """Outcome of one demand: where it landed (if anywhere) and how secure it is."""

    demand: Demand
    status: str
    path: "CandidatePath | None" = None
    interval: "SlotInterval | None" = None
    assessment: "SecurityAssessment | None" = None
    blocked_reason: str | None = None

    @property
    def id(self):
        return self.demand.demand_id

    @property
    def established(self):
        return self.status != BLOCKED


def generate_demands(topology, count, confidential_fraction, bitrate_range, seed):
    """Seeded random demand set: uniform ordered node pairs, uniform bit-rate.

    Exactly round(confidential_fraction * count) demands are flagged
    confidential, at uniformly chosen positions.  Same arguments, same list.
    """
    if count < 1:
        raise ValueError("demand count must be >= 1")
    if not 0 <= confidential_fraction <= 1:
        raise ValueError("confidential fraction must be within [0, 1]")
    lo, hi = bitrate_range
    if lo <= 0 or hi < lo:
        raise ValueError("bit-rate range must be positive with low <= high")
    nodes = list(topology.nodes)
    if len(nodes) < 2:
        raise ValueError("topology must have at least two nodes")
    rng = random.Random(seed)
    tuples = []
    for _ in range(count):
        si = rng.randrange(len(nodes))
        di = rng.randrange(len(nodes) - 1)
        if di >= si:
            di += 1
        tuples.append((nodes[si], nodes[di], rng.uniform(lo, hi)))
    n_confidential = round(confidential_fraction * count)
    confidential_at = set(rng.sample(range(count), n_confidential))
    return [
        Demand(i + 1, s, d, rate, i in confidential_at)
        for i, (s, d, rate) in enumerate(tuples)
    ]


def write_demand_csv(demands, fileobj):
    writer = csv.writer(fileobj)
    writer.writerow(["demand_id", "src", "dst", "bitrate_gbps", "confidential"])
    for d in demands:
        writer.writerow([d.demand_id, d.src, d.dst, repr(d.bitrate_gbps), int(d.confidential)])


def read_demand_csv(fileobj, node_type=int):
    """Parse a demand CSV; node ids go through `node_type` (bundled network uses ints)."""
    reader = csv.DictReader(fileobj)
    required = {"demand_id", "src", "dst", "bitrate_gbps", "confidential"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ValueError(f"demand CSV must have columns {sorted(required)}")
    demands = []
    seen = set()
    for row in reader:
        demand_id = int(row["demand_id"])
        if demand_id in seen:
            raise ValueError(f"duplicate demand id {demand_id}")
        seen.add(demand_id)
        demands.append(
            Demand(
                demand_id=demand_id,
                src=node_type(row["src"]),
                dst=node_type(row["dst"]),
                bitrate_gbps=float(row["bitrate_gbps"]),
                confidential=bool(int(row["confidential"])),
            )
        )
    return demands
