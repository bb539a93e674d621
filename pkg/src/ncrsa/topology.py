"""Directed network model, candidate path pre-computation, and slot sizing.

The network is a directed graph whose links carry a length in km and a
flex-grid of `slot_count` frequency slots.  Candidate paths for a node pair
are the k length-shortest loop-free directed paths; each path carries the
highest-order modulation format whose transparent reach covers its length,
which in turn determines how many slots a given bit-rate needs on it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import networkx as nx

__all__ = [
    "ModulationFormat",
    "ModulationTable",
    "Topology",
    "CandidatePath",
    "k_shortest_paths",
    "modulation_for_distance",
    "required_slots",
    "load_topology",
    "bundled_topology_path",
]


@dataclass(frozen=True)
class ModulationFormat:
    name: str
    bits_per_symbol: int
    reach_km: float


class ModulationTable:
    """Ordered list of formats: bits/symbol strictly rising, reach strictly falling."""

    def __init__(self, formats):
        formats = list(formats)
        if not formats:
            raise ValueError("modulation table must not be empty")
        for prev, cur in zip(formats, formats[1:]):
            if cur.bits_per_symbol <= prev.bits_per_symbol:
                raise ValueError("bits/symbol must be strictly increasing")
            if cur.reach_km >= prev.reach_km:
                raise ValueError("reach must be strictly decreasing")
        self.formats = tuple(formats)

    def for_distance(self, length_km):
        """Highest-order format able to span `length_km`, or None if out of reach."""
        if length_km <= 0:
            raise ValueError("length_km must be positive")
        best = None
        for fmt in self.formats:
            if fmt.reach_km >= length_km:
                best = fmt
        return best

    @classmethod
    def from_records(cls, records):
        return cls(
            ModulationFormat(r["name"], int(r["bits_per_symbol"]), float(r["reach_km"]))
            for r in records
        )


def modulation_for_distance(table: ModulationTable, length_km):
    return table.for_distance(length_km)


def required_slots(bitrate_gbps, baud_rate_gbaud, bits_per_symbol):
    """Slots needed for a bit-rate on a path using the given format (ceiling, >= 1)."""
    if bitrate_gbps <= 0 or baud_rate_gbaud <= 0 or bits_per_symbol <= 0:
        raise ValueError("bitrate, baud rate and bits/symbol must be positive")
    ratio = bitrate_gbps / (baud_rate_gbaud * bits_per_symbol)
    # 1e-9 guard: exact multiples like 32.1/10.7 can land a hair above an integer.
    return max(1, math.ceil(ratio - 1e-9))


class Topology:
    """Immutable directed network: nodes, directed links with km lengths, grid size."""

    def __init__(self, nodes, links, slot_count, slot_baud_rate, modulation_table):
        self.nodes = tuple(sorted(set(nodes)))
        node_set = set(self.nodes)
        self.links = {}
        for (u, v), length in dict(links).items():
            if u == v:
                raise ValueError(f"link endpoints must differ: {u}->{v}")
            if u not in node_set or v not in node_set:
                raise ValueError(f"link {u}->{v} references unknown node")
            if length <= 0:
                raise ValueError(f"link {u}->{v} must have positive length")
            self.links[(u, v)] = float(length)
        if slot_count <= 0:
            raise ValueError("slot_count must be positive")
        if slot_baud_rate <= 0:
            raise ValueError("slot baud rate must be positive")
        self.slot_count = int(slot_count)
        self.slot_baud_rate = float(slot_baud_rate)
        self.modulation_table = modulation_table
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.nodes)
        for (u, v), length in self.links.items():
            self.graph.add_edge(u, v, length_km=length)

    def link_length(self, u, v):
        return self.links[(u, v)]

    def has_node(self, n):
        return n in self.graph

    @classmethod
    def from_dict(cls, doc):
        links = {}
        for rec in doc["links"]:
            key = (rec["from"], rec["to"])
            if key in links:
                raise ValueError(f"duplicate directed link {key}")
            links[key] = rec["length_km"]
        table = ModulationTable.from_records(doc["modulation_table"])
        return cls(
            nodes=doc["nodes"],
            links=links,
            slot_count=doc["slot_count"],
            slot_baud_rate=doc["slot_baud_rate_gbaud"],
            modulation_table=table,
        )

    @classmethod
    def from_json(cls, path):
        with open(path) as f:
            return cls.from_dict(json.load(f))


def bundled_topology_path():
    """Path of the packaged 14-node reference network."""
    return resources.files("ncrsa.data").joinpath("nsfnet14.json")


def load_topology(path=None):
    """Load a topology JSON file; defaults to the bundled 14-node network."""
    if path is None:
        with resources.files("ncrsa.data").joinpath("nsfnet14.json").open() as f:
            return Topology.from_dict(json.load(f))
    return Topology.from_json(path)


@dataclass(frozen=True)
class CandidatePath:
    """A simple directed path plus the modulation it can run at.

    `modulation` is None when the path outruns even the longest-reach format;
    such paths are dropped from candidate sets because no demand can use them.
    """

    path_id: int
    nodes: tuple
    links: tuple
    length_km: float
    modulation: ModulationFormat | None

    def __post_init__(self):
        if len(self.nodes) != len(set(self.nodes)):
            raise ValueError("candidate path must be simple (no repeated nodes)")
        expected = tuple(zip(self.nodes[:-1], self.nodes[1:]))
        if self.links != expected:
            raise ValueError("link list does not match node sequence")

    @property
    def hops(self):
        return len(self.links)

    @property
    def source(self):
        return self.nodes[0]

    @property
    def destination(self):
        return self.nodes[-1]

    def slots_for(self, bitrate_gbps, baud_rate_gbaud):
        if self.modulation is None:
            raise ValueError("path has no usable modulation format")
        return required_slots(bitrate_gbps, baud_rate_gbaud, self.modulation.bits_per_symbol)


def _path_from_nodes(topology, nodes, path_id):
    links = tuple(zip(nodes[:-1], nodes[1:]))
    length = sum(topology.link_length(u, v) for u, v in links)
    return CandidatePath(
        path_id=path_id,
        nodes=tuple(nodes),
        links=links,
        length_km=length,
        modulation=topology.modulation_table.for_distance(length),
    )


def k_shortest_paths(topology, source, destination, k, first_id=0):
    """Up to k loop-free directed paths, shortest km first.

    Ties on total length are broken by lexicographic node sequence so the
    ordering is stable across runs.  Returns [] when no path exists.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if source == destination:
        raise ValueError("source and destination must differ")
    if not topology.has_node(source) or not topology.has_node(destination):
        raise ValueError("source and destination must exist in the topology")
    try:
        gen = nx.shortest_simple_paths(topology.graph, source, destination, weight="length_km")
    except nx.NetworkXNoPath:
        return []

    def length_of(nodes):
        return sum(topology.link_length(u, v) for u, v in zip(nodes[:-1], nodes[1:]))

    # Pull past the k-th path while lengths stay tied with it, then sort the
    # tied tail lexicographically: which of several equal-length paths makes
    # the cut must not depend on generator internals.
    collected = []
    kth_length = None
    try:
        for nodes in gen:
            length = length_of(nodes)
            if len(collected) < k:
                collected.append((length, tuple(nodes)))
                if len(collected) == k:
                    kth_length = length
            elif length <= kth_length + 1e-9:
                collected.append((length, tuple(nodes)))
            else:
                break
    except nx.NetworkXNoPath:
        return []

    collected.sort(key=lambda item: (item[0], item[1]))
    return [
        _path_from_nodes(topology, nodes, first_id + i)
        for i, (_, nodes) in enumerate(collected[:k])
    ]
