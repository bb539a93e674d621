"""Shared builders and independent oracles for the test suite.

The oracles deliberately re-derive results from first principles (exhaustive
enumeration, direct cell scans, recounting) rather than calling the code paths
they check.
"""

from __future__ import annotations

import math
import random
from collections import namedtuple

import pytest

from ncrsa.coverage import CoverageTable
from ncrsa.demands import BLOCKED
from ncrsa.spectrum import FREE, SlotInterval
from ncrsa.topology import CandidatePath, ModulationFormat, ModulationTable, Topology

Estab = namedtuple("Estab", "id path interval")

DEFAULT_FORMATS = [
    ModulationFormat("BPSK", 1, 9300),
    ModulationFormat("QPSK", 2, 4600),
    ModulationFormat("8-QAM", 3, 1700),
    ModulationFormat("16-QAM", 4, 800),
]


def make_topology(nodes, edges, slot_count=20, baud=10.7, length=100.0, directed=False):
    """Topology from an edge list; undirected edges become two directed links."""
    links = {}
    for edge in edges:
        u, v = edge[0], edge[1]
        d = edge[2] if len(edge) > 2 else length
        links[(u, v)] = d
        if not directed:
            links[(v, u)] = d
    return Topology(nodes, links, slot_count, baud, ModulationTable(DEFAULT_FORMATS))


def make_path(topology, nodes, path_id):
    links = tuple(zip(nodes[:-1], nodes[1:]))
    total = sum(topology.link_length(u, v) for u, v in links)
    return CandidatePath(
        path_id, tuple(nodes), links, total, topology.modulation_table.for_distance(total)
    )


# ---------------------------------------------------------------- oracles


def enumerate_simple_paths(topology, source, destination):
    """Every simple directed path s->d, sorted by (km length, node sequence)."""
    out_edges = {}
    for (u, v), d in topology.links.items():
        out_edges.setdefault(u, []).append((v, d))
    found = []

    def walk(node, visited, acc):
        if node == destination:
            found.append((acc, tuple(visited)))
            return
        for nxt, d in out_edges.get(node, []):
            if nxt not in visited:
                visited.append(nxt)
                walk(nxt, visited, acc + d)
                visited.pop()

    walk(source, [source], 0.0)
    found.sort(key=lambda item: (item[0], item[1]))
    return found


def coverage_oracle(p, q):
    """Coverage bits by exhaustive ordered-common-node-pair enumeration.

    Collects every (i, j) with i < j, both nodes common, and the two nodes in
    the same relative order on q; the winning segment starts at the smallest
    such i and ends at the largest j available for that i.
    """
    q_pos = {n: i for i, n in enumerate(q.nodes)}
    pairs = [
        (i, j)
        for i in range(len(p.nodes))
        for j in range(i + 1, len(p.nodes))
        if p.nodes[i] in q_pos
        and p.nodes[j] in q_pos
        and q_pos[p.nodes[j]] > q_pos[p.nodes[i]]
    ]
    if not pairs:
        return (0,) * p.hops
    i_star = min(i for i, _ in pairs)
    j_star = max(j for i, j in pairs if i == i_star)
    return tuple(1 if i_star <= l < j_star else 0 for l in range(p.hops))


def brute_force_confidential(demand, candidates, established, grid, metric, threshold,
                             ignore_threshold=False):
    """Exhaustively enumerate every (path, window) option and score it directly.

    Independent of the production scoring: windows by raw cell scans, coverage
    by the enumeration oracle, counts by per-partner slot intersection.
    Returns (path_id, (start, end), score) or None.
    """
    from ncrsa.security import XorMetric

    best = None
    F = grid.slot_count
    for path in candidates:
        width = math.ceil(
            demand.bitrate_gbps / (grid.topology.slot_baud_rate * path.modulation.bits_per_symbol)
            - 1e-9
        )
        width = max(1, width)
        if width > F:
            continue
        for start in range(1, F - width + 2):
            window = set(range(start, start + width))
            if any(
                grid.occupancy(link)[s - 1] != FREE for link in path.links for s in window
            ):
                continue
            c = []
            for link_idx in range(path.hops):
                total = 0
                for conn in established:
                    bits = coverage_oracle(path, conn.path)
                    if bits[link_idx]:
                        total += len(window & set(conn.interval.slots))
                c.append(total)
            if metric is XorMetric.MIN_XOR:
                score = float(min(c))
            else:
                if not ignore_threshold and min(c) < threshold:
                    continue
                score = sum(c) / len(c)
            if best is None or score > best[2] + 1e-9:
                best = (path.path_id, (start, start + width - 1), score)
    if best is not None and not ignore_threshold and best[2] < threshold - 1e-9:
        return None
    return best


# ------------------------------------------------------- invariant scanners


def scan_grid_invariants(grid, connections):
    """Assert non-overlapping, contiguity, and continuity by raw cell scans."""
    established = [c for c in connections if c.status != BLOCKED]
    cells_by_id = {}
    for link in grid.topology.links:
        row = grid.occupancy(link)
        ids_here = {}
        for slot_idx, cell in enumerate(row):
            if cell != FREE:
                ids_here.setdefault(int(cell), []).append(slot_idx)
                cells_by_id.setdefault(int(cell), {})[link] = ids_here[int(cell)]
        for conn_id, slots in ids_here.items():
            assert slots == list(range(slots[0], slots[0] + len(slots))), (
                f"connection {conn_id} not contiguous on {link}: {slots}"
            )
    for conn in established:
        expected = list(range(conn.interval.start - 1, conn.interval.end))
        held = cells_by_id.get(conn.id, {})
        assert set(held) == set(conn.path.links), (
            f"connection {conn.id} occupies links {set(held)} != path {set(conn.path.links)}"
        )
        for link in conn.path.links:
            assert held[link] == expected, (
                f"connection {conn.id} slots differ on {link}: {held[link]} vs {expected}"
            )
    blocked_ids = {c.id for c in connections if c.status == BLOCKED}
    assert not blocked_ids & set(cells_by_id), "blocked demand holds spectrum"


def recount_counters(connections):
    """From-scratch node/link usage over established connections."""
    nodes, links = {}, {}
    for conn in connections:
        if conn.status == BLOCKED:
            continue
        for n in conn.path.nodes:
            nodes[n] = nodes.get(n, 0) + 1
        for link in conn.path.links:
            links[link] = links.get(link, 0) + 1
    return nodes, links


def assert_counters_match(counters, connections):
    nodes, links = recount_counters(connections)
    actual_nodes = {n: v for n, v in counters.node_use.items() if v}
    actual_links = {l: v for l, v in counters.link_use.items() if v}
    assert actual_nodes == nodes
    assert actual_links == links


# -------------------------------------------------------------- fixtures


@pytest.fixture(scope="session")
def nsfnet():
    from ncrsa.topology import load_topology

    return load_topology()


def random_connected_topology(rng, max_nodes=10, slot_count=None):
    """Random directed topology with both directions on a random spanning base."""
    n = rng.randint(4, max_nodes)
    nodes = list(range(1, n + 1))
    edges = set()
    order = nodes[:]
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):
        edges.add((a, b))
    extra = rng.randint(n // 2, 2 * n)
    for _ in range(extra):
        u, v = rng.sample(nodes, 2)
        edges.add((u, v))
    links = {}
    for u, v in edges:
        d = rng.randint(1, 30) * 100.0
        links[(u, v)] = d
        links[(v, u)] = d
    F = slot_count if slot_count is not None else rng.randint(8, 24)
    return Topology(nodes, links, F, 10.7, ModulationTable(DEFAULT_FORMATS))
