import math
import random

import pytest

from ncrsa.topology import (
    CandidatePath,
    ModulationFormat,
    ModulationTable,
    Topology,
    k_shortest_paths,
    load_topology,
    modulation_for_distance,
    required_slots,
)

from conftest import DEFAULT_FORMATS, enumerate_simple_paths, make_topology, random_connected_topology


def test_line_topology_single_path():
    topo = make_topology("abc", [("a", "b"), ("b", "c")], directed=True)
    paths = k_shortest_paths(topo, "a", "c", 2)
    assert len(paths) == 1
    assert paths[0].nodes == ("a", "b", "c")
    assert paths[0].hops == 2


def test_triangle_length_order():
    topo = make_topology("abc", [("a", "b"), ("b", "c"), ("a", "c")], length=1.0, directed=True)
    paths = k_shortest_paths(topo, "a", "c", 2)
    assert [p.nodes for p in paths] == [("a", "c"), ("a", "b", "c")]


def test_no_path_returns_empty():
    topo = make_topology("abc", [("a", "b")], directed=True)
    assert k_shortest_paths(topo, "b", "a", 3) == []
    assert k_shortest_paths(topo, "c", "a", 3) == []


def test_same_endpoints_rejected():
    topo = make_topology("ab", [("a", "b")])
    with pytest.raises(ValueError):
        k_shortest_paths(topo, "a", "a", 2)
    with pytest.raises(ValueError):
        k_shortest_paths(topo, "a", "z", 2)


def test_k_shortest_matches_enumeration_on_bundled_network(nsfnet):
    for s, d in [(1, 14), (3, 9), (6, 2)]:
        paths = k_shortest_paths(nsfnet, s, d, 10)
        assert len(paths) == 10
        lengths = [p.length_km for p in paths]
        assert lengths == sorted(lengths)
        assert len({p.nodes for p in paths}) == 10
        oracle = enumerate_simple_paths(nsfnet, s, d)[:10]
        assert [(p.length_km, p.nodes) for p in paths] == oracle


def test_k_shortest_matches_enumeration_on_random_graphs():
    rng = random.Random(42)
    for _ in range(25):
        topo = random_connected_topology(rng, max_nodes=7)
        s, d = rng.sample(list(topo.nodes), 2)
        k = rng.randint(1, 6)
        paths = k_shortest_paths(topo, s, d, k)
        oracle = enumerate_simple_paths(topo, s, d)[:k]
        assert [(p.length_km, p.nodes) for p in paths] == oracle


def test_k_shortest_deterministic(nsfnet):
    a = k_shortest_paths(nsfnet, 2, 13, 8)
    b = k_shortest_paths(nsfnet, 2, 13, 8)
    assert [p.nodes for p in a] == [p.nodes for p in b]


def test_candidate_path_validation():
    topo = make_topology("abc", [("a", "b"), ("b", "c")], directed=True)
    with pytest.raises(ValueError):
        CandidatePath(0, ("a", "b", "a"), (("a", "b"), ("b", "a")), 2.0, None)
    with pytest.raises(ValueError):
        CandidatePath(0, ("a", "b", "c"), (("a", "b"),), 2.0, None)


def test_modulation_for_distance_boundaries():
    table = ModulationTable(DEFAULT_FORMATS)
    assert modulation_for_distance(table, 700).name == "16-QAM"
    assert modulation_for_distance(table, 800).name == "16-QAM"
    assert modulation_for_distance(table, 5000).name == "BPSK"
    assert modulation_for_distance(table, 9301) is None
    with pytest.raises(ValueError):
        modulation_for_distance(table, 0)


def test_modulation_maximality_property():
    table = ModulationTable(DEFAULT_FORMATS)
    rng = random.Random(1)
    for _ in range(200):
        x = rng.uniform(1, 12000)
        fmt = table.for_distance(x)
        if fmt is None:
            assert all(f.reach_km < x for f in table.formats)
        else:
            assert fmt.reach_km >= x
            better = [f for f in table.formats if f.bits_per_symbol > fmt.bits_per_symbol]
            assert all(f.reach_km < x for f in better)


def test_modulation_table_ordering_enforced():
    with pytest.raises(ValueError):
        ModulationTable([ModulationFormat("a", 2, 100), ModulationFormat("b", 1, 50)])
    with pytest.raises(ValueError):
        ModulationTable([ModulationFormat("a", 1, 100), ModulationFormat("b", 2, 100)])


def test_required_slots_hand_values():
    assert required_slots(10.7, 10.7, 1) == 1
    # 100 / (10.7 * 4) = 2.336... -> 3
    assert required_slots(100, 10.7, 4) == 3
    # 20 / 10.7 = 1.869... -> 2
    assert required_slots(20, 10.7, 1) == 2
    # exact multiple should not round up an extra slot
    assert required_slots(32.1, 10.7, 1) == 3
    assert required_slots(0.5, 10.7, 4) == 1


def test_required_slots_monotonicity():
    rng = random.Random(3)
    for _ in range(100):
        b = rng.uniform(1, 400)
        s = [required_slots(b, 10.7, bits) for bits in (1, 2, 3, 4)]
        assert s == sorted(s, reverse=True)
        b2 = b + rng.uniform(0, 100)
        assert required_slots(b2, 10.7, 2) >= required_slots(b, 10.7, 2)


def test_topology_validation():
    table = ModulationTable(DEFAULT_FORMATS)
    with pytest.raises(ValueError):
        Topology([1, 2], {(1, 1): 5.0}, 10, 10.7, table)
    with pytest.raises(ValueError):
        Topology([1, 2], {(1, 3): 5.0}, 10, 10.7, table)
    with pytest.raises(ValueError):
        Topology([1, 2], {(1, 2): -5.0}, 10, 10.7, table)
    with pytest.raises(ValueError):
        Topology([1, 2], {(1, 2): 5.0}, 0, 10.7, table)


def test_bundled_topology_shape(nsfnet):
    assert len(nsfnet.nodes) == 14
    assert len(nsfnet.links) == 42
    assert nsfnet.slot_count == 320
    assert nsfnet.slot_baud_rate == 10.7
    names = [f.name for f in nsfnet.modulation_table.formats]
    assert names == ["BPSK", "QPSK", "8-QAM", "16-QAM"]
    # every directed link has its reverse with the same length
    for (u, v), d in nsfnet.links.items():
        assert nsfnet.links[(v, u)] == d


def test_topology_json_roundtrip(tmp_path, nsfnet):
    import json

    from ncrsa.topology import bundled_topology_path

    doc = json.loads(bundled_topology_path().read_text())
    p = tmp_path / "topo.json"
    p.write_text(json.dumps(doc))
    again = load_topology(p)
    assert again.links == nsfnet.links
    assert again.nodes == nsfnet.nodes
