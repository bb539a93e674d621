import random

import pytest

from ncrsa.demands import BLOCKED, NONCONFIDENTIAL, REASON_NO_SPECTRUM, Demand
from ncrsa.routing import (
    RoutingStrategy,
    UtilizationCounters,
    establish_nonconfidential,
    path_score,
    sort_candidates,
)
from ncrsa.spectrum import SlotInterval, SpectrumGrid
from ncrsa.topology import k_shortest_paths

from conftest import assert_counters_match, make_path, make_topology


@pytest.fixture
def mesh():
    topo = make_topology(
        range(1, 7),
        [(1, 2, 100), (2, 3, 100), (3, 6, 100), (1, 4, 120), (4, 5, 120), (5, 6, 120), (2, 5, 80)],
        slot_count=8,
    )
    return topo


def _loaded_counters(paths):
    counters = UtilizationCounters()
    for p in paths:
        counters.record(p)
    return counters


def test_mul_score_is_busiest_link(mesh):
    counters = UtilizationCounters()
    hot = make_path(mesh, [2, 3], 10)
    for _ in range(4):
        counters.record(hot)
    path = make_path(mesh, [1, 2, 3, 6], 0)
    assert path_score(path, RoutingStrategy.MUL, counters) == 4
    assert path_score(path, RoutingStrategy.MUN, counters) == 4


def test_empty_network_scores_zero_and_keeps_order(mesh):
    counters = UtilizationCounters()
    paths = k_shortest_paths(mesh, 1, 6, 4)
    for strategy in (RoutingStrategy.MUN, RoutingStrategy.MUL):
        assert all(path_score(p, strategy, counters) == 0 for p in paths)
        assert sort_candidates(paths, strategy, counters) == paths


def test_mse_prefers_fewer_slots():
    counters = UtilizationCounters()
    # the northern route keeps 16-QAM (3 slots at 100G); the 1200 km southern
    # route drops to 8-QAM and needs 4
    topo = make_topology(
        range(1, 7),
        [(1, 2, 100), (2, 3, 100), (3, 6, 100), (1, 4, 400), (4, 5, 400), (5, 6, 400)],
        slot_count=8,
    )
    short = make_path(topo, [1, 2, 3, 6], 0)
    long = make_path(topo, [1, 4, 5, 6], 1)
    order = sort_candidates([long, short], RoutingStrategy.MSE, counters,
                            bitrate_gbps=100, baud_rate_gbaud=10.7)
    assert order == [short, long]
    with pytest.raises(ValueError):
        path_score(short, RoutingStrategy.MSE, counters)


def test_hot_link_paths_sort_first(mesh):
    paths = k_shortest_paths(mesh, 1, 6, 4)
    hot_link = (2, 5)
    counters = _loaded_counters([make_path(mesh, [2, 5], 99)] * 3)
    order = sort_candidates(paths, RoutingStrategy.MUL, counters)
    uses_hot = [hot_link in p.links for p in order]
    assert uses_hot == sorted(uses_hot, reverse=True)
    assert any(uses_hot)


def test_incremental_resort_matches_full_resort(mesh):
    rng = random.Random(9)
    paths = k_shortest_paths(mesh, 1, 6, 4)
    counters = UtilizationCounters()
    history = []
    for _ in range(20):
        extra = make_path(mesh, rng.choice([[2, 5], [1, 2], [5, 6], [2, 3, 6]]), 50)
        counters.record(extra)
        history.append(extra)
        fresh = _loaded_counters(history)
        for strategy in (RoutingStrategy.MUN, RoutingStrategy.MUL):
            assert sort_candidates(paths, strategy, counters) == sort_candidates(
                paths, strategy, fresh
            )


def test_establish_first_fit_on_empty_grid(mesh):
    grid = SpectrumGrid(mesh)
    counters = UtilizationCounters()
    paths = k_shortest_paths(mesh, 1, 6, 3)
    demand = Demand(1, 1, 6, 60.0, False)
    conn = establish_nonconfidential(demand, paths, grid, counters)
    assert conn.status == NONCONFIDENTIAL
    assert conn.path == paths[0]
    assert conn.interval.start == 1
    assert conn.interval.width == paths[0].slots_for(60.0, 10.7)
    assert_counters_match(counters, [conn])


def test_establish_skips_full_paths(mesh):
    grid = SpectrumGrid(mesh)
    counters = UtilizationCounters()
    paths = k_shortest_paths(mesh, 1, 6, 3)
    grid.allocate(77, make_path(mesh, [2, 3], 7), SlotInterval(1, 8))
    demand = Demand(1, 1, 6, 60.0, False)
    conn = establish_nonconfidential(demand, paths, grid, counters)
    assert conn.status == NONCONFIDENTIAL
    assert (2, 3) not in conn.path.links


def test_rejection_when_spectrum_exhausted(mesh):
    grid = SpectrumGrid(mesh)
    counters = UtilizationCounters()
    paths = k_shortest_paths(mesh, 1, 6, 4)
    for i, blocker in enumerate([[1, 2], [1, 4]]):
        grid.allocate(90 + i, make_path(mesh, blocker, i), SlotInterval(1, 8))
    demand = Demand(1, 1, 6, 60.0, False)
    conn = establish_nonconfidential(demand, paths, grid, counters)
    assert conn.status == BLOCKED
    assert conn.blocked_reason == REASON_NO_SPECTRUM
    assert grid.occupied_cells() == 16
    assert_counters_match(counters, [conn])


def test_confidential_demand_refused_by_first_fit(mesh):
    grid = SpectrumGrid(mesh)
    with pytest.raises(ValueError):
        establish_nonconfidential(
            Demand(1, 1, 6, 60.0, True), [], grid, UtilizationCounters()
        )


def test_counter_removal_guards():
    counters = UtilizationCounters()
    topo = make_topology("ab", [("a", "b")])
    p = make_path(topo, ["a", "b"], 0)
    counters.record(p)
    counters.remove(p)
    with pytest.raises(ValueError):
        counters.remove(p)
