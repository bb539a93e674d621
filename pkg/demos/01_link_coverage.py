"""Which links of a route can a partner route encrypt?

Walks through three overlapping routes in a small mesh and prints, for every
ordered pair, the per-link coverage vector: a partner can encrypt the stretch
of a route between two nodes both routes visit in the same order.
"""

from ncrsa import CandidatePath, ModulationFormat, ModulationTable, Topology
from ncrsa.coverage import build_coverage_table, link_coverage


def build_mesh():
    edges = [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)]
    links = {}
    for u, v in edges:
        links[(u, v)] = 100.0
        links[(v, u)] = 100.0
    table = ModulationTable([ModulationFormat("BPSK", 1, 9300)])
    return Topology(range(1, 7), links, 20, 10.7, table)


def route(topo, nodes, route_id):
    links = tuple(zip(nodes[:-1], nodes[1:]))
    length = sum(topo.link_length(u, v) for u, v in links)
    return CandidatePath(route_id, tuple(nodes), links, length,
                         topo.modulation_table.for_distance(length))


def main():
    topo = build_mesh()
    routes = [
        route(topo, [3, 1, 2, 4], 1),
        route(topo, [2, 5, 6, 4], 2),
        route(topo, [2, 3, 5], 3),
    ]
    for r in routes:
        print(f"route {r.path_id}: {'-'.join(map(str, r.nodes))}")
    print()

    print("Per-link coverage (1 = the partner can encrypt that link):")
    for p in routes:
        for q in routes:
            if p.path_id == q.path_id:
                continue
            bits = link_coverage(p, q)
            links = " ".join(f"{u}->{v}:{b}" for (u, v), b in zip(p.links, bits))
            print(f"  route {p.path_id} covered by route {q.path_id}:  {links}")
    print()

    print("Notes on what drives these vectors:")
    print(" - route 2 runs 2..4 and route 1 visits 2 then 4, so route 1 covers")
    print("   ALL of route 2 (shared endpoints), while route 2 only covers the")
    print("   final 2->4 link of route 1: coverage is direction-sensitive.")
    print(" - routes 1 and 3 share nodes 2 and 3 but visit them in opposite")
    print("   order, so neither can encrypt the other.")
    print()

    table = build_coverage_table(routes)
    print("Sparse table rows (all-zero pairs omitted):")
    for (p_id, q_id), vec in sorted(table.as_dict().items()):
        print(f"  ({p_id} covered by {q_id}): {vec}")


if __name__ == "__main__":
    main()
