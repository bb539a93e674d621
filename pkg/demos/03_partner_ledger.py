"""What actually travels on each link of a secured connection.

Places four connections, then a confidential one on route 1-4-5, and prints
the per-link XOR composition: the stream on every link is the confidential
data XORed with each listed partner.  Moving the confidential connection to
different slots changes which partners qualify, because partners must share
slot ids with it (no frequency conversion happens inside the network).
"""

from collections import namedtuple

from ncrsa import (
    CandidatePath,
    ModulationFormat,
    ModulationTable,
    SlotInterval,
    SpectrumGrid,
    Topology,
    partner_ledger,
)
from ncrsa.coverage import CoverageTable

Estab = namedtuple("Estab", "id path interval")


def build_network():
    directed = [(1, 4), (4, 5), (6, 4), (4, 2), (2, 3), (3, 5), (5, 3), (3, 4),
                (1, 2), (1, 6), (6, 7), (7, 5)]
    links = {(u, v): 100.0 for u, v in directed}
    table = ModulationTable([ModulationFormat("BPSK", 1, 9300)])
    return Topology(range(1, 8), links, 6, 10.7, table)


def route(topo, nodes, route_id):
    links = tuple(zip(nodes[:-1], nodes[1:]))
    length = sum(topo.link_length(u, v) for u, v in links)
    return CandidatePath(route_id, tuple(nodes), links, length,
                         topo.modulation_table.for_distance(length))


def show(route_path, interval, established, coverage):
    ledger = partner_ledger(Estab(1, route_path, interval), established, coverage)
    print(f"confidential connection 1 on 1-4-5, slots {interval}:")
    for link, entries in zip(route_path.links, ledger):
        stream = " XOR ".join(["data(1)"] + [f"data({pid})" for pid, _ in entries])
        detail = ", ".join(f"partner {pid} via slots {list(s)}" for pid, s in entries)
        print(f"  link {link[0]}->{link[1]}: {stream}" + (f"   [{detail}]" if detail else ""))
    print()


def main():
    topo = build_network()
    confidential = route(topo, [1, 4, 5], 1)
    layout = [
        (2, [6, 4, 2, 3, 5], (1, 3)),
        (3, [5, 3, 4], (1, 4)),
        (4, [1, 2], (1, 2)),
        (5, [1, 6, 7, 5], (2, 5)),
    ]
    paths = [confidential] + [route(topo, nodes, cid) for cid, nodes, _ in layout]
    coverage = CoverageTable(paths)
    grid = SpectrumGrid(topo)
    established = []
    for (cid, nodes, (a, b)), path in zip(layout, paths[1:]):
        iv = SlotInterval(a, b)
        grid.allocate(cid, path, iv)
        established.append(Estab(cid, path, iv))
        print(f"established {cid}: {'-'.join(map(str, nodes))} slots {iv}")
    print()

    print("Connection 4 shares only node 1 with the route, and connection 3")
    print("visits nodes 4 and 5 in the opposite order; neither can help.\n")

    show(confidential, SlotInterval(2, 3), established, coverage)
    print("On slots 4-5 connection 2 (slots 1-3) no longer overlaps, so only")
    print("connection 5 remains:\n")
    show(confidential, SlotInterval(4, 5), established, coverage)

    print("An eavesdropper tapping link 4-5 of the slots 2-3 placement sees a")
    print("three-way XOR and must also compromise two other connections, on")
    print("disjoint routes, to read anything.")


if __name__ == "__main__":
    main()
