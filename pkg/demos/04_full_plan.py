"""A complete planning run on the bundled 14-node network.

Generates a seeded demand set (30% confidential), runs the full pipeline under
the busiest-links routing policy and the gated-average window metric, and
prints the report: blocking, spectrum cells used, and how well the
confidential connections ended up encrypted.
"""

from ncrsa import PlanConfig, generate_demands, load_topology, plan
from ncrsa.demands import BLOCKED, SECURED, UNSECURED


def main():
    topology = load_topology()
    demands = generate_demands(topology, count=300, confidential_fraction=0.3,
                               bitrate_range=(20, 100), seed=42)
    config = PlanConfig.create(k=5, threshold=1, routing="mul", metric="axor")
    result = plan(topology, demands, config)
    report = result.report

    print(f"demands: {report.total_demands} "
          f"({report.confidential_total} confidential)")
    print(f"blocked: {report.blocked} "
          f"(probability {report.blocking_probability:.3f}, all for lack of spectrum: "
          f"{report.blocked_no_spectrum == report.blocked})")
    print(f"spectrum cells used: {report.slots_utilized}")
    print(f"secured: {report.secured}/{report.confidential_established} "
          f"({report.pct_secured:.1f}%)")
    print(f"average weakest-link XOR count: {report.avg_min_xor:.2f}")
    print(f"average per-link XOR count:     {report.avg_xor_per_link:.2f}")
    print()

    print("a few confidential connections:")
    shown = 0
    for conn in result.connections:
        if not conn.demand.confidential or conn.status == BLOCKED:
            continue
        a = conn.assessment
        tag = {SECURED: "secured", UNSECURED: "UNSECURED"}[conn.status]
        print(f"  demand {conn.id:3d} {conn.demand.src:>2}->{conn.demand.dst:<2} "
              f"route {'-'.join(map(str, conn.path.nodes))} slots {conn.interval} "
              f"per-link XOR {a.per_link_xor} [{tag}]")
        shown += 1
        if shown == 8:
            break


if __name__ == "__main__":
    main()
