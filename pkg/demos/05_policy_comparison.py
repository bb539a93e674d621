"""Policy and candidate-count trade-offs on the bundled network.

Runs a small seeded sweep (kept light so it finishes in ~leisurely seconds)
and tabulates the standing trade-off: steering non-confidential traffic onto
busy links (mul) buys more encryption partners at the cost of extra spectrum,
while spectrum-efficient routing (mse) stays lean but secures less.  More
candidate paths per pair push every security statistic up.
"""

from ncrsa import PlanConfig, PlanContext, generate_demands, load_topology, run_plan


def mean(values):
    return sum(values) / len(values)


def main():
    topology = load_topology()
    seeds = [1, 2, 3]
    demand_sets = {s: generate_demands(topology, 250, 0.3, (20, 100), seed=s) for s in seeds}

    rows = []
    for k in (5, 10):
        context = PlanContext.build(topology, k)
        for routing, metric in [("mul", "mxor"), ("mul", "axor"), ("mse", "axor")]:
            config = PlanConfig.create(k, 1, routing, metric)
            reports = [run_plan(topology, demand_sets[s], config, context=context)
                       for s in seeds]
            rows.append((
                k, f"{metric}-{routing}",
                mean([r.avg_min_xor for r in reports]),
                mean([r.avg_xor_per_link for r in reports]),
                mean([r.pct_secured for r in reports]),
                mean([r.slots_utilized for r in reports]),
            ))

    header = f"{'k':>2}  {'policy':<10} {'min-xor':>8} {'per-link':>9} {'%secured':>9} {'slots':>7}"
    print(header)
    print("-" * len(header))
    for k, policy, min_xor, per_link, pct, slots in rows:
        print(f"{k:>2}  {policy:<10} {min_xor:>8.2f} {per_link:>9.2f} {pct:>9.1f} {slots:>7.0f}")

    print()
    print("Expected shape: mul rows beat mse on the XOR columns but spend more")
    print("slots; every column grows when k doubles.")


if __name__ == "__main__":
    main()
