"""Command-line front end for planning runs and experiment sweeps.

Exit codes: 0 success, 2 configuration error, 3 run failure.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import ExperimentConfig, ExperimentRunError, GeneratorSpec, run_experiment

__all__ = ["main", "build_parser"]


def _int_list(text):
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _generator_spec(text):
    """Parse `count=500,frac=0.3,bmin=20,bmax=100,seed=1` (count takes colon lists)."""
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    known = {"count", "frac", "bmin", "bmax", "seed"}
    unknown = set(fields) - known
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown generator keys {sorted(unknown)}")
    try:
        return GeneratorSpec(
            counts=tuple(int(c) for c in fields.get("count", "100").split(":")),
            confidential_fraction=float(fields.get("frac", "0.3")),
            bitrate_min=float(fields.get("bmin", "20")),
            bitrate_max=float(fields.get("bmax", "100")),
            seed=int(fields.get("seed", "1")),
        )
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ncrsa",
        description=(
            "Plan network-coded secure connections in an elastic optical network "
            "and report security and efficiency metrics."
        ),
    )
    parser.add_argument(
        "--topology", metavar="FILE", default=None,
        help="topology JSON (defaults to the bundled 14-node network)",
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument(
        "--demands", metavar="FILE", default=None,
        help="demand CSV: demand_id,src,dst,bitrate_gbps,confidential",
    )
    source.add_argument(
        "--generate", metavar="SPEC", type=_generator_spec, default=None,
        help="seeded random demands, e.g. count=500,frac=0.3,bmin=20,bmax=100,seed=1 "
             "(count accepts a colon-separated sweep: count=250:500)",
    )
    parser.add_argument(
        "--k", type=_int_list, default=(5,), metavar="K[,K...]",
        help="candidate paths per node pair; a comma list sweeps k (default 5)",
    )
    parser.add_argument(
        "--threshold", type=int, default=1, metavar="T",
        help="minimum per-link XOR count for a connection to count as secure (default 1)",
    )
    parser.add_argument(
        "--routing", choices=["mun", "mul", "mse"], default="mse",
        help="candidate ordering for non-confidential demands (default mse)",
    )
    parser.add_argument(
        "--metric", choices=["mxor", "axor"], default="mxor",
        help="window score for confidential demands: weakest-link or gated average",
    )
    parser.add_argument(
        "--reps", type=int, default=1, metavar="N",
        help="repetitions with consecutive seeds (default 1)",
    )
    parser.add_argument(
        "--out", default="out", metavar="DIR", help="output directory (default ./out)"
    )
    parser.add_argument(
        "--trace", action="store_true",
        help="write per-demand confidential scoring traces",
    )
    parser.add_argument(
        "--benchmark", action="store_true",
        help="reference mode: every demand non-confidential, MSE routing",
    )
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    generator = args.generate if args.generate is not None else GeneratorSpec()
    config = ExperimentConfig(
        topology_path=args.topology,
        demand_file=args.demands,
        generator=generator,
        k_values=args.k,
        threshold=args.threshold,
        routing=args.routing,
        metric=args.metric,
        reps=args.reps,
        out_dir=args.out,
        trace=args.trace,
        benchmark=args.benchmark,
    )
    try:
        config.validate()
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        results = run_experiment(config)
    except ExperimentRunError as exc:
        print(f"run failure: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    for (k, count), stats in sorted(results.items()):
        parts = [f"k={k}", f"demands={count}"]
        for name, (mean, std) in stats.items():
            if mean is not None:
                parts.append(f"{name}={mean:.4g}±{(std or 0.0):.2g}")
        print("  ".join(parts))
    print(f"artifacts written to {config.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
