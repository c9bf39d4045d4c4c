#!/usr/bin/env python3
"""Batch-export CTIG evaluation datasets spanning a range of distortions.

Each dataset pairs a CTIG model with a perturbed copy whose strength is
swept over a grid, so the written `d_bar` header values cover distances
from near zero to unrelated.  Output: one directory per dataset with
dataset.csv and report.json, ready for an external predictor harness.
"""

import argparse
from pathlib import Path

from ctigbench.cli import cmd_export
from ctigbench.config import validate_config


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=5000)
    parser.add_argument("--out", default="out/ctig_datasets")
    parser.add_argument("--count", type=int, default=30)
    parser.add_argument("--nodes", type=int, default=7)
    parser.add_argument("--horizon", type=float, default=1000.0)
    parser.add_argument("--dbar-iters", type=int, default=12)
    parser.add_argument("--nu1", type=float, default=0.35)
    parser.add_argument(
        "--bases", type=int, default=3, help="distinct base constructions to cycle over"
    )
    args = parser.parse_args()

    out_root = Path(args.out)
    for idx in range(args.count):
        strength = 0.05 + 0.95 * idx / max(1, args.count - 1)
        cfg = validate_config(
            {
                "experiment": "export",
                "seed": args.seed + idx,
                "out": str(out_root / f"dataset_{idx:03d}"),
                "ctig_mode": True,
                "nodes": args.nodes,
                "feature_dim": args.nodes,
                "nu1": args.nu1,
                "ctig_seed": args.seed + (idx % args.bases),
                "horizon": args.horizon,
                "lambda_range": [0.4, 1.2],
                "dagger_strength": round(strength, 4),
                "dbar_iters": args.dbar_iters,
            }
        )
        paths = cmd_export(cfg)
        print(paths["report"])


if __name__ == "__main__":
    main()
