#!/usr/bin/env python3
"""Variance of the model-distance estimator vs effective sample size.

Fixes one random model pair and re-estimates the mean distance many times
per (horizon, iters) grid cell, then writes the variance table and the
fitted log-log slope.
"""

import argparse

from ctigbench.cli import cmd_variance_study
from ctigbench.config import validate_config


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--out", default="out/variance_study")
    parser.add_argument("--replications", type=int, default=100)
    parser.add_argument("--n", type=int, default=7)
    args = parser.parse_args()

    cfg = validate_config(
        {
            "experiment": "variance-study",
            "seed": args.seed,
            "out": args.out,
            "n": args.n,
            "replications": args.replications,
            "grid": [[250.0, 10], [250.0, 40], [250.0, 160]],
        }
    )
    paths = cmd_variance_study(cfg)
    print(paths["report"])


if __name__ == "__main__":
    main()
