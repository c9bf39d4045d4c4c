#!/usr/bin/env python3
"""Oracle performance under timestamp shuffling, aggregated over many runs.

Writes violin-plot samples (original vs each shuffled copy) and the
per-copy distances of the shuffled data from the generating model.
"""

import argparse

from ctigbench.cli import cmd_experiment_b
from ctigbench.config import validate_config


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=9090)
    parser.add_argument("--out", default="out/shuffle_study")
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--n-shuffles", type=int, default=10)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    cfg = validate_config(
        {
            "experiment": "experiment-b",
            "seed": args.seed,
            "out": args.out,
            "runs": args.runs,
            "n_shuffles": args.n_shuffles,
            "threads": args.threads,
            "n": 7,
            "horizon": 1000.0,
        }
    )
    paths = cmd_experiment_b(cfg)
    print(paths["report"])


if __name__ == "__main__":
    main()
