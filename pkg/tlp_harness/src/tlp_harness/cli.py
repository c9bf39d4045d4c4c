"""Command line: train one baseline on a dataset and write score files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .baselines import Hyperparams, train_baseline
from .dataset import DatasetError, load_dataset
from .scoring import score_eval_set, write_scores


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tlp-harness",
        description="Desk-scale temporal link prediction baselines over exported datasets",
    )
    parser.add_argument("--data", required=True, help="dataset file")
    parser.add_argument(
        "--model", required=True, choices=["recency", "memory"], help="baseline kind"
    )
    parser.add_argument("--out", required=True, help="output directory for score files")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epochs", type=int, default=10)
    args = parser.parse_args(argv)

    kind = "memory-embedding" if args.model == "memory" else "recency"
    params = Hyperparams(epochs=args.epochs)
    try:
        stream = load_dataset(args.data)
        predictor = train_baseline(stream, kind, hyperparams=params, seed=args.seed)
        out = Path(args.out)
        written = []
        for split in ("test", "test_cf"):
            if not stream.split(split):
                continue
            scored = score_eval_set(predictor, stream, split)
            written.append(write_scores(out / f"scores_{split}.csv", scored))
        if not written:
            print("error: dataset has no labeled evaluation splits", file=sys.stderr)
            return 2
    except (DatasetError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
