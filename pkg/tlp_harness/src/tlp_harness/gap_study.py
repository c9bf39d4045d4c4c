"""Performance gaps of a baseline across factual and counterfactual splits.

For every dataset: train on the train split, score the test and test_cf
splits from the same post-train state, and record the metric gaps
(test minus counterfactual) next to the dataset's generating-model
distance when its header carries one.
"""

from __future__ import annotations

from pathlib import Path

from .baselines import train_baseline
from .dataset import load_dataset
from .scoring import average_precision, roc_auc, score_eval_set


def evaluate_dataset(path, kind: str, hyperparams=None, seed: int = 0) -> dict:
    """Train one baseline on one dataset and measure both test splits."""
    stream = load_dataset(path)
    for split in ("test", "test_cf"):
        if not stream.split(split):
            raise ValueError(f"dataset {path} is missing the {split} split")
    predictor = train_baseline(stream, kind, hyperparams=hyperparams, seed=seed)

    metrics = {}
    for split in ("test", "test_cf"):
        scored = score_eval_set(predictor, stream, split)
        scores = [s for _, _, s in scored]
        labels = [r.label for r in stream.split(split)]
        metrics[split] = {
            "ap": average_precision(scores, labels),
            "auc": roc_auc(scores, labels),
        }
    return {
        "dataset": str(path),
        "d_bar": stream.d_bar,
        "ap_test": metrics["test"]["ap"],
        "ap_test_cf": metrics["test_cf"]["ap"],
        "ap_gap": metrics["test"]["ap"] - metrics["test_cf"]["ap"],
        "auc_test": metrics["test"]["auc"],
        "auc_test_cf": metrics["test_cf"]["auc"],
        "auc_gap": metrics["test"]["auc"] - metrics["test_cf"]["auc"],
    }


def gap_study(dataset_paths, kind: str, hyperparams=None, seed: int = 0) -> list:
    """One gap row per dataset, in input order."""
    return [
        evaluate_dataset(Path(p), kind, hyperparams=hyperparams, seed=seed + i)
        for i, p in enumerate(dataset_paths)
    ]


def write_gap_table(path, rows) -> Path:
    columns = [
        "dataset",
        "d_bar",
        "ap_test",
        "ap_test_cf",
        "ap_gap",
        "auc_test",
        "auc_test_cf",
        "auc_gap",
    ]
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join("" if row[c] is None else str(row[c]) for c in columns))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
