"""Chronological evaluation-split scoring and ranking metrics.

Scoring walks an evaluation split in time order: every item sharing a
timestamp is scored before any of that timestamp's positives enters the
predictor's history, so no prediction ever sees an event at or after its
query time (enforced with a hard check).  History grows on ground-truth
positives only.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


class ChronologyError(RuntimeError):
    """A predictor was about to read an event at or after its query time."""


def score_eval_set(predictor, stream, split: str) -> list:
    """Score one labeled split, returning (event id, timestamp text, score) rows.

    The predictor is reset to its post-train state first, so scoring one
    split never leaks state into another.
    """
    rows = stream.split(split)
    if not rows:
        raise ValueError(f"split {split!r} is missing or empty")
    predictor.restore_trained()

    out = []
    i = 0
    while i < len(rows):
        j = i
        t = rows[i].time
        while j < len(rows) and rows[j].time == t:
            j += 1
        if predictor.last_observed >= t:
            raise ChronologyError(
                f"history reaches {predictor.last_observed}, query at {t}"
            )
        for row in rows[i:j]:
            out.append((row.event, row.time_text, predictor.score(row.src, row.dst, t)))
        for row in rows[i:j]:
            if row.label == 1:
                predictor.observe(row.src, row.dst, t)
        i = j
    return out


def write_scores(path, scored) -> Path:
    """Write the `id,timestamp,score` return file."""
    lines = ["# columns: id,timestamp,score"]
    for event, time_text, score in scored:
        lines.append(f"{event},{time_text},{float(score)!r}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def average_precision(scores, labels) -> float:
    """Area under precision-recall, stable order among tied scores."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    order = np.argsort(-scores, kind="stable")
    hits = labels[order] == 1
    n_pos = int(hits.sum())
    if n_pos == 0 or n_pos == labels.size:
        raise ValueError("average precision needs both classes")
    precision_at = np.cumsum(hits) / np.arange(1, labels.size + 1)
    return float(precision_at[hits].sum() / n_pos)


def roc_auc(scores, labels) -> float:
    """Rank statistic with half credit for ties."""
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("auc needs both classes")
    order = np.argsort(scores, kind="stable")
    ranks = np.empty(labels.size)
    sorted_scores = scores[order]
    i = 0
    while i < labels.size:
        j = i
        while j + 1 < labels.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return float((ranks[labels == 1].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))
