"""Desk-scale temporal link prediction baselines over exported edge-event
benchmark datasets: a recency heuristic and a learned per-node
memory-embedding model, scored chronologically and returned as score files
the benchmark pipeline ingests directly."""

from .baselines import Hyperparams, MemoryEmbeddingPredictor, RecencyPredictor, train_baseline
from .dataset import DatasetError, EdgeRecord, EdgeStream, edge_id, load_dataset
from .gap_study import evaluate_dataset, gap_study, write_gap_table
from .scoring import (
    ChronologyError,
    average_precision,
    roc_auc,
    score_eval_set,
    write_scores,
)

__all__ = [
    "ChronologyError",
    "DatasetError",
    "EdgeRecord",
    "EdgeStream",
    "Hyperparams",
    "MemoryEmbeddingPredictor",
    "RecencyPredictor",
    "average_precision",
    "edge_id",
    "evaluate_dataset",
    "gap_study",
    "load_dataset",
    "roc_auc",
    "score_eval_set",
    "train_baseline",
    "write_gap_table",
    "write_scores",
]

__version__ = "0.1.0"
