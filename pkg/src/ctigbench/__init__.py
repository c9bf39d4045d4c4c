"""Causal event sequences and causal temporal interaction graphs.

Generates continuous-time event data with known ground-truth causal
structure, measures distances between generating models by cross-model
prediction, and runs counterfactual evaluation protocols (causal shift and
timestamp shuffling) against oracle or external predictors.
"""

from .causal_core import (
    AdjacencySpec,
    CausalModel,
    EventSequence,
    degeneracy_check,
    generate_sequence,
    history_indicator,
    sample_random_model,
    sem_eval,
)
from .counterfactual import (
    CounterfactualOutcome,
    EvaluationSet,
    GapRecord,
    gap_probability,
    gap_record_study,
    metric,
    negative_sample,
    oracle_predict,
    performance_gap,
    perturb_model,
    restrict,
    run_experiment_a,
    run_experiment_b,
    sample_experiment_model,
    shuffle_timestamps,
)
from .ctig_builder import CtigSeeds, CtigSpec, EdgeSpace, build_ctig_model, five_node_preset
from .model_distance import (
    DistanceReport,
    MeanDistanceEstimate,
    cross_predict,
    directed_distance,
    mean_distance,
    symmetric_distance,
    variance_decay_study,
)
from .point_process import TriggerStream, Timeline, merge_timeline, sample_ppp

__all__ = [
    "AdjacencySpec",
    "CausalModel",
    "CounterfactualOutcome",
    "CtigSeeds",
    "CtigSpec",
    "DistanceReport",
    "EdgeSpace",
    "EvaluationSet",
    "EventSequence",
    "GapRecord",
    "MeanDistanceEstimate",
    "Timeline",
    "TriggerStream",
    "build_ctig_model",
    "cross_predict",
    "degeneracy_check",
    "directed_distance",
    "five_node_preset",
    "gap_probability",
    "gap_record_study",
    "generate_sequence",
    "history_indicator",
    "mean_distance",
    "merge_timeline",
    "metric",
    "negative_sample",
    "oracle_predict",
    "performance_gap",
    "perturb_model",
    "restrict",
    "run_experiment_a",
    "run_experiment_b",
    "sample_experiment_model",
    "sample_ppp",
    "sample_random_model",
    "sem_eval",
    "shuffle_timestamps",
    "symmetric_distance",
    "variance_decay_study",
]

__version__ = "0.1.0"
