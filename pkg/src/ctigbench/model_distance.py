"""Cross-model predictive distance.

One model predicts on sequences generated by another: at each trigger time
of the source data, the predicting model's acceptance rule is evaluated
against the source history, and its disagreement with what actually
happened is averaged per type and across types.  The geometric mean of the
two directions gives a symmetric per-realization distance, and averaging
over independent paired realizations gives a distance between the models
themselves that no longer depends on any particular sampled sequence.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .causal_core import CausalModel, EventSequence, generate_sequence
from .errors import DistanceUndefinedError, ParameterError
from .seeding import child_seq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceReport:
    """Both directed errors and their geometric mean for one paired draw.

    `per_type_errors` holds the per-type errors of the forward direction
    (second model predicting on the first model's data), NaN for skipped
    types; `skipped_types` is the union of types skipped in either
    direction because they never triggered.
    """

    d_b_on_a: float
    d_a_on_b: float
    symmetric: float
    per_type_errors: np.ndarray
    skipped_types: tuple[int, ...]


@dataclass(frozen=True)
class MeanDistanceEstimate:
    """Monte-Carlo mean of the symmetric distance over paired draws."""

    mean: float
    variance: float
    iters: int
    horizon: float


def _type_predictions(model: CausalModel, i: int, times: np.ndarray, sequence: EventSequence) -> np.ndarray:
    """Vectorized acceptance predictions for type i at the given times.

    History flags are read from `sequence` with the predicting model's own
    window length; the trigger factor is 1 (the times are trigger times).
    """
    s = np.zeros(times.size)
    tau = model.tau_bar
    for j in model.parents(i):
        history_j = sequence.times_of(j)
        hi = np.searchsorted(history_j, times, side="left")
        lo = np.searchsorted(history_j, times - tau, side="left")
        s += model.theta[i, j] * (hi > lo)
    return (s >= 0.0).astype(np.int64)


def _membership(times: np.ndarray, accepted_times: np.ndarray) -> np.ndarray:
    """0/1 mask of which (sorted) times appear in the accepted times."""
    idx = np.searchsorted(accepted_times, times, side="left")
    hit = idx < accepted_times.size
    out = np.zeros(times.size, dtype=np.int64)
    out[hit] = accepted_times[idx[hit]] == times[hit]
    return out


def cross_predict(model_b: CausalModel, i: int, t: float, sequence_a: EventSequence, trigger_flag: int) -> int:
    """Model B's prediction for a type-i candidate at time t on A's data.

    Parents, weights, and window all come from model B; history flags are
    read from the other model's sequence.
    """
    if sequence_a.n_types != model_b.n:
        raise ParameterError(
            f"type universes differ: sequence has {sequence_a.n_types}, model has {model_b.n}"
        )
    if not trigger_flag:
        return 0
    return int(_type_predictions(model_b, i, np.array([t]), sequence_a)[0])


def directed_distance(model_b: CausalModel, model_a: CausalModel, sequence_a: EventSequence, triggers_a):
    """Predictive error of model B on data generated by model A.

    For each type, model B's predictions at A's trigger times are compared
    with actual membership in A's accepted sequence, and the per-type mean
    absolute disagreements are averaged over the types that triggered at
    least once.  Types that never triggered are skipped and excluded from
    the normalization.

    Returns (value, per_type_errors, skipped_types).
    """
    if model_b.n != model_a.n:
        raise ParameterError("models live on different type universes")
    if sequence_a.n_types != model_a.n or len(triggers_a) != model_a.n:
        raise ParameterError("sequence/trigger universe does not match the models")

    n = model_a.n
    per_type = np.full(n, np.nan)
    skipped = []
    for stream in triggers_a:
        i = stream.event_type
        times = stream.times
        if times.size == 0:
            skipped.append(i)
            continue
        predicted = _type_predictions(model_b, i, times, sequence_a)
        actual = _membership(times, sequence_a.times_of(i))
        per_type[i] = float(np.mean(np.abs(predicted - actual)))
    if len(skipped) == n:
        raise DistanceUndefinedError("every trigger stream is empty")
    value = float(np.nanmean(per_type))
    return value, per_type, tuple(skipped)


def symmetric_distance(
    model_a: CausalModel,
    model_b: CausalModel,
    sequence_a: EventSequence,
    triggers_a,
    sequence_b: EventSequence,
    triggers_b,
) -> DistanceReport:
    """Geometric mean of the two directed errors for one paired draw."""
    d_b_on_a, per_type, skipped_a = directed_distance(model_b, model_a, sequence_a, triggers_a)
    d_a_on_b, _, skipped_b = directed_distance(model_a, model_b, sequence_b, triggers_b)
    return DistanceReport(
        d_b_on_a=d_b_on_a,
        d_a_on_b=d_a_on_b,
        symmetric=math.sqrt(d_b_on_a * d_a_on_b),
        per_type_errors=per_type,
        skipped_types=tuple(sorted(set(skipped_a) | set(skipped_b))),
    )


def mean_distance(
    model_a: CausalModel,
    model_b: CausalModel,
    horizon: float,
    iters: int,
    seed,
) -> MeanDistanceEstimate:
    """Monte-Carlo distance between two models.

    Each iteration draws a fresh sequence from each model and computes the
    symmetric per-realization distance; the sample mean and variance over
    iterations are reported.  Iterations whose distance is undefined (a
    realization with no triggers at all) are redrawn with a fresh child
    seed and logged.
    """
    if iters < 1:
        raise ParameterError("iters must be at least 1")
    values = []
    attempt = 0
    while len(values) < iters:
        if attempt - len(values) > 100:
            raise DistanceUndefinedError(
                f"{attempt - len(values)} undefined draws; the horizon is too short "
                "for these intensities"
            )
        try:
            triggers_a, seq_a = generate_sequence(model_a, horizon, child_seq(seed, 0, attempt))
            triggers_b, seq_b = generate_sequence(model_b, horizon, child_seq(seed, 1, attempt))
            report = symmetric_distance(model_a, model_b, seq_a, triggers_a, seq_b, triggers_b)
        except DistanceUndefinedError:
            logger.warning("resampling undefined distance draw (attempt %d)", attempt)
            attempt += 1
            continue
        values.append(report.symmetric)
        attempt += 1

    mean = math.fsum(values) / iters
    if iters > 1:
        variance = math.fsum((v - mean) ** 2 for v in values) / (iters - 1)
    else:
        variance = 0.0
    return MeanDistanceEstimate(mean=mean, variance=variance, iters=iters, horizon=horizon)


def variance_decay_study(model_pair_sampler, grid, replications: int, seed) -> list[dict]:
    """Variance of the mean-distance estimator across effective sizes.

    For a single model pair drawn from `model_pair_sampler`, each
    (horizon, iters) grid cell is estimated `replications` times with
    independent seeds, and the empirical variance of the estimates is
    reported against the effective sample size horizon * iters.
    """
    grid = list(grid)
    if not grid:
        raise ParameterError("grid must be nonempty")
    if replications < 30:
        raise ParameterError("need at least 30 replications per cell")

    model_a, model_b = model_pair_sampler(child_seq(seed, 0))
    rows = []
    for cell, (horizon, iters) in enumerate(grid):
        estimates = [
            mean_distance(model_a, model_b, horizon, iters, child_seq(seed, 1, cell, rep)).mean
            for rep in range(replications)
        ]
        mean = math.fsum(estimates) / replications
        variance = math.fsum((e - mean) ** 2 for e in estimates) / (replications - 1)
        rows.append(
            {
                "horizon": float(horizon),
                "iters": int(iters),
                "effective_size": float(horizon) * int(iters),
                "mean": mean,
                "variance": variance,
            }
        )
    return rows
