"""Counterfactual evaluation protocols.

Builds the practical evaluation setting where trigger times are not
observed: positives from a chronological test window are paired with
timestamp-aliased negatives, a predictor scores both, and its error on
data from the true generating process is compared with its error on data
from a distorted process.  Two distortions are provided: swapping the
generating model for a different one (experiment A) and shuffling event
timestamps inside the test window (experiment B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .causal_core import (
    AdjacencySpec,
    CausalModel,
    EventSequence,
    degeneracy_check,
    generate_sequence,
)
from .errors import (
    MetricUndefinedError,
    ParameterError,
    ProbabilityUndefinedError,
    SamplingError,
)
from .model_distance import directed_distance, mean_distance
from .seeding import as_generator, child_seq

SAMPLING_MODES = ("global", "transductive")


@dataclass(frozen=True)
class EvaluationSet:
    """Labeled candidate events inside a time window.

    Every label-1 item is a real event of the window; every label-0 item
    shares its timestamp with some label-1 item (it is the same moment
    asked about a different event type).
    """

    types: np.ndarray
    times: np.ndarray
    labels: np.ndarray
    window: tuple[float, float]
    sampling_mode: str

    def __post_init__(self):
        types = np.ascontiguousarray(self.types, dtype=np.int64)
        times = np.ascontiguousarray(self.times, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "types", types)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "labels", labels)
        if not (types.shape == times.shape == labels.shape):
            raise ParameterError("types/times/labels must be parallel arrays")
        if labels.size and not np.isin(labels, (0, 1)).all():
            raise ParameterError("labels must be 0 or 1")
        a, b = self.window
        if times.size and (times.min() < a or times.max() >= b):
            raise ParameterError("evaluation times must lie inside the window")
        if labels.size and self.sampling_mode in SAMPLING_MODES:
            positive_times = set(times[labels == 1].tolist())
            if not set(times[labels == 0].tolist()) <= positive_times:
                raise ParameterError("every negative must share a timestamp with a positive")

    @property
    def items(self) -> list[tuple[int, float, int]]:
        return [
            (int(i), float(t), int(y))
            for i, t, y in zip(self.types, self.times, self.labels)
        ]

    def __len__(self) -> int:
        return int(self.times.size)


@dataclass(frozen=True)
class GapRecord:
    """Predictor error on true data vs distorted data, and their gap."""

    d_star_0: float
    d_star_dagger: float
    delta: float
    d_bar: Optional[float] = None
    metric_name: str = "accuracy"

    def __post_init__(self):
        for name in ("d_star_0", "d_star_dagger"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1], got {v}")
        if self.delta != self.d_star_dagger - self.d_star_0:
            raise ParameterError("delta is inconsistent with its components")


@dataclass(frozen=True)
class CounterfactualOutcome:
    """Performance of one predictor on the factual and distorted test sets."""

    y_x_u: float
    y_xprime_u: float
    train_window: tuple[float, float]
    test_window: tuple[float, float]

    def __post_init__(self):
        for name in ("y_x_u", "y_xprime_u"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1], got {v}")


def restrict(sequence: EventSequence, a: float, b: float) -> EventSequence:
    """Events of the sequence with times in [a, b), order preserved."""
    if not 0 <= a < b:
        raise ParameterError(f"need 0 <= a < b, got [{a}, {b})")
    mask = (sequence.times >= a) & (sequence.times < b)
    return EventSequence(
        types=sequence.types[mask],
        times=sequence.times[mask],
        horizon=sequence.horizon,
        n_types=sequence.n_types,
    )


def negative_sample(
    positives: EventSequence,
    universe_size: int,
    mode: str,
    k_per_positive: int = 1,
    seed=0,
    window: Optional[tuple[float, float]] = None,
) -> EvaluationSet:
    """Pair each positive with k timestamp-aliased negatives.

    In global mode the negative type is uniform over the full universe
    minus the positive's own type; in transductive mode it is uniform over
    the types observed somewhere in `positives`, again minus the
    positive's own type.  Items are emitted in time order, each positive
    immediately followed by its negatives.
    """
    if universe_size < 2:
        raise ParameterError("universe must contain at least 2 types")
    if mode not in SAMPLING_MODES:
        raise ParameterError(f"unknown sampling mode {mode!r}")
    if k_per_positive < 1:
        raise ParameterError("k_per_positive must be at least 1")
    if positives.types.size and positives.types.max() >= universe_size:
        raise ParameterError("positives contain types outside the universe")

    rng = as_generator(seed)
    n_pos = len(positives)
    k = k_per_positive
    if mode == "transductive":
        observed = np.unique(positives.types)
        if observed.size < 2:
            raise SamplingError(
                "transductive sampling needs at least 2 distinct observed types"
            )
        self_pos = np.searchsorted(observed, positives.types)
        draws = rng.integers(0, observed.size - 1, size=(n_pos, k))
        draws += draws >= self_pos[:, None]
        neg_types = observed[draws]
    else:
        draws = rng.integers(0, universe_size - 1, size=(n_pos, k))
        draws += draws >= positives.types[:, None]
        neg_types = draws

    group = k + 1
    types = np.empty(n_pos * group, dtype=np.int64)
    times = np.empty(n_pos * group, dtype=np.float64)
    labels = np.zeros(n_pos * group, dtype=np.int64)
    types[::group] = positives.types
    labels[::group] = 1
    times[::group] = positives.times
    for c in range(k):
        types[c + 1 :: group] = neg_types[:, c]
        times[c + 1 :: group] = positives.times
    if window is None:
        window = (0.0, positives.horizon)
    return EvaluationSet(types=types, times=times, labels=labels, window=window, sampling_mode=mode)


def trigger_evaluation_set(triggers, accepted: EventSequence) -> EvaluationSet:
    """Evaluation set whose candidates are the true trigger times.

    Labels are membership in the accepted sequence.  Used when triggers
    are observable (sampling_mode is recorded as 'triggers').
    """
    types = np.concatenate([np.full(len(s), s.event_type, dtype=np.int64) for s in triggers])
    times = np.concatenate([s.times for s in triggers])
    order = np.lexsort((types, times))
    types, times = types[order], times[order]
    labels = np.zeros(times.size, dtype=np.int64)
    for s in triggers:
        sel = types == s.event_type
        acc = accepted.times_of(s.event_type)
        idx = np.searchsorted(acc, times[sel], side="left")
        hit = idx < acc.size
        lab = np.zeros(int(sel.sum()), dtype=np.int64)
        lab[hit] = acc[idx[hit]] == times[sel][hit]
        labels[sel] = lab
    return EvaluationSet(
        types=types,
        times=times,
        labels=labels,
        window=(0.0, accepted.horizon),
        sampling_mode="triggers",
    )


def oracle_predict(model: CausalModel, eval_set: EvaluationSet, history: EventSequence) -> np.ndarray:
    """Score evaluation items with the true causal parameters.

    Each (i, t) is scored 1 iff the acceptance rule fires against the
    history stream.  The trigger factor is dropped: every evaluation
    timestamp coincides with an observed event, so the candidate is
    treated as triggered.  A feasible negative is therefore scored 1 and
    counts as an error.
    """
    scores = np.zeros(len(eval_set), dtype=np.int64)
    tau = model.tau_bar
    for i in np.unique(eval_set.types):
        sel = eval_set.types == i
        times = eval_set.times[sel]
        s = np.zeros(times.size)
        for j in model.parents(int(i)):
            hist_j = history.times_of(j)
            hi = np.searchsorted(hist_j, times, side="left")
            lo = np.searchsorted(hist_j, times - tau, side="left")
            s += model.theta[i, j] * (hi > lo)
        scores[sel] = s >= 0.0
    return scores


def _rankdata_average(x: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties assigned their average rank."""
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.size, dtype=np.float64)
    sx = x[order]
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and sx[j + 1] == sx[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def metric(scores, labels, which: str) -> float:
    """Classification quality of scores against binary labels.

    accuracy: fraction of exact score/label agreement (binary scores).
    average_precision: step-interpolated area under precision-recall,
        ties broken by stable input order.
    auc: rank statistic with half credit for tied scores.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.shape != labels.shape or scores.ndim != 1 or scores.size < 1:
        raise ParameterError("scores and labels must be equal-length nonempty vectors")
    if which == "accuracy":
        return float(np.mean(scores == labels))
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise MetricUndefinedError(f"{which} needs both classes, got {n_pos} positives")
    if which == "average_precision":
        order = np.argsort(-scores, kind="stable")
        hits = labels[order] == 1
        precision_at = np.cumsum(hits) / np.arange(1, labels.size + 1)
        return float(precision_at[hits].sum() / n_pos)
    if which == "auc":
        ranks = _rankdata_average(scores)
        pos_rank_sum = float(ranks[labels == 1].sum())
        return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)
    raise ParameterError(f"unknown metric {which!r}")


def performance_gap(
    d_star_0: float,
    d_star_dagger: float,
    metric_name: str = "accuracy",
    d_bar: Optional[float] = None,
) -> GapRecord:
    """Gap between the error on distorted data and the error on true data."""
    return GapRecord(
        d_star_0=d_star_0,
        d_star_dagger=d_star_dagger,
        delta=d_star_dagger - d_star_0,
        d_bar=d_bar,
        metric_name=metric_name,
    )


def gap_probability(records, delta_star: float, beta: Optional[float] = None):
    """Empirical P(gap > 0) among sufficiently accurate predictors.

    Filters records to d_star_0 < delta_star and, when beta is given, to
    records carrying a model distance with d_bar > beta.  Returns the
    frequency of positive gaps together with the surviving sample count.
    """
    kept = [r for r in records if r.d_star_0 < delta_star]
    if beta is not None:
        kept = [r for r in kept if r.d_bar is not None and r.d_bar > beta]
    if not kept:
        raise ProbabilityUndefinedError(
            f"no records survive delta_star={delta_star}, beta={beta}"
        )
    positive = sum(1 for r in kept if r.delta > 0)
    return positive / len(kept), len(kept)


def gap_probability_beta_curve(records, delta_star: float, beta_grid) -> list[dict]:
    """(beta, probability, count) rows; cells with empty filters are skipped."""
    rows = []
    for beta in beta_grid:
        try:
            p, count = gap_probability(records, delta_star, beta)
        except ProbabilityUndefinedError:
            continue
        rows.append({"beta": float(beta), "probability": p, "count": count})
    return rows


def gap_probability_delta_curve(records, delta_grid) -> list[dict]:
    """(delta_star, probability, count) rows; empty filters are skipped."""
    rows = []
    for delta_star in delta_grid:
        try:
            p, count = gap_probability(records, delta_star)
        except ProbabilityUndefinedError:
            continue
        rows.append({"delta_star": float(delta_star), "probability": p, "count": count})
    return rows


def gap_probability_grid(records, delta_grid, beta_grid) -> list[dict]:
    """(delta_star, beta, probability, count) rows over the full grid."""
    rows = []
    for delta_star in delta_grid:
        for beta in beta_grid:
            try:
                p, count = gap_probability(records, delta_star, beta)
            except ProbabilityUndefinedError:
                p, count = float("nan"), 0
            rows.append(
                {
                    "delta_star": float(delta_star),
                    "beta": float(beta),
                    "probability": p,
                    "count": count,
                }
            )
    return rows


def shuffle_timestamps(sequence: EventSequence, seed) -> EventSequence:
    """Randomly reassign the sequence's timestamps among its events.

    Event identities keep their types; the multiset of timestamps is
    redistributed by a uniform permutation and the result re-sorted.  Both
    the type multiset and the time multiset are preserved.
    """
    rng = as_generator(seed)
    perm = rng.permutation(len(sequence))
    new_times = sequence.times[perm]
    order = np.lexsort((sequence.types, new_times))
    return EventSequence(
        types=sequence.types[order],
        times=new_times[order],
        horizon=sequence.horizon,
        n_types=sequence.n_types,
    )


def perturb_model(
    model: CausalModel, strength: float, seed, resample_support: bool = False
) -> CausalModel:
    """Redraw a Bernoulli(strength) share of the influence entries.

    With `resample_support=False` only nonzero entries are candidates and
    they receive fresh nonzero Uniform[-1, 1] values, so the structural
    graph is preserved.  With `resample_support=True` every entry is a
    candidate and a redrawn entry is zero with the complement of the
    model's own edge density, so strength 1 yields a fresh model from the
    same family, unrelated to the original.  Intensities and the window
    are kept either way; strength 0 returns an equivalent model.
    """
    if not 0.0 <= strength <= 1.0:
        raise ParameterError("strength must lie in [0, 1]")
    rng = as_generator(seed)
    theta = model.theta.copy()
    if resample_support:
        redraw = rng.random(theta.shape) < strength
        density = float(np.count_nonzero(model.theta)) / model.theta.size
        keep_edge = rng.random(theta.shape) < density
        count = int(redraw.sum())
        values = rng.uniform(-1.0, 1.0, size=count)
        zero = values == 0.0
        while zero.any():
            values[zero] = rng.uniform(-1.0, 1.0, size=int(zero.sum()))
            zero = values == 0.0
        theta[redraw] = np.where(keep_edge[redraw], values, 0.0)
    else:
        redraw = (theta != 0.0) & (rng.random(theta.shape) < strength)
        count = int(redraw.sum())
        values = rng.uniform(-1.0, 1.0, size=count)
        zero = values == 0.0
        while zero.any():
            values[zero] = rng.uniform(-1.0, 1.0, size=int(zero.sum()))
            zero = values == 0.0
        theta[redraw] = values
    return CausalModel(lambdas=model.lambdas, theta=theta, tau_bar=model.tau_bar)


def sample_experiment_model(
    n: int,
    seed,
    adjacency: Optional[AdjacencySpec] = None,
    lambda_range=(0.5, 2.0),
    tau_bar: float = 1.0,
    probe_horizon: float = 200.0,
    min_rejection: float = 0.05,
    max_tries: int = 64,
) -> CausalModel:
    """Sample a model whose generated data passes the degeneracy gate.

    Candidate models are redrawn until a probe sequence rejects at least
    `min_rejection` of its triggers, which guarantees the inhibitory side
    of the model actually bites in the generated data.
    """
    from .causal_core import sample_random_model

    adjacency = adjacency or AdjacencySpec.erdos_renyi(0.5)
    for attempt in range(max_tries):
        model = sample_random_model(
            n, adjacency, lambda_range=lambda_range, tau_bar=tau_bar, seed=child_seq(seed, attempt)
        )
        triggers, accepted = generate_sequence(model, probe_horizon, child_seq(seed, attempt, 1))
        total = sum(len(s) for s in triggers)
        if total == 0:
            continue
        rejected = (total - len(accepted)) / total
        if degeneracy_check(triggers, accepted) and rejected >= min_rejection:
            return model
    raise ParameterError(
        f"no model with rejection share >= {min_rejection} found in {max_tries} tries"
    )


def proxy_directed_error(eval_set: EvaluationSet, scores: np.ndarray) -> float:
    """Type-averaged disagreement between scores and labels.

    Stands in for the trigger-based directed distance when triggers are
    unobserved: the labeled evaluation items play the role of the trigger
    set.  Types with no items are skipped from the normalization.
    """
    scores = np.asarray(scores, dtype=np.float64)
    per_type = []
    for i in np.unique(eval_set.types):
        sel = eval_set.types == i
        per_type.append(float(np.mean(np.abs(scores[sel] - eval_set.labels[sel]))))
    if not per_type:
        raise ParameterError("evaluation set is empty")
    return float(np.mean(per_type))


@dataclass(frozen=True)
class ExperimentAData:
    """Deterministic data behind one causal-shift run."""

    sequence_0: EventSequence
    sequence_dagger: EventSequence
    train: EventSequence
    eval_test: EvaluationSet
    eval_cf: EvaluationSet
    degenerate_0: bool
    degenerate_dagger: bool


@dataclass(frozen=True)
class ExperimentAResult:
    outcome: CounterfactualOutcome
    gap: GapRecord
    data: ExperimentAData
    scores_test: np.ndarray
    scores_cf: np.ndarray


def build_experiment_a_data(
    model_0: CausalModel,
    model_dagger: CausalModel,
    horizon: float,
    tau_split: float,
    seed,
    k_negative: int = 1,
) -> ExperimentAData:
    """Generate both sequences, split chronologically, and build eval sets.

    The same (seed, parameters) always yields the same data, so exporting
    datasets and later scoring them in-process see identical inputs.
    """
    if not 0 < tau_split < horizon:
        raise ParameterError("tau_split must lie strictly inside (0, horizon)")
    if model_0.n != model_dagger.n:
        raise ParameterError("models live on different type universes")
    triggers_0, seq_0 = generate_sequence(model_0, horizon, child_seq(seed, 0))
    triggers_d, seq_d = generate_sequence(model_dagger, horizon, child_seq(seed, 1))
    train = restrict(seq_0, 0.0, tau_split)
    test = restrict(seq_0, tau_split, horizon)
    test_cf = restrict(seq_d, tau_split, horizon)
    if len(test) == 0 or len(test_cf) == 0:
        raise ParameterError("degenerate test window: no events after the split")
    window = (tau_split, horizon)
    eval_test = negative_sample(
        test, model_0.n, "transductive", k_negative, child_seq(seed, 2), window=window
    )
    eval_cf = negative_sample(
        test_cf, model_0.n, "transductive", k_negative, child_seq(seed, 3), window=window
    )
    return ExperimentAData(
        sequence_0=seq_0,
        sequence_dagger=seq_d,
        train=train,
        eval_test=eval_test,
        eval_cf=eval_cf,
        degenerate_0=not degeneracy_check(triggers_0, seq_0),
        degenerate_dagger=not degeneracy_check(triggers_d, seq_d),
    )


def run_experiment_a(
    model_0: CausalModel,
    model_dagger: CausalModel,
    horizon: float,
    tau_split: float,
    seed,
    predictor: str = "oracle",
    metric_name: str = "accuracy",
    k_negative: int = 1,
    dbar_iters: Optional[int] = 32,
    scores=None,
) -> ExperimentAResult:
    """Causal-shift evaluation of one predictor.

    Trains (conceptually) on the true model's early window and evaluates
    on the true test window and on a counterfactual test window generated
    by the distorted model.  The oracle predictor scores with the true
    parameters, using each test set's own positive stream as history; an
    external predictor supplies `scores=(scores_test, scores_cf)` obtained
    through the dataset export/import cycle.
    """
    data = build_experiment_a_data(model_0, model_dagger, horizon, tau_split, seed, k_negative)
    if predictor == "oracle":
        scores_test = oracle_predict(model_0, data.eval_test, data.sequence_0)
        scores_cf = oracle_predict(model_0, data.eval_cf, data.sequence_dagger)
    elif predictor == "external":
        if scores is None:
            raise ParameterError("external predictor requires scores=(test, test_cf)")
        scores_test, scores_cf = (np.asarray(s, dtype=np.float64) for s in scores)
    else:
        raise ParameterError(f"unknown predictor {predictor!r}")

    y_x = metric(scores_test, data.eval_test.labels, metric_name)
    y_xp = metric(scores_cf, data.eval_cf.labels, metric_name)
    d_bar = None
    if dbar_iters:
        d_bar = mean_distance(
            model_0, model_dagger, horizon, dbar_iters, child_seq(seed, 4)
        ).mean
    gap = performance_gap(1.0 - y_x, 1.0 - y_xp, metric_name=metric_name, d_bar=d_bar)
    outcome = CounterfactualOutcome(
        y_x_u=y_x,
        y_xprime_u=y_xp,
        train_window=(0.0, tau_split),
        test_window=(tau_split, horizon),
    )
    return ExperimentAResult(
        outcome=outcome, gap=gap, data=data, scores_test=scores_test, scores_cf=scores_cf
    )


@dataclass(frozen=True)
class ExperimentBResult:
    """Original-vs-shuffled performance plus shuffle-distance statistics."""

    outcomes: list
    original_metric: float
    shuffled_metrics: list
    original_proxy_distance: float
    shuffle_proxy_distances: list
    distance_mean: float
    distance_ci: tuple[float, float]


def run_experiment_b(
    model_0: CausalModel,
    horizon: float,
    tau_split: float,
    n_shuffles: int,
    seed,
    k_negative: int = 1,
    metric_name: str = "accuracy",
) -> ExperimentBResult:
    """Timestamp-shuffling evaluation of the oracle predictor.

    The test window is shuffled `n_shuffles` times; each copy is evaluated
    like the original (fresh transductive negatives from a shared seed, so
    an identity permutation reproduces the original evaluation exactly).
    Each copy's distance from the generating model is measured on the
    negative-sampled items, since true triggers are meaningless after the
    permutation.
    """
    if n_shuffles < 1:
        raise ParameterError("n_shuffles must be at least 1")
    if not 0 < tau_split < horizon:
        raise ParameterError("tau_split must lie strictly inside (0, horizon)")
    _, seq_0 = generate_sequence(model_0, horizon, child_seq(seed, 0))
    train = restrict(seq_0, 0.0, tau_split)
    test = restrict(seq_0, tau_split, horizon)
    if len(test) == 0:
        raise ParameterError("degenerate test window: no events after the split")
    window = (tau_split, horizon)
    negative_seed = child_seq(seed, 1)

    eval_orig = negative_sample(test, model_0.n, "transductive", k_negative, negative_seed, window)
    scores_orig = oracle_predict(model_0, eval_orig, seq_0)
    y_x = metric(scores_orig, eval_orig.labels, metric_name)
    d_orig = proxy_directed_error(eval_orig, scores_orig)

    outcomes = []
    shuffled_metrics = []
    distances = []
    for s in range(n_shuffles):
        shuffled = shuffle_timestamps(test, child_seq(seed, 2, s))
        stream = EventSequence(
            types=np.concatenate([train.types, shuffled.types]),
            times=np.concatenate([train.times, shuffled.times]),
            horizon=horizon,
            n_types=model_0.n,
        )
        eval_s = negative_sample(shuffled, model_0.n, "transductive", k_negative, negative_seed, window)
        scores_s = oracle_predict(model_0, eval_s, stream)
        y_s = metric(scores_s, eval_s.labels, metric_name)
        outcomes.append(
            CounterfactualOutcome(
                y_x_u=y_x,
                y_xprime_u=y_s,
                train_window=(0.0, tau_split),
                test_window=window,
            )
        )
        shuffled_metrics.append(y_s)
        distances.append(proxy_directed_error(eval_s, scores_s))

    mean_d = math.fsum(distances) / len(distances)
    if len(distances) > 1:
        sd = math.sqrt(math.fsum((d - mean_d) ** 2 for d in distances) / (len(distances) - 1))
        half = 1.96 * sd / math.sqrt(len(distances))
    else:
        half = 0.0
    return ExperimentBResult(
        outcomes=outcomes,
        original_metric=y_x,
        shuffled_metrics=shuffled_metrics,
        original_proxy_distance=d_orig,
        shuffle_proxy_distances=distances,
        distance_mean=mean_d,
        distance_ci=(mean_d - half, mean_d + half),
    )


def gap_record_study(
    n_pairs: int,
    n: int,
    horizon: float,
    seed,
    dbar_iters: int = 32,
    lambda_range=(0.5, 2.0),
    tau_bar: float = 1.0,
    min_rejection: float = 0.05,
) -> list[GapRecord]:
    """Gap records over graded (true, distorted, estimator) triples.

    Each pair draws a true model, a distorted model obtained by a
    structural perturbation, and an estimator obtained the same way.
    Perturbation strengths follow fixed stratified grids rather than
    random draws, so every study is balanced by construction: distortion
    strengths concentrate near 0 (a fifth exactly 0) to populate the
    model-distance axis from identical to unrelated, while estimator
    strengths sweep [0, 1] so accuracies span the whole range.  Errors are
    trigger-based directed distances (the regime where triggers are
    observable); the model distance is the Monte-Carlo mean distance
    between the true and distorted models.
    """
    dagger_grid = (0.0, 0.0, 0.01, 0.04, 0.09, 0.16, 0.25, 0.45, 0.7, 1.0)
    records = []
    for idx in range(n_pairs):
        model_0 = sample_experiment_model(
            n, child_seq(seed, idx, 0), lambda_range=lambda_range,
            tau_bar=tau_bar, min_rejection=min_rejection,
        )
        dagger_strength = dagger_grid[idx % len(dagger_grid)]
        estimator_strength = ((idx * 7) % 20) / 19.0
        model_dagger = perturb_model(
            model_0, dagger_strength, child_seq(seed, idx, 1), resample_support=True
        )
        estimator = perturb_model(
            model_0, estimator_strength, child_seq(seed, idx, 2), resample_support=True
        )

        triggers_0, seq_0 = generate_sequence(model_0, horizon, child_seq(seed, idx, 3))
        triggers_d, seq_d = generate_sequence(model_dagger, horizon, child_seq(seed, idx, 4))
        d_0, _, _ = directed_distance(estimator, model_0, seq_0, triggers_0)
        d_dagger, _, _ = directed_distance(estimator, model_dagger, seq_d, triggers_d)
        d_bar = mean_distance(model_0, model_dagger, horizon, dbar_iters, child_seq(seed, idx, 5)).mean
        records.append(performance_gap(d_0, d_dagger, metric_name="accuracy", d_bar=d_bar))
    return records
