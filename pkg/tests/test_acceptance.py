"""Acceptance suite: one test per exit criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete.  Every tolerance is pinned here; seeds are fixed, so the whole
suite is deterministic.
"""

import math

import numpy as np
from scipy import stats

from ctigbench.causal_core import (
    AdjacencySpec,
    CausalModel,
    degeneracy_check,
    generate_sequence,
    sample_random_model,
)
from ctigbench.counterfactual import (
    gap_record_study,
    run_experiment_a,
    run_experiment_b,
    sample_experiment_model,
    trigger_evaluation_set,
    oracle_predict,
)
from ctigbench.ctig_builder import CtigSeeds, CtigSpec, build_ctig_model, five_node_preset
from ctigbench.model_distance import (
    directed_distance,
    mean_distance,
    symmetric_distance,
    variance_decay_study,
)
from ctigbench.properties import (
    estimate_pns,
    interventional_pns_oracle,
    is_monotonic_bruteforce,
    is_monotonic_closed_form,
)
from ctigbench.seeding import as_generator, child_seq


def report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_self_prediction_identity():
    """Zero cross-prediction error of every model on its own data, exactly."""
    max_distance = 0.0
    oracle_errors = 0
    rng = as_generator(1)
    for run in range(100):
        n = int(rng.integers(2, 11))
        model = sample_random_model(
            n, AdjacencySpec.erdos_renyi(0.5), seed=child_seq(10, run)
        )
        triggers, accepted = generate_sequence(model, 1000.0, child_seq(11, run))
        value, _, _ = directed_distance(model, model, accepted, triggers)
        max_distance = max(max_distance, value)
        ev = trigger_evaluation_set(triggers, accepted)
        scores = oracle_predict(model, ev, accepted)
        oracle_errors += int(np.sum(scores != ev.labels))
    ok = max_distance == 0.0 and oracle_errors == 0
    report(
        "self-prediction identity",
        ok,
        f"max self-distance {max_distance}, oracle errors {oracle_errors} over 100 models",
    )


def test_distance_axioms():
    """Bounds, swap invariance, and exact zero for same-object pairs."""
    in_bounds = True
    swap_equal = True
    self_zero = True
    for run in range(100):
        model_a = sample_random_model(5, AdjacencySpec.erdos_renyi(0.5), seed=child_seq(20, run, 0))
        model_b = sample_random_model(5, AdjacencySpec.erdos_renyi(0.5), seed=child_seq(20, run, 1))
        trig_a, seq_a = generate_sequence(model_a, 200.0, child_seq(21, run, 0))
        trig_b, seq_b = generate_sequence(model_b, 200.0, child_seq(21, run, 1))
        fwd = symmetric_distance(model_a, model_b, seq_a, trig_a, seq_b, trig_b)
        rev = symmetric_distance(model_b, model_a, seq_b, trig_b, seq_a, trig_a)
        in_bounds &= 0.0 <= fwd.d_b_on_a <= 1.0 and 0.0 <= fwd.d_a_on_b <= 1.0
        in_bounds &= 0.0 <= fwd.symmetric <= 1.0
        swap_equal &= fwd.symmetric == rev.symmetric
        self_zero &= mean_distance(model_a, model_a, 100.0, 2, child_seq(22, run)).mean == 0.0
    ok = in_bounds and swap_equal and self_zero
    report(
        "distance axioms",
        ok,
        f"bounds {in_bounds}, swap invariance {swap_equal}, same-object zero {self_zero}",
    )


def test_variance_decay():
    """Estimator variance strictly decreases with effective sample size.

    Fixed pair (n=7), effective sizes {2.5e3, 1e4, 4e4} as horizon*iters,
    100 replications each; log-log slope within [-1.4, -0.6].
    """

    def sampler(seed):
        return (
            sample_random_model(7, AdjacencySpec.erdos_renyi(0.5), seed=child_seq(seed, 0)),
            sample_random_model(7, AdjacencySpec.erdos_renyi(0.5), seed=child_seq(seed, 1)),
        )

    rows = variance_decay_study(
        sampler, [(250.0, 10), (250.0, 40), (250.0, 160)], replications=100, seed=2024
    )
    variances = [r["variance"] for r in rows]
    sizes = [r["effective_size"] for r in rows]
    decreasing = all(a > b for a, b in zip(variances, variances[1:]))
    slope = float(np.polyfit(np.log(sizes), np.log(variances), 1)[0])
    ok = decreasing and -1.4 <= slope <= -0.6
    report(
        "variance decay",
        ok,
        f"variances {['%.3g' % v for v in variances]}, log-log slope {slope:.3f}",
    )


def test_gap_hypothesis():
    """Positive gaps concentrate where the estimator is accurate and the
    distortion is distant: rising beta curve, near-certainty at the top
    decile, and decay toward a coin flip as the accuracy filter is lifted."""
    records = gap_record_study(200, 7, 1000.0, seed=2025, dbar_iters=32)

    d0 = np.array([r.d_star_0 for r in records])
    span_ok = d0.min() <= 0.01 and d0.max() >= 0.4

    kept = [r for r in records if r.d_star_0 < 0.2]
    kd = np.array([r.d_bar for r in kept])
    beta_grid = np.quantile(kd, np.linspace(0.0, 0.9, 10))
    probs = [float(np.mean([r.delta > 0 for r in kept if r.d_bar > b])) for b in beta_grid]
    rho = float(stats.spearmanr(beta_grid, probs).statistic)
    top = probs[-1]
    final = float(np.mean([r.delta > 0 for r in records]))

    ok = span_ok and rho >= 0.8 and top >= 0.9 and final <= 0.7
    report(
        "gap hypothesis",
        ok,
        f"span[{d0.min():.3f},{d0.max():.3f}] rho={rho:.3f} top={top:.3f} "
        f"P(gap>0|all)={final:.3f} over {len(records)} pairs ({len(kept)} accurate)",
    )


def test_monotonicity_oracle_equivalence():
    """Brute-force subset enumeration agrees with the sign rule everywhere."""
    pairs = 0
    disagreements = 0
    for run in range(500):
        model = sample_random_model(
            8, AdjacencySpec.erdos_renyi(0.5), seed=child_seq(40, run)
        )
        for i in range(model.n):
            parents = model.parents(i)
            if parents.size > 10:
                continue
            for j in parents:
                pairs += 1
                closed = is_monotonic_closed_form(model, i, int(j))
                brute = is_monotonic_bruteforce(model, i, int(j)).verdict
                disagreements += int(closed != brute)
    ok = disagreements == 0 and pairs > 0
    report(
        "monotonicity oracle equivalence",
        ok,
        f"{disagreements} disagreements over {pairs} (effect, parent) pairs in 500 models",
    )


def test_pns_identification():
    """Observational estimate matches the interventional oracle when the
    tested pair is monotone and the parent streams are exogenous."""
    within = 0
    cells_ok = True
    worst = 0.0
    for cfg in range(20):
        rng = as_generator(child_seq(313, cfg, 0))
        theta = np.zeros((4, 4))
        theta[0, 1] = rng.uniform(0.05, 1.0)
        for k in (2, 3):
            if rng.random() < 0.75:
                value = rng.uniform(-1.0, 1.0)
                theta[0, k] = value if value != 0.0 else 0.5
        model = CausalModel(rng.uniform(0.8, 2.0, size=4), theta, 1.0)
        triggers, sequence = generate_sequence(model, 10_000.0, child_seq(313, cfg, 2))
        estimate = estimate_pns(sequence, triggers[0], 0, 1, model.tau_bar)
        oracle = interventional_pns_oracle(model, 0, 1, 10_000.0, child_seq(313, cfg, 2))
        cells_ok &= estimate.count_active >= 500 and estimate.count_inactive >= 500
        diff = abs(estimate.value - oracle)
        worst = max(worst, diff)
        within += int(diff <= 0.05)
    ok = within >= 19 and cells_ok
    report(
        "pns identification",
        ok,
        f"{within}/20 within 0.05 (worst {worst:.4f}), all cells >= 500: {cells_ok}",
    )


def test_ctig_structural_invariants():
    """Reference construction invariants over 100 seeds, plus sparsity
    monotone in the threshold."""
    antisym_exact = True
    mask_exact = True
    for seed in range(100):
        spec = five_node_preset(seed=seed)
        model, matrices, _ = build_ctig_model(spec)
        antisym_exact &= np.array_equal(matrices.theta_tilde, -matrices.theta_tilde.T)
        antisym_exact &= bool(np.all(np.diag(matrices.theta_tilde) == 0.0))
        zero_rows = np.flatnonzero(~matrices.mask.any(axis=1))
        zero_cols = np.flatnonzero(~matrices.mask.any(axis=0))
        mask_exact &= zero_rows.size == 2 and np.array_equal(zero_rows, zero_cols)

    monotone = True
    for seed in range(10):
        seeds = CtigSeeds.from_master(seed)
        nnz = []
        for nu1 in (0.1, 0.3, 0.5, 0.7, 0.9):
            spec = CtigSpec(n=5, r=5, nu0=100.0, nu1=nu1, l=2, seeds=seeds)
            _, matrices, _ = build_ctig_model(spec)
            nnz.append(int(np.count_nonzero(matrices.theta_tilde)))
        monotone &= all(a >= b for a, b in zip(nnz, nnz[1:]))
    ok = antisym_exact and mask_exact and monotone
    report(
        "ctig structural invariants",
        ok,
        f"antisymmetry exact {antisym_exact}, mask pairs exact {mask_exact}, "
        f"sparsity monotone {monotone}",
    )


def test_shuffle_separation():
    """Original test data beats every shuffled copy, in metric and distance."""
    metric_wins = 0
    distance_wins = 0
    runs = 100
    ci_width_32 = ci_width_8 = None
    for run in range(runs):
        model = sample_experiment_model(7, child_seq(9090, run, 0))
        result = run_experiment_b(model, 1000.0, 500.0, 10, child_seq(9090, run, 1))
        if all(result.original_metric > v for v in result.shuffled_metrics):
            metric_wins += 1
        if all(d > result.original_proxy_distance for d in result.shuffle_proxy_distances):
            distance_wins += 1

    # CI width over pooled shuffle distances must shrink as runs accumulate
    model = sample_experiment_model(7, child_seq(9090, 0, 0))
    pooled = []
    for run in range(32):
        result = run_experiment_b(model, 1000.0, 500.0, 4, child_seq(9191, run))
        pooled.extend(result.shuffle_proxy_distances)
        if run == 7:
            ci_width_8 = 2 * 1.96 * np.std(pooled, ddof=1) / math.sqrt(len(pooled))
    ci_width_32 = 2 * 1.96 * np.std(pooled, ddof=1) / math.sqrt(len(pooled))

    ok = metric_wins >= 95 and distance_wins >= 95 and ci_width_32 < ci_width_8
    report(
        "shuffle separation",
        ok,
        f"metric wins {metric_wins}/100, distance wins {distance_wins}/100, "
        f"CI width {ci_width_8:.4f} -> {ci_width_32:.4f} as runs grow",
    )


def test_oracle_headline_sanity():
    """Transductive oracle accuracy is materially above chance."""
    correct = 0
    total = 0
    accuracies = []
    for run in range(30):
        model_0 = sample_experiment_model(7, child_seq(777, run, 0))
        model_d = sample_experiment_model(7, child_seq(777, run, 1))
        result = run_experiment_a(
            model_0, model_d, 1000.0, 500.0, child_seq(777, run, 2), dbar_iters=None
        )
        accuracies.append(result.outcome.y_x_u)
        n_items = len(result.data.eval_test)
        correct += round(result.outcome.y_x_u * n_items)
        total += n_items
    mean_accuracy = float(np.mean(accuracies))
    p_value = stats.binomtest(correct, total, 0.5, alternative="greater").pvalue
    ok = mean_accuracy > 0.55 and p_value < 0.01
    report(
        "oracle headline sanity",
        ok,
        f"mean accuracy {mean_accuracy:.4f} over 30 models, one-sided binomial p {p_value:.3g}",
    )


def test_degeneracy_gate():
    """Experiment datasets reject some triggers; all-excitatory models do not."""
    experiment_ok = True
    for run in range(50):
        model = sample_experiment_model(6, child_seq(60, run))
        triggers, accepted = generate_sequence(model, 500.0, child_seq(61, run))
        experiment_ok &= degeneracy_check(triggers, accepted)

    degenerate_detected = True
    for run in range(20):
        rng = as_generator(child_seq(62, run))
        theta = rng.uniform(0.0, 1.0, size=(5, 5))
        model = CausalModel(rng.uniform(0.5, 2.0, size=5), theta, 1.0)
        triggers, accepted = generate_sequence(model, 500.0, child_seq(63, run))
        degenerate_detected &= not degeneracy_check(triggers, accepted)
    ok = experiment_ok and degenerate_detected
    report(
        "degeneracy gate",
        ok,
        f"mixed-sign datasets pass: {experiment_ok}; all-nonnegative detected: {degenerate_detected}",
    )
