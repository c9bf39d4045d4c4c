"""Command-line surface.

Subcommands mirror the pipeline stages: generate, ctig, distance,
variance-study, experiment-a, experiment-b, properties, export.  Every run
is a pure function of (config, seed): reports and datasets are
byte-identical across re-runs, and parallel execution only changes wall
time, never results.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import counterfactual as cf
from .causal_core import (
    AdjacencySpec,
    degeneracy_check,
    generate_sequence,
    sample_random_model,
)
from .config import EXPERIMENTS, RunConfig, parse_config, validate_config
from .ctig_builder import CtigSeeds, CtigSpec, EdgeSpace, build_ctig_model
from .datasets import export_dataset, import_scores
from .errors import CtigBenchError, ParameterError
from .model_distance import mean_distance, variance_decay_study
from .properties import (
    estimate_pns,
    interventional_pns_oracle,
    is_markovian,
    is_monotonic_closed_form,
    monotonicity_survey,
    structural_checks,
    verdict_to_dict,
)
from .reports import emit_report
from .seeding import child_seq
from .smoothing import lowess


def _adjacency(cfg: RunConfig) -> AdjacencySpec:
    if cfg.adjacency["kind"] == "identity":
        return AdjacencySpec.identity()
    return AdjacencySpec.erdos_renyi(cfg.adjacency["p"])


def _sample_model(cfg: RunConfig, seed):
    return sample_random_model(
        cfg.n, _adjacency(cfg), lambda_range=cfg.lambda_range, tau_bar=cfg.tau_bar, seed=seed
    )


def _experiment_model(cfg: RunConfig, seed):
    return cf.sample_experiment_model(
        cfg.n,
        seed,
        adjacency=_adjacency(cfg),
        lambda_range=cfg.lambda_range,
        tau_bar=cfg.tau_bar,
        min_rejection=cfg.min_rejection,
    )


def _model_pair(cfg: RunConfig, run_idx: int):
    """(true, distorted) models for one run: independent or perturbed."""
    model_0 = _experiment_model(cfg, child_seq(cfg.seed, run_idx, 0))
    if cfg.dagger_strength is None:
        model_dagger = _experiment_model(cfg, child_seq(cfg.seed, run_idx, 1))
    else:
        model_dagger = cf.perturb_model(
            model_0, cfg.dagger_strength, child_seq(cfg.seed, run_idx, 1)
        )
    return model_0, model_dagger


def _ctig_model_pair(cfg: RunConfig, run_idx: int):
    if cfg.ctig_seed is not None:
        construction_seed = cfg.ctig_seed
    else:
        construction_seed = int(child_seq(cfg.seed, run_idx, 0).generate_state(1)[0])
    spec = CtigSpec(
        n=cfg.nodes,
        r=cfg.feature_dim,
        nu0=cfg.nu0,
        nu1=cfg.nu1,
        l=cfg.noncausal,
        lambda_range=cfg.lambda_range,
        tau_bar=cfg.tau_bar,
        seeds=CtigSeeds.from_master(construction_seed),
    )
    model_0, _, _ = build_ctig_model(spec)
    strength = 0.5 if cfg.dagger_strength is None else cfg.dagger_strength
    model_dagger = cf.perturb_model(model_0, strength, child_seq(cfg.seed, run_idx, 1))
    return model_0, model_dagger, EdgeSpace(cfg.nodes)


def _pmap(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def cmd_generate(cfg: RunConfig) -> dict:
    model = _sample_model(cfg, child_seq(cfg.seed, 0))
    triggers, sequence = generate_sequence(model, cfg.horizon, child_seq(cfg.seed, 1))
    out = Path(cfg.out)
    export_dataset(
        {"train": sequence},
        {},
        out / "dataset.csv",
        tau_bar=cfg.tau_bar,
        train_end=cfg.horizon,
    )
    counts = np.bincount(sequence.types, minlength=model.n)
    results = {
        "config": cfg.to_dict(),
        "model": {
            "lambdas": model.lambdas,
            "theta": model.theta,
            "tau_bar": model.tau_bar,
        },
        "trigger_count": sum(len(s) for s in triggers),
        "accepted_count": len(sequence),
        "accepted_per_type": counts,
        "degeneracy_gate_passed": degeneracy_check(triggers, sequence),
        "dataset": "dataset.csv",
    }
    return emit_report(results, out)


def cmd_ctig(cfg: RunConfig) -> dict:
    spec = CtigSpec(
        n=cfg.nodes,
        r=cfg.feature_dim,
        nu0=cfg.nu0,
        nu1=cfg.nu1,
        l=cfg.noncausal,
        lambda_range=cfg.lambda_range,
        tau_bar=cfg.tau_bar,
        seeds=CtigSeeds.from_master(cfg.seed),
    )
    model, matrices, features = build_ctig_model(spec)
    edge_space = EdgeSpace(cfg.nodes)
    triggers, sequence = generate_sequence(model, cfg.horizon, child_seq(cfg.seed, 1))
    out = Path(cfg.out)
    export_dataset(
        {"train": sequence},
        {},
        out / "dataset.csv",
        edge_space=edge_space,
        tau_bar=cfg.tau_bar,
        train_end=cfg.horizon,
    )
    antisym = float(np.max(np.abs(matrices.theta_tilde + matrices.theta_tilde.T)))
    masked = int(np.sum(~matrices.mask.any(axis=1)))
    results = {
        "config": cfg.to_dict(),
        "edge_count": edge_space.size,
        "node_features": features,
        "influence": {
            "raw": matrices.raw,
            "thresholded": matrices.theta_tilde,
            "mask": matrices.mask,
            "theta": matrices.theta,
            "graph": matrices.graph,
        },
        "lambdas": model.lambdas,
        "checks": {
            "antisymmetry_defect": antisym,
            "masked_edges": masked,
            "nonzero_influences": int(np.count_nonzero(matrices.theta)),
        },
        "accepted_count": len(sequence),
        "degeneracy_gate_passed": degeneracy_check(triggers, sequence),
        "dataset": "dataset.csv",
    }
    return emit_report(results, out)


def cmd_distance(cfg: RunConfig) -> dict:
    model_a = _sample_model(cfg, child_seq(cfg.seed, 0))
    model_b = _sample_model(cfg, child_seq(cfg.seed, 1))
    estimate = mean_distance(model_a, model_b, cfg.horizon, cfg.iters, child_seq(cfg.seed, 2))
    results = {
        "config": cfg.to_dict(),
        "mean": estimate.mean,
        "variance": estimate.variance,
        "iters": estimate.iters,
        "horizon": estimate.horizon,
    }
    return emit_report(results, Path(cfg.out))


def cmd_variance_study(cfg: RunConfig) -> dict:
    def sampler(seed):
        return (
            _sample_model(cfg, child_seq(seed, 0)),
            _sample_model(cfg, child_seq(seed, 1)),
        )

    rows = variance_decay_study(sampler, cfg.grid, cfg.replications, cfg.seed)
    sizes = np.array([r["effective_size"] for r in rows])
    variances = np.array([r["variance"] for r in rows])
    slope = None
    if len(rows) >= 2 and np.all(variances > 0):
        slope = float(np.polyfit(np.log(sizes), np.log(variances), 1)[0])
    results = {
        "config": cfg.to_dict(),
        "rows": rows,
        "log_log_slope": slope,
    }
    tables = {
        "variance_decay": (
            ["effective_size", "horizon", "iters", "mean", "variance"],
            rows,
        )
    }
    return emit_report(results, Path(cfg.out), tables)


def _worker_experiment_a(args):
    cfg, run_idx = args
    if cfg.ctig_mode:
        model_0, model_dagger, _ = _ctig_model_pair(cfg, run_idx)
    else:
        model_0, model_dagger = _model_pair(cfg, run_idx)
    result = cf.run_experiment_a(
        model_0,
        model_dagger,
        cfg.horizon,
        cfg.resolved_tau_split(),
        child_seq(cfg.seed, run_idx, 2),
        metric_name=cfg.metric,
        k_negative=cfg.k_negative,
        dbar_iters=cfg.dbar_iters or None,
    )
    return result.outcome, result.gap


def cmd_experiment_a(cfg: RunConfig) -> dict:
    out = Path(cfg.out)
    if cfg.predictor == "external":
        return _experiment_a_external(cfg, out)

    pairs = _pmap(_worker_experiment_a, [(cfg, i) for i in range(cfg.runs)], cfg.resolved_threads())
    outcomes = [p[0] for p in pairs]
    gaps = [p[1] for p in pairs]
    rows = [
        {
            "run": i,
            "d_bar": g.d_bar,
            "delta": g.delta,
            "d_star_0": g.d_star_0,
            "d_star_dagger": g.d_star_dagger,
            "y_x": o.y_x_u,
            "y_xprime": o.y_xprime_u,
        }
        for i, (o, g) in enumerate(zip(outcomes, gaps))
    ]
    tables = {
        "gap_scatter": (
            ["run", "d_bar", "delta", "d_star_0", "d_star_dagger", "y_x", "y_xprime"],
            rows,
        )
    }
    if cfg.runs >= 3 and all(g.d_bar is not None for g in gaps):
        curve = lowess([(g.d_bar, g.delta) for g in gaps], fraction=0.95)
        tables["gap_lowess"] = (["d_bar", "delta_smoothed"], curve)
    deltas = [g.delta for g in gaps]
    results = {
        "config": cfg.to_dict(),
        "runs": cfg.runs,
        "mean_delta": float(np.mean(deltas)),
        "positive_gap_fraction": float(np.mean([d > 0 for d in deltas])),
        "mean_y_x": float(np.mean([o.y_x_u for o in outcomes])),
        "mean_y_xprime": float(np.mean([o.y_xprime_u for o in outcomes])),
    }
    return emit_report(results, out, tables)


def _experiment_a_external(cfg: RunConfig, out: Path) -> dict:
    if cfg.runs != 1:
        raise ParameterError("external predictor mode supports a single run")
    if cfg.ctig_mode:
        model_0, model_dagger, edge_space = _ctig_model_pair(cfg, 0)
    else:
        model_0, model_dagger = _model_pair(cfg, 0)
        edge_space = None
    tau_split = cfg.resolved_tau_split()
    data = cf.build_experiment_a_data(
        model_0, model_dagger, cfg.horizon, tau_split, child_seq(cfg.seed, 0, 2), cfg.k_negative
    )
    if cfg.scores_test is None or cfg.scores_cf is None:
        d_bar = None
        if cfg.dbar_iters:
            d_bar = mean_distance(
                model_0, model_dagger, cfg.horizon, cfg.dbar_iters, child_seq(cfg.seed, 0, 2, 4)
            ).mean
        path = export_dataset(
            {"train": data.train},
            {"test": data.eval_test, "test_cf": data.eval_cf},
            out / "dataset.csv",
            edge_space=edge_space,
            tau_bar=cfg.tau_bar,
            train_end=tau_split,
            d_bar=d_bar,
        )
        results = {
            "config": cfg.to_dict(),
            "status": "awaiting external scores",
            "dataset": path.name,
            "d_bar": d_bar,
            "eval_sizes": {"test": len(data.eval_test), "test_cf": len(data.eval_cf)},
        }
        return emit_report(results, out)

    scores_test = import_scores(cfg.scores_test, data.eval_test)
    scores_cf = import_scores(cfg.scores_cf, data.eval_cf)
    result = cf.run_experiment_a(
        model_0,
        model_dagger,
        cfg.horizon,
        tau_split,
        child_seq(cfg.seed, 0, 2),
        predictor="external",
        metric_name=cfg.metric,
        k_negative=cfg.k_negative,
        dbar_iters=cfg.dbar_iters or None,
        scores=(scores_test, scores_cf),
    )
    results = {
        "config": cfg.to_dict(),
        "y_x": result.outcome.y_x_u,
        "y_xprime": result.outcome.y_xprime_u,
        "delta": result.gap.delta,
        "d_bar": result.gap.d_bar,
        "metric": cfg.metric,
    }
    return emit_report(results, out)


def _worker_experiment_b(args):
    cfg, run_idx = args
    model_0 = _experiment_model(cfg, child_seq(cfg.seed, run_idx, 0))
    return cf.run_experiment_b(
        model_0,
        cfg.horizon,
        cfg.resolved_tau_split(),
        cfg.n_shuffles,
        child_seq(cfg.seed, run_idx, 1),
        k_negative=cfg.k_negative,
        metric_name=cfg.metric,
    )


def cmd_experiment_b(cfg: RunConfig) -> dict:
    out = Path(cfg.out)
    results_list = _pmap(
        _worker_experiment_b, [(cfg, i) for i in range(cfg.runs)], cfg.resolved_threads()
    )
    violin_rows = []
    distance_rows = []
    separated = 0
    distance_separated = 0
    for run_idx, res in enumerate(results_list):
        violin_rows.append({"run": run_idx, "test_set": "original", "metric": res.original_metric})
        for copy_idx, value in enumerate(res.shuffled_metrics):
            violin_rows.append(
                {"run": run_idx, "test_set": f"shuffled_{copy_idx}", "metric": value}
            )
        for copy_idx, dist in enumerate(res.shuffle_proxy_distances):
            distance_rows.append(
                {
                    "run": run_idx,
                    "copy": copy_idx,
                    "shuffle_distance": dist,
                    "original_distance": res.original_proxy_distance,
                }
            )
        if all(res.original_metric > v for v in res.shuffled_metrics):
            separated += 1
        if all(d > res.original_proxy_distance for d in res.shuffle_proxy_distances):
            distance_separated += 1

    pooled = [r["shuffle_distance"] for r in distance_rows]
    mean_d = float(np.mean(pooled))
    half = 1.96 * float(np.std(pooled, ddof=1)) / math.sqrt(len(pooled)) if len(pooled) > 1 else 0.0
    results = {
        "config": cfg.to_dict(),
        "runs": cfg.runs,
        "metric_separation_fraction": separated / cfg.runs,
        "distance_separation_fraction": distance_separated / cfg.runs,
        "shuffle_distance_mean": mean_d,
        "shuffle_distance_ci95": [mean_d - half, mean_d + half],
        "shuffle_distance_ci95_width": 2 * half,
        "shuffle_distance_definition": (
            "type-averaged |score - label| over the negative-sampled evaluation "
            "items, which stand in for the trigger set after the permutation"
        ),
    }
    tables = {
        "violin": (["run", "test_set", "metric"], violin_rows),
        "shuffle_distance": (
            ["run", "copy", "shuffle_distance", "original_distance"],
            distance_rows,
        ),
    }
    return emit_report(results, out, tables)


def cmd_properties(cfg: RunConfig) -> dict:
    model = _sample_model(cfg, child_seq(cfg.seed, 0))
    verdicts = structural_checks(model)
    survey = monotonicity_survey(model)
    pairs = [(i, int(j)) for i in range(model.n) for j in model.parents(i)]
    disagreements = [
        pair
        for pair, verdict in zip(pairs, survey)
        if is_monotonic_closed_form(model, *pair) != verdict.verdict
    ]

    pns = None
    i, j = cfg.pns_i, cfg.pns_j
    if i < model.n and j < model.n and model.theta[i, j] != 0.0:
        triggers, sequence = generate_sequence(model, cfg.pns_horizon, child_seq(cfg.seed, 1))
        estimate = estimate_pns(sequence, triggers[i], i, j, model.tau_bar)
        oracle = interventional_pns_oracle(model, i, j, cfg.pns_horizon, child_seq(cfg.seed, 1))
        pns = {
            "pair": [i, j],
            "monotone": is_monotonic_closed_form(model, i, j),
            "estimate": estimate.value,
            "count_active": estimate.count_active,
            "count_inactive": estimate.count_inactive,
            "interventional_oracle": oracle,
        }

    results = {
        "config": cfg.to_dict(),
        "markovian_support": is_markovian(model),
        "structural": [verdict_to_dict(v) for v in verdicts],
        "monotonicity": [verdict_to_dict(v) for v in survey],
        "closed_form_disagreements": disagreements,
        "pns": pns,
    }
    return emit_report(results, Path(cfg.out))


def cmd_export(cfg: RunConfig) -> dict:
    cfg_external = replace(cfg, predictor="external", scores_test=None, scores_cf=None)
    return _experiment_a_external(cfg_external, Path(cfg.out))


_COMMANDS = {
    "generate": cmd_generate,
    "ctig": cmd_ctig,
    "distance": cmd_distance,
    "variance-study": cmd_variance_study,
    "experiment-a": cmd_experiment_a,
    "experiment-b": cmd_experiment_b,
    "properties": cmd_properties,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctig-bench",
        description="Causal event-sequence and temporal-graph benchmark pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="YAML config file")
        p.add_argument("--seed", type=int, help="master seed (overrides config)")
        p.add_argument("--out", help="output directory (overrides config)")
        p.add_argument("--threads", type=int, help="worker processes (overrides config)")
    return parser


def load_run_config(command: str, args) -> RunConfig:
    if args.config:
        raw = parse_config(args.config).to_dict()
        if raw["experiment"] != command:
            raise ParameterError(
                f"config is for experiment {raw['experiment']!r}, invoked as {command!r}"
            )
    else:
        raw = {"experiment": command}
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.out is not None:
        raw["out"] = args.out
    if args.threads is not None:
        raw["threads"] = args.threads
    return validate_config(raw)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_run_config(args.command, args)
        paths = _COMMANDS[args.command](cfg)
    except CtigBenchError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(paths["report"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
