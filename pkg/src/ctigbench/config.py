"""Run configuration: schema, defaults, validation.

Configs are YAML (JSON also parses).  Validation is strict: unknown keys,
type mismatches, and constraint violations are all collected and reported
together, each naming its key path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, asdict
from typing import Optional

import yaml

from .errors import ConfigError

EXPERIMENTS = (
    "generate",
    "ctig",
    "distance",
    "variance-study",
    "experiment-a",
    "experiment-b",
    "properties",
    "export",
)

THREADS_ENV_VAR = "CTIGBENCH_THREADS"


@dataclass
class RunConfig:
    """Fully resolved parameters of one CLI run."""

    experiment: str
    seed: int = 0
    out: str = "out"
    threads: int = 0  # 0 -> resolve from environment, default 1

    # model sampling
    n: int = 7
    horizon: float = 1000.0
    tau_bar: float = 1.0
    lambda_range: tuple = (0.5, 2.0)
    adjacency: dict = field(default_factory=lambda: {"kind": "erdos_renyi", "p": 0.5})
    min_rejection: float = 0.05

    # CTIG construction
    nodes: int = 5
    feature_dim: int = 5
    nu0: float = 100.0
    nu1: float = 0.55
    noncausal: int = 2
    ctig_seed: Optional[int] = None  # pin the construction; default derives from seed

    # distance / variance study
    iters: int = 32
    replications: int = 100
    grid: list = field(default_factory=lambda: [[250.0, 10], [250.0, 40], [250.0, 160]])

    # counterfactual experiments
    runs: int = 1
    tau_split: Optional[float] = None  # default horizon / 2
    n_shuffles: int = 10
    k_negative: int = 1
    metric: str = "accuracy"
    predictor: str = "oracle"
    dagger_strength: Optional[float] = None  # None -> independent distorted model
    dbar_iters: int = 32
    scores_test: Optional[str] = None
    scores_cf: Optional[str] = None
    ctig_mode: bool = False

    # properties
    pns_i: int = 0
    pns_j: int = 1
    pns_horizon: float = 10000.0

    def resolved_threads(self) -> int:
        if self.threads > 0:
            return self.threads
        env = os.environ.get(THREADS_ENV_VAR, "")
        return int(env) if env.isdigit() and int(env) > 0 else 1

    def resolved_tau_split(self) -> float:
        return self.horizon / 2.0 if self.tau_split is None else self.tau_split

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda_range"] = list(self.lambda_range)
        return d


def _check_number(errors, raw, key, kind=float, lo=None, hi=None, lo_open=False, hi_open=False):
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f"{key}: expected a number, got {type(value).__name__}")
        return None
    value = kind(value)
    if kind is int and value != raw[key]:
        errors.append(f"{key}: expected an integer, got {raw[key]}")
        return None
    if lo is not None and (value <= lo if lo_open else value < lo):
        errors.append(f"{key}: must be {'>' if lo_open else '>='} {lo}, got {value}")
        return None
    if hi is not None and (value >= hi if hi_open else value > hi):
        errors.append(f"{key}: must be {'<' if hi_open else '<='} {hi}, got {value}")
        return None
    return value


_NUMERIC_FIELDS = {
    # key: (kind, lo, hi, lo_open, hi_open)
    "seed": (int, 0, None, False, False),
    "threads": (int, 0, None, False, False),
    "n": (int, 1, None, False, False),
    "horizon": (float, 0, None, True, False),
    "tau_bar": (float, 0, None, True, False),
    "min_rejection": (float, 0, 1, False, False),
    "nodes": (int, 2, None, False, False),
    "feature_dim": (int, 1, None, False, False),
    "nu0": (float, None, None, False, False),
    "nu1": (float, 0, 1, True, True),
    "noncausal": (int, 0, None, False, False),
    "ctig_seed": (int, 0, None, False, False),
    "iters": (int, 1, None, False, False),
    "replications": (int, 1, None, False, False),
    "runs": (int, 1, None, False, False),
    "tau_split": (float, 0, None, True, False),
    "n_shuffles": (int, 1, None, False, False),
    "k_negative": (int, 1, None, False, False),
    "dagger_strength": (float, 0, 1, False, False),
    "dbar_iters": (int, 0, None, False, False),
    "pns_i": (int, 0, None, False, False),
    "pns_j": (int, 0, None, False, False),
    "pns_horizon": (float, 0, None, True, False),
}

_STRING_FIELDS = {
    "out": None,
    "metric": ("accuracy", "average_precision", "auc"),
    "predictor": ("oracle", "external"),
    "scores_test": None,
    "scores_cf": None,
}

_OPTIONAL_NUMERIC = {"tau_split", "dagger_strength"}


def validate_config(raw: dict) -> RunConfig:
    """Validate a raw mapping into a RunConfig, collecting every error."""
    errors: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(["config root must be a mapping"])
    raw = dict(raw)

    known = set(RunConfig.__dataclass_fields__)
    for key in sorted(set(raw) - known):
        errors.append(f"{key}: unknown key")

    experiment = raw.get("experiment")
    if experiment is None:
        errors.append("experiment: required key is missing")
    elif experiment not in EXPERIMENTS:
        errors.append(f"experiment: must be one of {', '.join(EXPERIMENTS)}; got {experiment!r}")

    values: dict = {}
    for key, (kind, lo, hi, lo_open, hi_open) in _NUMERIC_FIELDS.items():
        if key not in raw or raw[key] is None:
            continue
        value = _check_number(errors, raw, key, kind, lo, hi, lo_open, hi_open)
        if value is not None:
            values[key] = value

    for key, allowed in _STRING_FIELDS.items():
        if key not in raw or raw[key] is None:
            continue
        value = raw[key]
        if not isinstance(value, str):
            errors.append(f"{key}: expected a string, got {type(value).__name__}")
        elif allowed is not None and value not in allowed:
            errors.append(f"{key}: must be one of {', '.join(allowed)}; got {value!r}")
        else:
            values[key] = value

    if "ctig_mode" in raw and raw["ctig_mode"] is not None:
        if not isinstance(raw["ctig_mode"], bool):
            errors.append("ctig_mode: expected a boolean")
        else:
            values["ctig_mode"] = raw["ctig_mode"]

    if "lambda_range" in raw and raw["lambda_range"] is not None:
        lr = raw["lambda_range"]
        if (
            not isinstance(lr, (list, tuple))
            or len(lr) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in lr)
        ):
            errors.append("lambda_range: expected [lo, hi] numbers")
        elif not 0 < lr[0] <= lr[1]:
            errors.append(f"lambda_range: need 0 < lo <= hi, got {lr}")
        else:
            values["lambda_range"] = (float(lr[0]), float(lr[1]))

    if "adjacency" in raw and raw["adjacency"] is not None:
        adj = raw["adjacency"]
        if not isinstance(adj, dict) or "kind" not in adj:
            errors.append("adjacency: expected a mapping with a 'kind' key")
        elif adj["kind"] not in ("erdos_renyi", "identity"):
            errors.append(f"adjacency.kind: must be erdos_renyi or identity, got {adj.get('kind')!r}")
        elif adj["kind"] == "erdos_renyi":
            extra = set(adj) - {"kind", "p"}
            if extra:
                errors.append(f"adjacency.{sorted(extra)[0]}: unknown key")
            p = adj.get("p")
            if not isinstance(p, (int, float)) or isinstance(p, bool) or not 0 <= p <= 1:
                errors.append(f"adjacency.p: must be a number in [0, 1], got {p!r}")
            else:
                values["adjacency"] = {"kind": "erdos_renyi", "p": float(p)}
        else:
            extra = set(adj) - {"kind"}
            if extra:
                errors.append(f"adjacency.{sorted(extra)[0]}: unknown key")
            else:
                values["adjacency"] = {"kind": "identity"}

    if "grid" in raw and raw["grid"] is not None:
        grid = raw["grid"]
        ok = isinstance(grid, list) and len(grid) > 0
        if ok:
            for cell in grid:
                if (
                    not isinstance(cell, (list, tuple))
                    or len(cell) != 2
                    or not isinstance(cell[0], (int, float))
                    or not isinstance(cell[1], int)
                    or cell[0] <= 0
                    or cell[1] < 1
                ):
                    ok = False
                    break
        if not ok:
            errors.append("grid: expected a nonempty list of [horizon, iters] cells")
        else:
            values["grid"] = [[float(c[0]), int(c[1])] for c in grid]

    if errors:
        raise ConfigError(sorted(errors))
    return RunConfig(experiment=experiment, **values)


def parse_config(path: str) -> RunConfig:
    """Load and validate a YAML/JSON config file."""
    with open(path, "r", encoding="utf-8") as handle:
        raw = yaml.safe_load(handle)
    if raw is None:
        raw = {}
    return validate_config(raw)
