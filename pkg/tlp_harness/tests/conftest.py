"""Shared fixtures: datasets produced through the benchmark CLI only."""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]


def run_primary(*args):
    """Invoke the benchmark pipeline CLI in a subprocess."""
    result = subprocess.run(
        [sys.executable, "-m", "ctigbench.cli", *args],
        capture_output=True,
        text=True,
    )
    if result.returncode != 0:
        raise RuntimeError(f"primary CLI failed: {result.stderr}")
    return result.stdout.strip()


def export_dataset(out_dir, seed=6000, strength=0.6, horizon=600.0, dbar_iters=2):
    """Export one CTIG dataset through the primary CLI; returns its path."""
    config = Path(out_dir) / "config.yaml"
    config.write_text(
        "\n".join(
            [
                "experiment: export",
                f"seed: {seed}",
                "ctig_mode: true",
                "nodes: 7",
                "feature_dim: 7",
                "nu1: 0.35",
                f"ctig_seed: {seed}",
                f"horizon: {horizon}",
                "lambda_range: [0.4, 1.2]",
                f"dagger_strength: {strength}",
                f"dbar_iters: {dbar_iters}",
            ]
        )
        + "\n"
    )
    run_primary("export", "--config", str(config), "--out", str(out_dir))
    return Path(out_dir) / "dataset.csv"


@pytest.fixture(scope="session")
def exported_dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("export")
    return export_dataset(out)


def shuffled_copy(path, out_path, seed):
    """Rewrite test_cf as the test split with its timestamp groups permuted.

    A group is one positive plus the negatives sharing its timestamp; the
    multiset of group times is redistributed by a uniform permutation, so
    the evaluation-set structure is preserved while temporal order breaks.
    """
    lines = Path(path).read_text().splitlines()
    header = [l for l in lines if l.startswith("#")]
    rows = [l.split(",") for l in lines if l and not l.startswith("#")]
    keep = [r for r in rows if r[0] != "test_cf"]
    test_rows = [r for r in rows if r[0] == "test"]
    groups, current, current_t = [], [], None
    for r in test_rows:
        if current and r[4] != current_t:
            groups.append(current)
            current = []
        current.append(r)
        current_t = r[4]
    if current:
        groups.append(current)
    rng = np.random.default_rng(seed)
    times = [g[0][4] for g in groups]
    perm = rng.permutation(len(groups))
    shuffled = []
    for g_idx, t_idx in enumerate(perm):
        for r in groups[g_idx]:
            shuffled.append(["test_cf", r[1], r[2], r[3], times[t_idx], r[5]])
    shuffled.sort(key=lambda r: float(r[4]))
    body = [",".join(r) for r in keep] + [",".join(r) for r in shuffled]
    Path(out_path).write_text("\n".join(header + body) + "\n")
    return Path(out_path)
