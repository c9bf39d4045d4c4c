"""Dataset and score-file formats.

Datasets are line-oriented text: a `#`-prefixed header block of
`key: value` metadata followed by comma-separated rows

    split,event,src,dst,time,label

with split in {train, test, test_cf}, src/dst filled only for edge-event
(CTIG) datasets, labels filled only for evaluation splits, and timestamps
rendered with 9 significant digits.  Scores come back as `id,timestamp,score`
rows and are joined to the expected evaluation items by (id, rendered
timestamp), multiset-style so renders that collide are still matched by
multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .causal_core import EventSequence
from .counterfactual import EvaluationSet
from .ctig_builder import EdgeSpace
from .errors import DatasetFormatError, ParameterError

FORMAT_NAME = "ces-dataset"
FORMAT_VERSION = 1
SPLITS = ("train", "test", "test_cf")
EVAL_SPLITS = ("test", "test_cf")


def format_time(t: float) -> str:
    """Canonical textual timestamp: 9 significant digits."""
    return format(float(t), ".9g")


@dataclass(frozen=True)
class DatasetRow:
    split: str
    event: int
    src: Optional[int]
    dst: Optional[int]
    time: float
    label: Optional[int]


@dataclass(frozen=True)
class DatasetFile:
    """Parsed dataset: header metadata plus rows grouped by split."""

    kind: str
    n_types: int
    n_nodes: Optional[int]
    horizon: float
    tau_bar: float
    train_end: float
    sampling_mode: str
    d_bar: Optional[float]
    rows: list = field(default_factory=list)

    def split_rows(self, split: str) -> list:
        return [r for r in self.rows if r.split == split]


def export_dataset(
    sequences,
    eval_sets,
    path,
    edge_space: Optional[EdgeSpace] = None,
    tau_bar: float = 1.0,
    train_end: float = 0.0,
    sampling_mode: str = "transductive",
    d_bar: Optional[float] = None,
) -> Path:
    """Write sequences (unlabeled) and evaluation sets (labeled) to disk.

    `sequences` maps split names to EventSequence, `eval_sets` maps split
    names to EvaluationSet; splits must come from the documented set.
    Output is deterministic for fixed inputs.
    """
    sequences = dict(sequences)
    eval_sets = dict(eval_sets)
    for name in list(sequences) + list(eval_sets):
        if name not in SPLITS:
            raise ParameterError(f"unknown split {name!r}")
    for name in eval_sets:
        if name not in EVAL_SPLITS:
            raise ParameterError(f"labels are only allowed on evaluation splits, not {name!r}")

    if not sequences and not eval_sets:
        raise ParameterError("nothing to export")
    if sequences:
        n_types = next(iter(sequences.values())).n_types
        horizon = next(iter(sequences.values())).horizon
    else:
        first = next(iter(eval_sets.values()))
        n_types = int(first.types.max()) + 1 if len(first) else 2
        horizon = first.window[1]

    kind = "ctig" if edge_space is not None else "event"
    if edge_space is not None and edge_space.size != n_types:
        raise ParameterError("edge space size does not match the type universe")

    def row_fields(split, event, time, label):
        if edge_space is not None:
            src, dst = edge_space.pair(int(event))
            src, dst = str(src), str(dst)
        else:
            src = dst = ""
        lab = "" if label is None else str(int(label))
        return f"{split},{int(event)},{src},{dst},{format_time(time)},{lab}"

    lines = [
        f"# format: {FORMAT_NAME}",
        f"# format_version: {FORMAT_VERSION}",
        f"# kind: {kind}",
        f"# n_types: {n_types}",
    ]
    if edge_space is not None:
        lines.append(f"# n_nodes: {edge_space.n}")
    lines += [
        f"# horizon: {format_time(horizon)}",
        f"# tau_bar: {format_time(tau_bar)}",
        f"# train_end: {format_time(train_end)}",
        f"# sampling_mode: {sampling_mode}",
    ]
    if d_bar is not None:
        lines.append(f"# d_bar: {d_bar!r}")
    lines.append("# columns: split,event,src,dst,time,label")

    for split in SPLITS:
        if split in sequences:
            seq = sequences[split]
            for i, t in zip(seq.types, seq.times):
                lines.append(row_fields(split, i, t, None))
        if split in eval_sets:
            ev = eval_sets[split]
            for i, t, y in zip(ev.types, ev.times, ev.labels):
                lines.append(row_fields(split, i, t, int(y)))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


_HEADER_KEYS = {
    "format",
    "format_version",
    "kind",
    "n_types",
    "n_nodes",
    "horizon",
    "tau_bar",
    "train_end",
    "sampling_mode",
    "d_bar",
    "columns",
}


def read_dataset(path) -> DatasetFile:
    """Parse and validate a dataset file.

    Checks the header, the split names, per-split time ordering, the
    label/split rules, and (for CTIG files) that every (src, dst) pair is
    consistent with the canonical edge indexing.
    """
    meta: dict = {}
    rows: list[DatasetRow] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" not in body:
                    raise DatasetFormatError(f"line {line_no}: malformed header line")
                key, value = (part.strip() for part in body.split(":", 1))
                if key not in _HEADER_KEYS:
                    raise DatasetFormatError(f"line {line_no}: unknown header key {key!r}")
                meta[key] = value
                continue
            parts = line.split(",")
            if len(parts) != 6:
                raise DatasetFormatError(f"line {line_no}: expected 6 fields, got {len(parts)}")
            split, event, src, dst, time, label = parts
            if split not in SPLITS:
                raise DatasetFormatError(f"line {line_no}: unknown split {split!r}")
            rows.append(
                DatasetRow(
                    split=split,
                    event=int(event),
                    src=int(src) if src else None,
                    dst=int(dst) if dst else None,
                    time=float(time),
                    label=int(label) if label else None,
                )
            )

    if meta.get("format") != FORMAT_NAME:
        raise DatasetFormatError(f"not a {FORMAT_NAME} file")
    for key in ("format_version", "n_types", "horizon", "tau_bar", "train_end"):
        if key not in meta:
            raise DatasetFormatError(f"missing required header key {key!r}")
    try:
        version = int(meta["format_version"])
        n_types = int(meta["n_types"])
        n_nodes = int(meta["n_nodes"]) if "n_nodes" in meta else None
    except ValueError as err:
        raise DatasetFormatError(f"malformed header value: {err}") from None
    if version != FORMAT_VERSION:
        raise DatasetFormatError(
            f"format version {version} is not supported (expected {FORMAT_VERSION})"
        )
    kind = meta.get("kind")
    if kind not in ("event", "ctig"):
        raise DatasetFormatError(f"unknown dataset kind {kind!r}")
    if kind == "ctig" and n_nodes is None:
        raise DatasetFormatError("ctig datasets must declare n_nodes")

    edge_space = EdgeSpace(n_nodes) if kind == "ctig" else None
    last_time = {split: -np.inf for split in SPLITS}
    for row in rows:
        if row.time < last_time[row.split]:
            raise DatasetFormatError(f"split {row.split} is not time-sorted")
        last_time[row.split] = row.time
        if (row.label is not None) != (row.split in EVAL_SPLITS):
            raise DatasetFormatError(
                f"labels must be present exactly on evaluation splits (split {row.split})"
            )
        if kind == "ctig":
            if row.src is None or row.dst is None:
                raise DatasetFormatError("ctig rows must carry src and dst")
            if edge_space.index(row.src, row.dst) != row.event:
                raise DatasetFormatError(
                    f"(src, dst) = ({row.src}, {row.dst}) is inconsistent with event id {row.event}"
                )
        elif row.src is not None or row.dst is not None:
            raise DatasetFormatError("event datasets must not carry src/dst")
        if not 0 <= row.event < n_types:
            raise DatasetFormatError(f"event id {row.event} outside [0, {n_types})")

    return DatasetFile(
        kind=kind,
        n_types=n_types,
        n_nodes=n_nodes,
        horizon=float(meta["horizon"]),
        tau_bar=float(meta["tau_bar"]),
        train_end=float(meta["train_end"]),
        sampling_mode=meta.get("sampling_mode", "transductive"),
        d_bar=float(meta["d_bar"]) if "d_bar" in meta else None,
        rows=rows,
    )


def dataset_split_to_sequence(data: DatasetFile, split: str) -> EventSequence:
    """Positives of a split as an EventSequence (labels 1 or unlabeled)."""
    rows = [r for r in data.split_rows(split) if r.label is None or r.label == 1]
    types = np.array([r.event for r in rows], dtype=np.int64)
    times = np.array([r.time for r in rows], dtype=np.float64)
    return EventSequence(types=types, times=times, horizon=data.horizon, n_types=data.n_types)


def write_scores(path, eval_set: EvaluationSet, scores) -> Path:
    """Write the `id,timestamp,score` return file for an evaluation set."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.shape != (len(eval_set),):
        raise ParameterError("one score per evaluation item is required")
    lines = ["# columns: id,timestamp,score"]
    for i, t, s in zip(eval_set.types, eval_set.times, scores):
        lines.append(f"{int(i)},{format_time(t)},{float(s)!r}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def import_scores(path, expected: EvaluationSet) -> np.ndarray:
    """Read a scores file and align it to an evaluation set.

    Rows are joined on (id, rendered timestamp); row order in the file is
    irrelevant.  Keys that render identically are matched by multiplicity
    in file order.  Missing keys, surplus keys, duplicate rows beyond the
    expected multiplicity, and scores outside [0, 1] are all rejected.
    """
    by_key: dict = {}
    count = 0
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise DatasetFormatError(f"line {line_no}: expected id,timestamp,score")
            event = int(parts[0])
            key = (event, format_time(float(parts[1])))
            score = float(parts[2])
            if not 0.0 <= score <= 1.0:
                raise DatasetFormatError(
                    f"line {line_no}: score {score} outside [0, 1] for {key}"
                )
            by_key.setdefault(key, []).append(score)
            count += 1

    expected_keys = [
        (int(i), format_time(t)) for i, t in zip(expected.types, expected.times)
    ]
    out = np.empty(len(expected))
    cursor: dict = {}
    for pos, key in enumerate(expected_keys):
        scores = by_key.get(key)
        used = cursor.get(key, 0)
        if scores is None or used >= len(scores):
            raise DatasetFormatError(
                f"missing score for id={key[0]}, timestamp={key[1]} "
                f"(file has {count} rows, expected {len(expected)})"
            )
        out[pos] = scores[used]
        cursor[key] = used + 1
    for key, scores in by_key.items():
        if cursor.get(key, 0) != len(scores):
            raise DatasetFormatError(
                f"unmatched or duplicate score row for id={key[0]}, timestamp={key[1]} "
                f"(file has {count} rows, expected {len(expected)})"
            )
    return out
