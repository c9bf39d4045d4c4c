"""Edge-stream datasets.

Parses the benchmark's line-oriented dataset format (format_version 1):
a `#`-prefixed `key: value` header followed by rows

    split,event,src,dst,time,label

Only edge-event (`kind: ctig`) files are accepted here; every (src, dst)
pair is validated against the canonical pair index
idx = a*(2n-a-1)/2 + (b-a-1) for a < b.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


class DatasetError(ValueError):
    """Malformed or unsupported dataset file."""


SUPPORTED_FORMAT = "ces-dataset"
SUPPORTED_VERSION = 1
SPLITS = ("train", "test", "test_cf")


def edge_id(a: int, b: int, n: int) -> int:
    """Canonical index of the unordered node pair {a, b}."""
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise DatasetError(f"invalid node pair ({a}, {b}) for n={n}")
    if a > b:
        a, b = b, a
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


@dataclass(frozen=True)
class EdgeRecord:
    src: int
    dst: int
    time: float
    label: Optional[int]
    split: str
    event: int
    time_text: str  # verbatim timestamp, echoed into score files


@dataclass
class EdgeStream:
    """All records of one dataset plus its header metadata."""

    n_nodes: int
    n_types: int
    horizon: float
    tau_bar: float
    train_end: float
    sampling_mode: str
    d_bar: Optional[float]
    records: list

    def split(self, name: str) -> list:
        return [r for r in self.records if r.split == name]


def load_dataset(path) -> EdgeStream:
    """Parse and validate one dataset file into an edge stream."""
    meta: dict = {}
    records: list[EdgeRecord] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" not in body:
                    raise DatasetError(f"line {line_no}: malformed header")
                key, value = (p.strip() for p in body.split(":", 1))
                meta[key] = value
                continue
            parts = line.split(",")
            if len(parts) != 6:
                raise DatasetError(f"line {line_no}: expected 6 fields")
            split, event, src, dst, time_text, label = parts
            if split not in SPLITS:
                raise DatasetError(f"line {line_no}: unknown split {split!r}")
            if not src or not dst:
                raise DatasetError(
                    f"line {line_no}: missing src/dst (not an edge-event dataset?)"
                )
            records.append(
                EdgeRecord(
                    src=int(src),
                    dst=int(dst),
                    time=float(time_text),
                    label=int(label) if label else None,
                    split=split,
                    event=int(event),
                    time_text=time_text,
                )
            )

    if meta.get("format") != SUPPORTED_FORMAT:
        raise DatasetError(f"unsupported format {meta.get('format')!r}")
    try:
        version = int(meta.get("format_version", "-1"))
    except ValueError:
        raise DatasetError(f"malformed format_version {meta['format_version']!r}") from None
    if version != SUPPORTED_VERSION:
        raise DatasetError(f"format version {meta.get('format_version')!r} not supported")
    if meta.get("kind") != "ctig":
        raise DatasetError("this harness needs an edge-event (ctig) dataset")
    for key in ("n_types", "n_nodes", "horizon", "tau_bar", "train_end"):
        if key not in meta:
            raise DatasetError(f"missing required header key {key!r}")
    n_nodes = int(meta["n_nodes"])
    n_types = int(meta["n_types"])
    if n_types != n_nodes * (n_nodes - 1) // 2:
        raise DatasetError("n_types does not match the node count")

    last = {s: float("-inf") for s in SPLITS}
    for r in records:
        if edge_id(r.src, r.dst, n_nodes) != r.event:
            raise DatasetError(
                f"(src, dst) = ({r.src}, {r.dst}) inconsistent with event id {r.event}"
            )
        if r.time < last[r.split]:
            raise DatasetError(f"split {r.split} is not time-sorted")
        last[r.split] = r.time
        if (r.label is not None) != (r.split in ("test", "test_cf")):
            raise DatasetError("labels must appear exactly on evaluation splits")

    return EdgeStream(
        n_nodes=n_nodes,
        n_types=n_types,
        horizon=float(meta["horizon"]),
        tau_bar=float(meta["tau_bar"]),
        train_end=float(meta["train_end"]),
        sampling_mode=meta.get("sampling_mode", "transductive"),
        d_bar=float(meta["d_bar"]) if "d_bar" in meta else None,
        records=records,
    )
