"""Homogeneous Poisson trigger streams on a finite horizon.

Each event type owns one stream of candidate firing times drawn from a
homogeneous Poisson point process.  Streams are merged into a single
time-sorted timeline before sequence generation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .seeding import as_generator


@dataclass(frozen=True)
class TriggerStream:
    """Candidate firing times of one event type.

    `times` is strictly increasing and contained in [0, horizon); the
    stream may be empty.
    """

    event_type: int
    times: np.ndarray
    horizon: float

    def __post_init__(self):
        times = np.ascontiguousarray(self.times, dtype=np.float64)
        object.__setattr__(self, "times", times)
        if self.horizon <= 0:
            raise ParameterError("horizon must be positive")
        if times.size:
            if times[0] < 0.0 or times[-1] >= self.horizon:
                raise ParameterError("trigger times must lie in [0, horizon)")
            if not np.all(np.diff(times) > 0.0):
                raise ParameterError("trigger times must be strictly increasing")

    def __len__(self) -> int:
        return int(self.times.size)


@dataclass(frozen=True)
class Timeline:
    """All trigger events merged into one time-sorted sequence.

    Sorted by time; ties are broken by ascending event type, which makes
    the merge deterministic and independent of input stream order.
    """

    types: np.ndarray
    times: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "types", np.ascontiguousarray(self.types, dtype=np.int64))
        object.__setattr__(self, "times", np.ascontiguousarray(self.times, dtype=np.float64))

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(int(i), float(t)) for i, t in zip(self.types, self.times)]

    def __len__(self) -> int:
        return int(self.times.size)


def sample_ppp(rate: float, horizon: float, seed, event_type: int = 0) -> TriggerStream:
    """Sample a homogeneous Poisson point process on [0, horizon).

    Points are generated as cumulative sums of i.i.d. Exp(rate)
    inter-arrival gaps.  If floating-point rounding ever collapses two
    consecutive points onto the same value, the offending gaps are redrawn
    until the stream is strictly increasing.

    Args:
        rate: process intensity, must be > 0.
        horizon: length of the observation window, must be > 0.
        seed: int, SeedSequence, or Generator.
        event_type: type index stored on the returned stream.
    """
    if not rate > 0:
        raise ParameterError(f"rate must be positive, got {rate}")
    if not horizon > 0:
        raise ParameterError(f"horizon must be positive, got {horizon}")
    rng = as_generator(seed)

    scale = 1.0 / rate
    chunks = []
    total = 0.0
    while total < horizon:
        remaining = horizon - total
        size = max(32, int(rate * remaining) + int(4 * np.sqrt(rate * remaining)) + 16)
        chunk = rng.exponential(scale, size=size)
        chunks.append(chunk)
        total += float(chunk.sum())
    gaps = np.concatenate(chunks)

    while True:
        times = np.cumsum(gaps)
        collapsed = np.flatnonzero(np.diff(times) <= 0.0) + 1
        if collapsed.size == 0:
            break
        gaps[collapsed] = rng.exponential(scale, size=collapsed.size)

    times = times[times < horizon]
    return TriggerStream(event_type=event_type, times=times, horizon=horizon)


def merge_timeline(streams) -> Timeline:
    """Merge trigger streams into one globally time-sorted timeline.

    The result is a permutation of the union of the inputs and does not
    depend on the order in which streams are passed.
    """
    streams = list(streams)
    if not streams:
        return Timeline(types=np.empty(0, dtype=np.int64), times=np.empty(0))
    types = np.concatenate([np.full(len(s), s.event_type, dtype=np.int64) for s in streams])
    times = np.concatenate([s.times for s in streams])
    order = np.lexsort((types, times))
    return Timeline(types=types[order], times=times[order])
