"""Causal model over typed event sequences.

A model is the triple (lambdas, theta, tau_bar): per-type Poisson trigger
intensities, an n-by-n matrix of inter-event causal influences in [-1, 1],
and a history window length.  A trigger of type i at time t is accepted iff

    sum_{j in parents(i)} theta[i, j] * x'_j(t)  >=  0,

where x'_j(t) indicates an accepted event of type j inside [t - tau_bar, t).
The empty sum is 0, so a type with no active parents fires whenever
triggered.  Acceptance decisions only ever read events strictly before t:
triggers are exogenous and the unrolled dependency graph is acyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numba
import numpy as np

from .errors import ContractViolationError, ParameterError
from .point_process import Timeline, TriggerStream, merge_timeline, sample_ppp
from .seeding import as_generator, child_seq


@dataclass(frozen=True)
class CausalModel:
    """Generative model: trigger intensities, influence matrix, window.

    theta[i, j] is the influence of past type-j events on type i;
    positive entries excite, negative entries inhibit.  The structural
    parents of i are exactly the nonzero columns of row i, so parent sets
    can never drift out of sync with theta.
    """

    lambdas: np.ndarray
    theta: np.ndarray
    tau_bar: float

    def __post_init__(self):
        lambdas = np.ascontiguousarray(self.lambdas, dtype=np.float64)
        theta = np.ascontiguousarray(self.theta, dtype=np.float64)
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "theta", theta)
        if lambdas.ndim != 1 or theta.shape != (lambdas.size, lambdas.size):
            raise ParameterError("theta must be n-by-n and lambdas length n")
        if not np.all(lambdas > 0):
            raise ParameterError("all trigger intensities must be positive")
        if np.any(np.abs(theta) > 1.0):
            raise ParameterError("influence entries must lie in [-1, 1]")
        if not self.tau_bar > 0:
            raise ParameterError("tau_bar must be positive")
        object.__setattr__(
            self, "_parents", tuple(np.flatnonzero(theta[i]) for i in range(lambdas.size))
        )

    @property
    def n(self) -> int:
        return int(self.lambdas.size)

    def parents(self, i: int) -> np.ndarray:
        """Structural parents of type i (ascending indices)."""
        return self._parents[i]


@dataclass(frozen=True)
class EventSequence:
    """Time-sorted typed events on [0, horizon).

    Stores parallel `types`/`times` arrays plus a per-type sorted index so
    window queries are logarithmic in the sequence length.
    """

    types: np.ndarray
    times: np.ndarray
    horizon: float
    n_types: int

    def __post_init__(self):
        types = np.ascontiguousarray(self.types, dtype=np.int64)
        times = np.ascontiguousarray(self.times, dtype=np.float64)
        object.__setattr__(self, "types", types)
        object.__setattr__(self, "times", times)
        if types.shape != times.shape or types.ndim != 1:
            raise ParameterError("types and times must be parallel 1-d arrays")
        if times.size and not np.all(np.diff(times) >= 0.0):
            raise ParameterError("events must be sorted by time")
        if times.size and (times[0] < 0.0 or times[-1] >= self.horizon):
            raise ParameterError("event times must lie in [0, horizon)")
        if types.size and (types.min() < 0 or types.max() >= self.n_types):
            raise ParameterError("event types must lie in [0, n_types)")
        by_type = [times[types == j] for j in range(self.n_types)]
        object.__setattr__(self, "_by_type", tuple(by_type))

    @classmethod
    def from_pairs(cls, pairs, horizon: float, n_types: int) -> "EventSequence":
        pairs = sorted(pairs, key=lambda p: (p[1], p[0]))
        types = np.array([p[0] for p in pairs], dtype=np.int64)
        times = np.array([p[1] for p in pairs], dtype=np.float64)
        return cls(types=types, times=times, horizon=horizon, n_types=n_types)

    @property
    def events(self) -> list[tuple[int, float]]:
        return [(int(i), float(t)) for i, t in zip(self.types, self.times)]

    def times_of(self, j: int) -> np.ndarray:
        """Sorted times of type-j events."""
        return self._by_type[j]

    def __len__(self) -> int:
        return int(self.times.size)


@dataclass(frozen=True)
class AdjacencySpec:
    """Recipe for the binary structural graph over event types."""

    kind: str
    p: Optional[float] = None
    matrix: Optional[np.ndarray] = None

    KINDS = ("erdos_renyi", "identity", "explicit")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ParameterError(f"unknown adjacency kind {self.kind!r}")
        if self.kind == "erdos_renyi":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ParameterError("erdos_renyi requires p in [0, 1]")
        if self.kind == "explicit":
            if self.matrix is None:
                raise ParameterError("explicit adjacency requires a matrix")
            m = np.asarray(self.matrix)
            if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.isin(m, (0, 1)).all():
                raise ParameterError("explicit adjacency must be a binary square matrix")
            object.__setattr__(self, "matrix", m.astype(np.int64))

    @classmethod
    def erdos_renyi(cls, p: float) -> "AdjacencySpec":
        return cls(kind="erdos_renyi", p=p)

    @classmethod
    def identity(cls) -> "AdjacencySpec":
        return cls(kind="identity")

    @classmethod
    def explicit(cls, matrix) -> "AdjacencySpec":
        return cls(kind="explicit", matrix=matrix)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "erdos_renyi":
            return (rng.random((n, n)) < self.p).astype(np.int64)
        if self.kind == "identity":
            return np.eye(n, dtype=np.int64)
        if self.matrix.shape[0] != n:
            raise ParameterError(f"explicit adjacency is {self.matrix.shape[0]}x..., expected n={n}")
        return self.matrix.copy()


def history_indicator(sequence: EventSequence, j: int, t: float, tau_bar: float) -> int:
    """1 iff an event of type j occurred inside the window [t - tau_bar, t).

    The window is closed on the left and open on the right, so an event at
    exactly t - tau_bar counts while one at exactly t does not.
    """
    times_j = sequence.times_of(j)
    lo = np.searchsorted(times_j, t - tau_bar, side="left")
    hi = np.searchsorted(times_j, t, side="left")
    return int(hi > lo)


def sem_eval(model: CausalModel, i: int, trigger: int, history_flags) -> int:
    """Evaluate the acceptance rule for a type-i trigger.

    `history_flags` must provide a 0/1 flag for every structural parent of
    i; a missing parent is a contract violation.  With no parents the sum
    is 0 and the trigger is accepted.
    """
    parents = model.parents(i)
    flags = []
    for j in parents:
        try:
            flags.append(history_flags[int(j)])
        except KeyError:
            raise ContractViolationError(
                f"missing history flag for structural parent {int(j)} of type {i}"
            ) from None
    if not trigger:
        return 0
    s = 0.0
    for j, flag in zip(parents, flags):
        if flag:
            s += model.theta[i, j]
    return int(s >= 0.0)


@numba.njit(cache=True)
def _scan_kernel(types, times, theta, tau_bar, force_target, force_parent, force_value):
    """Accept/reject every timeline entry in time order.

    Only the most recent accepted time per type is needed for the window
    indicator.  Entries sharing a timestamp are evaluated before any of
    them becomes visible, so simultaneous events never influence each
    other; `force_*` optionally pins one parent flag when evaluating one
    target type (-1 disables).
    """
    n = theta.shape[0]
    m = types.shape[0]
    last = np.full(n, -np.inf)
    accepted = np.zeros(m, dtype=np.bool_)
    k = 0
    while k < m:
        t = times[k]
        k2 = k + 1
        while k2 < m and times[k2] == t:
            k2 += 1
        for idx in range(k, k2):
            i = types[idx]
            s = 0.0
            for j in range(n):
                w = theta[i, j]
                if w != 0.0:
                    if i == force_target and j == force_parent:
                        active = force_value == 1
                    else:
                        active = last[j] >= t - tau_bar
                    if active:
                        s += w
            accepted[idx] = s >= 0.0
        for idx in range(k, k2):
            if accepted[idx]:
                last[types[idx]] = t
        k = k2
    return accepted


def scan_timeline(model: CausalModel, timeline: Timeline, force=None) -> np.ndarray:
    """Boolean acceptance mask for a merged trigger timeline.

    `force=(target_type, parent, value)` pins the parent's history flag to
    `value` whenever a trigger of `target_type` is evaluated, leaving the
    rest of the history evolution untouched.
    """
    if force is None:
        ft, fp, fv = -1, -1, -1
    else:
        ft, fp, fv = (int(x) for x in force)
    return _scan_kernel(timeline.types, timeline.times, model.theta, float(model.tau_bar), ft, fp, fv)


def sample_trigger_streams(model: CausalModel, horizon: float, seed) -> list[TriggerStream]:
    """One Poisson trigger stream per event type, deterministic per seed."""
    if not horizon > 0:
        raise ParameterError("horizon must be positive")
    return [
        sample_ppp(float(model.lambdas[i]), horizon, child_seq(seed, i), event_type=i)
        for i in range(model.n)
    ]


def generate_sequence(model: CausalModel, horizon: float, seed):
    """Generate a causal event sequence on [0, horizon).

    Samples per-type trigger streams, merges them into a timeline, and
    scans it in time order, accepting each trigger per the model's rule
    against the history of previously accepted events.  Returns
    (trigger streams, accepted sequence); the accepted sequence is always
    a subset of the triggers and the whole procedure is a pure function of
    (model, horizon, seed).
    """
    streams = sample_trigger_streams(model, horizon, seed)
    timeline = merge_timeline(streams)
    mask = scan_timeline(model, timeline)
    accepted = EventSequence(
        types=timeline.types[mask],
        times=timeline.times[mask],
        horizon=horizon,
        n_types=model.n,
    )
    return streams, accepted


def sample_random_model(
    n: int,
    adjacency: AdjacencySpec,
    lambda_range=(0.5, 2.0),
    tau_bar: float = 1.0,
    seed=0,
) -> CausalModel:
    """Draw a random model: graph, intensities, and influences.

    The adjacency is drawn per `adjacency`; intensities are i.i.d.
    Uniform(lo, hi); influences are Uniform[-1, 1] redrawn until nonzero
    wherever the graph has an edge and exactly zero elsewhere.
    """
    lo, hi = lambda_range
    if not (0 < lo <= hi):
        raise ParameterError(f"invalid lambda range ({lo}, {hi})")
    if n < 1:
        raise ParameterError("n must be at least 1")
    a_rng = as_generator(child_seq(seed, 0))
    lam_rng = as_generator(child_seq(seed, 1))
    theta_rng = as_generator(child_seq(seed, 2))

    graph = adjacency.sample(n, a_rng)
    lambdas = lam_rng.uniform(lo, hi, size=n)
    theta = np.zeros((n, n))
    edge_mask = graph == 1
    values = theta_rng.uniform(-1.0, 1.0, size=int(edge_mask.sum()))
    zero = values == 0.0
    while zero.any():
        values[zero] = theta_rng.uniform(-1.0, 1.0, size=int(zero.sum()))
        zero = values == 0.0
    theta[edge_mask] = values
    return CausalModel(lambdas=lambdas, theta=theta, tau_bar=tau_bar)


def degeneracy_check(triggers, accepted: EventSequence) -> bool:
    """True iff at least one trigger was rejected.

    A dataset where every trigger is accepted carries no causal signal
    (the acceptance rule never fired), so True is the passing verdict for
    this gate and False flags a degenerate dataset.
    """
    total = sum(len(s) for s in triggers)
    return total != len(accepted)
