"""Executable checks of the model's structural guarantees.

Covers: monotonicity of an effect in one parent (closed form and exhaustive
subset enumeration), the diagonal-support condition sufficient for a
Markovian model, acyclicity/exogeneity of the unrolled dependency graph,
and estimation of the probability of necessity and sufficiency with an
independent interventional simulation as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .causal_core import (
    CausalModel,
    EventSequence,
    sample_trigger_streams,
    scan_timeline,
)
from .errors import CapacityError, EstimationError, ParameterError
from .point_process import TriggerStream, merge_timeline


@dataclass(frozen=True)
class PropertyVerdict:
    """Outcome of one structural check.

    A false verdict of a decidable check always carries a witness (for
    monotonicity: the violating subset of co-parents).
    """

    property_name: str
    subject: str
    verdict: bool
    witness: Optional[tuple] = None


def is_monotonic_closed_form(model: CausalModel, i: int, j: int) -> bool:
    """Effect i is monotone in parent j exactly when the influence is >= 0."""
    if j not in model.parents(i):
        raise ParameterError(f"{j} is not a structural parent of {i}")
    return bool(0.0 <= model.theta[i, j] <= 1.0)


def is_monotonic_bruteforce(model: CausalModel, i: int, j: int, cap: int = 20) -> PropertyVerdict:
    """Exhaustive monotonicity check over all co-parent subsets.

    Monotonicity fails iff some subset C of the other parents satisfies
    theta[i, j] + sum(C) < 0 while sum(C) >= 0: forcing the parent on
    would then block an otherwise-firing effect.  Enumerates all 2^|C|
    subsets via incremental subset sums, so |parents(i)| is capped.
    """
    parents = model.parents(i)
    if j not in parents:
        raise ParameterError(f"{j} is not a structural parent of {i}")
    if parents.size > cap:
        raise CapacityError(f"{parents.size} parents exceed the enumeration cap {cap}")
    others = [int(k) for k in parents if k != j]

    sums = np.zeros(1)
    for k in others:
        sums = np.concatenate([sums, sums + model.theta[i, k]])
    violating = (model.theta[i, j] + sums < 0.0) & (sums >= 0.0)
    hits = np.flatnonzero(violating)
    subject = f"theta[{i},{j}]={model.theta[i, j]:+.4f}"
    if hits.size == 0:
        return PropertyVerdict("monotonic", subject, True)
    first = int(hits[0])
    witness = tuple(others[b] for b in range(len(others)) if (first >> b) & 1)
    return PropertyVerdict("monotonic", subject, False, witness=witness)


def is_markovian(model: CausalModel) -> bool:
    """True iff the influence support is contained in the diagonal.

    This is the sufficient condition (each type only ever influences
    itself); it does not decide Markovianity for other supports.
    """
    off_diagonal = model.theta[~np.eye(model.n, dtype=bool)]
    return bool(np.all(off_diagonal == 0.0))


def structural_checks(model: CausalModel) -> list[PropertyVerdict]:
    """Acyclicity and exogeneity of the unrolled dependency graph.

    Materializes the per-instant graph (trigger nodes and history
    indicators pointing into event nodes) and verifies that every edge
    terminates in the event layer and that no source node has incoming
    edges.  Both hold by construction; the checks exist to pin the
    representation against regressions.
    """
    edges = [(("trigger", i), ("event", i)) for i in range(model.n)]
    for i in range(model.n):
        for j in model.parents(i):
            edges.append((("history", int(j)), ("event", i)))

    into_sources = [e for e in edges if e[1][0] != "event"]
    acyclic = PropertyVerdict(
        property_name="acyclic_unrolled_graph",
        subject=f"{len(edges)} edges over {model.n} types",
        verdict=not into_sources,
        witness=tuple(into_sources) or None,
    )
    out_of_events = [e for e in edges if e[0][0] == "event"]
    exogenous = PropertyVerdict(
        property_name="exogenous_history_inputs",
        subject=f"{model.n} trigger and history nodes",
        verdict=not out_of_events and not into_sources,
        witness=tuple(out_of_events + into_sources) or None,
    )
    return [acyclic, exogenous]


@dataclass(frozen=True)
class PnsEstimate:
    """Observational estimate with its conditioning-cell counts."""

    value: float
    count_active: int
    count_inactive: int

    def __float__(self) -> float:
        return self.value


def estimate_pns(
    sequence: EventSequence,
    triggers: TriggerStream,
    i: int,
    j: int,
    tau_bar: float,
) -> PnsEstimate:
    """Observational difference of firing rates given parent j active/inactive.

    Conditions on the trigger times of type i, the only times the effect
    can fire: value = P(fired | parent active) - P(fired | parent inactive).
    Valid as the probability of necessity and sufficiency only when the
    effect is monotone in the parent; an empty conditioning cell is an
    estimation error naming the cell.
    """
    times = triggers.times
    if times.size == 0:
        raise EstimationError("trigger stream is empty")
    accepted_i = sequence.times_of(i)
    idx = np.searchsorted(accepted_i, times, side="left")
    hit = idx < accepted_i.size
    fired = np.zeros(times.size, dtype=bool)
    fired[hit] = accepted_i[idx[hit]] == times[hit]

    history_j = sequence.times_of(j)
    hi = np.searchsorted(history_j, times, side="left")
    lo = np.searchsorted(history_j, times - tau_bar, side="left")
    active = hi > lo

    n_active = int(active.sum())
    n_inactive = int(times.size - n_active)
    if n_active == 0:
        raise EstimationError("conditioning cell 'parent active' is empty")
    if n_inactive == 0:
        raise EstimationError("conditioning cell 'parent inactive' is empty")
    p_active = float(fired[active].mean())
    p_inactive = float(fired[~active].mean())
    return PnsEstimate(
        value=p_active - p_inactive,
        count_active=n_active,
        count_inactive=n_inactive,
    )


def interventional_pns_oracle(model: CausalModel, i: int, j: int, horizon: float, seed) -> float:
    """Ground-truth causal effect of the parent flag by forced simulation.

    Runs two paired simulations over the same trigger streams: at every
    type-i trigger the flag of parent j is pinned to 1 (resp. 0) while all
    other flags are read from the evolving history.  Returns the
    difference of type-i acceptance frequencies between the two runs.
    """
    streams = sample_trigger_streams(model, horizon, seed)
    timeline = merge_timeline(streams)
    of_type = timeline.types == i
    if not of_type.any():
        raise EstimationError(f"no triggers of type {i} in the horizon")
    forced_on = scan_timeline(model, timeline, force=(i, j, 1))
    forced_off = scan_timeline(model, timeline, force=(i, j, 0))
    p_on = float(forced_on[of_type].mean())
    p_off = float(forced_off[of_type].mean())
    return p_on - p_off


def monotonicity_survey(model: CausalModel, cap: int = 20) -> list[PropertyVerdict]:
    """Brute-force verdict for every structural (effect, parent) pair."""
    out = []
    for i in range(model.n):
        for j in model.parents(i):
            out.append(is_monotonic_bruteforce(model, i, int(j), cap=cap))
    return out


def verdict_to_dict(verdict: PropertyVerdict) -> dict:
    """Plain-dict form for the results report."""
    return {
        "property": verdict.property_name,
        "subject": verdict.subject,
        "verdict": bool(verdict.verdict),
        "witness": None if verdict.witness is None else list(map(str, verdict.witness)),
    }
