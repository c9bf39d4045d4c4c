"""Desk-scale temporal link prediction baselines.

Two predictors behind one small interface (`score`, `observe`, snapshot /
restore): a non-learned recency heuristic and a learned per-node
memory-embedding model.  Both are deterministic per seed and only ever see
events strictly before the query time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import EdgeStream


@dataclass
class Hyperparams:
    lr: float = 0.05
    epochs: int = 10
    memory_decay: float = 0.7   # time constant of the dynamic memory
    infusion: float = 1.0       # weight a partner event adds to the context channel
    recency_decay: float = 0.7  # window-scale by default: favors temporal signal
    max_memory_norm: float = 8.0


def _sigmoid(logit: float) -> float:
    return 1.0 / (1.0 + math.exp(-max(-30.0, min(30.0, logit))))


class RecencyPredictor:
    """Recency-decayed co-occurrence count of each edge, squashed to [0, 1).

    Each observation adds 1 to the edge's intensity; intensity decays
    exponentially between events.  Never-seen edges score exactly 0.
    """

    def __init__(self, decay: float = 2.0):
        self.decay = decay
        self.intensity: dict = {}
        self.last_observed = float("-inf")
        self._trained_state = None

    def _decayed(self, key, t: float) -> float:
        if key not in self.intensity:
            return 0.0
        value, since = self.intensity[key]
        return value * math.exp(-(t - since) / self.decay)

    def score(self, src: int, dst: int, t: float) -> float:
        x = self._decayed((min(src, dst), max(src, dst)), t)
        return x / (1.0 + x)

    def observe(self, src: int, dst: int, t: float) -> None:
        key = (min(src, dst), max(src, dst))
        self.intensity[key] = (self._decayed(key, t) + 1.0, t)
        self.last_observed = t

    def snapshot(self):
        return (dict(self.intensity), self.last_observed)

    def restore(self, state) -> None:
        intensity, last = state
        self.intensity = dict(intensity)
        self.last_observed = last

    def mark_trained(self) -> None:
        self._trained_state = self.snapshot()

    def restore_trained(self) -> None:
        self.restore(self._trained_state)


class MemoryEmbeddingPredictor:
    """Learned node embeddings plus an event-driven context memory.

    Each node carries a memory of width n_nodes: a learned base embedding
    plus a dynamic part that decays exponentially since the node's last
    event and, on each interaction, accumulates weight on the partner's
    channel.  An edge (u, v) is scored by the sigmoid of the memories' dot
    product plus a learned bias, so the cross terms base[u] . dynamic[v]
    act as learned responses to "which edges adjacent to v fired
    recently".  Training is chronological logistic regression against
    per-event negative edges drawn from the other observed training edges
    (matching the transductive evaluation protocol), with the dynamic
    memory treated as a fixed input to each step.
    """

    def __init__(self, n_nodes: int, params: Hyperparams, seed: int):
        self.params = params
        self.n_nodes = n_nodes
        rng = np.random.default_rng(seed)
        self.base = rng.normal(0.0, 0.1, size=(n_nodes, n_nodes))
        self.bias = 0.0
        self.dyn = np.zeros((n_nodes, n_nodes))
        self.last = np.full(n_nodes, -np.inf)
        self.last_observed = float("-inf")
        self._train_rng = np.random.default_rng(seed + 1)
        self._trained_state = None

    def _memory(self, v: int, t: float) -> np.ndarray:
        if self.last[v] == -np.inf:
            return self.base[v]
        fade = math.exp(-(t - self.last[v]) / self.params.memory_decay)
        return self.base[v] + self.dyn[v] * fade

    def score(self, src: int, dst: int, t: float) -> float:
        logit = float(self._memory(src, t) @ self._memory(dst, t)) + self.bias
        return _sigmoid(logit)

    def observe(self, src: int, dst: int, t: float) -> None:
        cap = self.params.max_memory_norm
        for node, partner in ((src, dst), (dst, src)):
            update = self._memory(node, t) - self.base[node]
            update[partner] += self.params.infusion
            norm = float(np.linalg.norm(update))
            if norm > cap:
                update = update * (cap / norm)
            self.dyn[node] = update
            self.last[node] = t
        self.last_observed = t

    def _sgd_step(self, src: int, dst: int, neg_pair, t: float) -> None:
        lr = self.params.lr
        neg_src, neg_dst = neg_pair
        m_src = self._memory(src, t)
        m_dst = self._memory(dst, t)
        m_neg_src = self._memory(neg_src, t)
        m_neg_dst = self._memory(neg_dst, t)
        p_pos = _sigmoid(float(m_src @ m_dst) + self.bias)
        p_neg = _sigmoid(float(m_neg_src @ m_neg_dst) + self.bias)
        g_pos = p_pos - 1.0
        self.base[src] -= lr * g_pos * m_dst
        self.base[dst] -= lr * g_pos * m_src
        self.base[neg_src] -= lr * p_neg * m_neg_dst
        self.base[neg_dst] -= lr * p_neg * m_neg_src
        self.bias -= lr * (g_pos + p_neg)

    def train(self, stream: EdgeStream) -> None:
        train_rows = stream.split("train")
        if not train_rows:
            raise ValueError("train split is empty")
        if self.n_nodes < 3:
            raise ValueError("memory-embedding training needs at least 3 nodes")
        observed_edges = sorted({(r.src, r.dst) for r in train_rows})
        for _ in range(self.params.epochs):
            self.dyn[:] = 0.0
            self.last[:] = -np.inf
            self.last_observed = float("-inf")
            for row in train_rows:
                if len(observed_edges) > 1:
                    while True:
                        pick = observed_edges[int(self._train_rng.integers(0, len(observed_edges)))]
                        if pick != (row.src, row.dst):
                            break
                else:
                    # single observed edge: corrupt one endpoint instead
                    third = next(v for v in range(self.n_nodes) if v not in (row.src, row.dst))
                    pick = (row.src, third)
                self._sgd_step(row.src, row.dst, pick, row.time)
                self.observe(row.src, row.dst, row.time)

    def snapshot(self):
        return (
            self.base.copy(),
            self.bias,
            self.dyn.copy(),
            self.last.copy(),
            self.last_observed,
        )

    def restore(self, state) -> None:
        base, bias, dyn, last, last_observed = state
        self.base = base.copy()
        self.bias = bias
        self.dyn = dyn.copy()
        self.last = last.copy()
        self.last_observed = last_observed

    def mark_trained(self) -> None:
        self._trained_state = self.snapshot()

    def restore_trained(self) -> None:
        self.restore(self._trained_state)


KINDS = ("recency", "memory-embedding")


def train_baseline(stream: EdgeStream, kind: str, hyperparams=None, seed: int = 0):
    """Build and train a predictor of the requested kind on the train split.

    The recency heuristic has no trainable parameters: "training" replays
    the train split into its state.  Both predictors come back with their
    post-train state marked, so evaluation splits can each start fresh.
    """
    params = hyperparams or Hyperparams()
    train_rows = stream.split("train")
    if not train_rows:
        raise ValueError("train split is empty")
    if kind == "recency":
        predictor = RecencyPredictor(decay=params.recency_decay)
        for row in train_rows:
            predictor.observe(row.src, row.dst, row.time)
    elif kind == "memory-embedding":
        predictor = MemoryEmbeddingPredictor(stream.n_nodes, params, seed)
        predictor.train(stream)
    else:
        raise ValueError(f"unknown baseline kind {kind!r} (pick from {KINDS})")
    predictor.mark_trained()
    return predictor
