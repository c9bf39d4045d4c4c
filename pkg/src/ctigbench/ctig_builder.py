"""Causal temporal interaction graph construction.

Events are interactions between nodes of an n-node graph, so the event
universe is the E = n(n-1)/2 unordered node pairs.  The influence matrix
over edge events is derived from node features:

    node features  ->  edge features (elementwise product)
                   ->  raw pairwise influence  sin(nu0 * tanh(z_i' B z_j))
                   ->  magnitude threshold at nu1
                   ->  symmetric non-causal mask over l edges.

B is skew-symmetric, which makes the raw influence antisymmetric: edge j
exciting edge i implies edge i inhibiting edge j with equal magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .causal_core import CausalModel
from .errors import ParameterError
from .seeding import as_generator, child_seq


def edge_index(a: int, b: int, n: int) -> int:
    """Canonical index of the unordered pair {a, b} among C(n, 2) edges.

    Pairs are ordered lexicographically by (min, max).
    """
    if not (0 <= a < n and 0 <= b < n):
        raise ParameterError(f"nodes must lie in [0, {n})")
    if a == b:
        raise ParameterError("self-pairs have no edge index")
    if a > b:
        a, b = b, a
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def edge_pair(idx: int, n: int) -> tuple[int, int]:
    """Inverse of `edge_index`: recover the (min, max) node pair."""
    total = n * (n - 1) // 2
    if not 0 <= idx < total:
        raise ParameterError(f"edge index must lie in [0, {total})")
    a = 0
    offset = 0
    while offset + (n - a - 1) <= idx:
        offset += n - a - 1
        a += 1
    b = a + 1 + (idx - offset)
    return a, b


@dataclass(frozen=True)
class EdgeSpace:
    """Bijection between unordered node pairs and edge-event indices."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError("an edge space needs at least 2 nodes")

    @property
    def size(self) -> int:
        return self.n * (self.n - 1) // 2

    def index(self, a: int, b: int) -> int:
        return edge_index(a, b, self.n)

    def pair(self, idx: int) -> tuple[int, int]:
        return edge_pair(idx, self.n)


@dataclass(frozen=True)
class CtigSeeds:
    """Independent seeds for each random ingredient of the construction."""

    features: int = 0
    mixing: int = 1
    mask: int = 2
    lambdas: int = 3

    @classmethod
    def from_master(cls, seed: int) -> "CtigSeeds":
        base = child_seq(seed, 100)
        keys = base.generate_state(4)
        return cls(*(int(k) for k in keys))


@dataclass(frozen=True)
class CtigSpec:
    """Recipe for a CTIG causal model over the edges of an n-node graph."""

    n: int
    r: int
    nu0: float
    nu1: float
    l: int
    lambda_range: tuple[float, float] = (0.5, 2.0)
    tau_bar: float = 1.0
    seeds: CtigSeeds = CtigSeeds()

    def __post_init__(self):
        if self.n < 2 or self.r < 1:
            raise ParameterError("need n >= 2 nodes and r >= 1 feature dims")
        if not 0.0 < self.nu1 < 1.0:
            raise ParameterError("nu1 must lie in (0, 1)")
        if not 0 <= self.l < self.edge_count:
            raise ParameterError(f"l must lie in [0, {self.edge_count})")

    @property
    def edge_count(self) -> int:
        return self.n * (self.n - 1) // 2


def five_node_preset(seed: int = 0) -> CtigSpec:
    """Small 5-node reference configuration (E = 10 edge events)."""
    return CtigSpec(n=5, r=5, nu0=100.0, nu1=0.55, l=2, seeds=CtigSeeds.from_master(seed))


@dataclass(frozen=True)
class InfluenceMatrices:
    """Intermediate and final matrices of the construction.

    raw and thresholded are antisymmetric with zero diagonal; the mask is
    symmetric with exactly l zeroed row/column pairs; graph is the binary
    support of theta.
    """

    raw: np.ndarray
    theta_tilde: np.ndarray
    mask: np.ndarray
    theta: np.ndarray
    graph: np.ndarray


def sample_node_features(n: int, r: int, seed) -> np.ndarray:
    """i.i.d. standard-normal feature vectors, one row per node."""
    if n < 1 or r < 1:
        raise ParameterError("need n >= 1 and r >= 1")
    rng = as_generator(seed)
    return rng.standard_normal((n, r))


def edge_features(x_a: np.ndarray, x_b: np.ndarray) -> np.ndarray:
    """Symmetric edge feature: the elementwise product of node features."""
    x_a = np.asarray(x_a, dtype=np.float64)
    x_b = np.asarray(x_b, dtype=np.float64)
    if x_a.shape != x_b.shape:
        raise ParameterError("node feature dimensions must match")
    return x_a * x_b


def make_skew_mixing(r: int, seed) -> np.ndarray:
    """Skew-symmetric mixing matrix G - G' for standard-normal G."""
    if r < 1:
        raise ParameterError("r must be at least 1")
    rng = as_generator(seed)
    b_hat = rng.standard_normal((r, r))
    return b_hat - b_hat.T


def influence(z: np.ndarray, z_prime: np.ndarray, mixing: np.ndarray, nu0: float) -> float:
    """Directional influence of edge z' on edge z, bounded to [-1, 1].

    Antisymmetric whenever `mixing` is skew-symmetric, and exactly zero
    for z' == z.
    """
    z = np.asarray(z, dtype=np.float64)
    z_prime = np.asarray(z_prime, dtype=np.float64)
    if z.shape != z_prime.shape or mixing.shape != (z.size, z.size):
        raise ParameterError("feature / mixing dimensions do not match")
    # antisymmetrized bilinear form: equal in exact arithmetic, and makes
    # influence(z, z) == 0 and the argument-swap sign flip exact
    q = 0.5 * (float(z @ mixing @ z_prime) - float(z_prime @ mixing @ z))
    return float(np.sin(nu0 * np.tanh(q)))


def threshold(x, nu1: float):
    """Keep values with magnitude >= nu1, zero the rest (scalar or array)."""
    if not 0.0 < nu1 < 1.0:
        raise ParameterError("nu1 must lie in (0, 1)")
    x = np.asarray(x, dtype=np.float64)
    out = np.where(np.abs(x) >= nu1, x, 0.0)
    return float(out) if out.ndim == 0 else out


def noncausal_mask(edge_count: int, l: int, seed) -> np.ndarray:
    """Symmetric binary mask zeroing l uniformly chosen edge rows/columns."""
    if not 0 <= l < edge_count:
        raise ParameterError(f"l must lie in [0, {edge_count})")
    rng = as_generator(seed)
    chosen = rng.choice(edge_count, size=l, replace=False)
    mask = np.ones((edge_count, edge_count), dtype=np.int64)
    mask[chosen, :] = 0
    mask[:, chosen] = 0
    return mask


def build_ctig_model(spec: CtigSpec):
    """Construct the CTIG causal model over edge events.

    Returns (model, matrices, node_features).  The raw influence matrix is
    computed on the upper triangle and mirrored, which makes antisymmetry
    and the zero diagonal exact rather than up to rounding.
    """
    edges = EdgeSpace(spec.n)
    features = sample_node_features(spec.n, spec.r, spec.seeds.features)
    mixing = make_skew_mixing(spec.r, spec.seeds.mixing)

    pairs = [edges.pair(e) for e in range(edges.size)]
    z = np.stack([edge_features(features[a], features[b]) for a, b in pairs])

    bilinear = z @ mixing @ z.T
    raw = np.zeros_like(bilinear)
    upper = np.triu_indices(edges.size, k=1)
    raw[upper] = np.sin(spec.nu0 * np.tanh(bilinear[upper]))
    raw = raw - raw.T

    theta_tilde = threshold(raw, spec.nu1)
    mask = noncausal_mask(edges.size, spec.l, spec.seeds.mask)
    theta = theta_tilde * mask
    graph = (theta != 0.0).astype(np.int64)

    lam_rng = as_generator(spec.seeds.lambdas)
    lo, hi = spec.lambda_range
    if not (0 < lo <= hi):
        raise ParameterError(f"invalid lambda range ({lo}, {hi})")
    lambdas = lam_rng.uniform(lo, hi, size=edges.size)

    model = CausalModel(lambdas=lambdas, theta=theta, tau_bar=spec.tau_bar)
    matrices = InfluenceMatrices(
        raw=raw, theta_tilde=theta_tilde, mask=mask, theta=theta, graph=graph
    )
    return model, matrices, features
