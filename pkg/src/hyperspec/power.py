"""Generalized power hypergraphs G^{k,s} of a t-uniform seed.

Every seed vertex ``v`` becomes a block ``V_v`` of ``s`` new vertices and
every seed edge ``e`` gets a block ``V_e`` of ``k - t*s`` fresh vertices; the
edge ``{v_1..v_t}`` becomes ``V_{v_1} u ... u V_{v_t} u V_e``. For connected
seeds the spectral radius transforms as ``rho -> rho^(t*s/k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, HypergraphError, degrees
from .spectral import eigen_residual

LIFT_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class PowerSpec:
    t: int
    k: int
    s: int

    def __post_init__(self) -> None:
        if self.t < 2:
            raise HypergraphError(f"seed uniformity t={self.t} must be at least 2")
        if self.k < self.t:
            raise HypergraphError(f"target uniformity k={self.k} is below t={self.t}")
        if not 1 <= self.s <= self.k // self.t:
            raise HypergraphError(
                f"blow-up size s={self.s} outside [1, {self.k // self.t}] for t={self.t}, k={self.k}"
            )

    @property
    def filler(self) -> int:
        return self.k - self.t * self.s

    @property
    def exponent(self) -> float:
        return self.t * self.s / self.k


@dataclass(frozen=True)
class PowerMap:
    vertex_blocks: tuple[tuple[int, ...], ...]
    edge_blocks: tuple[tuple[int, ...], ...]


def valid_specs(t: int, k_max: int) -> list[PowerSpec]:
    return [PowerSpec(t, k, s) for k in range(t, k_max + 1) for s in range(1, k // t + 1)]


def gen_power(G: Hypergraph, spec: PowerSpec) -> tuple[Hypergraph, PowerMap]:
    """Build ``G^{k,s}``.

    Vertex blocks come first in seed-vertex order, then edge blocks in seed-edge
    order, so ``n' = s*n + (k - t*s)*m``.
    """
    if G.k != spec.t:
        raise HypergraphError(f"seed is {G.k}-uniform but spec has t={spec.t}")
    if G.n and min(degrees(G)) == 0:
        raise HypergraphError("seed has isolated vertices")
    s, f = spec.s, spec.filler
    vblocks = tuple(tuple(range(v * s, (v + 1) * s)) for v in range(G.n))
    base = G.n * s
    eblocks = tuple(tuple(range(base + i * f, base + (i + 1) * f)) for i in range(G.m))
    edges = [
        [w for v in e for w in vblocks[v]] + list(eblocks[i]) for i, e in enumerate(G.edges)
    ]
    H = Hypergraph(spec.k, base + f * G.m, tuple(tuple(sorted(e)) for e in edges))
    return H, PowerMap(vblocks, eblocks)


def kth_power(G: Hypergraph, k: int) -> tuple[Hypergraph, PowerMap]:
    """``G^k`` of an ordinary graph: each edge padded with ``k - 2`` new vertices."""
    return gen_power(G, PowerSpec(2, k, 1))


def graph_generalized_power(G: Hypergraph, k: int, s: int) -> tuple[Hypergraph, PowerMap]:
    return gen_power(G, PowerSpec(2, k, s))


def predicted_rho(rho_seed: float, spec: PowerSpec) -> float:
    if not rho_seed > 0:
        raise ValueError(f"seed spectral radius must be positive, got {rho_seed}")
    return rho_seed**spec.exponent


def lift_eigenvector(
    G: Hypergraph,
    x,
    mu: float,
    spec: PowerSpec,
    pmap: PowerMap,
    *,
    residual_tol: float = LIFT_RESIDUAL_TOL,
) -> np.ndarray:
    """Lift an eigenpair ``(mu, x)`` of ``G`` to an eigenvector of ``G^{k,s}`` for ``mu^(ts/k)``.

    Block ``V_v`` gets ``x_v^(t/k)``; block ``V_e`` gets ``(prod_{v in e} x_v / mu)^(1/k)``.
    """
    x = np.asarray(x, dtype=float)
    if not mu > 0:
        raise ValueError(f"eigenvalue must be positive, got {mu}")
    if x.shape != (G.n,) or np.any(x <= 0):
        raise ValueError("seed eigenvector must be a positive vector of length n")
    res = eigen_residual(G, mu, x)
    if res > residual_tol:
        raise ValueError(f"(mu, x) is not an eigenpair of the seed: residual {res:.3g}")
    n_out = len(pmap.vertex_blocks) * spec.s + len(pmap.edge_blocks) * spec.filler
    y = np.empty(n_out)
    for v, block in enumerate(pmap.vertex_blocks):
        y[list(block)] = x[v] ** (spec.t / spec.k)
    for i, block in enumerate(pmap.edge_blocks):
        if block:
            y[list(block)] = (np.prod(x[list(G.edges[i])]) / mu) ** (1.0 / spec.k)
    return y
