"""Adjacency-tensor products and the spectral radius of connected hypergraphs.

The adjacency tensor never gets materialised. Its action on a vector is

    (A x)_v = sum over edges e containing v of prod_{u in e, u != v} x_u

since the 1/(k-1)! entry weight cancels against the (k-1)! orderings of
each edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, is_connected


class SpectralError(RuntimeError):
    pass


class DisconnectedError(SpectralError, ValueError):
    """The adjacency tensor of a disconnected hypergraph is not weakly irreducible."""


class ConvergenceError(SpectralError):
    def __init__(self, message: str, result: "SpectralResult"):
        super().__init__(message)
        self.result = result


def _edge_array(H: Hypergraph) -> np.ndarray:
    return np.asarray(H.edges, dtype=np.intp).reshape(H.m, H.k)


def _check_vector(H: Hypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (H.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({H.n},)")
    return x


def _apply(E: np.ndarray, n: int, x: np.ndarray) -> np.ndarray:
    out = np.zeros(n)
    if E.size == 0:
        return out
    X = x[E]
    k = E.shape[1]
    # prefix/suffix products avoid dividing by zero components
    prefix = np.ones_like(X)
    suffix = np.ones_like(X)
    for j in range(1, k):
        prefix[:, j] = prefix[:, j - 1] * X[:, j - 1]
        suffix[:, k - 1 - j] = suffix[:, k - j] * X[:, k - j]
    np.add.at(out, E, prefix * suffix)
    return out


def apply_adjacency(H: Hypergraph, x) -> np.ndarray:
    """Return the vector ``A(H) x^{k-1}``."""
    x = _check_vector(H, x)
    return _apply(_edge_array(H), H.n, x)


def rayleigh(H: Hypergraph, x) -> float:
    """``x^T (A(H) x) = k * sum_e prod_{u in e} x_u`` for nonnegative ``x``."""
    x = _check_vector(H, x)
    if np.any(x < 0):
        raise ValueError("rayleigh quotient needs a nonnegative vector")
    if H.m == 0:
        return 0.0
    return float(H.k * np.prod(x[_edge_array(H)], axis=1).sum())


def eigen_residual(H: Hypergraph, lam: float, x) -> float:
    """Infinity norm of ``A(H) x - lam * x^{[k-1]}``."""
    x = _check_vector(H, x)
    r = apply_adjacency(H, x) - lam * x ** (H.k - 1)
    return float(np.max(np.abs(r), initial=0.0))


def unit_k_normalize(x, k: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x / np.sum(x**k) ** (1.0 / k)


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-10
    max_iterations: int = 100_000
    shift: float = 1.0

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")


@dataclass(frozen=True)
class SpectralResult:
    """Outcome of the power iteration.

    ``lower`` and ``upper`` bracket the spectral radius (min/max eigen-ratio
    at the returned vector); ``rho`` is their midpoint.
    """

    rho: float
    lower: float
    upper: float
    eigenvector: np.ndarray
    residual: float
    iterations: int
    converged: bool

    @property
    def width(self) -> float:
        return self.upper - self.lower


def spectral_radius(
    H: Hypergraph, opts: SolverOptions | None = None, *, raise_on_failure: bool = True
) -> SpectralResult:
    """Spectral radius and principal eigenvector of a connected hypergraph.

    Shifted power iteration on ``A + shift * I``: each step maps ``x`` to
    ``(A x + shift x^{[k-1]})^{[1/(k-1)]}`` renormalised to unit k-norm. The
    min and max of ``(A x)_i / x_i^{k-1}`` bound the radius from both sides
    for any positive ``x``; iteration stops once the bracket width and the
    eigen-residual are both within ``opts.tolerance``.
    """
    opts = opts or SolverOptions()
    if not is_connected(H):
        raise DisconnectedError("hypergraph is not connected")
    k, n = H.k, H.n
    E = _edge_array(H)
    x = np.full(n, n ** (-1.0 / k))
    lo = hi = 0.0
    residual = np.inf
    it = 0
    for it in range(1, opts.max_iterations + 1):
        ax = _apply(E, n, x)
        xk1 = x ** (k - 1)
        ratios = ax / xk1
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= opts.tolerance:
            lam = 0.5 * (lo + hi)
            residual = float(np.max(np.abs(ax - lam * xk1)))
            if residual <= opts.tolerance:
                break
        y = ax + opts.shift * xk1
        x = y ** (1.0 / (k - 1))
        x /= np.sum(x**k) ** (1.0 / k)
        if np.any(x <= 0):
            raise SpectralError("iterate lost positivity")
    else:
        lam = 0.5 * (lo + hi)
        residual = eigen_residual(H, lam, x)
        result = SpectralResult(lam, lo, hi, x, residual, opts.max_iterations, False)
        if raise_on_failure:
            raise ConvergenceError(
                f"no convergence in {opts.max_iterations} iterations "
                f"(bracket [{lo:.12g}, {hi:.12g}])",
                result,
            )
        return result
    return SpectralResult(0.5 * (lo + hi), lo, hi, x, residual, it, True)
