import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from conftest import cycle_graph, random_connected, single_edge
from hyperspec.core import gen_b_l1, gen_b_l2, gen_b_p, max_degree, new_hypergraph
from hyperspec.spectral import (
    ConvergenceError,
    DisconnectedError,
    SolverOptions,
    apply_adjacency,
    eigen_residual,
    rayleigh,
    spectral_radius,
    unit_k_normalize,
)


def dense_tensor(H):
    """Adjacency tensor with entries 1/(k-1)! on every ordering of every edge."""
    T = np.zeros((H.n,) * H.k)
    for e in H.edges:
        for idx in itertools.permutations(e):
            T[idx] = 1.0 / math.factorial(H.k - 1)
    return T


def dense_apply(T, x):
    out = T
    for _ in range(T.ndim - 1):
        out = out @ x
    return out


def brute_force_rho(H, grid=24, seed=0):
    """Maximise x^T(Ax) on the nonnegative unit k-sphere: simplex grid, then SLSQP polish.

    Parametrised by z on the probability simplex with x = z^(1/k).
    """
    k, n = H.k, H.n

    def obj(z):
        z = np.clip(z, 0, None)
        return -rayleigh(H, z ** (1.0 / k))

    comps = np.array([c for c in itertools.product(range(grid + 1), repeat=n - 1)
                      if sum(c) <= grid], dtype=float)
    Z = np.column_stack([comps, grid - comps.sum(axis=1)]) / grid
    X = Z ** (1.0 / k)
    E = np.array(H.edges)
    vals = k * np.prod(X[:, E], axis=2).sum(axis=1)
    order = np.argsort(-vals)
    best = [(-vals[i], Z[i]) for i in order[:8]]
    cons = {"type": "eq", "fun": lambda z: z.sum() - 1}
    top = -best[0][0]
    for val, z0 in best:
        res = minimize(obj, np.array(z0), method="SLSQP", bounds=[(0, 1)] * n,
                       constraints=[cons], options={"ftol": 1e-14, "maxiter": 500})
        if res.success or res.status == 9:
            z = np.clip(res.x, 0, None)
            z /= z.sum()
            top = max(top, -obj(z))
    return top


class TestApplyAdjacency:
    def test_ones(self):
        assert np.allclose(apply_adjacency(single_edge(3), [1, 1, 1]), [1, 1, 1])

    def test_by_hand(self):
        assert np.allclose(apply_adjacency(single_edge(3), [2, 3, 5]), [15, 10, 6])

    def test_isolated_vertex(self):
        H = new_hypergraph(3, 4, [{0, 1, 2}])
        assert apply_adjacency(H, [1, 2, 3, 4])[3] == 0

    def test_zero_components(self):
        H = new_hypergraph(3, 4, [{0, 1, 2}, {1, 2, 3}])
        assert np.allclose(apply_adjacency(H, [0, 2, 3, 0]), [6, 0, 0, 6])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            apply_adjacency(single_edge(3), [1, 1])

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_matches_dense_tensor(self, k, rng):
        for _ in range(5):
            H = random_connected(rng, k, 6)
            x = rng.random(H.n)
            assert np.allclose(apply_adjacency(H, x), dense_apply(dense_tensor(H), x))

    @settings(max_examples=40, deadline=None)
    @given(c=st.floats(0, 10), seed=st.integers(0, 10_000))
    def test_scale_covariance(self, c, seed):
        r = np.random.default_rng(seed)
        H = random_connected(r, 3, 8)
        x = r.random(H.n)
        assert np.allclose(apply_adjacency(H, c * x), c ** (H.k - 1) * apply_adjacency(H, x))


class TestRayleigh:
    def test_single_edge(self):
        assert rayleigh(single_edge(3), np.full(3, 3 ** (-1 / 3))) == pytest.approx(1.0)

    def test_zero(self):
        assert rayleigh(single_edge(3), np.zeros(3)) == 0

    def test_c4(self):
        assert rayleigh(cycle_graph(4), np.full(4, 0.5)) == pytest.approx(2.0)

    def test_negative(self):
        with pytest.raises(ValueError):
            rayleigh(single_edge(3), [1, -1, 1])

    def test_matches_dense(self, rng):
        H = random_connected(rng, 3, 6)
        x = rng.random(H.n)
        assert rayleigh(H, x) == pytest.approx(x @ dense_apply(dense_tensor(H), x))


class TestResidual:
    def test_exact(self):
        x = np.full(3, 3 ** (-1 / 3))
        assert eigen_residual(single_edge(3), 1.0, x) == pytest.approx(0, abs=1e-15)

    def test_wrong_lambda(self):
        x = np.full(3, 3 ** (-1 / 3))
        assert eigen_residual(single_edge(3), 2.0, x) == pytest.approx(x[0] ** 2)

    def test_zero_vector(self):
        assert eigen_residual(single_edge(3), 5.0, np.zeros(3)) == 0


class TestSolver:
    @pytest.mark.parametrize("k", [2, 3, 4, 5, 7])
    def test_single_edge(self, k):
        r = spectral_radius(single_edge(k))
        assert r.rho == pytest.approx(1.0, abs=1e-10)
        assert np.allclose(r.eigenvector, k ** (-1 / k))

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 9])
    def test_cycles(self, n):
        assert spectral_radius(cycle_graph(n)).rho == pytest.approx(2.0, abs=1e-9)

    def test_b6_l1(self):
        r = spectral_radius(gen_b_l1(3, 6).graph)
        assert r.rho == pytest.approx(2.0, abs=1e-8)
        assert r.lower <= 2.0 + 1e-12 and r.upper >= 2.0 - 1e-12

    def test_matches_scipy_for_graphs(self, rng):
        # k = 2: the tensor is the adjacency matrix
        for _ in range(5):
            H = random_connected(rng, 2, 9)
            A = np.zeros((H.n, H.n))
            for u, v in H.edges:
                A[u, v] = A[v, u] = 1
            assert spectral_radius(H).rho == pytest.approx(max(abs(np.linalg.eigvalsh(A))), abs=1e-9)

    def test_disconnected(self):
        with pytest.raises(DisconnectedError):
            spectral_radius(new_hypergraph(3, 6, [{0, 1, 2}, {3, 4, 5}]))

    def test_nonconvergence(self):
        H = gen_b_p(4, 8).graph
        with pytest.raises(ConvergenceError) as exc:
            spectral_radius(H, SolverOptions(max_iterations=3))
        assert not exc.value.result.converged
        r = spectral_radius(H, SolverOptions(max_iterations=3), raise_on_failure=False)
        assert r.lower <= r.rho <= r.upper

    def test_options_validated(self):
        for bad in ({"tolerance": 0}, {"max_iterations": 0}, {"shift": -1}):
            with pytest.raises(ValueError):
                SolverOptions(**bad)

    def test_unshifted_still_converges_on_aperiodic(self):
        r = spectral_radius(gen_b_l2(3, 6).graph, SolverOptions(shift=0.0))
        assert r.rho == pytest.approx(spectral_radius(gen_b_l2(3, 6).graph).rho, abs=1e-9)

    @pytest.mark.parametrize("seed", range(6))
    def test_brute_force_oracle(self, seed):
        H = random_connected(np.random.default_rng(seed), 3, 6)
        assert spectral_radius(H).rho == pytest.approx(brute_force_rho(H), abs=1e-4)

    def test_brute_force_oracle_b5p_subgraph(self):
        H = new_hypergraph(3, 5, [{0, 1, 2}, {0, 3, 4}, {1, 3, 4}])
        assert spectral_radius(H).rho == pytest.approx(brute_force_rho(H), abs=1e-4)


class TestSolverProperties:
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 100_000), k=st.integers(2, 4))
    def test_invariants(self, seed, k):
        r_ = np.random.default_rng(seed)
        H = random_connected(r_, k, 9)
        res = spectral_radius(H)
        tol = SolverOptions().tolerance
        assert np.sum(res.eigenvector**k) == pytest.approx(1.0, abs=1e-12)
        assert np.all(res.eigenvector > 0)
        assert res.residual <= tol
        assert eigen_residual(H, res.rho, res.eigenvector) <= tol
        assert res.rho >= k * H.m / H.n - tol
        assert rayleigh(H, res.eigenvector) == pytest.approx(res.rho, abs=1e-9)
        for _ in range(5):
            x = unit_k_normalize(r_.random(H.n), k)
            assert rayleigh(H, x) <= res.rho + tol

    @pytest.mark.parametrize("k", [3, 4, 5])
    @pytest.mark.parametrize("m", range(5, 11))
    def test_max_degree_root_bound(self, k, m):
        H = gen_b_p(k, m).graph
        assert spectral_radius(H).rho > max_degree(H) ** (1 / k)


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("m", [5, 6, 7, 8])
def test_b_p_eigenvector_symmetry(k, m):
    L = gen_b_p(k, m)
    x = spectral_radius(L.graph).eigenvector
    r = L.vertex_roles
    for i in range(2, k - 1):
        assert abs(x[r[f"a{i}"]] - x[r["a1"]]) <= 1e-6
        assert abs(x[r[f"b{i}"]] - x[r["b1"]]) <= 1e-6
    assert abs(x[r["a"]] - x[r["b"]]) <= 1e-6
    assert abs(x[r["a1"]] - x[r["b1"]]) <= 1e-6
    assert x[r["a"]] - x[r["a1"]] > 1e-6


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("m", [5, 7, 9])
def test_swap_gain_identity(k, m):
    # Rayleigh gain of the exchange at the B_m^P eigenvector is x_v x_a1^(k-3) (x_a - x_a1)^2
    from hyperspec.core import b_p_to_b_l2_swap, edge_swap

    L = gen_b_p(k, m)
    res = spectral_radius(L.graph)
    x, r = res.eigenvector, L.vertex_roles
    S = edge_swap(L.graph, b_p_to_b_l2_swap(L))
    gain = rayleigh(S, x) - rayleigh(L.graph, x)
    expected = k * x[r["v"]] * x[r["a1"]] ** (k - 3) * (x[r["a"]] - x[r["a1"]]) ** 2
    assert gain == pytest.approx(expected, rel=1e-9, abs=1e-15)
    assert gain > 0
