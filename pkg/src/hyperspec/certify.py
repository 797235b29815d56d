"""Weighted incidence certificates (alpha-normal labelings).

A weighted incidence matrix ``B`` assigns a positive weight to each incident
(vertex, edge) pair. For a connected k-uniform ``H``:

* vertex sums all 1, edge products all ``alpha`` and every cycle ratio
  product 1 (consistently alpha-normal)  <=>  ``rho(H) = alpha^(-1/k)``;
* vertex sums <= 1 and edge products >= alpha  =>  ``rho(H) <= alpha^(-1/k)``,
  strictly when the labeling is not alpha-normal.

The spectral radius convention is the one of the adjacency tensor with
entries ``1/(k-1)!``; other conventions differ by the factor ``(k-1)!``.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .core import Hypergraph, LabeledHypergraph, gen_b_l1, gen_b_l2

EQ_TOL = 1e-9


class CertificateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# The quartic root


def quartic(m: int, x: float) -> float:
    return (m - 4) * x**4 - (m - 1) * x**3 - x + 1


@dataclass(frozen=True)
class AlphaRoot:
    m: int
    y: float

    @property
    def alpha(self) -> float:
        return self.y**3


def bisect(f, lo: float, hi: float, max_iter: int = 200) -> float:
    """Bisection for a sign change of ``f`` on ``[lo, hi]``.

    Stops on an exact zero, when the bracket can no longer be split in
    floating point, or after ``max_iter`` halvings.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise CertificateError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo if abs(flo) <= abs(f(hi)) else hi


def solve_bl1_alpha(m: int) -> AlphaRoot:
    """Unique root in (0, 1) of ``(m-4)y^4 - (m-1)y^3 - y + 1``; ``alpha = y^3``."""
    if m < 5:
        raise CertificateError(f"need m >= 5, got m={m}")
    # f(0) = 1 > 0 and f(1) = -3 < 0
    y = bisect(lambda x: quartic(m, x), 1e-9, 1 - 1e-9)
    return AlphaRoot(m, y)


def root_monotonicity_scan(m_lo: int, m_hi: int) -> list[tuple[int, float]]:
    """Roots ``y(m)`` for ``m_lo..m_hi``; raises if they fail to strictly decrease."""
    if not 5 <= m_lo < m_hi:
        raise CertificateError(f"bad range [{m_lo}, {m_hi}]; need 5 <= m_lo < m_hi")
    rows = [(m, solve_bl1_alpha(m).y) for m in range(m_lo, m_hi + 1)]
    for (m0, y0), (m1, y1) in zip(rows, rows[1:]):
        if not y1 < y0:
            raise CertificateError(f"y({m1})={y1} is not below y({m0})={y0}")
    return rows


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class WeightedIncidence:
    """Positive weights keyed by (vertex, edge index)."""

    weights: Mapping[tuple[int, int], float]

    def __post_init__(self) -> None:
        for key, w in self.weights.items():
            if not w > 0:
                raise CertificateError(f"weight at {key} is {w}; weights must be positive")

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.weights[key]

    def check_support(self, H: Hypergraph) -> None:
        expected = {(v, i) for i, e in enumerate(H.edges) for v in e}
        got = set(self.weights)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise CertificateError(
                f"support mismatch: missing {missing[:5]}{'...' if len(missing) > 5 else ''}, "
                f"extra {extra[:5]}{'...' if len(extra) > 5 else ''}"
            )


def _with_pendants(H: Hypergraph, named: dict[tuple[int, int], float]) -> WeightedIncidence:
    weights = {}
    for i, e in enumerate(H.edges):
        for v in e:
            weights[(v, i)] = named.get((v, i), 1.0)
    return WeightedIncidence(weights)


def build_bl1_certificate(k: int, m: int) -> tuple[WeightedIncidence, float]:
    """The consistently alpha-normal labeling of B_m^L(1); pendant vertices get 1."""
    L = gen_b_l1(k, m)
    root = solve_bl1_alpha(m)
    y, a = root.y, root.alpha
    v, e = L.v, L.e
    w: dict[tuple[int, int], float] = {}
    for i in range(1, m - 3):
        w[(v("u1"), e(f"e{i}"))] = a
    for i in (m - 3, m - 2, m - 1):
        w[(v("u1"), e(f"e{i}"))] = a / (1 - y)
    w[(v("u2"), e(f"e{m - 3}"))] = 1 - y
    w[(v("u3"), e(f"e{m - 2}"))] = 1 - y
    w[(v("u4"), e(f"e{m - 1}"))] = 1 - y
    for u in ("u2", "u3", "u4"):
        w[(v(u), e(f"e{m}"))] = y
    return _with_pendants(L.graph, w), a


def build_bl2_certificate(k: int, m: int) -> tuple[WeightedIncidence, float]:
    """The alpha-subnormal labeling of B_m^L(2), with alpha taken from B_m^L(1).

    ``m = 5`` and ``m >= 6`` use different tables.
    """
    L = gen_b_l2(k, m)
    root = solve_bl1_alpha(m)
    y, a = root.y, root.alpha
    v, e = L.v, L.e
    w: dict[tuple[int, int], float] = {}
    if m == 5:
        w[(v("v1"), e("e1"))] = a
        w[(v("v1"), e("e2"))] = 1 - a - y
        for u in ("v1", "v2", "v3"):
            w[(v(u), e("e5"))] = y
        w[(v("v2"), e("e3"))] = 1 - y
        w[(v("v3"), e("e4"))] = 1 - y
        w[(v("v4"), e("e3"))] = a / (1 - y)
        w[(v("v4"), e("e4"))] = a / (1 - y)
        w[(v("v4"), e("e2"))] = 1 - 2 * a / (1 - y)
    else:
        for i in range(1, m - 3):
            w[(v("v1"), e(f"e{i}"))] = a
        w[(v("v1"), e(f"e{m - 3}"))] = a / (1 - y)
        w[(v("v1"), e(f"e{m}"))] = 2 * a / (1 - y)
        w[(v("v2"), e(f"e{m}"))] = 1 - 2 * y**2
        w[(v("v3"), e(f"e{m}"))] = 1 - 2 * y**2
        w[(v("v2"), e(f"e{m - 2}"))] = 2 * y**2
        w[(v("v3"), e(f"e{m - 1}"))] = 2 * y**2
        w[(v("v4"), e(f"e{m - 2}"))] = y / 2
        w[(v("v4"), e(f"e{m - 1}"))] = y / 2
        w[(v("v4"), e(f"e{m - 3}"))] = 1 - y
    return _with_pendants(L.graph, w), a


def build_family_certificate(family: str, k: int, m: int) -> tuple[LabeledHypergraph, WeightedIncidence, float]:
    if family == "bl1":
        return (gen_b_l1(k, m), *build_bl1_certificate(k, m))
    if family == "bl2":
        return (gen_b_l2(k, m), *build_bl2_certificate(k, m))
    raise CertificateError(f"no certificate builder for family {family!r}")


# ---------------------------------------------------------------------------
# Classification


class Kind(str, enum.Enum):
    CONSISTENTLY_NORMAL = "ConsistentlyNormal"
    NORMAL_NOT_CONSISTENT = "NormalNotConsistent"
    STRICTLY_SUBNORMAL = "StrictlySubnormal"
    SUBNORMAL = "Subnormal"
    INVALID = "Invalid"


@dataclass(frozen=True)
class Witness:
    """One checked constraint: a vertex sum, an edge product or a cycle product.

    ``cycle`` is the closed walk ``[v0, e1, v1, ..., e_l, v0]`` for cycle witnesses.
    """

    constraint: str
    index: int | None
    value: float
    target: float
    cycle: tuple[int, ...] = ()

    @property
    def excess(self) -> float:
        return self.value - self.target


@dataclass(frozen=True)
class RhoBound:
    relation: str  # "==", "<", "<=" or "none"
    value: float

    def __str__(self) -> str:
        if self.relation == "none":
            return "no bound"
        return f"rho {self.relation} {self.value:.12g}"


@dataclass(frozen=True)
class CertificateVerdict:
    kind: Kind
    alpha: float
    rho_bound: RhoBound
    witnesses: list[Witness] = field(default_factory=list)
    cycle_products: list[Witness] = field(default_factory=list)


def cycle_product(B: WeightedIncidence, walk: list[int] | tuple[int, ...]) -> float:
    """``prod_i B(v_i, e_i) / B(v_{i-1}, e_i)`` along ``[v0, e1, v1, ..., e_l, v_l]``."""
    if len(walk) < 3 or len(walk) % 2 == 0:
        raise CertificateError("walk must alternate vertex, edge, ..., vertex")
    p = 1.0
    for j in range(1, len(walk), 2):
        prev, e, nxt = walk[j - 1], walk[j], walk[j + 1]
        p *= B[(nxt, e)] / B[(prev, e)]
    return p


def fundamental_cycles(H: Hypergraph) -> list[tuple[int, ...]]:
    """Closed walks forming a cycle basis of the vertex/edge incidence graph.

    One cycle per incidence outside a BFS spanning forest, written as
    ``[v, e_1, v_1, ..., e, v]`` where the last step uses the non-tree incidence.
    """
    # nodes: vertex v -> ("v", v), edge i -> ("e", i)
    parent: dict[tuple[str, int], tuple[str, int] | None] = {}
    depth: dict[tuple[str, int], int] = {}
    tree: set[tuple[int, int]] = set()
    inc: list[list[int]] = [[] for _ in range(H.n)]
    for i, e in enumerate(H.edges):
        for u in e:
            inc[u].append(i)
    for root in range(H.n):
        if ("v", root) in parent:
            continue
        parent[("v", root)] = None
        depth[("v", root)] = 0
        queue = deque([("v", root)])
        while queue:
            node = queue.popleft()
            kind, idx = node
            nbrs = [("e", i) for i in inc[idx]] if kind == "v" else [("v", u) for u in H.edges[idx]]
            for nb in nbrs:
                if nb in parent:
                    continue
                parent[nb] = node
                depth[nb] = depth[node] + 1
                tree.add((idx, nb[1]) if kind == "v" else (nb[1], idx))
                queue.append(nb)

    def path_to_root(node):
        out = [node]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    cycles = []
    for i, e in enumerate(H.edges):
        for u in e:
            if (u, i) in tree:
                continue
            pv = path_to_root(("v", u))
            pe = path_to_root(("e", i))
            common = set(pv) & set(pe)
            # cut both paths at their lowest common ancestor
            cut_v = next(j for j, nd in enumerate(pv) if nd in common)
            lca = pv[cut_v]
            cut_e = pe.index(lca)
            nodes = pv[: cut_v + 1] + pe[:cut_e][::-1] + [("v", u)]
            cycles.append(tuple(idx for _, idx in nodes))
    return cycles


def check_consistent(
    H: Hypergraph, B: WeightedIncidence, tol: float = EQ_TOL
) -> tuple[bool, list[Witness]]:
    """Cycle-product condition checked on a fundamental cycle basis.

    Returns ``(ok, violations)``; violations carry the offending closed walks.
    Products compose multiplicatively over cycle sums, so the basis suffices.
    """
    B.check_support(H)
    bad = []
    for cyc in fundamental_cycles(H):
        p = cycle_product(B, cyc)
        if abs(p - 1.0) > tol:
            bad.append(Witness("cycle_product", None, p, 1.0, cyc))
    return not bad, bad


def check_alpha_normal(
    H: Hypergraph,
    B: WeightedIncidence,
    alpha: float,
    tol: float = EQ_TOL,
    strict_margin: float | None = None,
) -> CertificateVerdict:
    """Classify ``B`` as an alpha-normal / alpha-subnormal labeling of ``H``.

    Equalities are accepted within ``tol``. A subnormal labeling counts as
    strict only when some inequality holds by more than ``strict_margin``
    (default ``tol``); otherwise it is reported as plain ``Subnormal``.
    """
    if not alpha > 0:
        raise CertificateError(f"alpha must be positive, got {alpha}")
    B.check_support(H)
    margin = tol if strict_margin is None else strict_margin
    bound = alpha ** (-1.0 / H.k)

    sums: list[Witness] = []
    for v in range(H.n):
        s = math.fsum(B[(v, i)] for i in H.incident_edges(v))
        sums.append(Witness("vertex_sum", v, s, 1.0))
    prods: list[Witness] = []
    for i, e in enumerate(H.edges):
        p = math.prod(B[(v, i)] for v in e)
        prods.append(Witness("edge_product", i, p, alpha))

    normal = all(abs(w.excess) <= tol for w in sums + prods)
    if normal:
        ok, bad = check_consistent(H, B, tol)
        products = [
            Witness("cycle_product", None, cycle_product(B, c), 1.0, c)
            for c in fundamental_cycles(H)
        ]
        if ok:
            return CertificateVerdict(Kind.CONSISTENTLY_NORMAL, alpha, RhoBound("==", bound), [], products)
        return CertificateVerdict(Kind.NORMAL_NOT_CONSISTENT, alpha, RhoBound("<", bound), bad, products)

    violated = [w for w in sums if w.excess > tol] + [w for w in prods if w.excess < -tol]
    if violated:
        return CertificateVerdict(Kind.INVALID, alpha, RhoBound("none", bound), violated)
    strict = [w for w in sums if w.excess < -margin] + [w for w in prods if w.excess > margin]
    if strict:
        return CertificateVerdict(Kind.STRICTLY_SUBNORMAL, alpha, RhoBound("<", bound), strict)
    return CertificateVerdict(Kind.SUBNORMAL, alpha, RhoBound("<=", bound), [])
