"""k-uniform hypergraphs, structural predicates and the bicyclic family generators."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs and invalid structural operations."""


Edge = tuple[int, ...]


def _as_edge(vertices: Iterable[int]) -> Edge:
    return tuple(sorted(int(u) for u in vertices))


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored as sorted vertex tuples in insertion order. Construction
    validates uniformity, vertex range and edge uniqueness.
    """

    k: int
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise HypergraphError(f"uniformity k={self.k} must be at least 2")
        if self.n < 0:
            raise HypergraphError(f"vertex count n={self.n} must be nonnegative")
        seen: set[Edge] = set()
        for i, edge in enumerate(self.edges):
            if len(set(edge)) != len(edge):
                raise HypergraphError(f"edge {i} {list(edge)} repeats a vertex")
            if len(edge) != self.k:
                raise HypergraphError(
                    f"edge {i} {list(edge)} has cardinality {len(edge)} != {self.k}"
                )
            bad = [u for u in edge if not 0 <= u < self.n]
            if bad:
                raise HypergraphError(
                    f"edge {i} {list(edge)} has vertex {bad[0]} outside [0, {self.n})"
                )
            if edge in seen:
                raise HypergraphError(f"edge {i} {list(edge)} is a duplicate")
            seen.add(edge)

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]


def new_hypergraph(k: int, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Build a validated hypergraph; edge order is preserved."""
    raw = [list(e) for e in edges]
    for i, e in enumerate(raw):
        if len(set(e)) != len(e):
            raise HypergraphError(f"edge {i} {e} repeats a vertex")
    if n < k:
        raise HypergraphError(f"vertex count n={n} is smaller than k={k}")
    return Hypergraph(k, n, tuple(_as_edge(e) for e in raw))


def degree(H: Hypergraph, v: int) -> int:
    if not 0 <= v < H.n:
        raise HypergraphError(f"vertex {v} outside [0, {H.n})")
    return sum(1 for e in H.edges if v in e)


def degrees(H: Hypergraph) -> list[int]:
    counts = Counter(u for e in H.edges for u in e)
    return [counts[v] for v in range(H.n)]


def max_degree(H: Hypergraph) -> int:
    return max(degrees(H), default=0)


def is_connected(H: Hypergraph) -> bool:
    """True iff the vertex/edge incidence graph is one component covering every vertex."""
    if H.n == 0:
        return False
    incident: list[list[int]] = [[] for _ in range(H.n)]
    for i, e in enumerate(H.edges):
        for u in e:
            incident[u].append(i)
    seen = [False] * H.n
    used = [False] * H.m
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for i in incident[u]:
            if used[i]:
                continue
            used[i] = True
            for w in H.edges[i]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return all(seen)


def is_linear(H: Hypergraph) -> bool:
    """True iff any two distinct edges share at most one vertex."""
    pairs: set[tuple[int, int]] = set()
    for e in H.edges:
        for i in range(len(e)):
            for j in range(i + 1, len(e)):
                p = (e[i], e[j])
                if p in pairs:
                    return False
                pairs.add(p)
    return True


def is_bicyclic(H: Hypergraph) -> bool:
    return is_connected(H) and H.m * (H.k - 1) - H.n == 1


# ---------------------------------------------------------------------------
# Labeled families


@dataclass(frozen=True)
class LabeledHypergraph:
    """A hypergraph together with named vertices and edges."""

    graph: Hypergraph
    vertex_roles: Mapping[str, int] = field(default_factory=dict)
    edge_roles: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, v in self.vertex_roles.items():
            if not 0 <= v < self.graph.n:
                raise HypergraphError(f"vertex role {name!r} -> {v} is out of range")
        for name, i in self.edge_roles.items():
            if not 0 <= i < self.graph.m:
                raise HypergraphError(f"edge role {name!r} -> {i} is out of range")

    def v(self, role: str) -> int:
        return self.vertex_roles[role]

    def e(self, role: str) -> int:
        return self.edge_roles[role]

    def edge(self, role: str) -> Edge:
        return self.graph.edges[self.edge_roles[role]]


class _Builder:
    """Allocates named vertices first, then filler pendants in edge order."""

    def __init__(self, k: int, named: Sequence[str]):
        self.k = k
        self.vertex_roles = {name: i for i, name in enumerate(named)}
        self.n = len(named)
        self.edges: list[Edge] = []
        self.edge_roles: dict[str, int] = {}

    def add(self, role: str, members: Sequence[str]) -> None:
        core = [self.vertex_roles[r] for r in members]
        fill = self.k - len(core)
        if fill < 0:
            raise HypergraphError(f"edge {role} has more than k={self.k} named vertices")
        pendants = list(range(self.n, self.n + fill))
        self.n += fill
        self.edge_roles[role] = len(self.edges)
        self.edges.append(_as_edge(core + pendants))

    def build(self) -> LabeledHypergraph:
        return LabeledHypergraph(
            Hypergraph(self.k, self.n, tuple(self.edges)),
            dict(self.vertex_roles),
            dict(self.edge_roles),
        )


def _check_family_params(k: int, m: int) -> None:
    if k < 3:
        raise HypergraphError(f"family generators need k >= 3, got k={k}")
    if m < 5:
        raise HypergraphError(f"family generators need m >= 5, got m={m}")


def gen_b_p(k: int, m: int) -> LabeledHypergraph:
    """B_m^P: a theta between ``v`` and ``w`` plus ``m - 5`` pendant edges at ``v``.

    The three v-w paths are ``g``, ``e1`` then ``f1`` (through ``a``) and
    ``e2`` then ``f2`` (through ``b``). Pendant edges at ``v`` are ``p1..``.
    """
    _check_family_params(k, m)
    a_side = [f"a{i}" for i in range(1, k - 1)]
    b_side = [f"b{i}" for i in range(1, k - 1)]
    b = _Builder(k, ["v", "a", "b", "w", *a_side, *b_side])
    b.add("e1", ["v", *a_side, "a"])
    b.add("e2", ["v", *b_side, "b"])
    b.add("f1", ["a", "w"])
    b.add("f2", ["b", "w"])
    b.add("g", ["v", "w"])
    for i in range(1, m - 4):
        b.add(f"p{i}", ["v"])
    return b.build()


def gen_b_l1(k: int, m: int) -> LabeledHypergraph:
    """B_m^L(1): three edges from ``u1`` to ``u2, u3, u4`` closed by ``e_m = {u2,u3,u4,..}``."""
    _check_family_params(k, m)
    b = _Builder(k, ["u1", "u2", "u3", "u4"])
    for i in range(1, m - 3):
        b.add(f"e{i}", ["u1"])
    b.add(f"e{m - 3}", ["u1", "u2"])
    b.add(f"e{m - 2}", ["u1", "u3"])
    b.add(f"e{m - 1}", ["u1", "u4"])
    b.add(f"e{m}", ["u2", "u3", "u4"])
    return b.build()


def gen_b_l2(k: int, m: int) -> LabeledHypergraph:
    """B_m^L(2): ``e_m = {v1,v2,v3,..}`` with ``v1, v2, v3`` each joined to ``v4``."""
    _check_family_params(k, m)
    b = _Builder(k, ["v1", "v2", "v3", "v4"])
    for i in range(1, m - 3):
        b.add(f"e{i}", ["v1"])
    b.add(f"e{m - 3}", ["v1", "v4"])
    b.add(f"e{m - 2}", ["v2", "v4"])
    b.add(f"e{m - 1}", ["v3", "v4"])
    b.add(f"e{m}", ["v1", "v2", "v3"])
    return b.build()


FAMILIES = {"bp": gen_b_p, "bl1": gen_b_l1, "bl2": gen_b_l2}


# ---------------------------------------------------------------------------
# Edge surgery


@dataclass(frozen=True)
class EdgeSwap:
    remove: tuple[Edge, ...]
    add: tuple[Edge, ...]

    @classmethod
    def of(cls, remove: Iterable[Iterable[int]], add: Iterable[Iterable[int]]) -> "EdgeSwap":
        return cls(tuple(_as_edge(e) for e in remove), tuple(_as_edge(e) for e in add))


def edge_swap(H: Hypergraph, swap: EdgeSwap) -> Hypergraph:
    """Delete ``swap.remove`` from ``H`` and append ``swap.add``; vertices are unchanged."""
    present = set(H.edges)
    for e in swap.remove:
        if e not in present:
            raise HypergraphError(f"cannot remove {list(e)}: not an edge")
    if len(set(swap.remove)) != len(swap.remove):
        raise HypergraphError("swap removes the same edge twice")
    dropped = set(swap.remove)
    kept = [e for e in H.edges if e not in dropped]
    # added edges are checked against the graph after removal
    current = set(kept)
    for e in swap.add:
        if len(e) != H.k:
            raise HypergraphError(f"cannot add {list(e)}: cardinality {len(e)} != {H.k}")
        if e in current:
            raise HypergraphError(f"cannot add {list(e)}: edge already present")
        current.add(e)
    return Hypergraph(H.k, H.n, tuple(kept) + tuple(swap.add))


def b_p_to_b_l2_swap(bp: LabeledHypergraph) -> EdgeSwap:
    """The exchange ``e1, e2 -> e1', e2'`` that turns B_m^P into B_m^L(2).

    ``e1' = {v, a, b, a2..a_{k-2}}`` and ``e2' = {v, a1, b1..b_{k-2}}``.
    """
    k = bp.graph.k
    r = bp.vertex_roles
    a_rest = [r[f"a{i}"] for i in range(2, k - 1)]
    b_all = [r[f"b{i}"] for i in range(1, k - 1)]
    e1p = [r["v"], r["a"], r["b"], *a_rest]
    e2p = [r["v"], r["a1"], *b_all]
    return EdgeSwap.of([bp.edge("e1"), bp.edge("e2")], [e1p, e2p])


# ---------------------------------------------------------------------------
# Isomorphism


def are_isomorphic(H1: Hypergraph, H2: Hypergraph, max_vertices: int = 60) -> bool:
    """Decide isomorphism by backtracking over vertex maps.

    Candidates are restricted to equal degree and equal multiset of incident
    edge "shapes"; partial maps are pruned whenever an edge of ``H1`` whose
    vertices are all mapped lands outside ``H2``.
    """
    if max(H1.n, H2.n) > max_vertices:
        raise HypergraphError(
            f"isomorphism test limited to {max_vertices} vertices (got {H1.n}, {H2.n})"
        )
    if (H1.k, H1.n, H1.m) != (H2.k, H2.n, H2.m):
        return False
    d1, d2 = degrees(H1), degrees(H2)
    if sorted(d1) != sorted(d2):
        return False

    def signature(H: Hypergraph, d: list[int]) -> list[tuple]:
        inc: list[list[tuple[int, ...]]] = [[] for _ in range(H.n)]
        for e in H.edges:
            shape = tuple(sorted(d[u] for u in e))
            for u in e:
                inc[u].append(shape)
        return [(d[v], tuple(sorted(inc[v]))) for v in range(H.n)]

    s1, s2 = signature(H1, d1), signature(H2, d2)
    if sorted(s1) != sorted(s2):
        return False

    edges2 = set(H2.edges)
    inc1: list[list[Edge]] = [[] for _ in range(H1.n)]
    for e in H1.edges:
        for u in e:
            inc1[u].append(e)

    # high-degree, constrained vertices first
    order = sorted(range(H1.n), key=lambda v: (-d1[v], v))
    # prefer vertices adjacent to already-placed ones
    placed_order: list[int] = []
    remaining = set(order)
    while remaining:
        best = None
        for v in order:
            if v not in remaining:
                continue
            if best is None:
                best = v
            if any(u in placed_order for e in inc1[v] for u in e):
                best = v
                break
        placed_order.append(best)
        remaining.discard(best)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int) -> bool:
        for e in inc1[v]:
            if all(u in mapping for u in e):
                if _as_edge(mapping[u] for u in e) not in edges2:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(placed_order):
            return True
        v = placed_order[i]
        for w in range(H2.n):
            if w in used or s2[w] != s1[v]:
                continue
            mapping[v] = w
            used.add(w)
            if consistent(v) and extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)
