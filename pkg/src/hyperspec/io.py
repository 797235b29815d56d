"""JSON file format for hypergraphs.

A document holds ``k``, ``n`` and ``edges`` (list of integer lists), plus
optional ``vertex_roles`` / ``edge_roles`` maps from names to indices.
Any other field is rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import Hypergraph, HypergraphError, LabeledHypergraph, new_hypergraph

REQUIRED = ("k", "n", "edges")
OPTIONAL = ("vertex_roles", "edge_roles")


def to_document(G: Hypergraph | LabeledHypergraph) -> dict[str, Any]:
    if isinstance(G, LabeledHypergraph):
        H = G.graph
        doc: dict[str, Any] = {"k": H.k, "n": H.n, "edges": [list(e) for e in H.edges]}
        if G.vertex_roles:
            doc["vertex_roles"] = dict(G.vertex_roles)
        if G.edge_roles:
            doc["edge_roles"] = dict(G.edge_roles)
        return doc
    return {"k": G.k, "n": G.n, "edges": [list(e) for e in G.edges]}


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise HypergraphError(f"{what} must be an integer, got {value!r}")
    return value


def _roles(value: Any, what: str) -> dict[str, int]:
    if not isinstance(value, dict):
        raise HypergraphError(f"{what} must be an object mapping names to integers")
    return {str(name): _int(idx, f"{what}[{name!r}]") for name, idx in value.items()}


def from_document(doc: Any) -> LabeledHypergraph:
    if not isinstance(doc, dict):
        raise HypergraphError("hypergraph document must be a JSON object")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise HypergraphError(f"unknown field(s): {', '.join(unknown)}")
    missing = [f for f in REQUIRED if f not in doc]
    if missing:
        raise HypergraphError(f"missing field(s): {', '.join(missing)}")
    k = _int(doc["k"], "k")
    n = _int(doc["n"], "n")
    if not isinstance(doc["edges"], list):
        raise HypergraphError("edges must be a list of integer lists")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, list):
            raise HypergraphError(f"edges[{i}] must be a list")
        edges.append([_int(u, f"edges[{i}]") for u in e])
    H = new_hypergraph(k, n, edges)
    return LabeledHypergraph(
        H,
        _roles(doc.get("vertex_roles", {}), "vertex_roles"),
        _roles(doc.get("edge_roles", {}), "edge_roles"),
    )


def dumps(G: Hypergraph | LabeledHypergraph) -> str:
    return json.dumps(to_document(G), indent=2) + "\n"


def loads(text: str) -> LabeledHypergraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def read_hypergraph(path: str | Path) -> LabeledHypergraph:
    return loads(Path(path).read_text())


def write_hypergraph(G: Hypergraph | LabeledHypergraph, path: str | Path) -> None:
    Path(path).write_text(dumps(G))
