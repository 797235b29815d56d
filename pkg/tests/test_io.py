import json

import pytest

from hyperspec import io
from hyperspec.core import FAMILIES, HypergraphError, new_hypergraph


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_round_trip(family, tmp_path):
    L = FAMILIES[family](4, 7)
    path = tmp_path / "g.json"
    io.write_hypergraph(L, path)
    back = io.read_hypergraph(path)
    assert back == L
    assert io.dumps(back) == path.read_text()


def test_plain_hypergraph_has_no_roles():
    doc = io.to_document(new_hypergraph(3, 3, [(0, 1, 2)]))
    assert doc == {"k": 3, "n": 3, "edges": [[0, 1, 2]]}


@pytest.mark.parametrize(
    "doc,msg",
    [
        ({"k": 3, "n": 3, "edges": [[0, 1, 2]], "weights": []}, "unknown field"),
        ({"k": 3, "edges": [[0, 1, 2]]}, "missing"),
        ({"k": "3", "n": 3, "edges": [[0, 1, 2]]}, "integer"),
        ({"k": 3, "n": 3, "edges": [[0, 1]]}, "cardinality"),
        ({"k": 3, "n": 3, "edges": [[0, 1, 2]], "vertex_roles": {"v": 9}}, "out of range"),
        ({"k": 3, "n": 3, "edges": [[0, 1, 2]], "edge_roles": []}, "object"),
        ([1, 2], "JSON object"),
    ],
)
def test_rejects(doc, msg):
    with pytest.raises(HypergraphError, match=msg):
        io.loads(json.dumps(doc))


def test_bad_json():
    with pytest.raises(HypergraphError, match="JSON"):
        io.loads("{")
