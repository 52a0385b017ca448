import pytest

from acyclic.families import kneser_graph, paley_graph
from acyclic.algebra import FiniteField
from acyclic.graph_io import (
    SCHEMA,
    from_dimacs,
    from_json,
    graph_hash,
    graph_to_dict,
    read_graph,
    to_dimacs,
    to_json,
)


def test_dimacs_round_trip_with_labels():
    g = kneser_graph(5, 2).graph
    text = to_dimacs(g, "kneser n=5 k=2")
    h, comments = from_dimacs(text)
    assert h == g
    assert comments == ["kneser n=5 k=2"]
    assert to_dimacs(h, "\n".join(comments)) == text


def test_dimacs_header():
    text = to_dimacs(kneser_graph(5, 2).graph)
    assert "p edge 10 15" in text
    assert text.count("\ne ") == 15


def test_json_round_trip():
    g = paley_graph(FiniteField(3, 2, [1, 0, 1]), complement=True).graph
    text = to_json(g)
    assert from_json(text) == g
    assert to_json(from_json(text)) == text
    assert graph_to_dict(g)["schema"] == SCHEMA


@pytest.mark.parametrize(
    "text",
    ["e 1 2\n", "p edge 3 2\ne 1 2\n", "p edge 3\n", "x nonsense\n", "p edge 2 1\ne 1 1\n"],
)
def test_dimacs_rejects_malformed(text):
    with pytest.raises(ValueError):
        from_dimacs(text)


def test_read_graph_detects_format(tmp_path):
    g = kneser_graph(5, 2).graph
    (tmp_path / "a.json").write_text(to_json(g))
    (tmp_path / "a.dimacs").write_text(to_dimacs(g))
    assert read_graph(str(tmp_path / "a.json")) == read_graph(str(tmp_path / "a.dimacs")) == g


def test_hash_ignores_labels():
    g = kneser_graph(5, 2).graph
    bare = from_dimacs("\n".join(l for l in to_dimacs(g).splitlines() if "label" not in l))[0]
    assert graph_hash(bare) == graph_hash(g)
