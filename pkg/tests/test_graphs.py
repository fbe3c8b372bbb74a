import pytest
from hypothesis import given, strategies as st

from sepal.graphs import (
    BipartiteSeparatedGraph,
    DirectedGraph,
    GraphError,
    SeparatedGraph,
    WeightedGraph,
    as_bipartite,
    classify,
    is_vertex_weighted,
    require_valid,
    validate,
    vertex_weight,
)


def triangle():
    return DirectedGraph.make(
        ("a", "b", "c"),
        [("e", "a", "b"), ("f", "b", "c"), ("g", "a", "c")])


def test_directed_accessors():
    d = triangle()
    assert d.src("e") == "a" and d.rng("e") == "b"
    assert d.out_edges["a"] == ("e", "g")
    assert d.in_edges["c"] == ("f", "g")
    assert validate(d) == []


def test_duplicate_and_bad_names():
    d = DirectedGraph.make(("v", "v"), [("e", "v", "v")])
    assert any("duplicate vertex" in msg for msg in validate(d))
    d = DirectedGraph.make(("v",), [("e x", "v", "v")])
    assert any("whitespace" in msg for msg in validate(d))
    d = DirectedGraph.make(("v", "e"), [("e", "v", "v")])
    assert any("both a vertex and an edge" in msg for msg in validate(d))


def test_unknown_endpoints_reported():
    d = DirectedGraph.make(("v",), [("e", "v", "zz")])
    assert any("unknown range" in msg for msg in validate(d))


def test_separation_must_cover_fiber():
    d = triangle()
    s = SeparatedGraph.make(d, {"a": [["e"]], "b": [["f"]]})
    report = validate(s)
    assert any("missing g" in msg for msg in report)
    good = SeparatedGraph.make(d, {"a": [["e"], ["g"]], "b": [["f"]]})
    assert validate(good) == []


def test_separation_overlap_and_unknown_edge():
    d = triangle()
    s = SeparatedGraph.make(d, {"a": [["e", "g"], ["g"]], "b": [["f"]]})
    assert any("overlap" in msg for msg in validate(s))
    s = SeparatedGraph.make(d, {"a": [["e", "qq"], ["g"]], "b": [["f"]]})
    assert any("unknown edge" in msg for msg in validate(s))


def test_trivial_separation_covers_everything():
    s = SeparatedGraph.with_trivial_separation(triangle())
    assert validate(s) == []
    assert s.sep["a"] == (("e", "g"),)


def test_group_lookup_tables():
    s = SeparatedGraph.make(triangle(), {"a": [["e"], ["g"]], "b": [["f"]]})
    assert s.group_of["e"] == ("e",)
    assert s.group_key["g"] == ("a", 1)


def test_separation_sum_matches_fiber_size():
    # group sizes partition each outgoing fiber
    s = SeparatedGraph.make(triangle(), {"a": [["e"], ["g"]], "b": [["f"]]})
    require_valid(s)
    for v, groups in s.separation:
        assert sum(len(g) for g in groups) == len(s.graph.out_edges[v])


def test_bipartite_level_inference():
    d = DirectedGraph.make(("u", "w"), [("e", "u", "w")])
    b = BipartiteSeparatedGraph.make(SeparatedGraph.with_trivial_separation(d))
    assert b.upper == ("u",) and b.lower == ("w",)
    assert b.is_proper
    with pytest.raises(GraphError):
        BipartiteSeparatedGraph.make(b.base, upper=("u",))


def test_bipartite_edge_direction_checked():
    d = DirectedGraph.make(("u", "w"), [("e", "u", "w"), ("f", "w", "u")])
    s = SeparatedGraph.with_trivial_separation(d)
    b = BipartiteSeparatedGraph.make(s, upper=("u",), lower=("w",))
    report = validate(b)
    assert any("starts at lower vertex" in msg for msg in report)
    assert any("ends at upper vertex" in msg for msg in report)


def test_as_bipartite_rejects_mixed_vertices():
    d = DirectedGraph.make(("a", "b", "c"),
                           [("e", "a", "b"), ("f", "b", "c")])
    s = SeparatedGraph.with_trivial_separation(d)
    with pytest.raises(GraphError):
        as_bipartite(s)


def test_weighted_validation():
    d = DirectedGraph.make(("v",), [("e", "v", "v")])
    g = WeightedGraph.make(d, {"e": 0})
    assert any("positive integers" in msg for msg in validate(g))
    g = WeightedGraph.make(d, {})
    assert any("has no weight" in msg for msg in validate(g))
    d2 = DirectedGraph.make(("v", "z"), [("e", "v", "v")])
    g = WeightedGraph.make(d2, {"e": 1})
    assert any("isolated vertex" in msg for msg in validate(g))


def test_vertex_weight_and_predicate():
    d = DirectedGraph.make(("v", "w"), [("e", "v", "w"), ("f", "v", "w")])
    g = WeightedGraph.make(d, {"e": 2, "f": 1})
    assert vertex_weight(g, "v") == 2
    assert vertex_weight(g, "w") == 0
    assert not is_vertex_weighted(g)
    g2 = WeightedGraph.make(d, {"e": 2, "f": 2})
    assert is_vertex_weighted(g2)
    with pytest.raises(GraphError):
        vertex_weight(g, "zz")


def test_classify_flags():
    d = DirectedGraph.make(("u", "w", "z"), [("e", "u", "w")])
    flags = classify(d)
    assert flags.regular == ("u",)
    assert flags.sinks == ("w", "z")
    assert flags.isolated == ("z",)
    assert flags.bipartiteable
    assert classify(d) == flags  # deterministic and idempotent


def test_graphs_are_hashable_values():
    assert triangle() == triangle()
    assert hash(triangle()) == hash(triangle())
    s = SeparatedGraph.with_trivial_separation(triangle())
    assert len({s, SeparatedGraph.with_trivial_separation(triangle())}) == 1


names = st.sampled_from(["a", "b", "c", "d"])


@given(st.lists(st.tuples(names, names), min_size=1, max_size=5))
def test_trivial_separation_always_validates(pairs):
    vertices = tuple(sorted({x for p in pairs for x in p}))
    edges = [(f"e{i}", s, r) for i, (s, r) in enumerate(pairs)]
    g = DirectedGraph.make(vertices, edges)
    assert validate(SeparatedGraph.with_trivial_separation(g)) == []
