import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedcp.corpus import enumerate_graphs
from gradedcp.graph import (
    DirectedGraph,
    GraphParseError,
    classify_vertices,
    enumerate_paths,
    parse_graph,
    serialize_graph,
    sinks,
)


def test_parse_single_edge(g_edge):
    assert g_edge.vertices == ("v1", "v2")
    assert g_edge.edges == ("f1",)
    assert (g_edge.source["f1"], g_edge.range["f1"]) == ("v1", "v2")


def test_parse_isolated_vertex():
    g = parse_graph("vertex v")
    assert g.vertices == ("v",) and g.edges == ()


@pytest.mark.parametrize(
    "text, line",
    [
        ("edge f a b", 1),
        ("vertex v\nvertex v", 2),
        ("vertex a\n\n# note\nedge f a b", 4),
        ("vertex a\nedge f a a\nedge f a a", 3),
        ("vertex", 1),
        ("vertex a\nnode b", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GraphParseError) as exc:
        parse_graph(text)
    assert exc.value.lineno == line
    assert str(exc.value).startswith(f"line {line}:")


def test_classify_vertices(g_edge, g_five, g_loop):
    c = classify_vertices(g_edge)
    assert (set(c.sinks), set(c.sources), set(c.regular)) == ({"v2"}, {"v1"}, {"v1"})
    c = classify_vertices(g_five)
    assert (set(c.sinks), set(c.sources), set(c.regular)) == ({"v1", "v3"}, {"v2", "v5"}, {"v2", "v4", "v5"})
    c = classify_vertices(g_loop)
    assert (set(c.sinks), set(c.sources), set(c.regular)) == (set(), set(), {"v"})


def test_enumerate_paths_examples(g_five, g_loop, g_point):
    assert [p.edges for p in enumerate_paths(g_five, 2)[2]] == [("f4", "f3")]
    loop = enumerate_paths(g_loop, 3)
    assert [len(loop[n]) for n in range(4)] == [1, 1, 1, 1]
    pts = enumerate_paths(g_point, 5)
    assert len(pts[0]) == 1 and all(not pts[n] for n in range(1, 6))


def _matrix_power_sum(g, n):
    A = g.adjacency_matrix()
    k = len(A)
    M = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(n):
        M = [[sum(M[i][t] * A[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    return sum(map(sum, M))


graphs = st.sampled_from(enumerate_graphs(3, 3))


@given(graphs, st.integers(0, 4))
def test_path_counts_match_adjacency_powers(g, n):
    assert len(enumerate_paths(g, n)[n]) == _matrix_power_sum(g, n)


@given(graphs)
def test_vertex_classes_partition(g):
    c = classify_vertices(g)
    assert not set(c.sinks) & set(c.regular)
    assert set(c.sinks) | set(c.regular) == set(g.vertices)
    assert set(sinks(g)) == c.sinks


@given(graphs)
def test_serialize_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


def test_paths_compose(g_five):
    for n, ps in enumerate_paths(g_five, 3).items():
        for p in ps:
            assert p.length == n
            for a, b in zip(p.edges, p.edges[1:]):
                assert g_five.range[a] == g_five.source[b]


def test_acyclicity_and_longest_path(g_five, g_loop):
    assert g_five.is_acyclic() and g_five.longest_path_length() == 2
    assert not g_loop.is_acyclic() and g_loop.longest_path_length() is None


def test_from_edges_rejects_unknown_vertex():
    with pytest.raises(ValueError):
        DirectedGraph.from_edges(["a"], [("f", "a", "b")])
