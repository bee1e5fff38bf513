import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zxconnect.errors import GraphParseError, NodeRangeError
from zxconnect.graph import (
    ComponentPartition,
    Graph,
    bfs_components,
    complete_graph,
    generate_erdos_renyi,
    generate_fixed_edge_count,
    parse_edge_list,
    shuffle_edges,
)

from conftest import random_multigraph


def closure_partition(graph: Graph) -> ComponentPartition:
    """Reachability by repeated boolean squaring of (A + I)."""
    n = graph.node_count
    reach = np.eye(n, dtype=bool)
    for u, v in graph.edges:
        reach[u, v] = reach[v, u] = True
    for _ in range(max(1, n).bit_length() + 1):
        reach = (reach.astype(int) @ reach.astype(int)) > 0
    return ComponentPartition(tuple(int(np.argmax(reach[i])) for i in range(n)))


graphs = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12).map(
        lambda es: Graph(n, tuple(es))
    )
)


def test_parse_basic():
    g = parse_edge_list("0 1\n1 2")
    assert g.node_count == 3
    assert g.edges == ((0, 1), (1, 2))


def test_parse_keeps_loops_and_duplicates():
    g = parse_edge_list("0 0\n0 1\n0 1")
    assert (g.n, g.m) == (2, 3)
    assert g.edges == ((0, 0), (0, 1), (0, 1))


def test_parse_range_error():
    with pytest.raises(NodeRangeError):
        parse_edge_list("0 5", node_count=3)


def test_parse_comments_blank_and_isolated():
    g = parse_edge_list("# header\n\n  2 0  \n# trailing\n", node_count=5)
    assert g.n == 5 and g.edges == ((2, 0),)


@pytest.mark.parametrize("text, line", [("0 1\n1\n", 2), ("0 x", 1), ("0 1 2", 1), ("-1 2", 1)])
def test_parse_error_reports_line(text, line):
    with pytest.raises(GraphParseError) as err:
        parse_edge_list(text)
    assert err.value.line_number == line


def test_relabel_sparse_labels():
    g = parse_edge_list("10 700\n700 42\n", relabel=True)
    assert g.n == 3
    assert g.edges == ((0, 1), (1, 2))
    assert g.labels == (10, 700, 42)


def test_empty_text_gives_empty_graph():
    assert parse_edge_list("") == Graph(0, ())


@given(graphs)
def test_edge_list_round_trip(g):
    back = parse_edge_list(g.to_edge_list(), node_count=g.n)
    assert back.edges == g.edges and back.n == g.n


@given(graphs)
def test_json_round_trip(g):
    assert Graph.from_json(g.to_json()) == g
    part = bfs_components(g)
    assert ComponentPartition.from_dict(json.loads(json.dumps(part.to_dict()))) == part


def test_er_extremes():
    assert generate_erdos_renyi(4, 0.0, seed=1).m == 0
    k4 = generate_erdos_renyi(4, 1.0, seed=1)
    assert k4.edges == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def test_er_complete_1000():
    assert generate_erdos_renyi(1000, 1.0, seed=0).m == 499500


def test_er_sorted_and_deterministic():
    a = generate_erdos_renyi(30, 0.3, seed=7)
    b = generate_erdos_renyi(30, 0.3, seed=7)
    assert a == b
    assert list(a.edges) == sorted(a.edges)
    assert all(u < v for u, v in a.edges)


def test_er_domain_errors():
    with pytest.raises(ValueError):
        generate_erdos_renyi(4, 1.5, seed=0)
    with pytest.raises(ValueError):
        generate_erdos_renyi(0, 0.5, seed=0)


@pytest.mark.parametrize("n", range(1, 9))
def test_er_p1_gives_all_pairs(n):
    assert generate_erdos_renyi(n, 1.0, seed=n).m == n * (n - 1) // 2


def test_fixed_edge_count():
    g = generate_fixed_edge_count(20, 50, seed=3)
    assert g.m == 50
    assert len(set(g.edges)) == 50
    assert list(g.edges) == sorted(g.edges)
    with pytest.raises(ValueError):
        generate_fixed_edge_count(4, 7, seed=0)


def test_shuffle():
    empty = Graph(3, ())
    assert shuffle_edges(empty, seed=1) == empty
    k4 = complete_graph(4)
    assert shuffle_edges(k4, 9) == shuffle_edges(k4, 9)
    assert shuffle_edges(k4, 9).canonical_edges() == k4.canonical_edges()


def test_bfs_examples():
    assert bfs_components(Graph(3, ((0, 1), (1, 2)))).components == [frozenset({0, 1, 2})]
    part = bfs_components(Graph(4, ((0, 1), (2, 3))))
    assert part.component_count == 2
    assert part.components == [frozenset({0, 1}), frozenset({2, 3})]


def test_bfs_matches_matrix_closure_small_graphs():
    rng = random.Random(11)
    for _ in range(400):
        n = rng.randint(1, 6)
        g = random_multigraph(rng, n)
        assert bfs_components(g) == closure_partition(g)


@settings(max_examples=200)
@given(graphs, st.integers(0, 2**32 - 1))
def test_components_invariant_under_shuffle_loops_duplicates(g, seed):
    base = bfs_components(g)
    assert bfs_components(shuffle_edges(g, seed)) == base
    extra = list(g.edges) + [(0, 0)] + list(g.edges[:2])
    assert bfs_components(g.with_edges(extra)) == base


def test_partition_helpers():
    part = ComponentPartition((5, 5, 2, 9))
    assert part.assignment == (0, 0, 1, 2)
    assert part.k == 3
    assert ComponentPartition((0, 0, 0, 0)).refines(part) is False
    assert part.refines(ComponentPartition((0, 0, 0, 0)))
    with pytest.raises(ValueError):
        ComponentPartition.from_groups([[0], [0, 1]], 2)
