from __future__ import annotations

import numpy as np
import pytest
import scipy.sparse
import scipy.sparse.csgraph
from hypothesis import given, settings
from hypothesis import strategies as st

from gendegree import networks
from gendegree.errors import (
    EdgeStateError,
    InvalidSizeError,
    LoopError,
    MalformedInputError,
    SizeLimitError,
)
from gendegree.graph import (
    Graph,
    add_edge,
    balanced_adjacency,
    complete,
    components,
    cycle,
    degree,
    disjoint_union,
    empty,
    format_edge_list,
    is_connected,
    laplacian,
    non_edges,
    parse_edge_list,
    path,
    random_graph,
    read_edge_list,
    remove_edge,
    star,
    symmetric_pairs,
    toggle_edge,
)

from conftest import graphs
from oracles import brute_symmetric_pairs


# -- construction --------------------------------------------------------------


def test_graph_is_immutable():
    g = path(3)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = 0


@pytest.mark.parametrize(
    "adj, error",
    [
        ([[0, 1], [0, 0]], ValueError),
        ([[1, 0], [0, 0]], LoopError),
        ([[0, 2], [2, 0]], ValueError),
    ],
)
def test_graph_rejects_bad_adjacency(adj, error):
    with pytest.raises(error):
        Graph(["a", "b"], adj)


def test_graph_rejects_duplicate_and_empty_labels():
    with pytest.raises(MalformedInputError):
        Graph(["a", "a"], np.zeros((2, 2)))
    with pytest.raises(MalformedInputError):
        Graph(["a", ""], np.zeros((2, 2)))
    with pytest.raises(InvalidSizeError):
        Graph([], np.zeros((0, 0)))


def test_from_edges_collapses_duplicates_and_rejects_loops():
    g = Graph.from_edges(["a", "b", "c"], [(0, 1), (1, 0), (1, 2)])
    assert g.num_edges == 2
    with pytest.raises(LoopError):
        Graph.from_edges(["a", "b"], [(1, 1)])


# -- parsing -------------------------------------------------------------------


def test_parse_comments_blank_lines_and_order():
    g = parse_edge_list("# comment\n\nb a\n  a c  \n")
    assert g.labels == ("b", "a", "c")
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_nodes_directive_fixes_order_and_isolated_nodes():
    g = parse_edge_list("%nodes: 1,2,3,4,5\n2 3\n1 2\n3 4\n")
    assert g.labels == ("1", "2", "3", "4", "5")
    assert degree(g).values.tolist() == [1, 2, 2, 1, 0]


def test_parse_isolated_nodes_argument():
    g = parse_edge_list("a b\n", isolated_nodes=["z"])
    assert g.labels == ("a", "b", "z")
    assert g.neighbors(2).size == 0


@pytest.mark.parametrize(
    "text, line",
    [
        ("a b\na a\n", 2),
        ("a b c\n", 1),
        ("# x\nlonely\n", 2),
        ("%nodes: a,b\na c\n", 2),
        ("%nodes: a,,b\n", 1),
        ("%nodes: a,a\n", 1),
        ("%weights: 1\n", 1),
        ("a b\n%nodes: a,b\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MalformedInputError, match=f"line {line}:"):
        parse_edge_list(text)


def test_parse_empty_input():
    with pytest.raises(MalformedInputError):
        parse_edge_list("# nothing\n")


@given(graphs())
def test_format_parse_round_trip(g):
    assert parse_edge_list(format_edge_list(g)) == g


@pytest.mark.parametrize("name", sorted(networks.REGISTRY))
def test_fixture_files_match_builders(fixtures_dir, name):
    assert read_edge_list(fixtures_dir / f"{name}.edges") == networks.REGISTRY[name]()


# -- derived matrices ----------------------------------------------------------


@given(graphs())
def test_laplacian_rows_sum_to_zero_and_is_psd(g):
    lap = laplacian(g)
    assert (lap.sum(axis=1) == 0).all()
    assert (lap == lap.T).all()
    assert np.linalg.eigvalsh(lap.astype(float)).min() >= -1e-9


@given(graphs())
def test_balanced_adjacency_rows_sum_to_max_degree(g):
    bal = balanced_adjacency(g)
    d = degree(g)
    assert (bal.sum(axis=1) == d.max_degree).all()
    assert (bal >= 0).all()
    assert np.diagonal(bal).min() == d.max_degree - d.values.max() == 0


def test_balanced_adjacency_loops_example():
    bal = balanced_adjacency(networks.loops_example())
    assert np.diagonal(bal).tolist() == [3, 1, 0, 0, 1, 1]


def test_degree_vector():
    d = degree(networks.path_with_isolated())
    assert d.values.tolist() == [1, 2, 2, 1, 0]
    assert (d.max_degree, d.min_degree, d.is_regular) == (2, 0, False)
    assert degree(networks.cubic8()).is_regular


@given(graphs())
def test_components_match_scipy(g):
    ours = components(g)
    count, labels = scipy.sparse.csgraph.connected_components(
        scipy.sparse.csr_matrix(g.adjacency), directed=False
    )
    assert len(ours) == count
    for block in ours:
        assert len(set(labels[block])) == 1
    assert sorted(k for b in ours for k in b) == list(range(g.n))
    assert is_connected(g) == (count == 1)


# -- generators ----------------------------------------------------------------


def test_generators():
    assert degree(star(5)).values.tolist() == [4, 1, 1, 1, 1]
    assert path(4).num_edges == 3
    assert degree(cycle(5)).is_regular and cycle(5).num_edges == 5
    assert complete(4).num_edges == 6
    assert empty(3).num_edges == 0
    assert star(1).num_edges == 0


@pytest.mark.parametrize("make", [star, path, complete, empty])
def test_generators_reject_nonpositive_size(make):
    with pytest.raises(InvalidSizeError):
        make(0)


def test_cycle_needs_three_nodes():
    with pytest.raises(InvalidSizeError):
        cycle(2)


def test_disjoint_union_prefixes_on_clash():
    u = disjoint_union(path(2), path(3))
    assert u.n == 5 and u.num_edges == 3
    assert u.labels[0] == "g0:1" and u.labels[2] == "g1:1"
    assert len(components(u)) == 2


def test_random_graph_connected_and_reproducible():
    a = random_graph(np.random.default_rng(3), 3, 12, connected=True)
    b = random_graph(np.random.default_rng(3), 3, 12, connected=True)
    assert a == b and is_connected(a) and 3 <= a.n <= 12


# -- edits ---------------------------------------------------------------------


@given(graphs(min_n=2), st.data())
def test_add_remove_round_trip(g, data):
    missing = non_edges(g)
    if missing:
        i, j = data.draw(st.sampled_from(missing))
        h = add_edge(g, i, j)
        assert h.has_edge(i, j) and h.num_edges == g.num_edges + 1
        assert remove_edge(h, i, j) == g
        with pytest.raises(EdgeStateError):
            add_edge(h, i, j)
    if g.num_edges:
        i, j = data.draw(st.sampled_from(g.edges()))
        assert toggle_edge(toggle_edge(g, i, j), i, j) == g
        with pytest.raises(EdgeStateError):
            remove_edge(remove_edge(g, i, j), i, j)


def test_edits_reject_loops_and_bad_indices():
    g = path(3)
    with pytest.raises(LoopError):
        add_edge(g, 1, 1)
    with pytest.raises(IndexError):
        add_edge(g, 0, 7)


@given(graphs(max_n=7), st.data())
def test_permute_preserves_structure(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    h = g.permute(perm)
    for i, j in g.edges():
        assert h.has_edge(perm[i], perm[j])
    assert h.labels[perm[0]] == g.labels[0]
    assert h.num_edges == g.num_edges


# -- symmetry ------------------------------------------------------------------


def _labelled(g, pairs):
    return {frozenset(g.labels[k] for k in p) for p in pairs}


def test_symmetric_pairs_reference_networks():
    g = networks.path_with_isolated()
    assert _labelled(g, symmetric_pairs(g)) == {frozenset("14"), frozenset("23")}
    g = networks.path5()
    assert _labelled(g, symmetric_pairs(g)) == {frozenset("15"), frozenset("24")}
    g = networks.two_triangles_base()
    assert frozenset({2, 5}) in symmetric_pairs(g)


def test_symmetric_pairs_complete_graph():
    pairs = symmetric_pairs(complete(4))
    assert pairs == {frozenset((i, j)) for i in range(4) for j in range(i + 1, 4)}


def test_symmetric_pairs_size_limit():
    with pytest.raises(SizeLimitError):
        symmetric_pairs(path(13))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_symmetric_pairs_match_brute_force(g):
    pairs = symmetric_pairs(g)
    assert pairs == brute_symmetric_pairs(g.adjacency)
    d = degree(g).values
    assert all(d[i] == d[j] for i, j in map(tuple, pairs))
