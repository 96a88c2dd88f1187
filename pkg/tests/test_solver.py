from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gendegree import networks
from gendegree.errors import NumericError, ParameterError, UndefinedError
from gendegree import solver
from gendegree.graph import (
    balanced_adjacency,
    complete,
    cycle,
    degree,
    disjoint_union,
    empty,
    laplacian,
    path,
    star,
    symmetric_pairs,
)
from gendegree.solver import (
    DIRECT_SOLVE_LIMIT,
    centrality_index,
    generalized_degree,
    generalized_degree_exact,
    generalized_degree_neumann,
    iterated_degree,
    neumann_beta,
    residual,
    solitariness,
)

from conftest import epsilons, graphs
import oracles


# -- direct solve --------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.sampled_from([Fraction(1, 100), Fraction(1, 4), Fraction(1), Fraction(7, 2)]))
def test_exact_solve_matches_rational_oracle(g, eps):
    expected = np.array([float(v) for v in oracles.exact_generalized_degree(g.adjacency, eps)])
    got = generalized_degree(g, float(eps))
    assert np.abs(got - expected).max() <= 1e-12


def test_epsilon_zero_is_degree():
    g = networks.two_triangles_pendants()
    vec = generalized_degree_exact(g, 0)
    assert vec.values.tolist() == degree(g).values.tolist()
    assert vec.residual == 0.0


def test_pendants_values_at_one():
    x = generalized_degree(networks.two_triangles_pendants(), 1.0)
    a, b, c = oracles.PENDANTS_AT_ONE
    assert x[:5] == pytest.approx([a, a, b, c, c], abs=5e-15)
    assert x.sum() == pytest.approx(14.0, abs=1e-12)


@pytest.mark.parametrize("n", [3, 5, 9])
@pytest.mark.parametrize("eps", [0.1, 1.0, 10.0])
def test_star_closed_form(n, eps):
    center, leaf = oracles.star_closed_form(n, eps)
    x = generalized_degree(star(n), eps)
    assert x[0] == pytest.approx(center, abs=1e-12)
    assert np.allclose(x[1:], leaf, atol=1e-12, rtol=0)


@given(graphs(), epsilons)
def test_residual_is_small(g, eps):
    vec = generalized_degree_exact(g, eps)
    assert np.abs(residual(g, eps, vec.values)).max() <= 1e-10 * max(1, degree(g).max_degree)
    assert vec.residual == pytest.approx(np.abs(residual(g, eps, vec.values)).max())


def test_large_epsilon_reaches_component_means():
    g = disjoint_union(star(4), path(3))
    x = generalized_degree(g, 1e8)
    assert x[:4] == pytest.approx([1.5] * 4, abs=1e-6)
    assert x[4:] == pytest.approx([4 / 3] * 3, abs=1e-6)


def test_values_are_read_only_and_labelled():
    vec = generalized_degree_exact(path(3), 1.0)
    with pytest.raises(ValueError):
        vec.values[0] = 0
    assert list(vec.as_dict()) == ["1", "2", "3"]
    assert len(vec) == 3


@pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf"), "x"])
def test_invalid_epsilon(bad):
    with pytest.raises(ParameterError):
        generalized_degree(path(3), bad)


def test_residual_guard_raises_numeric_error(monkeypatch):
    monkeypatch.setattr(solver, "_solve_direct", lambda g, eps, d: d + 1e-3)
    with pytest.raises(NumericError) as info:
        generalized_degree_exact(path(4), 1.0)
    assert info.value.residual >= 1e-3
    monkeypatch.setattr(solver, "_solve_direct", lambda g, eps, d: d * np.nan)
    with pytest.raises(NumericError):
        generalized_degree_exact(path(4), 1.0)


def test_iterative_route_above_direct_limit():
    n = DIRECT_SOLVE_LIMIT + 2
    g = cycle(n)
    x = generalized_degree(g, 2.0)
    assert np.abs(x - 2.0).max() <= 1e-8


@given(graphs(max_n=9), epsilons)
def test_symmetric_nodes_share_values(g, eps):
    x = generalized_degree(g, eps)
    for pair in symmetric_pairs(g):
        i, j = tuple(pair)
        assert abs(x[i] - x[j]) <= 1e-10


# -- Neumann series ------------------------------------------------------------


@settings(deadline=None)
@given(graphs(max_n=12), st.sampled_from([0.1, 1.0]))
def test_neumann_matches_direct(g, eps):
    series, trace = generalized_degree_neumann(g, eps, tol=1e-13)
    assert trace.converged
    assert np.abs(series.values - generalized_degree(g, eps)).max() <= 1e-8


def test_neumann_trace_shapes():
    g = networks.two_triangles_pendants()
    vec, trace = generalized_degree_neumann(g, 0.5)
    assert trace.beta == neumann_beta(0.5, 4)
    assert len(trace.partial_sums) == len(trace.term_norms) == trace.iterations + 1
    assert np.array_equal(trace.partial_sums[-1], vec.values)
    assert trace.term_norms[-1] < 1e-10
    d = degree(g).values
    assert trace.partial_sums[0] == pytest.approx((1 - trace.beta * 4) * d)


@pytest.mark.parametrize("g", [cycle(6), complete(5), networks.cubic8()], ids=["cycle", "complete", "cubic"])
def test_regular_graph_terms_shrink_by_beta_dmax(g):
    dmax = degree(g).max_degree
    _, trace = generalized_degree_neumann(g, 0.7, tol=1e-12)
    ratios = np.array(trace.term_norms[1:]) / np.array(trace.term_norms[:-1])
    assert ratios == pytest.approx(trace.beta * dmax, rel=1e-9)


def test_neumann_reports_non_convergence():
    vec, trace = generalized_degree_neumann(star(10), 10.0, k_max=3)
    assert not trace.converged
    assert trace.iterations == 3
    assert vec.residual > 1e-3


def test_neumann_partial_sums_follow_iterated_degree():
    g = networks.loops_example()
    eps = 0.3
    dmax = degree(g).max_degree
    beta = neumann_beta(eps, dmax)
    _, trace = generalized_degree_neumann(g, eps, k_max=5, tol=0.0)
    total = np.zeros(g.n)
    for k in range(6):
        total = total + (beta * dmax) ** k * iterated_degree(g, k).values
        assert trace.partial_sums[k] == pytest.approx((1 - beta * dmax) * total, abs=1e-12)


def test_neumann_rejects_bad_arguments():
    with pytest.raises(ParameterError):
        generalized_degree_neumann(path(3), 0.0)
    with pytest.raises(ParameterError):
        generalized_degree_neumann(path(3), 1.0, k_max=0)


# -- iterated degree -----------------------------------------------------------


@given(graphs(), st.integers(0, 30))
def test_iterated_degree_preserves_total(g, k):
    d = degree(g)
    if d.max_degree == 0:
        with pytest.raises(UndefinedError):
            iterated_degree(g, k)
        return
    v = iterated_degree(g, k).values
    assert v.sum() == pytest.approx(d.values.sum(), abs=1e-9)


def test_iterated_degree_matches_figure():
    g = networks.loops_example()
    for k, (n1, n2, n34, n56) in oracles.LOOPS_ITERATED_DEGREE.items():
        v = iterated_degree(g, k).values
        assert v == pytest.approx([n1, n2, n34, n34, n56, n56], abs=1e-9)


def test_iterated_degree_matches_matrix_power():
    g = networks.loops_example()
    step = balanced_adjacency(g) / degree(g).max_degree
    expected = np.linalg.matrix_power(step, 7) @ degree(g).values
    assert iterated_degree(g, 7).values == pytest.approx(expected, abs=1e-12)


# -- solitariness and the centrality index -------------------------------------


@pytest.mark.parametrize("alpha", [0.1, 1.0, 10.0])
def test_solitariness_matches_inverse(alpha):
    g = networks.cubic8()
    q = np.linalg.inv(np.eye(g.n) + alpha * laplacian(g))
    assert solitariness(g, alpha).values == pytest.approx(1 - np.diagonal(q), abs=1e-12)


def test_solitariness_isolated_node_is_zero():
    v = solitariness(networks.path_with_isolated(), 1.0).values
    assert v[4] == 0.0 and (v[:4] > 0).all()
    with pytest.raises(ParameterError):
        solitariness(path(3), 0.0)


def test_centrality_index():
    assert centrality_index(generalized_degree(complete(4), 1.0)) == pytest.approx(1 / 3)
    assert centrality_index(np.array([1.0, 4.0])) == 0.25
    with pytest.raises(UndefinedError):
        centrality_index(generalized_degree(empty(3), 1.0))
