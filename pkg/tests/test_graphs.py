import io
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparselogic.errors import CapabilityError, ParameterError
from sparselogic.graphs import (
    Ball,
    ComponentKind,
    GnpParams,
    Graph,
    automorphism_count,
    ball,
    complete_graph,
    components,
    count_simple_paths_from,
    count_cycles,
    cycle_census,
    cycle_graph,
    disjoint_union,
    has_isolated_triangle,
    has_triangle,
    has_unspiked_triangle,
    path_graph,
    read_edge_list,
    sample_gnp,
    star_graph,
    triangles,
    write_edge_list,
    _pair_count,
    _pairs_from_indices,
)


# -- construction invariants ---------------------------------------------------


def test_graph_rejects_self_loops():
    with pytest.raises(ParameterError):
        Graph(3, [(1, 1)])


def test_graph_rejects_duplicates():
    with pytest.raises(ParameterError):
        Graph(3, [(0, 1), (1, 0)])


def test_graph_rejects_out_of_range():
    with pytest.raises(ParameterError):
        Graph(3, [(0, 3)])


def test_edges_canonicalized():
    g = Graph(4, [(3, 1), (0, 2)])
    assert g.edges == ((0, 2), (1, 3))


# -- sampling -------------------------------------------------------------------


@given(st.integers(min_value=2, max_value=40))
def test_pair_index_bijection(n):
    idx = np.arange(_pair_count(n))
    assert _pairs_from_indices(n, idx) == list(itertools.combinations(range(n), 2))


def test_sample_zero_c_is_empty():
    assert sample_gnp(GnpParams(5, 0.0, 1)).m == 0


def test_sample_p_one_is_complete():
    assert sample_gnp(GnpParams(2, 2.0, 1)).edges == ((0, 1),)
    assert sample_gnp(GnpParams(4, 4.0, 9)).m == 6


def test_sample_rejects_p_above_one():
    with pytest.raises(ParameterError):
        GnpParams(3, 9.0, 0)


def test_sample_deterministic_in_seed():
    a = sample_gnp(GnpParams(500, 1.2, 77))
    b = sample_gnp(GnpParams(500, 1.2, 77))
    c = sample_gnp(GnpParams(500, 1.2, 78))
    assert a.edges == b.edges
    assert a.edges != c.edges


def test_sample_streams_differ():
    a = sample_gnp(GnpParams(500, 1.2, 77), stream_index=0)
    b = sample_gnp(GnpParams(500, 1.2, 77), stream_index=1)
    assert a.edges != b.edges


def test_mean_edge_count_matches_binomial():
    # E[m] = C(1000,2)/1000 = 499.5; sd of the mean over 10000 seeds ~ 0.2233
    n, trials = 1000, 10_000
    total = 0
    for i in range(trials):
        total += sample_gnp(GnpParams(n, 1.0, 2024), stream_index=i).m
    mean = total / trials
    expected = _pair_count(n) / n
    sd_mean = math.sqrt(expected * (1 - 1.0 / n)) / math.sqrt(trials)
    assert abs(mean - expected) <= 3 * sd_mean


# -- components -----------------------------------------------------------------


def test_components_path_is_tree():
    comps = components(path_graph(3))
    assert len(comps) == 1 and comps[0].kind is ComponentKind.TREE


def test_components_triangle_plus_isolated():
    g = disjoint_union(cycle_graph(3), Graph(1, []))
    kinds = sorted(c.kind.value for c in components(g))
    assert kinds == ["tree", "unicyclic"]


def test_components_k4_is_complex():
    comps = components(complete_graph(4))
    assert len(comps) == 1 and comps[0].kind is ComponentKind.COMPLEX


@given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=2 ** 30))
@settings(max_examples=50, deadline=None)
def test_components_partition_and_classification(n, seed):
    if n == 0:
        return
    g = sample_gnp(GnpParams(n, min(2.0, float(n)), seed))
    comps = components(g)
    all_verts = sorted(v for c in comps for v in c.vertices)
    assert all_verts == list(range(n))
    for c in comps:
        diff = c.edge_count - len(c.vertices)
        if c.kind is ComponentKind.TREE:
            assert diff == -1
        elif c.kind is ComponentKind.UNICYCLIC:
            assert diff == 0
        else:
            assert diff > 0


# -- balls ------------------------------------------------------------------------


def test_ball_radius_zero():
    b = ball(path_graph(5), 2, 0)
    assert b.labels == (2,) and b.subgraph.n == 1


def test_ball_star_radius_one():
    g = star_graph(4)
    b = ball(g, 0, 1)
    assert set(b.labels) == set(range(5))
    assert b.subgraph.m == 4


def test_ball_ten_cycle_radius_two():
    # hand BFS: vertices {v-2..v+2} along the cycle, a path on 5 vertices
    g = cycle_graph(10)
    b = ball(g, 0, 2)
    assert set(b.labels) == {8, 9, 0, 1, 2}
    assert b.subgraph.m == 4
    deg = sorted(len(b.subgraph.adj[v]) for v in range(5))
    assert deg == [1, 1, 2, 2, 2]


def test_ball_around_cycle():
    g = disjoint_union(cycle_graph(3), Graph(1, []))
    b = ball(g, (0, 1, 2), 1)
    assert set(b.labels) == {0, 1, 2}


@given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=2 ** 30),
       st.integers(min_value=0, max_value=3))
@settings(max_examples=50, deadline=None)
def test_ball_monotone_in_radius(n, seed, radius):
    g = sample_gnp(GnpParams(n, min(1.5, float(n)), seed))
    small = set(ball(g, 0, radius).labels)
    big = set(ball(g, 0, radius + 1).labels)
    assert small <= big


# -- cycle census ------------------------------------------------------------------


def test_census_forest_empty():
    assert cycle_census(disjoint_union(path_graph(4), star_graph(3)), 5) == {}


def test_census_triangle_and_square():
    g = disjoint_union(cycle_graph(3), cycle_graph(4))
    out = cycle_census(g, 4)
    assert out[3][0] == 1 and out[4][0] == 1
    assert isinstance(out[3][1][0], Ball)


def test_census_k4_triangles():
    out = cycle_census(complete_graph(4), 3)
    assert out[3][0] == 4  # C(4,3) enumeration


def test_census_radius_bounds():
    with pytest.raises(ParameterError):
        cycle_census(cycle_graph(4), 2)
    with pytest.raises(CapabilityError):
        cycle_census(cycle_graph(4), 13)


def test_empirical_three_cycle_mean():
    # sparse-regime check: mean count of 3-cycles ~ c^3/6
    c, n, trials = 0.8, 500, 2000
    total = 0
    totsq = 0
    for i in range(trials):
        g = sample_gnp(GnpParams(n, c, 555), stream_index=i)
        k = count_cycles(g, 3).get(3, 0)
        total += k
        totsq += k * k
    mean = total / trials
    var = totsq / trials - mean ** 2
    stderr = math.sqrt(max(var, 1e-12) / trials)
    assert abs(mean - c ** 3 / 6) <= 3 * stderr


# -- automorphisms ------------------------------------------------------------------


def test_automorphism_examples():
    assert automorphism_count(cycle_graph(3)) == 6
    assert automorphism_count(path_graph(3)) == 2
    assert automorphism_count(cycle_graph(5)) == 10  # dihedral, 2*5


def test_automorphism_cap():
    with pytest.raises(CapabilityError):
        automorphism_count(path_graph(17))


@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=2 ** 30))
@settings(max_examples=40, deadline=None)
def test_automorphism_divides_factorial(n, seed):
    g = sample_gnp(GnpParams(n, min(2.5, float(n)), seed))
    assert math.factorial(n) % automorphism_count(g) == 0


# -- path counting -------------------------------------------------------------------


def test_path_count_isolated_vertex():
    assert count_simple_paths_from(Graph(1, []), 0, 1) == 0


def test_path_count_six_cycle():
    assert count_simple_paths_from(cycle_graph(6), 0, 3) == 2


def test_path_count_zero_length():
    assert count_simple_paths_from(cycle_graph(6), 0, 0) == 1


# -- pattern oracles -----------------------------------------------------------------


def test_triangle_predicates():
    tri = cycle_graph(3)
    assert has_triangle(tri) and has_isolated_triangle(tri) and has_unspiked_triangle(tri)
    spiked = Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    assert has_triangle(spiked)
    assert not has_isolated_triangle(spiked)
    assert not has_unspiked_triangle(spiked)  # vertex 3 is the spike
    # a triangle with a longer tail is unspiked (tail vertex has degree 2)
    tailed = Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)])
    assert has_unspiked_triangle(tailed)
    assert triangles(complete_graph(4)) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


# -- edge-list files -----------------------------------------------------------------


def test_edge_list_round_trip():
    g = sample_gnp(GnpParams(30, 1.5, 5))
    buf = io.StringIO()
    write_edge_list(g, buf)
    buf.seek(0)
    assert read_edge_list(buf) == g


def test_edge_list_errors_carry_line_numbers():
    with pytest.raises(ParameterError, match="line 1"):
        read_edge_list(io.StringIO("5 3\n0 1\n"))
    with pytest.raises(ParameterError, match="line 2"):
        read_edge_list(io.StringIO("n 5\n1 1\n"))
    with pytest.raises(ParameterError, match="line 3"):
        read_edge_list(io.StringIO("n 5\n0 1\n1 0\n"))
    with pytest.raises(ParameterError, match="line 2"):
        read_edge_list(io.StringIO("n 5\n0 9\n"))
