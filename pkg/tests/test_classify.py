from __future__ import annotations

import pytest
from hypothesis import given

import brute
from alphametric import classify
from alphametric.generators import complete, cycle, gen_chordal, gen_named, path, star
from alphametric.graph import Graph, distance_matrix, interval
from conftest import chordal_graphs, connected_graphs, dh_graphs, reference


def _alpha_reference(g):
    adj, D = reference(g)
    return brute.alpha_brute(D, adj)


@pytest.mark.parametrize("g, expected", [(complete(4), 0), (cycle(4), 2), (cycle(5), 1), (path(6), 0), (star(4), 0)])
def test_alpha_index_small(g, expected):
    assert classify.alpha_index(g) == expected == _alpha_reference(g)


def test_six_cycle_alpha_matches_quadruple_scan():
    # Glue 4-5-0 and 1-2-3 along edge 0-1: a 5-step walk whose ends are adjacent.
    g = cycle(6)
    value, (u, v, w, x) = classify.alpha_witness(g)
    D = distance_matrix(g)
    assert value == _alpha_reference(g) == 4
    assert D[u, w] == D[u, v] + 1 and D[v, x] == D[w, x] + 1 and g.has_edge(v, w)
    assert D[u, v] + 1 + D[w, x] - D[u, x] == value


@pytest.mark.parametrize("g, expected", [(cycle(4), 2), (cycle(5), 0), (cycle(6), 2), (path(5), 0), (star(3), 0)])
def test_thinness_small(g, expected):
    _, D = reference(g)
    assert classify.interval_thinness(g) == expected == brute.thinness_brute(D)


def test_disk_convexity_examples():
    assert classify.disks_convex(cycle(5))
    assert classify.disks_convex(path(6))
    witness = classify.disk_convexity_witness(cycle(6))
    assert witness is not None
    x, y, v, z = witness
    D = distance_matrix(cycle(6))
    assert v in interval(cycle(6), x, y) and D[v, z] > max(D[x, z], D[y, z])


def test_dk_convex_singletons_and_errors():
    g = cycle(6)
    assert all(classify.dk_convex(g, [v], k) for v in range(6) for k in range(4))
    with pytest.raises(ValueError):
        classify.dk_convex(g, [], 0)


def test_triangle_condition_examples():
    assert not classify.triangle_condition(cycle(5))
    assert classify.triangle_condition(complete(4))
    assert all(classify.triangle_condition(gen_chordal(30, s).graph) for s in range(20))


def test_find_isometric_examples():
    assert classify.find_isometric(cycle(3), complete(4)) is not None
    assert classify.find_isometric(cycle(4), cycle(5)) is None
    assert classify.find_isometric(path(3), path(5)).mapping == (0, 1, 2)


def test_forbidden_pattern_profile():
    w = gen_named("w6pp")
    assert (w.n, w.m) == (9, 16)
    p = classify.profile(w)
    assert p.alpha_index == 2 == _alpha_reference(w)
    assert p.disks_convex and p.triangle_condition
    assert p.alpha1_by_characterization is False


def test_pattern_found_inside_larger_host():
    w = gen_named("w6pp")
    host = Graph.from_edges(11, w.edges() + [(0, 9), (9, 10)])
    emb = classify.find_isometric(w, host)
    assert emb is not None
    assert brute.is_isometric_copy(distance_matrix(w).tolist(), distance_matrix(host).tolist(), emb.mapping)


@given(connected_graphs(max_n=9))
def test_alpha_matches_quadruple_scan(g):
    assert classify.alpha_index(g) == _alpha_reference(g)


@given(connected_graphs(max_n=10))
def test_thinness_matches_definition(g):
    _, D = reference(g)
    assert classify.interval_thinness(g) == brute.thinness_brute(D)


@given(connected_graphs(max_n=9))
def test_disk_convexity_matches_definition(g):
    _, D = reference(g)
    assert classify.disks_convex(g) == brute.disks_convex_brute(D)


@given(connected_graphs(max_n=10))
def test_triangle_condition_matches_definition(g):
    adj, D = reference(g)
    assert classify.triangle_condition(g) == brute.triangle_brute(D, adj)


@given(connected_graphs(max_n=10))
def test_dk_convex_of_disks_matches_definition(g):
    _, D = reference(g)
    members = [v for v in range(g.n) if D[0][v] <= 1]
    for k in range(3):
        assert classify.dk_convex(g, members, k) == brute.convex_with_threshold(D, members, k)


@given(connected_graphs(max_n=11))
def test_thinness_at_most_alpha_plus_one(g):
    assert classify.interval_thinness(g) <= classify.alpha_index(g) + 1


@given(chordal_graphs())
def test_chordal_graphs_are_alpha1(g):
    assert classify.alpha_index(g) <= 1


@given(dh_graphs())
def test_distance_hereditary_graphs_are_alpha2(g):
    assert classify.alpha_index(g) <= 2


@given(connected_graphs(min_n=3, max_n=8))
def test_isometric_search_returns_valid_copy(g):
    emb = classify.find_isometric(path(3), g)
    _, D = reference(g)
    if emb is None:
        assert max(max(row) for row in D) < 2
    else:
        assert brute.is_isometric_copy(distance_matrix(path(3)).tolist(), D, emb.mapping)
