from __future__ import annotations

from hypothesis import given

import brute
from alphametric.generators import cycle, gen_chordal, path
from alphametric.oracle import center_info, central_of_center, exact_eccentricities, furthest_set, locality
from conftest import connected_graphs, reference


def test_eccentricities_of_small_graphs():
    rep = exact_eccentricities(cycle(5))
    assert rep.ecc == [2] * 5 and rep.radius == rep.diameter == 2 and rep.center == list(range(5))
    rep = exact_eccentricities(path(5))
    assert (rep.ecc, rep.radius, rep.diameter, rep.center) == ([4, 3, 2, 3, 4], 2, 4, [2])


def test_chordal_eccentricities_match_naive():
    g = gen_chordal(50, 11).graph
    _, D = reference(g)
    assert exact_eccentricities(g).ecc == brute.eccentricities(D)


def test_center_info_examples():
    info = center_info(path(5))
    assert info.center == [2] and info.diam_of_center == 0 and info.eps_flag == 1
    info = center_info(cycle(6))
    assert info.center == list(range(6)) and info.diam_of_center == 3


def test_chordal_center_diameter_at_most_three():
    for seed in range(30):
        assert center_info(gen_chordal(40, seed).graph).diam_of_center <= 3


def test_furthest_and_locality():
    assert furthest_set(path(5), 0).members == [4]
    assert locality(path(5), 0) == (1, False)
    assert all(locality(cycle(5), v) == (0, True) for v in range(5))


def test_central_of_center_on_path():
    assert central_of_center(path(7)) == [3]


@given(connected_graphs())
def test_locality_matches_definition(g):
    _, D = reference(g)
    ecc = brute.eccentricities(D)
    for v in range(g.n):
        smaller = [D[v][u] for u in range(g.n) if ecc[u] < ecc[v]]
        expected = (min(smaller), False) if smaller else (0, True)
        assert tuple(locality(g, v)) == expected


@given(connected_graphs())
def test_level_sets_nest(g):
    info = center_info(g)
    sizes = [len(level) for level in info.level_sets]
    assert sizes == sorted(sizes) and sizes[-1] == g.n
