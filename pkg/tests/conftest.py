from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

import brute
from alphametric.generators import gen_chordal, gen_distance_hereditary
from alphametric.graph import Graph

settings.register_profile("repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 12) -> Graph:
    """A random recursive tree plus a drawn subset of the remaining pairs."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    others = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if others:
        edges |= set(draw(st.lists(st.sampled_from(others), max_size=2 * n, unique=True)))
    return Graph.from_edges(n, sorted(edges))


def chordal_graphs(max_n: int = 40):
    return st.builds(
        lambda n, seed, k: gen_chordal(n, seed, k).graph,
        st.integers(1, max_n),
        st.integers(0, 2**64 - 1),
        st.integers(1, 4),
    )


def dh_graphs(max_n: int = 30):
    return st.builds(
        lambda n, seed: gen_distance_hereditary(n, seed).graph,
        st.integers(1, max_n),
        st.integers(0, 2**64 - 1),
    )


def reference(g: Graph):
    """Adjacency dict and distance table from the naive implementation."""
    adj = brute.adjacency(g.n, g.edges())
    return adj, brute.apsp(adj)


_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _criteria[number] = (title, "FAIL" if call.excinfo is not None else "PASS", call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict, seconds = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}  ({seconds:.1f}s)")
