from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import strategies as st

from arcseymour.graph import ArcWeightedDigraph

# worked-example vertices
V, U1, U2, U3, U4 = range(5)


def make_c3(weights=(1, 1, 1)):
    return ArcWeightedDigraph.from_arcs(3, [(0, 1, weights[0]), (1, 2, weights[1]), (2, 0, weights[2])])


def make_tt3():
    return ArcWeightedDigraph.from_arcs(3, [(0, 1), (0, 2), (1, 2)])


def make_fixp():
    return ArcWeightedDigraph.from_arcs(5, [
        (V, U1, 3), (V, U3, 6), (U3, U1, 4), (U1, U2, 2), (U1, U4, 5), (U3, U4, 1),
    ])


@pytest.fixture
def c3():
    return make_c3()


@pytest.fixture
def tt3():
    return make_tt3()


@pytest.fixture
def fixp():
    return make_fixp()


def weight_values(kind):
    if kind == "posint":
        return st.integers(1, 4).map(Fraction)
    if kind == "int0":
        return st.integers(0, 4).map(Fraction)
    return st.builds(Fraction, st.integers(0, 6), st.integers(1, 6))


@st.composite
def digraphs(draw, min_n=1, max_n=7, weights="rational", tournament=False):
    n = draw(st.integers(min_n, max_n))
    arcs = {}
    for u, v in combinations(range(n), 2):
        choice = draw(st.sampled_from((1, 2) if tournament else (0, 1, 2)))
        if choice == 0:
            continue
        arc = (u, v) if choice == 1 else (v, u)
        arcs[arc] = draw(weight_values(weights))
    return ArcWeightedDigraph(n, arcs)


@st.composite
def vertex_weightings(draw, n, positive=False):
    from arcseymour.graph import VertexWeighting

    lo = 1 if positive else 0
    return VertexWeighting(tuple(
        Fraction(draw(st.integers(lo, 6)), draw(st.integers(1, 4))) for _ in range(n)
    ))


@st.composite
def triangle_full_digraphs(draw, max_n=7):
    """Random oriented graph pruned until every remaining arc lies in a directed triangle."""
    D = draw(digraphs(min_n=3, max_n=max_n, weights="posint"))
    arcs = set(D.arcs)
    while True:
        keep = {(u, v) for (u, v) in arcs if any((v, w) in arcs and (w, u) in arcs for w in range(D.n))}
        if keep == arcs:
            break
        arcs = keep
    return ArcWeightedDigraph(D.n, {a: D.arcs[a] for a in arcs})


# acceptance results, printed once at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
