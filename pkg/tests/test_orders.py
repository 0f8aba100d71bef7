from itertools import permutations

import pytest
from hypothesis import given, settings

from arcseymour.graph import ArcWeightedDigraph, reverse
from arcseymour.harness import generate_tournament
from arcseymour.orders import (
    COUNT,
    WEIGHT,
    OrderCapExceeded,
    backward_weight,
    last_vertex_seymour,
    median_order,
)

from .conftest import digraphs, make_c3


def brute_force(D, mode):
    """Minimum backward weight and the first permutation achieving it."""
    best = None
    for perm in permutations(D.vertices):
        w = backward_weight(D, perm, mode)
        if best is None or w < best[0]:
            best = (w, perm)
    return best


def test_tt3(tt3):
    mo = median_order(tt3)
    assert mo.order == (0, 1, 2) and mo.backward == 0


def test_c3_count(c3):
    mo = median_order(c3, COUNT)
    assert mo.order == (0, 1, 2) and mo.backward == 1


def test_c3_weighted():
    D = make_c3((1, 2, 4))
    mo = median_order(D, WEIGHT)
    assert mo.order == (1, 2, 0) and mo.backward == 1
    assert brute_force(D, WEIGHT) == (1, (1, 2, 0))


def test_backward_weight_examples(tt3):
    assert backward_weight(tt3, (0, 1, 2)) == 0
    assert backward_weight(tt3, (2, 1, 0), COUNT) == 3
    assert backward_weight(make_c3((1, 2, 4)), (0, 1, 2), WEIGHT) == 4


def test_backward_weight_errors(tt3):
    with pytest.raises(ValueError):
        backward_weight(tt3, (0, 1))
    with pytest.raises(ValueError):
        backward_weight(tt3, (0, 1, 1))
    with pytest.raises(ValueError):
        backward_weight(tt3, (0, 1, 2), "heaviest")


def test_zero_arcs_count_only_in_count_mode():
    D = ArcWeightedDigraph.from_arcs(2, [(1, 0, 0)])
    assert median_order(D, WEIGHT).order == (0, 1)
    assert median_order(D, COUNT).order == (1, 0)


def test_cap():
    D = generate_tournament(9, "unit", 1)
    with pytest.raises(OrderCapExceeded):
        median_order(D, cap=8)
    with pytest.raises(OrderCapExceeded):
        last_vertex_seymour(D, cap=8)


def test_serialization():
    D = make_c3((1, 2, 4))
    assert median_order(D, WEIGHT).serialize() == "1 2 0\nbackward 1\n"


def test_last_vertex_tt3(tt3):
    check = last_vertex_seymour(tt3)
    assert check.is_seymour and check.vertex == 2


def test_rational_weights_stay_exact():
    D = ArcWeightedDigraph.from_arcs(3, [(0, 1, "1/3"), (1, 2, "1/2"), (2, 0, "1/6")])
    mo = median_order(D, WEIGHT)
    assert str(mo.backward) == "1/6" and mo.order == (0, 1, 2)


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=8, weights="int0"))
def test_optimal_and_lexicographically_first_count(D):
    mo = median_order(D, COUNT)
    assert (mo.backward, mo.order) == brute_force(D, COUNT)
    assert backward_weight(D, mo.order, COUNT) == mo.backward


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=8, weights="rational"))
def test_optimal_and_lexicographically_first_weight(D):
    mo = median_order(D, WEIGHT)
    assert (mo.backward, mo.order) == brute_force(D, WEIGHT)
    assert backward_weight(D, mo.order, WEIGHT) == mo.backward


@given(digraphs(max_n=7, weights="rational"))
def test_reversal_duality(D):
    for mode in (COUNT, WEIGHT):
        mo = median_order(D, mode)
        assert backward_weight(reverse(D), mo.order[::-1], mode) == mo.backward
        assert median_order(reverse(D), mode).backward == mo.backward


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=10, tournament=True))
def test_last_vertex_of_median_order_is_seymour_in_tournaments(D):
    assert last_vertex_seymour(D.unit(), COUNT).is_seymour
