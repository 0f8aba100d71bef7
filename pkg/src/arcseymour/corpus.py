"""Every tournament on at most five vertices, one canonical labelling per isomorphism class.

Each class is stored as its lexicographically smallest sorted arc list over
all relabellings (1, 1, 2, 4 and 12 classes for n = 1..5). The test suite
re-derives the table by brute force.
"""

from itertools import combinations, permutations, product

from .graph import ArcWeightedDigraph

TOURNAMENT_CLASSES = {
    1: (
        (),
    ),
    2: (
        ((0, 1),),
    ),
    3: (
        ((0, 1), (0, 2), (1, 2)),
        ((0, 1), (1, 2), (2, 0)),
    ),
    4: (
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)),
        ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 0)),
        ((0, 1), (0, 2), (1, 2), (1, 3), (3, 0), (3, 2)),
    ),
    5: (
        ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)),
        ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)),
        ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (4, 1)),
        ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (4, 1), (4, 3)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 0)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (4, 0), (4, 3)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 0), (4, 2)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (4, 0), (4, 2), (4, 3)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (4, 0), (4, 1)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4), (3, 1), (3, 4), (4, 0)),
        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4), (3, 1), (4, 0), (4, 3)),
        ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 0), (3, 4), (4, 0), (4, 1)),
    ),
}


def canonical_form(n: int, arcs) -> tuple:
    """Smallest sorted arc tuple over all vertex relabellings."""
    return min(tuple(sorted((p[u], p[v]) for u, v in arcs)) for p in permutations(range(n)))


def labelled_tournaments(n: int):
    """Every labelled tournament on ``n`` vertices (unit weights), ``2**C(n, 2)`` of them."""
    pairs = list(combinations(range(n), 2))
    for bits in product((False, True), repeat=len(pairs)):
        arcs = [(v, u) if flip else (u, v) for (u, v), flip in zip(pairs, bits)]
        yield ArcWeightedDigraph.from_arcs(n, arcs)


def class_representatives(n: int) -> list[ArcWeightedDigraph]:
    return [ArcWeightedDigraph.from_arcs(n, arcs) for arcs in TOURNAMENT_CLASSES[n]]
