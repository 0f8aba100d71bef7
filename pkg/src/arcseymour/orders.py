"""Exact median orders by subset dynamic programming.

A median order lists the vertices so that the number (``count`` mode) or
total weight (``weight`` mode) of backward arcs, arcs ``v_i -> v_j`` with
``j < i``, is as small as possible. Among optimal orders the lexicographically
smallest one is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import ArcWeightedDigraph
from .kernels import median_kernel
from .weights import VertexReport, neighborhood_sizes, report

COUNT = "count"
WEIGHT = "weight"
MODES = (COUNT, WEIGHT)
DEFAULT_CAP = 20


class OrderCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class MedianOrder:
    order: tuple[int, ...]
    backward: Fraction
    mode: str = COUNT

    def serialize(self) -> str:
        return " ".join(map(str, self.order)) + f"\nbackward {self.backward}\n"


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def backward_weight(D: ArcWeightedDigraph, order: Sequence[int], mode: str = COUNT) -> Fraction:
    _check_mode(mode)
    if sorted(order) != list(range(D.n)):
        raise ValueError("order is not a permutation of the vertices")
    position = {v: i for i, v in enumerate(order)}
    total = Fraction(0)
    for (u, v), w in D.arcs.items():
        if position[u] > position[v]:
            total += 1 if mode == COUNT else w
    return total


def _cost_matrix(D: ArcWeightedDigraph, mode: str):
    if mode == COUNT:
        return D.presence_matrix.astype("int64"), 1
    return D.scaled_weights


def median_order(D: ArcWeightedDigraph, mode: str = COUNT, cap: int = DEFAULT_CAP) -> MedianOrder:
    _check_mode(mode)
    if D.n > cap:
        raise OrderCapExceeded(f"{D.n} vertices exceeds the median-order cap of {cap}")
    if D.n == 0:
        return MedianOrder((), Fraction(0), mode)
    W, scale = _cost_matrix(D, mode)
    order, best = median_kernel(W)
    return MedianOrder(tuple(int(v) for v in order), Fraction(best, scale), mode)


@dataclass(frozen=True)
class LastVertexCheck:
    is_seymour: bool
    order: MedianOrder
    vertex: int
    report: VertexReport | None
    first_size: int
    second_size: int


def last_vertex_seymour(D: ArcWeightedDigraph, mode: str = COUNT, cap: int = DEFAULT_CAP) -> LastVertexCheck:
    """Whether the last vertex of a median order is a Seymour vertex.

    ``count`` mode judges by neighborhood sizes, ``weight`` mode by the
    arc-weighted delta.
    """
    mo = median_order(D, mode, cap)
    if not mo.order:
        raise ValueError("empty graph has no last vertex")
    last = mo.order[-1]
    first, second = neighborhood_sizes(D)
    rec = report(D)[last]
    if mode == COUNT:
        ok = bool(first[last] <= second[last])
    else:
        ok = rec.weakly_expanding
    return LastVertexCheck(ok, mo, last, rec, int(first[last]), int(second[last]))
