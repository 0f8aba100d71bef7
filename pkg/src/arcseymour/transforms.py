"""Graph rewrites: contraction, the auxiliary unweighted expansion, weight
conversions and the tournament blow-up."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .graph import ArcWeightedDigraph, InstanceError, VertexWeighting, is_tournament
from .rng import SplitMix64

DEFAULT_EXPANSION_CAP = 10**6


class ContractionError(ValueError):
    def __init__(self, message: str, offender: int | None = None):
        self.offender = offender
        super().__init__(message)


def contraction_blocker(D: ArcWeightedDigraph, u: int, v: int) -> int | None:
    """First ``x`` breaking the contraction precondition, or None if ``u`` may fold onto ``v``."""
    for x in sorted(D.in_neighbors(u)):
        if D.weight(x, u) > 0 and (x == v or not D.has_arc(x, v)):
            return x
    return None


def can_contract(D: ArcWeightedDigraph, u: int, v: int) -> bool:
    return u != v and contraction_blocker(D, u, v) is None


def contract(D: ArcWeightedDigraph, u: int, v: int) -> tuple[ArcWeightedDigraph, dict[int, int]]:
    """Delete ``u`` and fold each in-arc weight ``w(xu)`` onto ``xv``.

    Requires every ``x`` with ``w(xu) > 0`` to be different from ``v`` and to
    have an arc ``x -> v``. Returns the new graph and the map from surviving
    old indices to new ones. No vertex's delta increases.
    """
    D.check_vertex(u)
    D.check_vertex(v)
    if u == v:
        raise ContractionError("cannot contract a vertex onto itself")
    x = contraction_blocker(D, u, v)
    if x is not None:
        if x == v:
            raise ContractionError(f"{v} -> {u} has nonzero weight", x)
        raise ContractionError(f"{x} -> {u} has nonzero weight but {x} -> {v} is not an arc", x)

    arcs = dict(D.arcs)
    for x in D.in_neighbors(u):
        if D.has_arc(x, v):
            arcs[(x, v)] = arcs[(x, v)] + D.weight(x, u)
    arcs = {(a, b): w for (a, b), w in arcs.items() if u not in (a, b)}
    index = {old: (old if old < u else old - 1) for old in range(D.n) if old != u}
    relabelled = {(index[a], index[b]): w for (a, b), w in arcs.items()}
    return ArcWeightedDigraph(D.n - 1, relabelled, D.allow_two_cycles), index


def drop_zero_arcs(D: ArcWeightedDigraph) -> ArcWeightedDigraph:
    return D.with_weights({a: w for a, w in D.arcs.items() if w != 0})


def common_denominator(D: ArcWeightedDigraph) -> int:
    return lcm(1, *(w.denominator for w in D.arcs.values()))


def rationalize_and_scale(D: ArcWeightedDigraph) -> ArcWeightedDigraph:
    """Multiply every weight by the lcm of the denominators."""
    if any(w == 0 for w in D.arcs.values()):
        raise InstanceError("zero-weight arc present; drop zero arcs first")
    scale = common_denominator(D)
    return D.with_weights({a: w * scale for a, w in D.arcs.items()})


def arc_weights_from_vertex_weights(D: ArcWeightedDigraph, eta: VertexWeighting) -> ArcWeightedDigraph:
    """Same arcs, each ``u -> v`` weighted by the head's vertex weight."""
    eta.check_domain(D)
    return D.with_weights({(u, v): eta[v] for (u, v) in D.arcs})


@dataclass(frozen=True)
class AuxiliaryExpansion:
    """Unweighted graph (all weights 1) whose cardinalities reproduce alpha and beta.

    ``blocks[v]`` lists, in order, the new vertices standing in for ``v``.
    """

    graph: ArcWeightedDigraph
    blocks: tuple[tuple[int, ...], ...]

    def block_comments(self) -> list[str]:
        return [f"block {v}: " + " ".join(map(str, b)) for v, b in enumerate(self.blocks)]


def expansion_block_sizes(D: ArcWeightedDigraph) -> list[int]:
    sizes = []
    for v in D.vertices:
        heaviest = max((D.weight(x, v) for x in D.in_neighbors(v)), default=Fraction(1))
        sizes.append(int(heaviest))
    return sizes


def expand_auxiliary(D: ArcWeightedDigraph, cap: int = DEFAULT_EXPANSION_CAP) -> AuxiliaryExpansion:
    for (u, v), w in D.arcs.items():
        if w.denominator != 1 or w <= 0:
            raise InstanceError(f"arc {u} -> {v} has weight {w}; expansion needs positive integers")
    sizes = expansion_block_sizes(D)
    total = sum(sizes)
    if total > cap:
        raise ValueError(f"expansion would have {total} vertices (cap {cap})")

    blocks = []
    start = 0
    for size in sizes:
        blocks.append(tuple(range(start, start + size)))
        start += size
    arcs = {}
    for (u, v), w in D.arcs.items():
        heads = blocks[v][: int(w)]
        for a in blocks[u]:
            for b in heads:
                arcs[(a, b)] = Fraction(1)
    return AuxiliaryExpansion(ArcWeightedDigraph(total, arcs), tuple(blocks))


def block_ranges(sizes) -> list[range]:
    out, start = [], 0
    for k in sizes:
        out.append(range(start, start + k))
        start += k
    return out


def blowup(T: ArcWeightedDigraph, eta: VertexWeighting, internal_seed: int | None = None,
           carry_weights: bool = False) -> ArcWeightedDigraph:
    """Replace each vertex ``v`` by a block of ``eta(v)`` vertices.

    Block-internal arcs get weight 0 and are oriented transitively (lower index
    first) unless ``internal_seed`` asks for a random orientation. Each arc
    ``u -> v`` of ``T`` becomes a complete bipartite set of weight-1 arcs from
    the ``u`` block to the ``v`` block. With ``carry_weights`` those arcs take
    the weight of ``u -> v`` instead, so zero-weight filler arcs of ``T`` stay
    zero in the blow-up.
    """
    if not is_tournament(T):
        raise InstanceError("blow-up needs a tournament")
    eta.check_domain(T)
    sizes = []
    for v, k in enumerate(eta):
        if k.denominator != 1 or k < 1:
            raise ValueError(f"block size for vertex {v} must be a positive integer, got {k}")
        sizes.append(int(k))
    blocks = block_ranges(sizes)
    rng = SplitMix64(internal_seed) if internal_seed is not None else None
    arcs = {}
    for block in blocks:
        for i in block:
            for j in block:
                if i < j:
                    if rng is not None and rng.coin():
                        arcs[(j, i)] = Fraction(0)
                    else:
                        arcs[(i, j)] = Fraction(0)
    for (u, v), w in T.arcs.items():
        cross = w if carry_weights else Fraction(1)
        for a in blocks[u]:
            for b in blocks[v]:
                arcs[(a, b)] = cross
    return ArcWeightedDigraph(sum(sizes), arcs)
