"""First and second neighborhood weights and Seymour-vertex classification.

For an arc-weighted graph the first neighborhood weight of ``v`` is the total
weight leaving it. The second neighborhood weight sums, over every ``s``
reachable by a two-step route ``v -> u -> s``, the clamped best excess
``max(0, w(us) - w(vs))`` (with ``w(vs) = 0`` when ``vs`` is not an arc).
A vertex is weakly expanding (a Seymour vertex) when ``beta >= alpha``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import ArcWeightedDigraph, VertexWeighting, neighborhoods
from .kernels import beta_kernel

WEAKLY_EXPANDING = "weakly-expanding"
STRONGLY_CONTRACTING = "strongly-contracting"


def alpha(D: ArcWeightedDigraph, v: int) -> Fraction:
    D.check_vertex(v)
    return sum((D.weight(v, u) for u in D.out_neighbors(v)), Fraction(0))


def beta_term(D: ArcWeightedDigraph, v: int, s: int) -> Fraction:
    D.check_vertex(v)
    D.check_vertex(s)
    if s == v:
        raise ValueError("beta term needs s != v")
    mids = [u for u in D.out_neighbors(v) if D.has_arc(u, s)]
    if not mids:
        raise ValueError(f"no two-step route from {v} to {s}")
    direct = D.weight(v, s)
    return max(Fraction(0), max(D.weight(u, s) - direct for u in mids))


@dataclass(frozen=True)
class VertexReport:
    vertex: int
    alpha: Fraction
    beta_terms: dict[int, Fraction]
    beta: Fraction

    @property
    def delta(self) -> Fraction:
        return self.beta - self.alpha

    @property
    def weakly_expanding(self) -> bool:
        return self.delta >= 0

    @property
    def classification(self) -> str:
        return WEAKLY_EXPANDING if self.weakly_expanding else STRONGLY_CONTRACTING

    def record(self) -> dict:
        return {
            "vertex": self.vertex,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "delta": str(self.delta),
            "classification": self.classification,
        }


@dataclass(frozen=True)
class NeighborhoodReport:
    vertices: tuple[VertexReport, ...]

    def __getitem__(self, v: int) -> VertexReport:
        return self.vertices[v]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def seymour_vertices(self) -> frozenset[int]:
        return frozenset(r.vertex for r in self.vertices if r.weakly_expanding)

    @property
    def min_delta(self) -> Fraction | None:
        return min((r.delta for r in self.vertices), default=None)

    def to_json(self, with_terms: bool = False) -> str:
        records = []
        for r in self.vertices:
            rec = r.record()
            if with_terms:
                rec["beta_terms"] = {str(s): str(t) for s, t in sorted(r.beta_terms.items())}
            records.append(rec)
        return json.dumps({"vertices": records}, indent=2) + "\n"

    def to_table(self) -> str:
        rows = [("vertex", "alpha", "beta", "delta", "classification")]
        rows += [tuple(str(x) for x in r.record().values()) for r in self.vertices]
        widths = [max(len(row[i]) for row in rows) for i in range(5)]
        return "".join("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n"
                       for row in rows)


def report(D: ArcWeightedDigraph) -> NeighborhoodReport:
    """Exact alpha, per-target beta terms, beta and delta for every vertex."""
    W, scale = D.scaled_weights
    alphas, terms, reach = beta_kernel(D.presence_matrix, W)
    out = []
    for v in range(D.n):
        bt = {int(s): Fraction(int(terms[v, s]), scale) for s in np.flatnonzero(reach[v])}
        beta = Fraction(int(sum(int(terms[v, s]) for s in np.flatnonzero(reach[v]))), scale)
        out.append(VertexReport(v, Fraction(int(alphas[v]), scale), bt, beta))
    return NeighborhoodReport(tuple(out))


def seymour_vertices_arc(D: ArcWeightedDigraph) -> frozenset[int]:
    return report(D).seymour_vertices


def seymour_vertices_vw(D: ArcWeightedDigraph, eta: VertexWeighting) -> frozenset[int]:
    """Vertices with ``eta(N1+(v)) <= eta(N2+(v))``; arc weights are ignored."""
    eta.check_domain(D)
    found = set()
    for v in D.vertices:
        nb = neighborhoods(D, v)
        if eta.of(nb.first_out) <= eta.of(nb.second_out):
            found.add(v)
    return frozenset(found)


def neighborhood_sizes(D: ArcWeightedDigraph) -> tuple[np.ndarray, np.ndarray]:
    """``(|N1+(v)|, |N2+(v)|)`` for all vertices at once."""
    P = D.presence_matrix
    Pi = P.astype(np.int64)
    second = ((Pi @ Pi) > 0) & ~P
    np.fill_diagonal(second, False)
    return P.sum(axis=1), second.sum(axis=1)


def seymour_vertices_unweighted(D: ArcWeightedDigraph) -> frozenset[int]:
    first, second = neighborhood_sizes(D)
    return frozenset(int(v) for v in np.flatnonzero(first <= second))
