"""Arc-weighted oriented graphs, vertex weightings, and the instance file format.

Vertices are the dense indices ``0..n-1``. A present arc of weight 0 is not
the same thing as a missing arc: it still lets the tail see the head's
out-neighbors as second neighbors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Mapping

import numpy as np

from .kernels import as_integer_matrix

Arc = tuple[int, int]


class InstanceError(ValueError):
    """Malformed or invalid instance (bad syntax, loop, two-cycle, ...)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def as_weight(value) -> Fraction:
    w = value if isinstance(value, Fraction) else Fraction(value)
    if w < 0:
        raise InstanceError(f"negative weight {w}")
    return w


@dataclass(frozen=True, eq=True)
class ArcWeightedDigraph:
    """An oriented graph with exact nonnegative rational arc weights.

    ``arcs`` maps ordered pairs ``(u, v)`` to weights. Instances are treated as
    immutable; every transformation returns a new graph.

    ``allow_two_cycles`` relaxes the orientation invariant. It exists only for
    synthetic algebraic checks and is never produced by the parser.
    """

    n: int
    arcs: Mapping[Arc, Fraction]
    allow_two_cycles: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError("vertex count must be nonnegative")
        clean = {}
        for (u, v), w in self.arcs.items():
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"arc ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise InstanceError(f"loop at vertex {u}")
            clean[(u, v)] = as_weight(w)
        if not self.allow_two_cycles:
            for u, v in clean:
                if (v, u) in clean:
                    raise InstanceError(f"two-cycle between {min(u, v)} and {max(u, v)}")
        object.__setattr__(self, "arcs", dict(sorted(clean.items())))

    __hash__ = None

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple], default_weight=1) -> "ArcWeightedDigraph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples."""
        table = {}
        for arc in arcs:
            u, v = arc[0], arc[1]
            w = arc[2] if len(arc) > 2 else default_weight
            if (u, v) in table:
                raise InstanceError(f"duplicate arc ({u}, {v})")
            table[(u, v)] = w
        return cls(n, table)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def weight(self, u: int, v: int) -> Fraction:
        """Weight of ``u -> v``, or 0 when the arc is missing."""
        return self.arcs.get((u, v), Fraction(0))

    def check_vertex(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise KeyError(f"unknown vertex {v}")
        return v

    @cached_property
    def _out(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def _in(self) -> tuple[frozenset[int], ...]:
        inc = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            inc[v].add(u)
        return tuple(frozenset(s) for s in inc)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[self.check_vertex(v)]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[self.check_vertex(v)]

    @cached_property
    def presence_matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n), dtype=np.bool_)
        for u, v in self.arcs:
            P[u, v] = True
        return P

    @cached_property
    def scaled_weights(self) -> tuple[np.ndarray, int]:
        """Integer weight matrix ``W`` and scale ``L`` with ``W[u, v] = L * w(uv)``."""
        scale = lcm(1, *(w.denominator for w in self.arcs.values()))
        rows = [[0] * self.n for _ in range(self.n)]
        for (u, v), w in self.arcs.items():
            rows[u][v] = w.numerator * (scale // w.denominator)
        return as_integer_matrix(rows), scale

    def with_weights(self, weights: Mapping[Arc, Fraction]) -> "ArcWeightedDigraph":
        return ArcWeightedDigraph(self.n, weights, self.allow_two_cycles)

    def unit(self) -> "ArcWeightedDigraph":
        """Same arcs, every weight 1."""
        return self.with_weights({a: Fraction(1) for a in self.arcs})

    def induced(self, keep: Iterable[int]) -> tuple["ArcWeightedDigraph", dict[int, int]]:
        """Subgraph on ``keep`` relabelled densely in ascending order."""
        index = {old: new for new, old in enumerate(sorted(set(keep)))}
        arcs = {(index[u], index[v]): w for (u, v), w in self.arcs.items()
                if u in index and v in index}
        return ArcWeightedDigraph(len(index), arcs, self.allow_two_cycles), index

    def __repr__(self) -> str:
        return f"ArcWeightedDigraph(n={self.n}, arcs={len(self.arcs)})"


@dataclass(frozen=True)
class VertexWeighting:
    """Nonnegative exact weights indexed by vertex."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(as_weight(w) for w in self.weights))

    @classmethod
    def uniform(cls, n: int, value=1) -> "VertexWeighting":
        return cls((Fraction(value),) * n)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> Fraction:
        return self.weights[v]

    def __iter__(self):
        return iter(self.weights)

    def of(self, vertices: Iterable[int]) -> Fraction:
        """Total weight of a vertex set."""
        return sum((self.weights[v] for v in vertices), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def normalized(self) -> "VertexWeighting":
        t = self.total
        if t == 0:
            raise ValueError("cannot normalize an all-zero weighting")
        return VertexWeighting(tuple(w / t for w in self.weights))

    def check_domain(self, D: ArcWeightedDigraph) -> None:
        if len(self.weights) != D.n:
            raise ValueError(f"weighting has {len(self.weights)} entries but the graph has {D.n} vertices")


@dataclass(frozen=True)
class NeighborhoodSets:
    first_out: frozenset[int]
    second_out: frozenset[int]
    first_in: frozenset[int]
    second_in: frozenset[int]


def _second(first: frozenset[int], step, v: int) -> frozenset[int]:
    reached = set()
    for u in first:
        reached |= step(u)
    return frozenset(reached - first - {v})


def neighborhoods(D: ArcWeightedDigraph, v: int) -> NeighborhoodSets:
    """First and second out/in-neighborhoods of ``v`` (arc presence only)."""
    D.check_vertex(v)
    first_out = D.out_neighbors(v)
    first_in = D.in_neighbors(v)
    return NeighborhoodSets(
        first_out=first_out,
        second_out=_second(first_out, D.out_neighbors, v),
        first_in=first_in,
        second_in=_second(first_in, D.in_neighbors, v),
    )


def reverse(D: ArcWeightedDigraph) -> ArcWeightedDigraph:
    return D.with_weights({(v, u): w for (u, v), w in D.arcs.items()})


def is_tournament(D: ArcWeightedDigraph) -> bool:
    for u in range(D.n):
        for v in range(u + 1, D.n):
            if D.has_arc(u, v) == D.has_arc(v, u):
                return False
    return True


def every_arc_in_triangle(D: ArcWeightedDigraph) -> bool:
    """True iff every arc ``u -> v`` closes a directed triangle ``u -> v -> x -> u``."""
    return all(D.out_neighbors(v) & D.in_neighbors(u) for u, v in D.arcs)


# ---------------------------------------------------------------------------
# instance file format

_INT = re.compile(r"^\d+$")
_WEIGHT = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_weight(token: str, line: int | None = None) -> Fraction:
    if token.startswith("-"):
        raise InstanceError(f"negative weight {token!r}", line)
    m = _WEIGHT.match(token)
    if not m:
        raise InstanceError(f"malformed weight {token!r}", line)
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q < 1:
        raise InstanceError(f"zero denominator in {token!r}", line)
    return Fraction(p, q)


def _parse_index(token: str, line: int) -> int:
    if not _INT.match(token):
        raise InstanceError(f"malformed vertex index {token!r}", line)
    return int(token)


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def parse_instance(text: str) -> tuple[ArcWeightedDigraph, VertexWeighting | None]:
    """Parse an instance file; also returns the ``vweight`` weighting if any line sets one."""
    lines = _content_lines(text)
    try:
        number, head = next(lines)
    except StopIteration:
        raise InstanceError("empty instance: expected 'digraph <n>'", 1) from None
    if len(head) != 2 or head[0] != "digraph":
        raise InstanceError("first line must be 'digraph <n>'", number)
    n = _parse_index(head[1], number)
    if n < 1:
        raise InstanceError("digraph needs at least one vertex", number)

    arcs: dict[Arc, Fraction] = {}
    vweights: dict[int, Fraction] = {}
    for number, tokens in lines:
        kind = tokens[0]
        if kind == "arc":
            if len(tokens) != 4:
                raise InstanceError("expected 'arc <u> <v> <w>'", number)
            u, v = _parse_index(tokens[1], number), _parse_index(tokens[2], number)
            w = parse_weight(tokens[3], number)
            for x in (u, v):
                if x >= n:
                    raise InstanceError(f"vertex {x} out of range for n={n}", number)
            if u == v:
                raise InstanceError(f"loop at vertex {u}", number)
            if (u, v) in arcs:
                raise InstanceError(f"duplicate arc {u} {v}", number)
            if (v, u) in arcs:
                raise InstanceError(f"two-cycle between {u} and {v}", number)
            arcs[(u, v)] = w
        elif kind == "vweight":
            if len(tokens) != 3:
                raise InstanceError("expected 'vweight <v> <w>'", number)
            v = _parse_index(tokens[1], number)
            if v >= n:
                raise InstanceError(f"vertex {v} out of range for n={n}", number)
            if v in vweights:
                raise InstanceError(f"duplicate vweight for vertex {v}", number)
            vweights[v] = parse_weight(tokens[2], number)
        else:
            raise InstanceError(f"unknown directive {kind!r}", number)

    D = ArcWeightedDigraph(n, arcs)
    eta = None
    if vweights:
        eta = VertexWeighting(tuple(vweights.get(v, Fraction(0)) for v in range(n)))
    return D, eta


def parse_digraph(text: str) -> ArcWeightedDigraph:
    return parse_instance(text)[0]


def serialize_digraph(D: ArcWeightedDigraph, eta: VertexWeighting | None = None,
                      comments: Iterable[str] = ()) -> str:
    """Canonical instance text: lowest-terms weights, arcs in lexicographic order."""
    out = [f"# {c}" for c in comments]
    out.append(f"digraph {D.n}")
    out.extend(f"arc {u} {v} {w}" for (u, v), w in sorted(D.arcs.items()))
    if eta is not None:
        eta.check_domain(D)
        out.extend(f"vweight {v} {w}" for v, w in enumerate(eta))
    return "\n".join(out) + "\n"


def parse_weighting(text: str, n: int | None = None) -> VertexWeighting:
    """Read ``vweight <v> <w>`` (or certificate-style ``w <v> <w>``) lines.

    Other directives are ignored so an instance file with vweights also works.
    Vertices without a line get weight 0.
    """
    table: dict[int, Fraction] = {}
    for number, tokens in _content_lines(text):
        if tokens[0] not in ("vweight", "w"):
            if tokens[0] == "digraph" and n is None and len(tokens) == 2:
                n = _parse_index(tokens[1], number)
            continue
        if len(tokens) != 3:
            raise InstanceError(f"expected '{tokens[0]} <v> <w>'", number)
        v = _parse_index(tokens[1], number)
        if v in table:
            raise InstanceError(f"duplicate weight for vertex {v}", number)
        table[v] = parse_weight(tokens[2], number)
    size = n if n is not None else (max(table) + 1 if table else 0)
    if any(v >= size for v in table):
        raise InstanceError(f"weight for vertex outside 0..{size - 1}")
    return VertexWeighting(tuple(table.get(v, Fraction(0)) for v in range(size)))


def serialize_weighting(eta: VertexWeighting) -> str:
    return "".join(f"vweight {v} {w}\n" for v, w in enumerate(eta))
