"""Exact feasibility LPs, the expanding-or-contracting dichotomy, and losing densities.

``lp_feasible`` solves ``A x = b, x >= 0`` with a dense phase-1 simplex over
``Fraction`` using Bland's rule, and when the system is infeasible reads a
Farkas certificate ``p`` (``p^T A >= 0``, ``p^T b < 0``) off the final
tableau.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import (
    ArcWeightedDigraph,
    InstanceError,
    VertexWeighting,
    neighborhoods,
    parse_weighting,
    reverse,
)

EXPANDING = "expanding"
CONTRACTING = "contracting"

ZERO = Fraction(0)


class WeightsIgnoredWarning(UserWarning):
    pass


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    p: tuple[Fraction, ...] | None = None


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def check_primal(A, b, x) -> bool:
    return all(xi >= 0 for xi in x) and all(_dot(row, x) == bi for row, bi in zip(A, b))


def check_farkas(A, b, p) -> bool:
    cols = len(A[0]) if A else 0
    if _dot(p, b) >= 0:
        return False
    return all(sum((p[i] * A[i][j] for i in range(len(A)) if A[i][j]), ZERO) >= 0
               for j in range(cols))


def lp_feasible(A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Decide ``A x = b, x >= 0`` exactly; return a witness either way."""
    m = len(A)
    if len(b) != m:
        raise ValueError(f"A has {m} rows but b has {len(b)} entries")
    k = len(A[0]) if m else 0
    if any(len(row) != k for row in A):
        raise ValueError("ragged matrix")

    sign = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    width = k + m + 1
    rhs = k + m
    T = []
    for i in range(m):
        row = [Fraction(a) * sign[i] for a in A[i]] + [ZERO] * m + [Fraction(b[i]) * sign[i]]
        row[k + i] = Fraction(1)
        T.append(row)
    basis = [k + i for i in range(m)]
    # reduced costs of the phase-1 objective (sum of artificials), plus -objective in rhs
    z = [ZERO] * width
    for row in T:
        for j in range(k):
            if row[j]:
                z[j] -= row[j]
        z[rhs] -= row[rhs]

    while True:
        enter = next((j for j in range(k + m) if z[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][rhs] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        # phase 1 is bounded below, so some row always qualifies
        _pivot(T, z, leave, enter)
        basis[leave] = enter

    if z[rhs] == 0:
        x = [ZERO] * k
        for i, j in enumerate(basis):
            if j < k:
                x[j] = T[i][rhs]
        return LPResult(True, x=tuple(x))

    # y = c_B^T B^{-1}; B^{-1} sits in the artificial columns
    y = [ZERO] * m
    for r, j in enumerate(basis):
        if j >= k:
            for i in range(m):
                y[i] += T[r][k + i]
    p = tuple(-y[i] * sign[i] for i in range(m))
    return LPResult(False, p=p)


def _pivot(T, z, r, c):
    prow = T[r]
    piv = prow[c]
    if piv != 1:
        T[r] = prow = [a / piv if a else a for a in prow]
    nz = [j for j, a in enumerate(prow) if a]
    for row in (*T[:r], *T[r + 1:], z):
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]


# ---------------------------------------------------------------------------
# the expanding-or-contracting dichotomy


@dataclass(frozen=True)
class FarkasSystem:
    """``N`` has -1 on first out-neighbors and +1 on second out-neighbors of each row vertex;
    ``A = [[N, -I], [1..1, 0..0]]`` and ``b = (0, .., 0, 1)``."""

    N: tuple[tuple[int, ...], ...]
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]


def build_farkas_system(D: ArcWeightedDigraph) -> FarkasSystem:
    n = D.n
    N = []
    for i in range(n):
        nb = neighborhoods(D, i)
        row = [0] * n
        for j in nb.first_out:
            row[j] = -1
        for j in nb.second_out:
            row[j] = 1
        N.append(tuple(row))
    A = [tuple(N[i]) + tuple(-1 if j == i else 0 for j in range(n)) for i in range(n)]
    A.append((1,) * n + (0,) * n)
    return FarkasSystem(tuple(N), tuple(A), (0,) * n + (1,))


@dataclass(frozen=True)
class FarkasCertificate:
    """``expanding``: weights on D (summing to 1) with every vertex weakly expanding.
    ``contracting``: weights on reverse(D) with every vertex strongly contracting."""

    variant: str
    weighting: VertexWeighting

    def serialize(self) -> str:
        lines = [f"variant {self.variant}"]
        lines += [f"w {v} {w}" for v, w in enumerate(self.weighting)]
        return "\n".join(lines) + "\n"


def parse_certificate(text: str, n: int | None = None) -> FarkasCertificate:
    """Read a ``variant ...`` line followed by ``w <v> <p>[/<q>]`` lines."""
    variant = None
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens and tokens[0] == "variant":
            if len(tokens) != 2 or tokens[1] not in (EXPANDING, CONTRACTING):
                raise InstanceError("expected 'variant expanding|contracting'", number)
            if variant is not None:
                raise InstanceError("duplicate variant line", number)
            variant = tokens[1]
    if variant is None:
        raise InstanceError("certificate has no variant line")
    return FarkasCertificate(variant, parse_weighting(text, n))


@dataclass(frozen=True)
class Verification:
    ok: bool
    violations: tuple[int, ...] = field(default_factory=tuple)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _has_nonunit(D: ArcWeightedDigraph) -> bool:
    return any(w != 1 for w in D.arcs.values())


def verify_certificate(D: ArcWeightedDigraph, cert: FarkasCertificate) -> Verification:
    eta = cert.weighting
    if len(eta) != D.n:
        return Verification(False, reason="weighting does not match the vertex set")
    if cert.variant == EXPANDING:
        if eta.total != 1:
            return Verification(False, reason=f"weights sum to {eta.total}, not 1")
        graph, strict = D, False
    elif cert.variant == CONTRACTING:
        graph, strict = reverse(D), True
    else:
        return Verification(False, reason=f"unknown variant {cert.variant!r}")
    bad = []
    for v in graph.vertices:
        nb = neighborhoods(graph, v)
        first, second = eta.of(nb.first_out), eta.of(nb.second_out)
        if (strict and not first > second) or (not strict and not first <= second):
            bad.append(v)
    return Verification(not bad, tuple(bad), "" if not bad else "inequality fails")


def opposite(variant: str) -> str:
    return CONTRACTING if variant == EXPANDING else EXPANDING


def dichotomy(D: ArcWeightedDigraph) -> FarkasCertificate:
    """Either an everywhere weakly expanding weighting of D or an everywhere
    strongly contracting weighting of reverse(D); never both can exist."""
    if _has_nonunit(D):
        warnings.warn("dichotomy uses arc presence only; arc weights ignored",
                      WeightsIgnoredWarning, stacklevel=2)
    system = build_farkas_system(D)
    result = lp_feasible(system.A, system.b)
    n = D.n
    if result.feasible:
        cert = FarkasCertificate(EXPANDING, VertexWeighting(result.x[:n]))
    else:
        if not check_farkas(system.A, system.b, result.p):
            raise RuntimeError("solver returned an invalid Farkas vector")
        cert = FarkasCertificate(CONTRACTING, VertexWeighting(tuple(-p for p in result.p[:n])).normalized())
    check = verify_certificate(D, cert)
    if not check:
        raise RuntimeError(f"dichotomy certificate failed verification at {check.violations}")
    return cert


# ---------------------------------------------------------------------------
# losing densities


def _density_system(D: ArcWeightedDigraph, weighted: bool):
    n = D.n
    A = [[ZERO] * (2 * n) for _ in range(n + 1)]
    for (x, y), w in D.arcs.items():
        c = w if weighted else Fraction(1)
        # row x gains c * l(y) on its out side; row y loses c * l(x) on its in side
        A[x][y] += c
        A[y][x] -= c
    for v in range(n):
        A[v][n + v] = Fraction(-1)
        A[n][v] = Fraction(1)
    return A, [ZERO] * n + [Fraction(1)]


def density_violations(D: ArcWeightedDigraph, ell: VertexWeighting, weighted: bool = False) -> tuple[int, ...]:
    """Vertices where in-weight exceeds out-weight (all vertices if ``ell`` does not sum to 1)."""
    ell.check_domain(D)
    if ell.total != 1:
        return tuple(D.vertices)
    w = D.weight if weighted else (lambda a, b: 1)
    bad = []
    for v in D.vertices:
        inside = sum((w(x, v) * ell[x] for x in D.in_neighbors(v)), ZERO)
        outside = sum((w(v, y) * ell[y] for y in D.out_neighbors(v)), ZERO)
        if inside > outside:
            bad.append(v)
    return tuple(bad)


def losing_density(D: ArcWeightedDigraph) -> VertexWeighting:
    """A probability weighting with at least as much weight on every vertex's
    out-neighbors as on its in-neighbors (arc presence only). Always exists."""
    A, b = _density_system(D, weighted=False)
    result = lp_feasible(A, b)
    if not result.feasible:
        raise RuntimeError("losing density LP reported infeasible")
    ell = VertexWeighting(result.x[: D.n])
    if density_violations(D, ell):
        raise RuntimeError("losing density failed verification")
    return ell


def arc_weighted_losing_density(D: ArcWeightedDigraph) -> VertexWeighting | None:
    """Arc-weighted losing density, or None when the system is infeasible."""
    A, b = _density_system(D, weighted=True)
    result = lp_feasible(A, b)
    if not result.feasible:
        return None
    ell = VertexWeighting(result.x[: D.n])
    if density_violations(D, ell, weighted=True):
        raise RuntimeError("arc-weighted losing density failed verification")
    return ell
