"""Random instance generators, the reduction steps used in counterexample
arguments, and seeded sweeps that flag and persist interesting instances."""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .graph import (
    ArcWeightedDigraph,
    VertexWeighting,
    is_tournament,
    neighborhoods,
    reverse,
    serialize_digraph,
    serialize_weighting,
)
from .lp import EXPANDING, FarkasCertificate, arc_weighted_losing_density, dichotomy
from .orders import COUNT, WEIGHT, last_vertex_seymour
from .rng import SplitMix64
from .transforms import blowup
from .weights import report, seymour_vertices_unweighted, seymour_vertices_vw

KINDS = ("tournament", "digraph", "blowup")
CHECKS = ("median-order", "ld-reverse")

# flag names
EMPTY_SEYMOUR_ARC = "empty_seymour_arc"
EMPTY_SEYMOUR_UNWEIGHTED = "empty_seymour_unweighted"
TOURNAMENT_CONTRACTING = "tournament_contracting_dichotomy"
COUNT_LAST_VERTEX_FAILURE = "count_last_vertex_failure"
LAST_VERTEX_FAILURE = "last_vertex_failure"
LD_REVERSE_FAILURE = "ld_reverse_failure"
LD_INFEASIBLE = "arc_losing_density_infeasible"


# ---------------------------------------------------------------------------
# weight schemes and generators


@dataclass(frozen=True)
class WeightScheme:
    """``unit``; ``int`` draws from 1..M; ``int0`` from 0..M; ``rat`` draws p/q with p, q in 1..Q."""

    kind: str = "unit"
    bound: int = 1

    def __post_init__(self):
        if self.kind not in ("unit", "int", "int0", "rat"):
            raise ValueError(f"unknown weight scheme {self.kind!r}")
        if self.bound < 1:
            raise ValueError("weight bound must be at least 1")

    @classmethod
    def parse(cls, text: str) -> "WeightScheme":
        if text == "unit":
            return cls()
        kind, sep, bound = text.partition(":")
        if not sep or not bound.isdigit():
            raise ValueError(f"weight scheme must be unit, int:M, int0:M or rat:Q, got {text!r}")
        return cls(kind, int(bound))

    def __str__(self) -> str:
        return "unit" if self.kind == "unit" else f"{self.kind}:{self.bound}"

    def draw(self, rng: SplitMix64) -> Fraction:
        if self.kind == "unit":
            return Fraction(1)
        if self.kind == "int":
            return Fraction(rng.between(1, self.bound))
        if self.kind == "int0":
            return Fraction(rng.between(0, self.bound))
        p = rng.between(1, self.bound)
        return Fraction(p, rng.between(1, self.bound))


def _tournament(n: int, scheme: WeightScheme, rng: SplitMix64) -> ArcWeightedDigraph:
    arcs = {}
    for u in range(n):
        for v in range(u + 1, n):
            arc = (v, u) if rng.coin() else (u, v)
            arcs[arc] = scheme.draw(rng)
    return ArcWeightedDigraph(n, arcs)


def _digraph(n: int, p: float, scheme: WeightScheme, rng: SplitMix64) -> ArcWeightedDigraph:
    arcs = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.unit() < p:
                arc = (v, u) if rng.coin() else (u, v)
                arcs[arc] = scheme.draw(rng)
    return ArcWeightedDigraph(n, arcs)


def generate_tournament(n: int, scheme: WeightScheme | str = "unit", seed: int = 0) -> ArcWeightedDigraph:
    if n < 1:
        raise ValueError("n must be at least 1")
    if isinstance(scheme, str):
        scheme = WeightScheme.parse(scheme)
    return _tournament(n, scheme, SplitMix64(seed))


def generate_digraph(n: int, p: float, scheme: WeightScheme | str = "unit", seed: int = 0) -> ArcWeightedDigraph:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= p <= 1:
        raise ValueError("arc probability must lie in [0, 1]")
    if isinstance(scheme, str):
        scheme = WeightScheme.parse(scheme)
    return _digraph(n, p, scheme, SplitMix64(seed))


# ---------------------------------------------------------------------------
# reduction steps


def reducible_arcs(D: ArcWeightedDigraph, eta: VertexWeighting):
    return [(u, v) for (u, v), w in D.arcs.items() if w > 0 and eta[v] > 0]


def reduction_epsilon(D: ArcWeightedDigraph, eta: VertexWeighting) -> Fraction:
    """Largest step keeping ``w(uv) - eps * eta(v)`` nonnegative on positive arcs."""
    eta.check_domain(D)
    arcs = reducible_arcs(D, eta)
    if not arcs:
        raise ValueError("no arc with positive weight into a positively weighted vertex")
    return min(D.weight(u, v) / eta[v] for u, v in arcs)


def epsilon_reduce(D: ArcWeightedDigraph, eta: VertexWeighting) -> ArcWeightedDigraph:
    """Lower every positive arc ``u -> v`` by ``eps * eta(v)``; zero arcs stay zero.

    At least one positive arc ends at exactly zero.
    """
    eps = reduction_epsilon(D, eta)
    return D.with_weights({(u, v): (w - eps * eta[v] if w > 0 else w)
                           for (u, v), w in D.arcs.items()})


def second_neighbors_fed(D: ArcWeightedDigraph) -> bool:
    """True iff every second neighbor of every vertex receives a positive arc
    from that vertex's first neighborhood."""
    for v in D.vertices:
        nb = neighborhoods(D, v)
        for x in nb.second_out:
            if not any(D.weight(u, x) > 0 for u in nb.first_out if D.has_arc(u, x)):
                return False
    return True


def contracting_everywhere(D: ArcWeightedDigraph, eta: VertexWeighting) -> list[int]:
    """Vertices that are NOT strongly contracting under ``eta``."""
    bad = []
    for v in D.vertices:
        nb = neighborhoods(D, v)
        if not eta.of(nb.first_out) > eta.of(nb.second_out):
            bad.append(v)
    return bad


def expanding_everywhere(D: ArcWeightedDigraph, eta: VertexWeighting) -> list[int]:
    """Vertices that are NOT weakly expanding under ``eta``."""
    bad = []
    for v in D.vertices:
        nb = neighborhoods(D, v)
        if not eta.of(nb.first_out) <= eta.of(nb.second_out):
            bad.append(v)
    return bad


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Reduction:
    graph: ArcWeightedDigraph
    weighting: VertexWeighting
    step: Fraction
    kept: tuple[int, ...]


def reduce_counterexample(D: ArcWeightedDigraph, eta: VertexWeighting, eta_plus: VertexWeighting) -> Reduction:
    """Shrink a vertex-weighted counterexample using an expanding weighting.

    Subtracts ``t * eta_plus`` from ``eta`` with ``t`` the smallest ratio
    ``eta(v) / eta_plus(v)``, then deletes the vertices left at weight zero.
    Every stage is re-verified; a failure raises :class:`ReductionError`.
    """
    eta.check_domain(D)
    eta_plus.check_domain(D)
    if bad := contracting_everywhere(D, eta):
        raise ValueError(f"eta is not strongly contracting at {bad}")
    if bad := expanding_everywhere(D, eta_plus):
        raise ValueError(f"eta_plus is not weakly expanding at {bad}")
    support = [v for v in D.vertices if eta_plus[v] > 0]
    if not support:
        raise ValueError("eta_plus is identically zero")

    t = min(eta[v] / eta_plus[v] for v in support)
    lowered = VertexWeighting(tuple(eta[v] - t * eta_plus[v] for v in D.vertices))
    if bad := contracting_everywhere(D, lowered):
        raise ReductionError(f"lowered weighting stopped contracting at {bad}")
    kept = [v for v in D.vertices if lowered[v] > 0]
    smaller, index = D.induced(kept)
    small_eta = VertexWeighting(tuple(lowered[v] for v in sorted(index)))
    if smaller.n == 0 or (bad := contracting_everywhere(smaller, small_eta)):
        raise ReductionError(f"deleting zero-weight vertices broke the counterexample at {bad}")
    return Reduction(smaller, small_eta, t, tuple(kept))


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepConfig:
    kind: str = "tournament"
    n_min: int = 3
    n_max: int = 6
    p: float = 0.5
    weights: str = "unit"
    trials: int = 100
    seed: int = 0
    checks: tuple[str, ...] = ()
    dichotomy: bool = True
    max_block: int = 3
    internal: str = "transitive"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if not 0 <= self.p <= 1:
            raise ValueError("arc probability must lie in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_block < 1:
            raise ValueError("max_block must be at least 1")
        if self.internal not in ("transitive", "random"):
            raise ValueError("internal must be 'transitive' or 'random'")
        for c in self.checks:
            if c not in CHECKS:
                raise ValueError(f"unknown check {c!r}")
        WeightScheme.parse(self.weights)
        object.__setattr__(self, "seed", self.seed & ((1 << 64) - 1))
        object.__setattr__(self, "checks", tuple(sorted(set(self.checks))))


def digest(D: ArcWeightedDigraph) -> str:
    return hashlib.sha256(serialize_digraph(D).encode()).hexdigest()[:16]


def trial_seeds(config: SweepConfig) -> list[int]:
    master = SplitMix64(config.seed)
    return [master.next_u64() for _ in range(config.trials)]


def build_instance(config: SweepConfig, seed: int) -> ArcWeightedDigraph:
    rng = SplitMix64(seed)
    n = rng.between(config.n_min, config.n_max)
    scheme = WeightScheme.parse(config.weights)
    if config.kind == "tournament":
        return _tournament(n, scheme, rng)
    if config.kind == "digraph":
        return _digraph(n, config.p, scheme, rng)
    base = _tournament(n, scheme, rng)
    sizes = VertexWeighting(tuple(rng.between(1, config.max_block) for _ in range(n)))
    internal = rng.next_u64() if config.internal == "random" else None
    return blowup(base, sizes, internal, carry_weights=True)


@dataclass
class Finding:
    """Everything needed to replay one flagged event."""

    flag: str
    files: dict[str, str] = field(default_factory=dict)


def evaluate(D: ArcWeightedDigraph, checks=(), run_dichotomy: bool = True) -> tuple[dict, list[Finding]]:
    """Run the per-instance analyses; return summary fields and flagged findings."""
    rep = report(D)
    arc_set = rep.seymour_vertices
    unweighted = seymour_vertices_unweighted(D)
    tournament = is_tournament(D)
    summary = {
        "n": D.n,
        "arcs": len(D.arcs),
        "digest": digest(D),
        "seymour_arc_size": len(arc_set),
        "seymour_unweighted_size": len(unweighted),
        "min_delta": str(rep.min_delta),
        "dichotomy": None,
    }
    findings = []
    if not arc_set:
        findings.append(Finding(EMPTY_SEYMOUR_ARC))
    if not unweighted:
        findings.append(Finding(EMPTY_SEYMOUR_UNWEIGHTED))

    if run_dichotomy:
        cert = dichotomy(D.unit())
        summary["dichotomy"] = cert.variant
        if tournament and cert.variant != EXPANDING:
            findings.append(Finding(TOURNAMENT_CONTRACTING, {"cert": cert.serialize()}))

    if "median-order" in checks:
        lv = last_vertex_seymour(D, WEIGHT)
        summary["last_vertex_weight"] = lv.vertex
        if not lv.is_seymour:
            findings.append(Finding(LAST_VERTEX_FAILURE, {"order": lv.order.serialize()}))
        if tournament:
            lc = last_vertex_seymour(D, COUNT)
            if not lc.is_seymour:
                findings.append(Finding(COUNT_LAST_VERTEX_FAILURE, {"order": lc.order.serialize()}))

    if "ld-reverse" in checks:
        ell = arc_weighted_losing_density(D)
        if ell is None:
            findings.append(Finding(LD_INFEASIBLE))
        else:
            R = reverse(D)
            seymour = seymour_vertices_vw(R, ell)
            if len(seymour) < D.n:
                findings.append(Finding(LD_REVERSE_FAILURE, {
                    "density": serialize_weighting(ell),
                    "reverse.txt": serialize_digraph(R),
                    "reverse.cert": FarkasCertificate(EXPANDING, ell).serialize(),
                }))
    summary["flags"] = sorted(f.flag for f in findings)
    return summary, findings


def _run_trial(args):
    config, index, seed = args
    D = build_instance(config, seed)
    summary, findings = evaluate(D, config.checks, config.dichotomy)
    return {"trial": index, "seed": seed, **summary}, D, findings


@dataclass
class SweepReport:
    config: SweepConfig
    trials: list[dict]
    counts: dict[str, int]
    persisted: list[str] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return any(self.counts.values())

    def to_json(self) -> str:
        body = {
            "config": asdict(self.config),
            "counts": self.counts,
            "trials": self.trials,
        }
        return json.dumps(body, indent=1, sort_keys=True) + "\n"


def persist_finding(out_dir: Path, D: ArcWeightedDigraph, finding: Finding) -> list[str]:
    """Write the instance and its sidecar files under ``out_dir/<flag>/``; return paths."""
    folder = Path(out_dir) / finding.flag
    folder.mkdir(parents=True, exist_ok=True)
    name = digest(D)
    written = []
    inst = folder / f"{name}.txt"
    inst.write_text(serialize_digraph(D, comments=[f"flag {finding.flag}"]))
    written.append(str(inst))
    for suffix, text in sorted(finding.files.items()):
        path = folder / f"{name}.{suffix}"
        path.write_text(text)
        written.append(str(path))
    return written


def sweep(config: SweepConfig, out_dir: str | os.PathLike | None = None, jobs: int = 1,
          stop_on: str | None = None) -> SweepReport:
    """Run ``config.trials`` seeded trials; identical configs give identical reports.

    ``stop_on`` ends the sweep after the first trial raising that flag (the
    report then lists only the trials run).
    """
    seeds = trial_seeds(config)
    work = [(config, i, s) for i, s in enumerate(seeds)]
    counts = {}
    trials = []
    persisted = []

    def consume(results):
        for record, D, findings in results:
            trials.append(record)
            for f in findings:
                counts[f.flag] = counts.get(f.flag, 0) + 1
                if out_dir is not None:
                    persisted.extend(persist_finding(Path(out_dir), D, f))
            if stop_on is not None and any(f.flag == stop_on for f in findings):
                return True
        return False

    if jobs > 1 and stop_on is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            consume(pool.map(_run_trial, work, chunksize=16))
    else:
        consume(map(_run_trial, work))

    counts = dict(sorted(counts.items()))
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    result = SweepReport(config, trials, counts, persisted)
    if out_dir is not None:
        (Path(out_dir) / "report.json").write_text(result.to_json())
    return result


def search(config: SweepConfig, flag: str, out_dir=None, max_trials: int = 10**5,
           chunk: int = 200) -> tuple[ArcWeightedDigraph, Finding] | None:
    """Sweep in seeded chunks until some trial raises ``flag``; None if the budget runs out."""
    done = 0
    chunk_index = 0
    while done < max_trials:
        size = min(chunk, max_trials - done)
        cfg = SweepConfig(**{**asdict(config), "trials": size,
                             "seed": config.seed + chunk_index})
        for index, seed in enumerate(trial_seeds(cfg)):
            D = build_instance(cfg, seed)
            _, findings = evaluate(D, cfg.checks, cfg.dichotomy)
            for f in findings:
                if f.flag == flag:
                    if out_dir is not None:
                        persist_finding(Path(out_dir), D, f)
                    return D, f
        done += size
        chunk_index += 1
    return None
