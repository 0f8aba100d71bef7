"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid instance, 3 verification
failure, 4 flagged discovery during a sweep or search.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import harness
from .graph import InstanceError, VertexWeighting, parse_instance, parse_weighting, serialize_digraph, serialize_weighting
from .lp import (
    WeightsIgnoredWarning,
    arc_weighted_losing_density,
    density_violations,
    dichotomy,
    losing_density,
    parse_certificate,
    verify_certificate,
)
from .orders import COUNT, DEFAULT_CAP, MODES, median_order
from .transforms import DEFAULT_EXPANSION_CAP, ContractionError, blowup, contract, expand_auxiliary
from .weights import report, seymour_vertices_arc, seymour_vertices_unweighted, seymour_vertices_vw

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_VERIFY = 3
EXIT_FLAGGED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path):
    return parse_instance(Path(path).read_text())


def _load_weighting(path, n):
    eta = parse_weighting(Path(path).read_text(), n)
    if len(eta) != n:
        raise InstanceError(f"weighting covers {len(eta)} vertices, graph has {n}")
    return eta


def _fmt_set(vertices) -> str:
    return " ".join(map(str, sorted(vertices)))


def cmd_analyze(args, out):
    D, _ = _load(args.file)
    if args.flags:
        summary, findings = harness.evaluate(D, tuple(args.check or ()), run_dichotomy=not args.no_dichotomy)
        out.write("flags " + " ".join(summary["flags"]) + "\n" if summary["flags"] else "flags\n")
        return EXIT_FLAGGED if findings else EXIT_OK
    rep = report(D)
    out.write(rep.to_table() if args.format == "table" else rep.to_json(with_terms=args.terms))
    return EXIT_OK


def cmd_seymour(args, out):
    D, eta = _load(args.file)
    if args.mode == "arc":
        found = seymour_vertices_arc(D)
    elif args.mode == "unweighted":
        found = seymour_vertices_unweighted(D)
    else:
        if args.eta:
            eta = _load_weighting(args.eta, D.n)
        if eta is None:
            raise UsageError("vertex mode needs vweight lines in the instance or --eta FILE")
        found = seymour_vertices_vw(D, eta)
    out.write(_fmt_set(found) + "\n")
    return EXIT_OK


def cmd_dichotomy(args, out):
    D, _ = _load(args.file)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WeightsIgnoredWarning)
        cert = dichotomy(D)
    out.write(cert.serialize())
    return EXIT_OK


def cmd_verify(args, out):
    D, _ = _load(args.file)
    cert = parse_certificate(Path(args.certfile).read_text(), D.n)
    result = verify_certificate(D, cert)
    if result:
        out.write("pass\n")
        return EXIT_OK
    out.write(f"fail {result.reason}\n")
    if result.violations:
        out.write("violations " + _fmt_set(result.violations) + "\n")
    return EXIT_VERIFY


def cmd_losing_density(args, out):
    D, eta = _load(args.file)
    if args.check:
        ell = _load_weighting(args.check, D.n)
        bad = density_violations(D, ell, weighted=args.arc_weighted)
        if bad:
            out.write("fail\nviolations " + _fmt_set(bad) + "\n")
            return EXIT_VERIFY
        out.write("pass\n")
        return EXIT_OK
    ell = arc_weighted_losing_density(D) if args.arc_weighted else losing_density(D)
    out.write("infeasible\n" if ell is None else serialize_weighting(ell))
    return EXIT_OK


def cmd_median_order(args, out):
    D, _ = _load(args.file)
    out.write(median_order(D, args.mode, args.cap).serialize())
    return EXIT_OK


def cmd_expand(args, out):
    D, _ = _load(args.file)
    aux = expand_auxiliary(D, args.cap)
    out.write(serialize_digraph(aux.graph, comments=aux.block_comments()))
    return EXIT_OK


def cmd_contract(args, out):
    D, _ = _load(args.file)
    smaller, index = contract(D, args.u, args.v)
    comments = [f"contracted {args.u} into {args.v}",
                "index-map " + " ".join(f"{a}->{b}" for a, b in sorted(index.items()))]
    out.write(serialize_digraph(smaller, comments=comments))
    return EXIT_OK


def cmd_blowup(args, out):
    T, eta = _load(args.file)
    if args.eta:
        eta = _load_weighting(args.eta, T.n)
    if eta is None:
        eta = VertexWeighting.uniform(T.n)
    out.write(serialize_digraph(blowup(T, eta, args.internal_seed, args.carry_weights)))
    return EXIT_OK


def cmd_reduce(args, out):
    D, _ = _load(args.file)
    eta = _load_weighting(args.etafile, D.n)
    eta_plus = _load_weighting(args.etaplusfile, D.n)
    red = harness.reduce_counterexample(D, eta, eta_plus)
    comments = [f"step {red.step}", "kept " + _fmt_set(red.kept)]
    out.write(serialize_digraph(red.graph, red.weighting, comments=comments))
    return EXIT_OK


def cmd_eps_reduce(args, out):
    D, _ = _load(args.file)
    eta = _load_weighting(args.etafile, D.n)
    eps = harness.reduction_epsilon(D, eta)
    out.write(serialize_digraph(harness.epsilon_reduce(D, eta), comments=[f"epsilon {eps}"]))
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    return a, b


def _sweep_config(args, trials):
    lo, hi = args.n
    return harness.SweepConfig(
        kind=args.kind, n_min=lo, n_max=hi, p=args.p, weights=args.weights,
        trials=trials, seed=args.seed, checks=tuple(args.check or ()),
        dichotomy=not args.no_dichotomy, max_block=args.max_block, internal=args.internal,
    )


def cmd_sweep(args, out):
    try:
        config = _sweep_config(args, args.trials)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = harness.sweep(config, args.out, jobs=args.jobs)
    counts = ", ".join(f"{k}={v}" for k, v in result.counts.items()) or "none"
    out.write(f"trials {len(result.trials)} flags {counts}\n")
    out.write(f"report {Path(args.out) / 'report.json'}\n")
    return EXIT_FLAGGED if result.flagged else EXIT_OK


def cmd_search(args, out):
    try:
        config = _sweep_config(args, 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    found = harness.search(config, args.flag, args.out, max_trials=args.max_trials)
    if found is None:
        out.write(f"no {args.flag} within {args.max_trials} trials\n")
        return EXIT_OK
    D, finding = found
    out.write(f"found {finding.flag} {harness.digest(D)}\n")
    return EXIT_FLAGGED


def _add_sweep_options(p):
    p.add_argument("--kind", choices=harness.KINDS, default="tournament")
    p.add_argument("--n", type=_parse_range, default=(3, 6), metavar="A..B")
    p.add_argument("--p", type=float, default=0.5, help="arc probability (digraph kind)")
    p.add_argument("--weights", default="unit", help="unit | int:M | int0:M | rat:Q")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="append", choices=harness.CHECKS)
    p.add_argument("--no-dichotomy", action="store_true")
    p.add_argument("--max-block", type=int, default=3, help="largest block (blowup kind)")
    p.add_argument("--internal", choices=("transitive", "random"), default="transitive")
    p.add_argument("--out", required=True, help="directory for report.json and flagged instances")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arcseymour", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="neighborhood weight report")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--terms", action="store_true", help="include per-target beta terms")
    p.add_argument("--flags", action="store_true", help="print the sweep flags this instance raises")
    p.add_argument("--check", action="append", choices=harness.CHECKS)
    p.add_argument("--no-dichotomy", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("seymour", help="Seymour vertices")
    p.add_argument("file")
    p.add_argument("--mode", choices=("arc", "unweighted", "vertex"), default="arc")
    p.add_argument("--eta", help="vertex weighting file (vertex mode)")
    p.set_defaults(func=cmd_seymour)

    p = sub.add_parser("dichotomy", help="expanding or contracting certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_dichotomy)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("file")
    p.add_argument("certfile")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("losing-density", help="losing density or 'infeasible'")
    p.add_argument("file")
    p.add_argument("--arc-weighted", action="store_true")
    p.add_argument("--check", metavar="WFILE", help="verify a given density instead of solving")
    p.set_defaults(func=cmd_losing_density)

    p = sub.add_parser("median-order", help="exact median order")
    p.add_argument("file")
    p.add_argument("--mode", choices=MODES, default=COUNT)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_median_order)

    p = sub.add_parser("expand", help="auxiliary unweighted expansion")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_EXPANSION_CAP)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("contract", help="contract u into v")
    p.add_argument("file")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("blowup", help="blow a tournament up into blocks")
    p.add_argument("file")
    p.add_argument("--eta", help="block sizes as a weighting file (default: vweight lines, else 1)")
    p.add_argument("--internal-seed", type=int)
    p.add_argument("--carry-weights", action="store_true")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("reduce", help="shrink a vertex-weighted counterexample")
    p.add_argument("file")
    p.add_argument("etafile")
    p.add_argument("etaplusfile")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("eps-reduce", help="epsilon arc-weight reduction")
    p.add_argument("file")
    p.add_argument("etafile")
    p.set_defaults(func=cmd_eps_reduce)

    p = sub.add_parser("sweep", help="seeded conjecture sweep")
    _add_sweep_options(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("search", help="sweep until a flag is raised")
    _add_sweep_options(p)
    p.add_argument("--flag", required=True)
    p.add_argument("--max-trials", type=int, default=10**5)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except harness.ReductionError as exc:
        print(f"arcseymour: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except UsageError as exc:
        print(f"arcseymour: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InstanceError, ContractionError, OSError) as exc:
        print(f"arcseymour: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"arcseymour: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
