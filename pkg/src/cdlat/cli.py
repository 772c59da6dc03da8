"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input or infeasible
request.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import constructions as cons
from .cd import cd_lattice, check_direct_product, check_maxmember, check_omnibus
from .errors import CdlatError, EnumerationLimitError, HypothesisError, PresentationError
from .extension import (
    chain_step,
    extend,
    resolve_tier,
    verify_extension,
)
from .groups import as_group, center, set_max_order
from .pcgroup import PcPresentation, check_consistency, from_json, to_dict, to_json
from .report import VerificationReport
from .subgroups import normal_subgroups

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
SUITES = ("omnibus", "l1", "l2", "lemma-centr", "extension", "direct-product", "all")

log = logging.getLogger("cdlat")


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> PcPresentation:
    try:
        pres = from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    res = check_consistency(pres)
    if not res.ok:
        raise UsageError(f"{path}: inconsistent presentation (overlap {res.overlap})")
    return pres


# -- build ------------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    try:
        pres = cons.build(args.construction, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(to_json(pres), args.out)
    if args.out:
        print(f"wrote {pres.name} (order {pres.order}) to {args.out}", file=sys.stderr)
    return EXIT_OK


# -- cd ---------------------------------------------------------------------


def cmd_cd(args: argparse.Namespace) -> int:
    pres = _load(args.input[0])
    G = as_group(pres)
    L = cd_lattice(G, args.enumerator, threads=args.threads)
    text = L.to_dot() if args.format == "dot" else L.to_json()
    _write(text, args.out)
    return EXIT_OK


# -- verify -----------------------------------------------------------------


def _groups_for(args: argparse.Namespace, limit: int | None = None) -> list[PcPresentation]:
    if args.input:
        return [_load(p) for p in args.input]
    groups = cons.corpus(include_large=args.large)
    return [g for g in groups if limit is None or g.order <= limit]


def suite_omnibus(groups: Sequence[PcPresentation], args) -> VerificationReport:
    rep = VerificationReport("omnibus")
    for pres in groups:
        L = cd_lattice(as_group(pres), args.enumerator)
        rep.extend(check_omnibus(L), prefix=f"{pres.name}:")
        rep.extend(check_maxmember(as_group(pres), L, args.enumerator), prefix=f"{pres.name}:")
    return rep


def _criteria_suite(name: str, checker: Callable, length: int, groups: Sequence[PcPresentation],
                    args) -> VerificationReport:
    rep = VerificationReport(name)
    for pres in groups:
        G = as_group(pres)
        if G.prime is None:
            rep.add(f"{pres.name}:criteria", "skipped", reason="not a p-group")
            continue
        res = checker(G)
        details = {"criteria": res.holds, **res.diagnostics}
        if res.holds and G.order <= args.cd_bound:
            L = cd_lattice(G, args.enumerator)
            rep.add(f"{pres.name}:criteria_imply_chain", L.chain_length == length,
                    chain_length=L.chain_length, **details)
        else:
            # a negative result makes no claim; a positive one beyond the bound is structural only
            rep.add(f"{pres.name}:criteria", "pass", **details)
    return rep


def suite_lemma(groups: Sequence[PcPresentation], args) -> VerificationReport:
    rep = VerificationReport("lemma-centr")
    for pres in groups:
        G = as_group(pres)
        if G.prime is None:
            continue
        rep.extend(lemma_report(G), prefix=f"{pres.name}:")
    return rep


def lemma_report(G) -> VerificationReport:
    """Run the centralizer lemma on every valid ``(R, Q)`` pair of normal subgroups."""
    rep = VerificationReport(G.name)
    Z = center(G)
    p = G.prime
    normals = [K for K in normal_subgroups(G) if Z <= K]
    Rs = [R for R in normals if R.order == p * Z.order]
    orders = cons.centralizer_order_table(G)
    applicable = witnesses = violations = 0
    missing = []
    for R in Rs:
        for Q in normals:
            if not R <= Q:
                continue
            res = cons.check_lemma_centr(G, R, Q, orders)
            if res.status == "hypothesis-violation":
                violations += 1
                continue
            applicable += 1
            if res.witness is None:
                missing.append((R.order, Q.order))
            else:
                witnesses += 1
    status = "vacuous" if not applicable else not missing
    rep.add("lemma_witness", status, applicable=applicable, witnesses=witnesses,
            hypothesis_violations=violations, missing=missing[:5])
    return rep


def suite_extension(groups: Sequence[PcPresentation], args) -> VerificationReport:
    rep = VerificationReport("extension")
    for pres in groups:
        try:
            X = extend(pres)
        except HypothesisError as exc:
            rep.add(f"{pres.name}:hypotheses", "skipped", reason=str(exc))
            continue
        sub = verify_extension(X, args.verify_tier, args.samples, args.trials, args.seed, args.threads)
        rep.extend(sub, prefix=f"{X.G.name}:")
        rep.tier = sub.tier
    return rep


def suite_direct_product(groups: Sequence[PcPresentation], args) -> VerificationReport:
    rep = VerificationReport("direct-product")
    if args.input:
        if len(groups) == 1:
            p = as_group(groups[0]).prime or 2
            pairs = [(cons.cyclic(p), groups[0])]
        else:
            pairs = [(groups[0], groups[1])]
    else:
        s3 = cons.symmetric3()
        pairs = [(cons.cyclic(2), cons.dihedral(3)), (cons.cyclic(3), s3),
                 (cons.cyclic(2), cons.cyclic(2)), (cons.cyclic(2), cons.quaternion()),
                 (cons.cyclic(2), s3)]
    for a, b in pairs:
        rep.extend(check_direct_product(a, b, args.enumerator), prefix=f"{a.name}x{b.name}:")
    return rep


def cmd_verify(args: argparse.Namespace) -> int:
    suites = [args.suite] if args.suite != "all" else [s for s in SUITES if s != "all"]
    report = VerificationReport(args.input[0] if args.input else "corpus")
    for suite in suites:
        if suite == "omnibus":
            sub = suite_omnibus(_groups_for(args, 512), args)
        elif suite == "l1":
            sub = _criteria_suite("l1", cons.check_l1_criteria, 1, _groups_for(args, args.cd_bound), args)
        elif suite == "l2":
            sub = _criteria_suite("l2", cons.check_l2_criteria, 2, _groups_for(args, args.cd_bound), args)
        elif suite == "lemma-centr":
            sub = suite_lemma(_groups_for(args, args.cd_bound), args)
        elif suite == "extension":
            groups = [_load(p) for p in args.input] if args.input else [cons.cyclic(2)]
            sub = suite_extension(groups, args)
            report.tier = sub.tier
        else:
            groups = [_load(p) for p in args.input] if args.input else []
            sub = suite_direct_product(groups, args)
        report.extend(sub, prefix=f"{suite}/")
    report.stats["seed"] = args.seed
    report.finish()
    _emit_report(report, args)
    return EXIT_OK if report.passed else EXIT_FAIL


def _emit_report(report: VerificationReport, args) -> None:
    if args.format == "json":
        _write(report.to_json(), args.report)
    else:
        lines = [f"{c.status:8s} {c.id}" for c in report.checks]
        lines.append(report.summary())
        _write("\n".join(lines) + "\n", args.report)


# -- chain ------------------------------------------------------------------


def cmd_chain(args: argparse.Namespace) -> int:
    step = chain_step(args.p, args.length)
    pres = step.pres
    tier = resolve_tier(pres.order, args.verify_tier)
    meta = {"chain": {"p": args.p, "length": args.length}}
    if step.extension is not None:
        meta["certificates"] = step.extension.certificates(step.predicted)
        meta["cd_of_H"] = step.extension.cd_source
    meta["verification"] = {"tier": tier, "status": "unverified" if tier == "none" else "verified"}
    data = to_dict(pres)
    data.update(meta)
    _write(json.dumps(data, indent=2) + "\n", args.out)

    if step.extension is not None:
        report = verify_extension(step.extension, tier, args.samples, args.trials, args.seed, args.threads)
    else:
        report = _verify_seed(pres, args.length, tier, args)
    report.stats["seed"] = args.seed
    if args.format == "json" or args.report:
        _emit_report(report, args)
    print(report.summary(), file=sys.stderr)
    if tier == "none":
        print(f"order {pres.order}: presentation only, CD chain unverified", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _verify_seed(pres: PcPresentation, n: int, tier: str, args) -> VerificationReport:
    rep = VerificationReport(pres.name, tier=tier)
    rep.add("consistency", check_consistency(pres).ok)
    if tier == "full":
        L = cd_lattice(as_group(pres), args.enumerator)
        rep.add("cd_chain_length", L.chain_length == n, chain_length=L.chain_length, m=L.m)
        rep.add("group_in_cd", L.maximum.is_whole)
    elif tier == "structural":
        from .extension import class2_structure

        s = class2_structure(pres)
        rep.add("theorem_hypotheses", True, rank=s.rank, center=s.center.order,
                note="class <= 2, G/Z(G) elementary abelian; CD membership not enumerated")
    else:
        rep.add("cd_chain_length", "skipped", note="unverified")
    return rep.finish()


# -- parser -----------------------------------------------------------------


def _prime(text: str) -> int:
    p = int(text)
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{text} is not prime")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=None,
                        help="element enumeration bound (default 2^18 or $CDLAT_MAX_ORDER)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--enumerator", choices=("auto", "layered", "closure"), default="auto")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cdlat", description="Chermak-Delgado lattices of pc groups")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write a construction as JSON")
    b.add_argument("--construction", required=True, choices=cons.FAMILIES)
    b.add_argument("--p", type=_prime, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("cd", parents=[common], help="compute the CD lattice of a group")
    c.add_argument("--in", dest="input", action="append", required=True)
    c.add_argument("--format", choices=("json", "dot"), default="json")
    c.add_argument("--out")
    c.set_defaults(func=cmd_cd)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--in", dest="input", action="append")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--report", "--out", dest="report")
    v.add_argument("--verify-tier", choices=("auto", "full", "structural", "none"), default="auto")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--cd-bound", type=int, default=729,
                   help="largest order for which CD lattices are enumerated in criteria suites")
    v.add_argument("--large", action="store_true", help="include the order-2187 corpus member")
    v.set_defaults(func=cmd_verify)

    ch = sub.add_parser("chain", parents=[common], help="build a group whose CD lattice is a chain")
    ch.add_argument("--p", type=_prime, required=True)
    ch.add_argument("--length", type=int, required=True)
    ch.add_argument("--verify-tier", choices=("auto", "full", "structural", "none"), default="auto")
    ch.add_argument("--out")
    ch.add_argument("--report")
    ch.add_argument("--format", choices=("text", "json"), default="text")
    ch.add_argument("--samples", type=int, default=100)
    ch.add_argument("--trials", type=int, default=10_000)
    ch.set_defaults(func=cmd_chain)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.max_order is not None:
        set_max_order(args.max_order)
    try:
        return args.func(args)
    except EnumerationLimitError as exc:
        print(f"cdlat: infeasible: {exc} (bound {exc.bound}, order {exc.order})", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, PresentationError, HypothesisError) as exc:
        print(f"cdlat: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CdlatError as exc:
        print(f"cdlat: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        if args.max_order is not None:
            set_max_order(None)


if __name__ == "__main__":
    sys.exit(main())
