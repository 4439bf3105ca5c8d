"""Command line front end.

Every command emits a JSON report with a versioned schema: the inputs
echoed under "config", the mathematical results under "report", and
timing metadata under "meta".  Reports for the same config and seed are
byte-identical apart from "meta", which is the only field carrying
timestamps.

Exit codes: 0 when every verdict passed, 2 when a mathematical verdict
failed (a counterexample where none should exist, a mismatch between
independent computations), 1 for usage and IO problems.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from random import Random

from .catalog import COMMON_POINT_RULE, common_point_block, named_family
from .closure import (
    check_closure_bound,
    closure_of,
    compare_with_structural,
    family_generators,
    minimal_window,
)
from .constrained import EMPTY_IDEAL, FIN_IDEAL, ideal_escape_witness
from .descriptors import SetDescriptor
from .errors import InvsemiError, NotGeneratedError
from .families import (
    BlockFamily,
    chain_capacity_by_enumeration,
    chain_capacity_matrix,
    factorize,
    find_chain,
    stratum_options,
    verify_chain,
    verify_factorization,
)
from .symbolic import classify, format_sym, parse_sym
from .topology import (
    isolated_inverse_check,
    random_basic_open,
    shared_identity_interior_probe,
    verify_rank_one_certificate,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_family(spec: str) -> BlockFamily:
    if spec.endswith(".json") or os.path.sep in spec or os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return BlockFamily.from_config(json.load(fh))
    return named_family(spec)


def _emit(args, command: str, config: dict, report: dict, started: float) -> None:
    doc = {
        "schema": 1,
        "command": command,
        "config": config,
        "report": report,
        "meta": {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "elapsed_s": round(time.monotonic() - started, 3),
        },
    }
    text = json.dumps(doc, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        if not args.quiet:
            print(f"report written to {args.out}")
    else:
        print(text)


def _trace(args, message: str) -> None:
    if args.trace:
        print(message, file=sys.stderr)


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _write_csv(path: str, matrix, header: list[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join([""] + header) + "\n")
        for name, row in zip(header, matrix):
            cells = ["" if v is None else str(v) for v in row]
            fh.write(",".join([name] + cells) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_family_check(args) -> int:
    started = time.monotonic()
    fam = _load_family(args.family)
    b = len(fam.blocks)
    matrix = fam.intersection_matrix()
    off = [matrix[i][j] for i in range(b) for j in range(b) if i != j]
    uniform = off[0] if len(set(off)) == 1 else None
    report = {
        "name": fam.name,
        "blocks": [blk.to_text() for blk in fam.blocks],
        "pairwise_overlaps": matrix,
        "almost_disjoint": True,  # construction rejects infinite overlaps
        "uniform_overlap": uniform,
        "max_overlap": max(off),
    }
    if args.csv:
        _write_csv(args.csv, matrix, [f"B{i}" for i in range(b)])
    shape = f"uniform overlap {uniform}" if uniform is not None else "non-uniform overlaps"
    _say(args, f"{fam.name or 'family'}: {b} blocks, max overlap {max(off)}, {shape}")
    _emit(args, "family-check", {"family": args.family}, report, started)
    return 0


def cmd_closure_run(args) -> int:
    started = time.monotonic()
    fam = _load_family(args.family)
    capacity = chain_capacity_matrix(fam)
    window = args.window or minimal_window(fam, capacity)
    _trace(args, f"window {window}")
    gens = family_generators(fam, window, sparse=args.sparse)
    result = closure_of(gens, max_elements=args.max)
    strata = _stratum_counts(result, fam)
    report = {
        "window": window,
        "generators": len(gens),
        "elements": result.size(),
        "closed": result.closed,
        "rounds": len(result.frontier_sizes),
        "frontier_sizes": list(result.frontier_sizes),
        "stratum_counts": strata,
    }
    code = 0
    if args.compare:
        diff = compare_with_structural(result, fam, capacity)
        report["diff"] = {
            "matches": diff.matches,
            "closure_size": diff.closure_size,
            "structural_size": diff.structural_size,
            "missing": [m.format_literal() for m in diff.missing[:10]],
            "extra": [m.format_literal() for m in diff.extra[:10]],
        }
        if not diff.matches:
            code = 2
    _say(args, f"closure: {result.size()} elements in {len(result.frontier_sizes)} "
               f"rounds (closed: {result.closed})")
    _emit(args, "closure run", _family_config(args, window=window, sparse=args.sparse,
                                              max=args.max, compare=args.compare),
          report, started)
    return code


def _stratum_counts(result, fam: BlockFamily) -> dict[str, int]:
    prefixes = [set(blk.below(result.window)) for blk in fam.blocks]
    counts: dict[str, int] = {}
    for f in result.elements:
        dom = set(f.domain())
        img = set(f.image())
        if not dom:
            key = "empty"
        else:
            gi = next((i for i, p in enumerate(prefixes) if dom == p and img == p), None)
            if gi is not None:
                key = f"group[{gi}]"
            else:
                i = next((i for i, p in enumerate(prefixes) if dom <= p), None)
                j = next((j for j, p in enumerate(prefixes) if img <= p), None)
                key = f"rank{len(dom)}[{i},{j}]" if i is not None and j is not None else "other"
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def cmd_chains(args) -> int:
    started = time.monotonic()
    fam = _load_family(args.family)
    b = len(fam.blocks)
    dp = chain_capacity_matrix(fam)
    report = {"capacity": dp}
    code = 0
    if args.check:
        oracle = chain_capacity_by_enumeration(fam, args.max_interior)
        report["oracle"] = oracle
        report["oracle_agrees"] = oracle == dp
        if oracle != dp:
            code = 2
    certs = []
    for i in range(b):
        for j in range(b):
            cert = find_chain(fam, i, j, dp[i][j])
            ok = cert is not None and verify_chain(fam, cert)
            certs.append({
                "i": i, "j": j, "m": dp[i][j],
                "interior": list(cert.interior) if cert else None,
                "verified": bool(ok),
            })
            if not ok:
                code = 2
    report["certificates"] = certs
    if args.csv:
        _write_csv(args.csv, dp, [f"B{i}" for i in range(b)])
    _say(args, f"capacity matrix: {dp}")
    _emit(args, "chains", _family_config(args, check=args.check), report, started)
    return code


def cmd_stratify(args) -> int:
    started = time.monotonic()
    fam = _load_family(args.family)
    f = parse_sym(args.element, fam.blocks)
    tag = classify(f, fam.blocks)
    capacity = chain_capacity_matrix(fam)
    options = stratum_options(f, fam) if tag.kind == "finite" else []
    generated = (
        tag.kind in ("group", "empty")
        or (tag.kind == "finite" and any(tag.k <= capacity[i][j] for i, j in options))
    )
    report = {
        "element": format_sym(f, fam.blocks),
        "kind": tag.kind,
        "stratum": {"i": tag.i, "j": tag.j, "rank": tag.k},
        "stratum_options": [list(o) for o in options],
        "generated": generated,
    }
    _say(args, f"{format_sym(f, fam.blocks)}: {tag.kind} "
               f"(i={tag.i}, j={tag.j}, rank={tag.k}), generated: {generated}")
    _emit(args, "stratify", _family_config(args, element=args.element), report, started)
    return 0


def cmd_factorize(args) -> int:
    started = time.monotonic()
    fam = _load_family(args.family)
    f = parse_sym(args.element, fam.blocks)
    config = _family_config(args, element=args.element)
    try:
        factors = factorize(f, fam)
    except NotGeneratedError as e:
        report = {"generated": False, "reason": str(e)}
        _say(args, f"not generated: {e}")
        _emit(args, "factorize", config, report, started)
        return 2
    ok = verify_factorization(f, factors, fam)
    report = {
        "generated": True,
        "factors": [format_sym(g, fam.blocks) for g in factors],
        "recomposes": bool(ok),
    }
    _say(args, f"{len(factors)} factors, recomposes: {ok}")
    _emit(args, "factorize", config, report, started)
    return 0 if ok else 2


def cmd_verify_closure_bound(args) -> int:
    started = time.monotonic()
    fam = _load_family(args.family)
    rep = check_closure_bound(fam, args.bound, args.window)
    verdict_ok = (rep.satisfied and rep.closed) or (
        not rep.satisfied and rep.witness is not None
        and rep.witness["rank"] > args.bound)
    report = {
        "bound": rep.n,
        "max_overlap": rep.max_overlap,
        "within_bound": rep.satisfied,
        "union_closed": rep.closed,
        "window": rep.window,
        "products_checked": rep.products_checked,
        "bad_pair": list(rep.bad_pair) if rep.bad_pair else None,
        "witness": rep.witness,
        "verdict_ok": verdict_ok,
    }
    if rep.satisfied:
        _say(args, f"overlaps within {args.bound}: union closed = {rep.closed} "
                   f"({rep.products_checked} products)")
    else:
        _say(args, f"overlap {rep.max_overlap} exceeds {args.bound}: escape "
                   f"witness {rep.witness['composite'] if rep.witness else None}")
    _emit(args, "verify closure-bound",
          _family_config(args, bound=args.bound, window=args.window),
          report, started)
    return 0 if verdict_ok else 2


def cmd_verify_ideal_witness(args) -> int:
    started = time.monotonic()
    ideal = FIN_IDEAL if args.ideal == "fin" else EMPTY_IDEAL
    pivot = SetDescriptor.from_text(args.pivot)
    rng = Random(args.seed)
    trials = []
    all_ok = True
    for t in range(args.trials):
        v = random_basic_open(rng)
        w = ideal_escape_witness(v, ideal, pivot)
        trials.append({
            "open": v.describe(),
            "element": format_sym(w.element),
            "clauses": {name: ok for name, ok, _ in w.clauses},
            "holds": w.holds,
        })
        all_ok = all_ok and w.holds
        _trace(args, f"trial {t}: {w.holds}")
    report = {
        "ideal": args.ideal,
        "pivot": pivot.to_text(),
        "extended_ideal": f"finite-mod ({pivot.to_text()})",
        "trials": trials,
        "all_hold": all_ok,
    }
    _say(args, f"{args.trials} opens, witness clauses all hold: {all_ok}")
    _emit(args, "verify ideal-witness",
          {"ideal": args.ideal, "pivot": args.pivot, "trials": args.trials,
           "seed": args.seed},
          report, started)
    return 0 if all_ok else 2


def cmd_verify_pettis_witness(args) -> int:
    started = time.monotonic()
    rule = _resolve_rule(args.family)
    windows = tuple(int(w) for w in args.windows.split(","))

    probe = shared_identity_interior_probe(args.trials, args.seed, rule)
    canonical = [(1, 0), (0, 1), (1, 2)]
    certs = []
    certs_ok = True
    from .symbolic import fin_map

    for pair in canonical:
        chk = verify_rank_one_certificate(fin_map([pair]), rule, windows)
        certs.append({
            "pair": list(pair),
            "certificate": chk.certificate.describe(),
            "logic_singleton": chk.logic_singleton,
            "windowed": {str(w): ok for w, ok in chk.windowed_ok},
            "ok": chk.ok,
        })
        certs_ok = certs_ok and chk.ok

    contrast = isolated_inverse_check([fin_map([(0, 1)])], rule)[0]
    contrast_ok = (contrast.element_isolated and contrast.inverse_isolated
                   and not contrast.product_isolated)

    all_ok = probe.product_is_sole and probe.all_escaped and certs_ok and contrast_ok
    report = {
        "product_set": [format_sym(probe.product_member)],
        "product_is_shared_identity": probe.product_is_sole,
        "interior_probe": {
            "trials": probe.trials,
            "all_escaped": probe.all_escaped,
            "samples": [
                {"open": d, "escape": e} for d, e in probe.escapes[:5]
            ],
        },
        "isolation_certificates": certs,
        "inverse_contrast": {
            "element_isolated": contrast.element_isolated,
            "inverse_isolated": contrast.inverse_isolated,
            "product": format_sym(contrast.product),
            "product_isolated": contrast.product_isolated,
            "product_schema": contrast.product_schema,
        },
        "all_ok": all_ok,
    }
    _say(args, f"product collapses: {probe.product_is_sole}; "
               f"{probe.trials} opens escaped: {probe.all_escaped}; "
               f"certificates ok: {certs_ok}")
    _emit(args, "verify pettis-witness",
          {"family": args.family, "trials": args.trials, "seed": args.seed,
           "windows": args.windows},
          report, started)
    return 0 if all_ok else 2


def _resolve_rule(spec: str):
    if spec in ("common-point", "common-point-dyadic", COMMON_POINT_RULE.name):
        return COMMON_POINT_RULE
    fam = _load_family(spec)
    for k, blk in enumerate(fam.blocks):
        if blk != common_point_block(k):
            raise InvsemiError(
                "the witness probe needs the common-point family; block "
                f"{k} is {blk.to_text()}")
    return COMMON_POINT_RULE


def _family_config(args, **extra) -> dict:
    cfg = {"family": args.family}
    cfg.update({k: v for k, v in extra.items() if v is not None})
    return cfg


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--quiet", action="store_true",
                        help="suppress summary lines")
    common.add_argument("--trace", action="store_true",
                        help="progress notes on stderr")

    p = _Parser(prog="invsemi", parents=[common],
                description="exact workbench for partial bijections of the "
                            "naturals: block families, closures, chain "
                            "capacities, factorization, convergence witnesses")
    sub = p.add_subparsers(dest="command", required=True)

    fc = sub.add_parser("family-check", parents=[common],
                        help="overlap matrix and family sanity")
    fc.add_argument("--family", required=True, help="catalog name or JSON path")
    fc.add_argument("--csv", help="write the overlap matrix as CSV")
    fc.set_defaults(func=cmd_family_check)

    cl = sub.add_parser("closure", help="closure engine")
    clsub = cl.add_subparsers(dest="closure_cmd", required=True)
    run = clsub.add_parser("run", parents=[common],
                           help="close the block groups under "
                                "composition and inverse")
    run.add_argument("--family", required=True)
    run.add_argument("--window", type=int, default=None)
    run.add_argument("--max", type=int, default=200000,
                     help="element budget before giving up")
    run.add_argument("--sparse", action="store_true",
                     help="generate each group from a transposition and a cycle")
    run.add_argument("--compare", action="store_true",
                     help="diff the closure against the structural union")
    run.set_defaults(func=cmd_closure_run)

    ch = sub.add_parser("chains", parents=[common], help="chain capacity matrix and certificates")
    ch.add_argument("--family", required=True)
    ch.add_argument("--check", action="store_true",
                    help="cross-check the dynamic program against literal "
                         "walk enumeration")
    ch.add_argument("--max-interior", type=int, default=None)
    ch.add_argument("--csv", help="write the capacity matrix as CSV")
    ch.set_defaults(func=cmd_chains)

    st = sub.add_parser("stratify", parents=[common], help="classify an element against a family")
    st.add_argument("--family", required=True)
    st.add_argument("--element", required=True,
                    help="element literal, e.g. \"fin(1->7)\" or \"id(B0)\"")
    st.set_defaults(func=cmd_stratify)

    fz = sub.add_parser("factorize", parents=[common],
                        help="write an element as a product of block "
                             "permutations and block identities")
    fz.add_argument("--family", required=True)
    fz.add_argument("--element", required=True)
    fz.set_defaults(func=cmd_factorize)

    ve = sub.add_parser("verify", help="theorem-shaped checks")
    vesub = ve.add_subparsers(dest="verify_cmd", required=True)

    cb = vesub.add_parser("closure-bound", parents=[common],
                          help="the rank-bounded union is a subsemigroup "
                               "exactly when every overlap fits the bound")
    cb.add_argument("--family", required=True)
    cb.add_argument("--bound", type=int, required=True)
    cb.add_argument("--window", type=int, default=None)
    cb.set_defaults(func=cmd_verify_closure_bound)

    iw = vesub.add_parser("ideal-witness", parents=[common],
                          help="escape a prescribed ideal inside random "
                               "basic opens")
    iw.add_argument("--ideal", choices=["fin", "empty"], default="fin")
    iw.add_argument("--pivot", default="tail mod 2 residues [0]",
                    help="set descriptor text for the extending set")
    iw.add_argument("--trials", type=int, default=50)
    iw.add_argument("--seed", type=int, required=True)
    iw.set_defaults(func=cmd_verify_ideal_witness)

    pw = vesub.add_parser("pettis-witness", parents=[common],
                          help="the inverse-product set around the shared "
                               "identity has empty interior")
    pw.add_argument("--family", default="common-point")
    pw.add_argument("--trials", type=int, default=100)
    pw.add_argument("--seed", type=int, required=True)
    pw.add_argument("--windows", default="12,20,28")
    pw.set_defaults(func=cmd_verify_pettis_witness)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (InvsemiError, OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
