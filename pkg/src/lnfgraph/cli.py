"""Command-line entry point: ``lnfgraph <subcommand>``.

Exit codes: 0 success/confirmed, 1 property check negative, 2 usage or parse
error, 3 envelope refusal, 4 internal verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import DomainError, PreconditionError, b, f, lower_bound_certificate, phi_min
from .certificate import SCHEMA_VERSION
from .constructors import (
    DEFAULT_VERIFY_DEPTH, ConstructionError, StoreError, block_labels, build_plan,
    default_store, load_store, save_store, witness,
)
from .formats import ParseError, emit_dot, emit_edge_list, emit_graph6, parse_graph
from .graph import GraphError, max_degree, min_degree

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_ENVELOPE = 3
EXIT_INTERNAL = 4

OUTPUT_DIR_ENV = "LNFGRAPH_OUTPUT_DIR"

log = logging.getLogger("lnfgraph")


class UsageError(Exception):
    pass


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _output_dir(args) -> Path:
    return Path(args.output_dir or os.environ.get(OUTPUT_DIR_ENV) or ".")


def _store(args):
    return load_store(args.store) if getattr(args, "store", None) else default_store()


def _range(args) -> range:
    lo = args.n
    hi = args.to if args.to is not None else lo
    if lo < 8 or hi < lo:
        raise UsageError(f"orders must satisfy 8 <= n <= to, got n={lo}, to={hi}")
    return range(lo, hi + 1)


def cmd_formula(args) -> int:
    rows = []
    for n in _range(args):
        value, argmins = phi_min(n)
        rows.append({"n": n, "f": f(n), "b": _fraction_text(b(n)), "phi_min": value,
                     "argmins": sorted(argmins)})
    if args.json:
        sys.stdout.write(_dump({"schema_version": SCHEMA_VERSION, "rows": rows}))
    else:
        print(f"{'n':>8} {'f(n)':>8} {'b(n)':>10} {'phi_min':>8}  argmins")
        for r in rows:
            print(f"{r['n']:>8} {r['f']:>8} {r['b']:>10} {r['phi_min']:>8}  "
                  + ",".join(map(str, r["argmins"])))
    return EXIT_OK


def cmd_refute(args) -> int:
    if args.max_n < 8:
        raise UsageError("--max-n must be >= 8")
    store = _store(args)
    rows = []
    best = None
    for n in range(8, args.max_n + 1):
        fn, bn = f(n), b(n)
        gap = bn - fn
        if not bn > 2 * n >= fn:
            log.error("b(%d) > 2n >= f(%d) fails", n, n)
            return EXIT_INTERNAL
        available = all(gid in store for gid in build_plan(n).blocks)
        rows.append({"n": n, "f": fn, "b": _fraction_text(bn), "gap": _fraction_text(gap),
                     "witness_available": available})
        if best is None or gap > best[1]:
            best = (n, gap)
    summary = {"orders": f"8..{args.max_n}", "all_b_exceeds_f": True,
               "max_gap": _fraction_text(best[1]), "max_gap_at": best[0]}
    if args.json:
        out = {"schema_version": SCHEMA_VERSION, "summary": summary}
        if not args.quiet:
            out["rows"] = rows
        sys.stdout.write(_dump(out))
    else:
        if not args.quiet:
            print(f"{'n':>8} {'f(n)':>8} {'b(n)':>12} {'gap':>12}  witness")
            for r in rows:
                print(f"{r['n']:>8} {r['f']:>8} {r['b']:>12} {r['gap']:>12}  "
                      + ("yes" if r["witness_available"] else "no"))
        print(f"b(n) > f(n) for every n in 8..{args.max_n}; "
              f"max gap {summary['max_gap']} at n={best[0]}")
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.n < 8:
        raise UsageError(f"witness graphs exist for n >= 8, got {args.n}")
    store = _store(args)
    try:
        g = witness(args.n, store, verify_depth=args.verify_depth)
    except ConstructionError as exc:
        print(f"verification failed: {exc} (predicate={exc.predicate})", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "graph6":
        text = emit_graph6(g) + "\n"
    elif args.format == "dot":
        text = emit_dot(g, block_labels(build_plan(args.n), store), name=f"G{args.n}")
    else:
        text = emit_edge_list(g)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def check_report(g) -> dict:
    from .predicates import is_k_connected, is_locally_foresty, is_locally_nonforesty

    report = {"schema_version": SCHEMA_VERSION, "order": g.order, "size": g.size}
    if g.order == 0:
        raise UsageError("cannot check the empty graph")
    lnf, bad = is_locally_nonforesty(g)
    conn, cut = is_k_connected(g, 3)
    report.update({
        "min_degree": min_degree(g),
        "max_degree": max_degree(g),
        "locally_foresty": is_locally_foresty(g),
        "locally_nonforesty": lnf,
        "forest_witness_vertex": bad,
        "three_connected": conn,
        "cut": sorted(cut) if cut is not None else None,
    })
    if lnf and conn:
        lb = lower_bound_certificate(g)
        report["lower_bound"] = {"branch": lb.branch, "bound": lb.bound, "holds": lb.holds,
                                 "s": lb.s, "tight": lb.tight}
        if g.order >= 8:
            report["f_n"] = f(g.order)
            report["meets_f_n"] = g.size >= f(g.order)
    else:
        report["lower_bound"] = None
    return report


def cmd_check(args) -> int:
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text(encoding="utf-8")
    g = parse_graph(text)
    report = check_report(g)
    if args.json:
        sys.stdout.write(_dump(report))
    else:
        for key, value in report.items():
            print(f"{key:>22}: {value}")
    return EXIT_OK if report["locally_nonforesty"] and report["three_connected"] else EXIT_NEGATIVE


def cmd_certify(args) -> int:
    from .enumeration import EnvelopeError, certify_minimum

    claimed = args.claimed
    if claimed is None:
        if args.n < 8:
            raise UsageError("--claimed is required for n < 8")
        claimed = f(args.n)
    try:
        cert = certify_minimum(args.n, claimed, long_run=args.long_run, workers=args.workers,
                               checkpoint=args.checkpoint)
    except EnvelopeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_ENVELOPE
    if cert.verdict == "confirmed" and args.n >= 8 and claimed == f(args.n):
        g = witness(args.n)
        cert.details["constructed_witness"] = emit_graph6(g)
    path = cert.save(_output_dir(args) / f"certificate_n{args.n}_m{claimed}.json")
    if args.json:
        sys.stdout.write(cert.to_json())
    else:
        print(f"order {args.n}, claimed minimum {claimed}: {cert.verdict}"
              + (f" ({cert.details['reason']})" if cert.details.get("reason") else ""))
        print(f"classes examined: {cert.counts['classes_examined']}; certificate: {path}")
    return EXIT_OK if cert.verdict == "confirmed" else EXIT_NEGATIVE


def cmd_gadgets(args) -> int:
    from .gadgets import NoGadgetFound, certify_gadget_store, derive_store

    if args.derive:
        start = time.perf_counter()
        try:
            store, derivation = derive_store(tuple(range(1, args.k_max + 1)))
        except NoGadgetFound as exc:
            print(f"FINDING: {exc}; the ring construction cannot be completed", file=sys.stderr)
            return EXIT_NEGATIVE
        out = _output_dir(args)
        store_path = save_store(store, Path(args.store_out) if args.store_out else out / "gadgets.json")
        derivation["timing"] = {"elapsed_seconds": round(time.perf_counter() - start, 3)}
        log_path = store_path.with_name(store_path.stem + "_derivation.json")
        log_path.write_text(_dump(derivation), encoding="utf-8")
        print(f"wrote {store_path} ({len(store) - 1} gadgets) and {log_path}")
        for gid, entry in derivation["gadgets"].items():
            c = entry["counts"]
            print(f"  {gid}: {c['valid']} valid labelings of {c['port_labelings']} "
                  f"over {c['base_graphs']} base graphs")
        return EXIT_OK
    store = _store(args)
    cert = certify_gadget_store(store, args.certify)
    if args.json:
        sys.stdout.write(cert.to_json())
    else:
        print(f"gadget store, k=1..{args.certify}: {cert.verdict} "
              f"({cert.counts['passed']}/{cert.counts['assembled']} assemblies pass)")
        if cert.details.get("failure"):
            print(f"  first failure: {cert.details['failure']}")
    return EXIT_OK if cert.verdict == "confirmed" else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lnfgraph", description=(
        "Minimum size of 3-connected locally nonforesty graphs: formula, witnesses, "
        "checks and exhaustive certification."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--output-dir", help=f"directory for files (default ${OUTPUT_DIR_ENV} or .)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--store", help="gadget store JSON (default: the shipped store)")

    s = sub.add_parser("formula", parents=[common], help="f(n), b(n) and the phi minimum")
    s.add_argument("n", type=int)
    s.add_argument("--to", type=int, help="last order of a range")
    s.set_defaults(func=cmd_formula)

    s = sub.add_parser("construct", parents=[common], help="emit a verified extremal witness")
    s.add_argument("n", type=int)
    s.add_argument("--format", choices=("graph6", "dot", "edges"), default="graph6")
    s.add_argument("--output", "-o", help="write to this file instead of stdout")
    s.add_argument("--verify-depth", type=int, default=DEFAULT_VERIFY_DEPTH,
                   help="largest n that gets the full 3-connectivity check")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check", parents=[common], help="report the predicates on a graph file")
    s.add_argument("input", help="graph6 or edge-list file, '-' for stdin")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("certify", parents=[common], help="exhaustive minimality certificate")
    s.add_argument("n", type=int)
    s.add_argument("--claimed", type=int, help="claimed minimum size (default f(n))")
    s.add_argument("--long-run", action="store_true", help="allow the order-9 run")
    s.add_argument("--checkpoint", help="per-level frontier file for resuming")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("refute", parents=[common], help="compare f(n) with 7(n-1)/3")
    s.add_argument("--max-n", type=int, default=100)
    s.add_argument("--quiet", action="store_true", help="summary line only")
    s.set_defaults(func=cmd_refute)

    s = sub.add_parser("gadgets", parents=[common], help="derive or certify the gadget store")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--derive", action="store_true")
    g.add_argument("--certify", type=int, metavar="K_MAX")
    s.add_argument("--k-max", type=int, default=4, help="validation range used by --derive")
    s.add_argument("--store-out", help="where --derive writes the store")
    s.set_defaults(func=cmd_gadgets)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StoreError as exc:
        print(f"gadget store error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructionError, PreconditionError) as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
