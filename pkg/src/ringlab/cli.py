"""Command-line front end.

Commands: check (one property on one ring), suite (full claim matrix),
explore (the open-problem triples), table (dump a multiplication table).
Exit codes: 0 true/pass, 1 false/counterexample, 2 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone

from . import __version__, claims
from .errors import ParseError, RingLabError
from .exprs import parse_ring_expr
from .properties import PROPERTY_IDS, _pretty_witness, check_property
from .rings import RING_SIZE_CAP


def _caps_json(args):
    return {"max-degree": args.max_degree, "ring-size-cap": RING_SIZE_CAP}


def _report_head(args):
    return {"tool-version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat()}


def _emit(args, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _load_corpus(args):
    if not args.corpus:
        return claims.default_corpus()
    rings = []
    with open(args.corpus) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rings.append(parse_ring_expr(line).build())
            except (RingLabError, ParseError) as exc:
                raise SystemExit(_usage_error(
                    f"corpus line {lineno} ({line!r}): {exc}"))
    if not rings:
        raise SystemExit(_usage_error("corpus file contains no ring expressions"))
    return rings


def _usage_error(message):
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_check(args) -> int:
    if args.ring is None or args.property is None:
        return _usage_error("check requires --ring and --property")
    if args.property not in PROPERTY_IDS:
        return _usage_error(f"unknown property {args.property!r}; "
                            f"known: {', '.join(PROPERTY_IDS)}")
    ring = parse_ring_expr(args.ring).build()
    report = check_property(ring, args.property, max_degree=args.max_degree)
    payload = _report_head(args)
    payload.update({
        "ring": ring.id,
        "property": args.property,
        "verdict": report.verdict,
        "elapsed-ms": round(report.elapsed_s * 1000.0, 3),
        "caps": _caps_json(args),
    })
    if report.witness is not None:
        payload["witness"] = _pretty_witness(report.witness, ring)
    if args.json:
        _emit(args, payload)
    else:
        print(f"{ring.id}: {args.property} = {report.verdict}")
        if report.note:
            print(f"  note: {report.note}")
        if report.witness is not None:
            print(f"  witness: {json.dumps(_pretty_witness(report.witness, ring))}")
    return 0 if report.verdict else 1


_STATUS_MARK = {"pass": "P", "fail": "F", "hypothesis-not-met": "-",
                "skipped-by-cap": "c"}


def cmd_suite(args) -> int:
    corpus = _load_corpus(args)
    caps = {"max_degree": args.max_degree}
    t0 = time.perf_counter()
    report = claims.run_suite(corpus, caps)
    failed = report["summary"]["fail"]
    payload = _report_head(args)
    payload.update({
        "ring": report["rings"],
        "claims": list(claims.CLAIM_IDS),
        "matrix": {"cells": report["claims"], "summary": report["summary"],
                   "implications": report["implications"]},
        "elapsed-ms": round((time.perf_counter() - t0) * 1000.0, 3),
        "caps": _caps_json(args),
    })
    if args.json:
        _emit(args, payload)
    else:
        width = max(len(r) for r in report["rings"])
        by_cell = {(c["claim"], c["ring"]): c for c in report["claims"]}
        header = "      " + " ".join(f"{cid:>4s}" for cid in claims.CLAIM_IDS)
        print(header)
        for rid in report["rings"]:
            marks = [f"{_STATUS_MARK[by_cell[(cid, rid)]['status']]:>4s}"
                     for cid in claims.CLAIM_IDS]
            print(f"{rid:<{width}s}  " + " ".join(marks))
        print(f"summary: {report['summary']}")
        for cell in report["claims"]:
            if cell["status"] == "fail":
                print(f"FAIL {cell['claim']} on {cell['ring']}: {cell.get('note', '')}")
                print(f"  trace: {json.dumps(cell.get('trace'))}")
    return 0 if failed == 0 else 1


def cmd_explore(args) -> int:
    corpus = _load_corpus(args)
    report = claims.explore_problem(corpus)
    payload = _report_head(args)
    payload.update({
        "ring": [t["ring"] for t in report["triples"]],
        "claims": ["C18"],
        "matrix": report,
        "elapsed-ms": 0.0,
        "caps": _caps_json(args),
    })
    t0 = time.perf_counter()
    payload["elapsed-ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    if args.json:
        _emit(args, payload)
    else:
        print(f"{'ring':<16s} weakly-reversible  pi-duo  reversible  candidate")
        for t in report["triples"]:
            print(f"{t['ring']:<16s} {str(t['weakly-reversible']):<18s}"
                  f"{str(t['pi-duo']):<8s}{str(t['reversible']):<12s}"
                  f"{t['candidate']}")
        print(report["note"])
    return 0


def cmd_table(args) -> int:
    if args.ring is None:
        return _usage_error("table requires --ring")
    ring = parse_ring_expr(args.ring).build()
    payload = _report_head(args)
    payload.update({
        "ring": ring.id,
        "matrix": ring.mul_table.tolist(),
        "elapsed-ms": 0.0,
        "caps": _caps_json(args),
    })
    if args.json:
        _emit(args, payload)
    else:
        print(f"multiplication table of {ring.id} ({ring.size} elements)")
        for row in ring.mul_table:
            print(" ".join(str(int(v)) for v in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringlab",
        description="Finite-ring verification laboratory")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("check", cmd_check), ("suite", cmd_suite),
                     ("explore", cmd_explore), ("table", cmd_table)):
        p = sub.add_parser(name)
        p.add_argument("--ring", help="ring expression, e.g. 'S2(M2(Z2))'")
        p.add_argument("--property", help="property id, e.g. weakly-reversible")
        p.add_argument("--max-degree", type=int, default=3)
        p.add_argument("--json", action="store_true")
        p.add_argument("--corpus", help="file of ring expressions, one per line")
        p.add_argument("--seed", type=int, default=None,
                       help="reserved; current searches are deterministic")
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseError as exc:
        return _usage_error(f"{exc} (at position {exc.position})")
    except RingLabError as exc:
        return _usage_error(str(exc))
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
