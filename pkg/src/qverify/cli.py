"""Command line front end.

Exit status: 0 on success, 1 when a verification or positivity check fails,
2 on usage errors (bad flags, unknown identity, violated preconditions).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import acceptance
from .errors import QVerifyError, UnknownIdentity
from .identities import REGISTRY, get_record, verify, verify_all
from .partitions import PartitionClass, enumerate_partitions, weighted_gf, table_report, WEIGHTS

FORMATS = ("text", "json", "csv")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qverify", description="Exact checks of q-series and weighted partition identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=FORMATS):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("--id", required=True)
    p.add_argument("--order", type=_positive)
    common(p, ("text", "json"))

    p = sub.add_parser("verify-all", help="verify every registered identity")
    p.add_argument("--order", type=_positive, help="use this order for every identity")
    common(p, ("text", "json"))

    p = sub.add_parser("coeffs", help="dump both sides of an identity")
    p.add_argument("--id", required=True)
    p.add_argument("--order", type=_positive)
    common(p)

    p = sub.add_parser("partitions", help="list partitions, or a weighted generating function with --weight")
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--n-max", type=_nonneg)
    p.add_argument("--class", dest="cls", choices=[c.value for c in PartitionClass], default="all")
    p.add_argument("--weight", choices=sorted(WEIGHTS))
    common(p)

    p = sub.add_parser("table", help="weight table for the partitions of n")
    p.add_argument("--n", type=_nonneg, default=6)
    common(p)

    p = sub.add_parser("suite", help="run every acceptance criterion")
    common(p, ("text", "json"))
    return parser


def _cmd_verify(args):
    rep = verify(args.id, args.order)
    text = json.dumps(rep.to_json(), indent=2) + "\n" if args.format == "json" else rep.summary() + "\n"
    return text, 0 if rep.passed else 1


def _cmd_verify_all(args):
    overrides = {i: args.order for i in REGISTRY} if args.order else None
    reps = verify_all(overrides)
    if args.format == "json":
        text = json.dumps([r.to_json() for r in reps], indent=2) + "\n"
    else:
        text = "".join(r.summary() + "\n" for r in reps)
    return text, 0 if all(r.passed for r in reps) else 1


def _cmd_coeffs(args):
    rec = get_record(args.id)
    n = args.order or rec.default_order
    sides = {"lhs": rec.build("lhs", n)}
    if rec.rhs is not None:
        sides["rhs"] = rec.build("rhs", n)
    if args.format == "json":
        return json.dumps({"id": rec.id, **{k: s.to_json() for k, s in sides.items()}}, indent=2) + "\n", 0
    if args.format == "csv":
        if not all(s.is_symbol_free() for s in sides.values()):
            raise QVerifyError("csv output needs symbol-free series; %s is symbolic" % rec.id)
        cols = {k: s.integer_coeffs() for k, s in sides.items()}
        lines = ["q," + ",".join(cols)]
        lines += ["%d,%s" % (k, ",".join(str(c[k]) for c in cols.values())) for k in range(n + 1)]
        return "\n".join(lines) + "\n", 0
    return "".join("%s: %s\n" % (k, s) for k, s in sides.items()), 0


def _cmd_partitions(args):
    cls = PartitionClass(args.cls)
    if args.weight:
        n_max = args.n_max if args.n_max is not None else args.n
        if n_max is None:
            raise QVerifyError("--weight needs --n-max")
        gf = weighted_gf(n_max, cls, args.weight)
        if args.format == "json":
            return json.dumps(gf.to_json(), indent=2) + "\n", 0
        if args.format == "csv":
            return gf.to_csv(), 0
        return str(gf) + "\n", 0
    if args.n is None:
        raise QVerifyError("partitions needs --n (or --weight with --n-max)")
    parts = enumerate_partitions(args.n, cls)
    rows = [{"partition": str(p), "size": p.size, "parts": p.num_parts, "t": p.chain,
             "p1": p.p(1), "p2": p.p(2), "r1": p.r(1), "r2": p.r(2)} for p in parts]
    if args.format == "json":
        return json.dumps(rows, indent=2) + "\n", 0
    cols = ["partition", "size", "parts", "t", "p1", "p2", "r1", "r2"]
    if args.format == "csv":
        return "\n".join([",".join(cols)] + ['"%s",%s' % (r["partition"], ",".join(str(r[c]) for c in cols[1:]))
                                             for r in rows]) + "\n", 0
    width = max([len(r["partition"]) for r in rows] + [9])
    lines = [" ".join([cols[0].ljust(width)] + ["%5s" % c for c in cols[1:]])]
    lines += [" ".join([r["partition"].ljust(width)] + ["%5d" % r[c] for c in cols[1:]]) for r in rows]
    return "\n".join(lines) + "\n", 0


def _cmd_table(args):
    return table_report(args.n).render(args.format), 0


def _cmd_suite(args):
    results = acceptance.run_suite()
    if args.format == "json":
        text = json.dumps([{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                           for r in results], indent=2) + "\n"
    else:
        text = "".join(r.line() + "\n" for r in results)
        text += "%d/%d criteria passed\n" % (sum(r.passed for r in results), len(results))
    return text, 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "verify": _cmd_verify,
    "verify-all": _cmd_verify_all,
    "coeffs": _cmd_coeffs,
    "partitions": _cmd_partitions,
    "table": _cmd_table,
    "suite": _cmd_suite,
}


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except UnknownIdentity as exc:
        print("error: %s (known: %s)" % (exc, ", ".join(REGISTRY)), file=sys.stderr)
        return 2
    except QVerifyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv: Optional[List[str]] = None) -> None:
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)
