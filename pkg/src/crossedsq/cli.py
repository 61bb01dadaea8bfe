"""Command-line frontend.

Every subcommand reads one spec document (``--spec``, or ``--group`` for a
group document), prints a JSON report with sorted keys and exits 0 when all
checks pass, 1 when one fails and 2 on bad input or an enumeration limit.
"""

from __future__ import annotations

import argparse
import sys
import time

from .coset import DEFAULT_MAX_COSETS
from .errors import ConstructionError, CosetOverflow, CrossedSqError, GroupTooLarge, SpecError
from .report import Report
from . import spec_io

COMMANDS = ("check-square", "tensor-square", "coproduct", "ellis-square", "mg0", "mg1",
            "mg2", "cg2", "moore", "homotopy", "suspension-pi3", "spot-check")


class UsageError(Exception):
    pass


def _describe(g):
    return {"order": g.order, "abelian_invariants": g.abelian_invariants()}


def _square_results(sq, mode):
    rep = sq.check(mode=mode)
    parts = {k: getattr(sq, k) for k in "LMNP"}
    return ({k: g.order for k, g in parts.items()},
            {k: g.abelian_invariants() for k, g in parts.items()}, [rep])


def _input(args, kinds):
    """The spec document, from --spec or (when allowed) --group."""
    if args.spec is not None:
        return spec_io.load_document(_read(args.spec))
    if args.group is not None and "group" in kinds:
        return {"group": spec_io.load_document(_read(args.group))}
    raise UsageError(f"{args.command} needs --spec" + (" or --group" if "group" in kinds else ""))


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None


def _simplicial(args):
    doc = _input(args, ("group",))
    if "group" in doc and len(doc) == 1:
        doc = {"kind": "constant", "group": doc["group"]}
    t = spec_io.parse_simplicial(doc, args.max_cosets)
    return doc, getattr(t, "group", t)


# -- commands -------------------------------------------------------------------

def cmd_check_square(args):
    doc = _input(args, ())
    sq = spec_io.parse_square(doc, args.max_cosets)
    return doc, *_square_results(sq, args.mode)


def cmd_tensor_square(args):
    from .tensor import tensor_square_completion

    doc = _input(args, ("group",))
    sq = tensor_square_completion(spec_io.parse_corner(doc, args.max_cosets), args.max_cosets)
    orders, inv, reps = _square_results(sq, args.mode)
    return doc, orders, inv, [sq.tensor.relation_report()] + reps


def cmd_coproduct(args):
    doc = _input(args, ("group",))
    from .xmod import coproduct

    c = spec_io.parse_corner(doc, args.max_cosets)
    cp = coproduct(c.x, c.y)
    x = cp.xmod
    rep = x.check_crossed()
    return doc, {"coproduct": x.M.order, "P": x.P.order}, \
        {"coproduct": x.M.abelian_invariants()}, [rep]


def cmd_ellis_square(args):
    from .tensor import ellis_free_square

    doc = _input(args, ())
    es = ellis_free_square(spec_io.parse_free_square(doc, args.max_cosets), args.max_cosets)
    orders, inv, reps = _square_results(es.square, args.mode)
    orders["tensor"] = es.tensor.group.order
    orders["free"] = es.free.M.order
    return doc, orders, inv, reps


def cmd_mg0(args):
    from .mg import mg0

    doc, t = _simplicial(args)
    g = mg0(t)
    return doc, {"mG0": g.order}, {"mG0": g.abelian_invariants()}, [t.check()]


def cmd_mg1(args):
    from .mg import mg1

    doc, t = _simplicial(args)
    x = mg1(t)
    return doc, {"M": x.M.order, "P": x.P.order}, \
        {"M": x.M.abelian_invariants(), "P": x.P.abelian_invariants()}, \
        [t.check(), x.check_crossed()]


def cmd_mg2(args):
    from .mg import mg2

    doc, t = _simplicial(args)
    orders, inv, reps = _square_results(mg2(t), args.mode)
    return doc, orders, inv, [t.check()] + reps


def cmd_cg2(args):
    from .squared import cg2

    doc, t = _simplicial(args)
    cx = cg2(t)
    orders, inv, reps = _square_results(cx.square, args.mode)
    for n, g in enumerate(cx.groups, start=3):
        orders[f"C{n}"] = g.order
        inv[f"C{n}"] = g.abelian_invariants()
    for n, g in enumerate(cx.homotopy()):
        orders[f"pi{n}"] = g.order
        inv[f"pi{n}"] = g.abelian_invariants()
    return doc, orders, inv, [cx.check()] + reps


def cmd_moore(args):
    doc, t = _simplicial(args)
    orders, inv = {}, {}
    rep = Report("moore complex")
    for n in range(t.k + 1):
        ng, _ = t.moore(n).as_group()
        orders[f"NG{n}"] = ng.order
        inv[f"NG{n}"] = ng.abelian_invariants()
        if n >= 2:
            dd = t.faces[n - 1][n - 1].images[t.moore_boundary(n).images]
            rep.record("d d = 1", dd != 0, lambda i, n=n: ("level", n, "element", i))
    return doc, orders, inv, [t.check(), rep]


def cmd_homotopy(args):
    doc, t = _simplicial(args)
    orders, inv = {}, {}
    for d in t.homotopy_groups():
        orders[f"pi{d['n']}"] = d["order"]
        inv[f"pi{d['n']}"] = d["abelian_invariants"]
    return doc, orders, inv, [t.check()]


def _pi(args):
    doc = _input(args, ("group",))
    g = doc.get("group", doc)
    return g, spec_io.parse_group(g, args.max_cosets)


def cmd_suspension_pi3(args):
    from .suspension import pi3_suspension

    doc, pi = _pi(args)
    res = pi3_suspension(pi, args.max_cosets)
    rep = Report("suspension")
    rep.add("pi_1 trivial", int(res.pi1.order != 1), 1)
    rep.add("pi_3 equals the commutator kernel", int(not res.consistent), 1,
            None if res.consistent else (res.pi3.order, res.kernel.order))
    orders = {f"pi{n}": getattr(res, f"pi{n}").order for n in (1, 2, 3)}
    orders["tensor"] = res.square.L.order
    inv = {f"pi{n}": getattr(res, f"pi{n}").abelian_invariants() for n in (1, 2, 3)}
    return doc, orders, inv, [rep, res.square.check(mode=args.mode)]


def cmd_spot_check(args):
    from .suspension import spot_check

    doc, pi = _pi(args)
    rep = spot_check(pi)
    return doc, {"pi": pi.order, "model_L": rep.model_L_order}, \
        {"pi": pi.abelian_invariants()}, [rep]


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# -- driver ---------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="crossedsq", description="Crossed squares of finite groups.")
    p.add_argument("command", choices=COMMANDS, metavar="command",
                   help="one of: " + ", ".join(COMMANDS))
    p.add_argument("--spec", help="input spec document")
    p.add_argument("--group", help="input group document")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p.add_argument("--out", help="write the report here as well as to stdout")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", dest="mode", action="store_const", const="exhaustive")
    mode.add_argument("--sampled", dest="mode", action="store_const", const="sampled")
    p.set_defaults(mode="auto")
    return p


def run(argv):
    """(exit code, report dict or None)."""
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return 2, None
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    start = time.perf_counter()
    try:
        inputs, orders, inv, reps = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"crossedsq: {exc}", file=sys.stderr)
        return 2, None
    except (SpecError, CosetOverflow, GroupTooLarge, ConstructionError) as exc:
        print(f"crossedsq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    except CrossedSqError as exc:
        print(f"crossedsq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1, None
    report = {
        "command": args.command,
        "inputs": {"spec": inputs, "max_cosets": args.max_cosets, "mode": args.mode},
        "results": {"orders": orders, "abelian_invariants": inv,
                    "axiom_table": {r.title: r.as_dict() for r in reps}},
        "ok": all(r.ok for r in reps),
        "timing_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    text = spec_io.dump_report(report, args.out)
    print(text)
    return (0 if report["ok"] else 1), report


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else list(argv))
    return code


if __name__ == "__main__":
    sys.exit(main())
