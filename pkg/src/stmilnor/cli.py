"""Command line front end.

Subcommands: eval, verify, verify-all, index-set, invariant.  Exit codes:
0 success, 1 a verification ran and failed, 2 usage or parse errors.  All
error paths print a single line starting with "error: " to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import exprparse, identities, invariants, milnor, padic
from .algebra import Element, power, serialize
from .context import Context, ParseError


class _Cli(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def eval_node(ctx: Context, node) -> Element:
    """Evaluate a parsed expression in the given context."""
    e = exprparse
    if isinstance(node, e.Lit):
        return ctx.scalar(node.value)
    if isinstance(node, e.Var):
        return ctx.x(node.index) if node.kind == "x" else ctx.y(node.index)
    if isinstance(node, e.LInv):
        return invariants.l_det(ctx, node.m)
    if isinstance(node, e.LsInv):
        return invariants.l_omit(ctx, node.m, node.s)
    if isinstance(node, e.QInv):
        return invariants.dickson_q(ctx, node.m, node.s)
    if isinstance(node, e.VInv):
        return invariants.v_det(ctx, node.m)
    if isinstance(node, e.MInv):
        return invariants.mui_m(ctx, node.m, node.ss)
    if isinstance(node, e.MdInv):
        return invariants.mui_m(ctx, node.m, node.ss, node.d)
    if isinstance(node, e.BInv):
        return invariants.bracket(ctx, node.k, node.es, node.m)
    if isinstance(node, e.StuOp):
        return milnor.st_u(node.u, eval_node(ctx, node.arg))
    if isinstance(node, e.StDeltaOp):
        return milnor.st_delta(node.i, eval_node(ctx, node.arg))
    if isinstance(node, e.POp):
        return milnor.steenrod_p(node.r, eval_node(ctx, node.arg))
    if isinstance(node, e.StSROp):
        op = milnor.MilnorOp(node.s_part, node.r_part)
        return milnor.apply(op, eval_node(ctx, node.arg))
    if isinstance(node, e.Add):
        return eval_node(ctx, node.left) + eval_node(ctx, node.right)
    if isinstance(node, e.Sub):
        return eval_node(ctx, node.left) - eval_node(ctx, node.right)
    if isinstance(node, e.Mul):
        return eval_node(ctx, node.left) * eval_node(ctx, node.right)
    if isinstance(node, e.Pow):
        return power(eval_node(ctx, node.base), node.exp)
    raise TypeError(f"not an AST node: {node!r}")


_INVARIANT_NODES = (
    exprparse.LInv, exprparse.LsInv, exprparse.QInv, exprparse.VInv,
    exprparse.MInv, exprparse.MdInv, exprparse.BInv,
)


def _degree_of(a: Element):
    try:
        return a.degree()
    except ValueError:
        return None


def _print_element(a: Element, as_json: bool) -> None:
    deg = _degree_of(a)
    if as_json:
        payload = json.loads(serialize(a, "json"))
        payload["degree"] = deg
        payload["term_count"] = a.term_count()
        print(json.dumps(payload))
    else:
        print(serialize(a, "text"))
        dtxt = str(deg) if deg is not None else ("0" if a.is_zero() else "mixed")
        print(f"degree: {dtxt}  terms: {a.term_count()}")


def _cmd_eval(args) -> int:
    ctx = Context(args.p, args.n)
    node = exprparse.parse_expr(args.expression)
    _print_element(eval_node(ctx, node), args.json)
    return 0


def _cmd_invariant(args) -> int:
    node = exprparse.parse_expr(args.name)
    if not isinstance(node, _INVARIANT_NODES):
        print("error: not an invariant name (expected L/Ls/Q/V/M/Md/B)", file=sys.stderr)
        return 2
    ctx = Context(args.p, args.n)
    _print_element(eval_node(ctx, node), args.json)
    return 0


def _parse_param(kv: str):
    if "=" not in kv:
        raise ValueError(f"malformed --param {kv!r}, expected key=value")
    key, _, val = kv.partition("=")
    key = key.strip()
    val = val.strip()
    if not key:
        raise ValueError(f"malformed --param {kv!r}, expected key=value")
    try:
        if "," in val:
            return key, tuple(int(x) for x in val.split(",") if x.strip() != "")
        return key, int(val)
    except ValueError:
        raise ValueError(f"malformed --param value {val!r}, expected integers") from None


def _report_sweep(rep: identities.SweepReport, as_json: bool) -> None:
    if as_json:
        payload = {
            "id": rep.id,
            "profile": rep.profile,
            "total": rep.total,
            "passed": rep.passed,
            "failed": rep.failed,
            "seconds": round(rep.seconds, 3),
        }
        if rep.first_failure is not None:
            f = rep.first_failure
            payload["first_failure"] = {
                "p": f.p,
                "params": {k: list(v) if isinstance(v, tuple) else v for k, v in f.params.items()},
                "detail": f.detail,
            }
        print(json.dumps(payload))
    else:
        mark = "ok" if rep.ok else "FAIL"
        print(f"{mark} {rep.id}: {rep.passed}/{rep.total} cases in {rep.seconds:.2f}s")
        if rep.first_failure is not None:
            f = rep.first_failure
            print(f"  first failure: p={f.p} params={f.params}")
            if f.detail:
                print(f"  {f.detail}")


def _cmd_verify(args) -> int:
    if args.id not in identities.REGISTRY:
        print(f"error: unknown identity id {args.id!r}", file=sys.stderr)
        return 2
    filt = {}
    for kv in args.param or []:
        k, v = _parse_param(kv)
        filt[k] = v
    rep = identities.sweep(args.id, "full", p_filter=args.p, param_filter=filt or None)
    if rep.total == 0:
        print("error: no planned cases match the given parameters", file=sys.stderr)
        return 2
    _report_sweep(rep, args.json)
    return 0 if rep.ok else 1


def _cmd_verify_all(args) -> int:
    try:
        primes = [int(x) for x in args.p.split(",") if x.strip() != ""]
    except ValueError:
        print(f"error: malformed --p {args.p!r}, expected a comma list of primes", file=sys.stderr)
        return 2
    if not primes:
        print("error: --p lists no primes", file=sys.stderr)
        return 2
    reports = identities.verify_all(args.profile, primes)
    for rep in reports:
        _report_sweep(rep, args.json)
    bad = [r for r in reports if not r.ok]
    if not args.json:
        ran = sum(r.total for r in reports)
        print(f"{'FAIL' if bad else 'ok'}: {len(reports) - len(bad)}/{len(reports)} identities, "
              f"{ran} cases")
    return 1 if bad else 0


def _cmd_index_set(args) -> int:
    p, u, v = args.p, args.u, args.v
    if args.kind == "I":
        elems = padic.index_set_I(p, u, v)
        if args.json:
            print(json.dumps({"kind": "I", "p": p, "u": u, "v": v, "elements": list(elems)}))
        else:
            body = ", ".join(str(a) for a in elems)
            print(f"I({u},{v}) at p={p}: {{{body}}}  ({len(elems)} elements)")
        return 0
    elems = padic.index_set_J(p, u, v)
    rows = []
    for a in elems:
        dec = padic.j_decompose(p, u, v, a)
        rows.append({
            "a": a,
            "blocks": list(dec.blocks),
            "parts": list(dec.parts),
            "b": padic.b_func(p, u, v, a),
            "c": padic.c_func(p, u, v, a),
        })
    if args.json:
        print(json.dumps({"kind": "J", "p": p, "u": u, "v": v, "elements": rows}))
    else:
        print(f"J({u},{v}) at p={p}: {len(elems)} elements")
        for r in rows:
            blocks = ",".join(str(x) for x in r["blocks"]) or "-"
            parts = ",".join(str(x) for x in r["parts"]) or "-"
            print(f"  a={r['a']}: blocks=[{blocks}] parts=[{parts}] b={r['b']} c={r['c']}")
    return 0


def _build_parser() -> _Cli:
    top = _Cli(prog="stmilnor", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp, with_n=True):
        sp.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
        if with_n:
            sp.add_argument("--n", type=int, default=3, help="number of generators (default 3)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--seed", type=int, default=None, help="seed for randomized extras")

    sp = sub.add_parser("eval", help="evaluate an expression")
    sp.add_argument("expression")
    common(sp)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("verify", help="verify one identity, optionally filtered")
    sp.add_argument("--id", required=True, help="identity id, e.g. thm3.1")
    sp.add_argument("--p", type=int, default=None, help="restrict to one prime")
    sp.add_argument("--param", action="append", metavar="K=V",
                    help="filter plan parameters, e.g. --param n=2 --param e=0,1")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("verify-all", help="run the whole identity registry")
    sp.add_argument("--p", default="3", help="comma list of primes (default 3)")
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_verify_all)

    sp = sub.add_parser("index-set", help="print a p-adic digit index set")
    sp.add_argument("--kind", choices=("I", "J"), required=True)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    common(sp, with_n=False)
    sp.set_defaults(func=_cmd_index_set)

    sp = sub.add_parser("invariant", help="pretty-print a named invariant")
    sp.add_argument("name", help="e.g. 'Q(2,1)' or 'B(1;[0,2];3)'")
    common(sp)
    sp.set_defaults(func=_cmd_invariant)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code or 0
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
