"""Command-line interface: ``curvecycles <verb> ...``.

Verbs: ``verify``, ``eval``, ``push``, ``bounds``, ``propagate``.  Exit
status is 0 exactly when every requested check passes (or, for the other
verbs, when the command completes); input errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import inference, numtheory, suites
from .cycles import CycleExpr, push_proj, xi_normalize
from .dsl import Style, format_expr, parse_expr
from .errors import CycleError
from .jacobian import JacExpr, sigma_push, xi_mode


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _qz(text: str) -> dict:
    out = {}
    for part in text.split(","):
        key, _, val = part.partition("=")
        key = key.strip().upper()
        if key not in ("N", "G") or not val.strip().isdigit():
            raise argparse.ArgumentTypeError(f"expected N=<int>,G=<int>, got {text!r}")
        out[key] = int(val)
    if set(out) != {"N", "G"}:
        raise argparse.ArgumentTypeError("both N and G are required")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvecycles", description="Exact tautological cycle calculus.")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=suites.SUITES + ("all",), default="all")
    v.add_argument("--max-n", type=int, default=None, help="largest arity (capped by CYC_MAX_N)")
    v.add_argument("--mode", choices=("generic", "xi"), default="generic")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=None)

    e = sub.add_parser("eval", help="evaluate an expression and print its canonical form")
    e.add_argument("expr")
    e.add_argument("--mode", choices=("generic", "xi"), default="generic")
    e.add_argument("--format", choices=("text", "json"), default="text")

    u = sub.add_parser("push", help="push a cycle forward to fewer factors or to the Jacobian")
    u.add_argument("expr")
    grp = u.add_mutually_exclusive_group(required=True)
    grp.add_argument("--keep", type=_int_list, help="coordinates to keep, e.g. 2,3")
    grp.add_argument("--jacobian", action="store_true", help="push along the summation map")
    u.add_argument("--genus", type=int, help="genus for --jacobian")
    u.add_argument("--mode", choices=("generic", "xi"), default="generic")
    u.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("bounds", help="torsion bounds")
    b.add_argument("--genus", type=int, required=True)
    how = b.add_mutually_exclusive_group(required=True)
    how.add_argument("--qz", type=_qz, metavar="N=<int>,G=<int>")
    how.add_argument("--cer-to-gamma", type=int, metavar="D")
    how.add_argument("--gamma-to-cer", type=int, metavar="D")
    b.add_argument("--format", choices=("text", "json"), default="text")

    r = sub.add_parser("propagate", help="close a set of vanishing statements under the rules")
    r.add_argument("--genus", type=int, required=True)
    r.add_argument("--assume", action="append", default=[], help='e.g. "Gamma(3)=0"')
    r.add_argument("--explain", default=None, help="print a derivation of this statement")
    r.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _emit(value, fmt: str, out):
    style = Style.JSON if fmt == "json" else Style.TEXT
    print(format_expr(value, style), file=out)


def _apply_mode(value, mode: str):
    if mode != "xi":
        return value
    if isinstance(value, CycleExpr):
        return xi_normalize(value)
    if isinstance(value, JacExpr):
        return xi_mode(value)
    return value


def cmd_verify(args, out) -> int:
    cap = suites.arity_cap()
    max_n = args.max_n if args.max_n is not None else cap
    if max_n > cap:
        print(f"note: --max-n {max_n} exceeds CYC_MAX_N={cap}; using {cap}", file=sys.stderr)
        max_n = cap
    names = suites.SUITES if args.suite == "all" else (args.suite,)
    checks = suites.build_all(names, max_n)
    results = suites.run(checks, xi=args.mode == "xi", jobs=args.jobs)
    failed = [r for r in results if not r.ok]
    if args.format == "json":
        payload = {
            "suites": list(names),
            "max_n": max_n,
            "mode": args.mode,
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "results": [
                {"suite": r.check.suite, "check": r.check.name, "ok": r.ok, "detail": r.detail}
                for r in results
            ],
        }
        print(json.dumps(payload, indent=2, ensure_ascii=False), file=out)
    else:
        for r in results:
            print(f"{'ok  ' if r.ok else 'FAIL'} [{r.check.suite}] {r.check.name}", file=out)
        print(f"{len(results) - len(failed)} passed, {len(failed)} failed", file=out)
        if failed:
            print(f"first counterexample ({failed[0].check.name}): {failed[0].detail}", file=out)
    return 1 if failed else 0


def cmd_eval(args, out) -> int:
    value = _apply_mode(parse_expr(args.expr), args.mode)
    _emit(value, args.format, out)
    return 0


def cmd_push(args, out) -> int:
    value = parse_expr(args.expr)
    if not isinstance(value, CycleExpr):
        raise CycleError("push takes a cycle expression")
    if args.jacobian:
        if args.genus is None:
            raise CycleError("--jacobian needs --genus")
        result = sigma_push(value, args.genus)
    else:
        result = push_proj(value, args.keep)
    _emit(_apply_mode(result, args.mode), args.format, out)
    return 0


def cmd_bounds(args, out) -> int:
    D = numtheory.Direction
    if args.qz is not None:
        rep = numtheory.torsion_bound(D.QZ_CRITERION, args.genus, N=args.qz["N"], group_order=args.qz["G"])
    elif args.cer_to_gamma is not None:
        rep = numtheory.torsion_bound(D.CER_TO_GAMMA, args.genus, d=args.cer_to_gamma)
    else:
        rep = numtheory.torsion_bound(D.GAMMA_TO_CER, args.genus, d=args.gamma_to_cer)
    print(rep.to_json() if args.format == "json" else rep.to_text(), file=out)
    return 0


def cmd_propagate(args, out) -> int:
    axioms = [inference.parse_fact(a) for a in args.assume]
    closure = inference.propagate(axioms, args.genus)
    if args.format == "json":
        payload = closure.to_dict()
        if args.explain:
            fact = inference.parse_fact(args.explain)
            payload["explanation"] = [t.to_dict() for t in inference.explain(fact, closure)]
        print(json.dumps(payload, indent=2, ensure_ascii=False), file=out)
    else:
        print(closure.to_text(), file=out)
        if args.explain:
            print("derivation:", file=out)
            print(inference.format_explanation(inference.parse_fact(args.explain), closure), file=out)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "eval": cmd_eval,
    "push": cmd_push,
    "bounds": cmd_bounds,
    "propagate": cmd_propagate,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args, out)
    except CycleError as exc:
        print(f"error ({args.verb}): {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error ({args.verb}): {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
