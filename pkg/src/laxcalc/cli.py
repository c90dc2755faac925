"""Command-line front end: ``laxcalc <command> ...``.

Exit codes: 0 success, 1 ill-typed / false / violation, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .equations import catalog
from .kripke import (
    FrameClass, FrameSyntaxError, Violation, atoms_of, check_frame,
    parse_formula, parse_model, satisfies,
)
from .nbe import decide_equal, norm
from .nf import Empty, check_inadmissible, embed, enumerate_nf
from .parse import ParseError, parse_ctx, parse_term, parse_type
from .syntax import Flavor, FlavorViolation, print_term, show_type
from .typecheck import IllTyped, TypeMismatch, infer

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    code: int
    result: object
    text: str
    diagnostics: list = field(default_factory=list)


def _source(args, attr: str = "term") -> str:
    path = getattr(args, "file", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
    value = getattr(args, attr, None)
    if value is None:
        raise UsageError(f"missing {attr} (inline or via --file)")
    return value


def _ctx(args) -> tuple:
    text = args.ctx
    if getattr(args, "ctx_pos", None) is not None:
        text = args.ctx_pos
    return parse_ctx(text or "")


def _typed(flavor: Flavor, ctx, t) -> Outcome | None:
    """Typecheck; an Outcome means the term was rejected."""
    try:
        infer(flavor, ctx, t)
    except (IllTyped, FlavorViolation) as e:
        return Outcome(1, None, f"error: {e}", [str(e)])
    return None


def cmd_check(args) -> Outcome:
    flavor = Flavor.parse(args.flavor)
    if args.term is None and not args.file:
        # a lone positional is the term, not the context
        args.term, args.ctx_pos = args.ctx_pos, None
    names, ctx = _ctx(args)
    t = parse_term(_source(args), names)
    try:
        ty = infer(flavor, ctx, t)
    except (IllTyped, FlavorViolation) as e:
        return Outcome(1, None, f"error: {e}", [str(e)])
    return Outcome(0, show_type(ty), show_type(ty))


def cmd_norm(args) -> Outcome:
    flavor = Flavor.parse(args.flavor)
    names, ctx = _ctx(args)
    t = parse_term(_source(args), names)
    bad = _typed(flavor, ctx, t)
    if bad:
        return bad
    text = print_term(embed(norm(flavor, ctx, t)), names, annotate=args.annotate)
    return Outcome(0, text, text)


def cmd_eq(args) -> Outcome:
    flavor = Flavor.parse(args.flavor)
    names, ctx = _ctx(args)
    t, u = parse_term(args.left, names), parse_term(args.right, names)
    for side in (t, u):
        bad = _typed(flavor, ctx, side)
        if bad:
            return bad
    try:
        same = decide_equal(flavor, ctx, t, u)
    except TypeMismatch as e:
        return Outcome(1, None, f"error: {e}", [str(e)])
    return Outcome(0 if same else 1, same, "true" if same else "false")


def cmd_enumerate(args) -> Outcome:
    flavor = Flavor.parse(args.flavor)
    names, ctx = _ctx(args)
    ty = parse_type(_source(args, "type"))
    terms = [print_term(embed(m), names, annotate=True)
             for m in enumerate_nf(flavor, ctx, ty, args.depth)]
    return Outcome(0, terms, "\n".join(terms))


def cmd_inadmissible(args) -> Outcome:
    flavor = Flavor.parse(args.flavor)
    ty = parse_type(_source(args, "type"))
    v = check_inadmissible(flavor, ty, args.depth)
    if isinstance(v, Empty):
        result = {"verdict": "empty", "depth": v.depth, "saturated": v.saturated}
    else:
        result = {"verdict": "inhabited",
                  "witness": print_term(embed(v.witness), annotate=True)}
    return Outcome(0, result, str(v))


def _model(args):
    try:
        with open(args.model, encoding="utf-8") as fh:
            return parse_model(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {args.model}: {e.strerror}") from None


def cmd_kripke_check(args) -> Outcome:
    model = _model(args)
    report = check_frame(model.frame, FrameClass[args.cls.upper()])
    if not model.is_hereditary():
        report.violations.append(Violation("Heredity", ()))
    result = [{"condition": v.condition, "witness": list(v.witness)}
              for v in report.violations]
    return Outcome(0 if report.ok else 1, result, str(report))


def cmd_kripke_sat(args) -> Outcome:
    model = _model(args)
    a = parse_formula(args.formula)
    worlds = [args.world] if args.world else list(model.frame.worlds)
    unknown = [w for w in worlds if w not in model.frame.worlds]
    if unknown:
        raise UsageError(f"unknown world {unknown[0]!r}")
    missing = sorted(atoms_of(a) - set(model.valuation))
    if missing:
        raise UsageError(f"atom {missing[0]} has no valuation")
    truth = {w: satisfies(model, w, a) for w in worlds}
    ok = all(truth.values())
    lines = [f"{w}: {'true' if b else 'false'}" for w, b in truth.items()]
    return Outcome(0 if ok else 1, truth, "\n".join(lines))


def cmd_rules(args) -> Outcome:
    rows = catalog()
    text = "\n".join(
        f"{r['name']:<14} {','.join(f.lower() for f in r['flavors']):<16} "
        f"premises={r['arity']} {'oriented' if r['oriented'] else 'unoriented'}"
        for r in rows)
    return Outcome(0, rows, text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="laxcalc", description="Lax modal lambda calculi toolkit.")
    p.add_argument("--format", choices=("human", "json"), default="human")
    sub = p.add_subparsers(dest="command", required=True)

    def flavored(name, helptext):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--flavor", required=True, choices=[f.value for f in Flavor])
        sp.add_argument("--ctx", default="", help='typing context, e.g. "x:i, y:<>i"')
        sp.add_argument("--file", help="read the main input from a file")
        return sp

    sp = flavored("check", "infer the type of a term")
    sp.add_argument("ctx_pos", nargs="?", metavar="CTX", help=argparse.SUPPRESS)
    sp.add_argument("term", nargs="?")
    sp.set_defaults(run=cmd_check)

    sp = flavored("norm", "normalize a term")
    sp.add_argument("term", nargs="?")
    sp.add_argument("--annotate", action="store_true", help="print lambda domain types")
    sp.set_defaults(run=cmd_norm)

    sp = flavored("eq", "decide equality of two terms")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(run=cmd_eq)

    sp = flavored("enumerate", "list normal forms of a type up to a height")
    sp.add_argument("type", nargs="?")
    sp.add_argument("--depth", type=int, default=4)
    sp.set_defaults(run=cmd_enumerate)

    sp = flavored("inadmissible", "search for a closed normal form of a type")
    sp.add_argument("type", nargs="?")
    sp.add_argument("--depth", type=int, default=8)
    sp.set_defaults(run=cmd_inadmissible)

    sp = sub.add_parser("kripke-check", help="check a frame file against a frame class")
    sp.add_argument("model")
    sp.add_argument("--class", dest="cls", default="sl", choices=[c.name.lower() for c in FrameClass])
    sp.set_defaults(run=cmd_kripke_check)

    sp = sub.add_parser("kripke-sat", help="evaluate a formula in a model file")
    sp.add_argument("model")
    sp.add_argument("formula")
    sp.add_argument("--world")
    sp.set_defaults(run=cmd_kripke_sat)

    sp = sub.add_parser("rules", help="list the equation schemas")
    sp.set_defaults(run=cmd_rules)
    return p


def _inputs(args) -> dict:
    keys = ("ctx", "ctx_pos", "term", "left", "right", "type", "file",
            "depth", "model", "formula", "world", "cls")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) not in (None, "")}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        outcome = args.run(args)
    except (ParseError, FrameSyntaxError, UsageError, ValueError) as e:
        outcome = Outcome(2, None, f"error: {e}", [str(e)])
    if args.format == "json":
        doc = {
            "format_version": FORMAT_VERSION,
            "command": args.command,
            "flavor": getattr(args, "flavor", None),
            "input": _inputs(args),
            "result": outcome.result,
            "diagnostics": outcome.diagnostics,
        }
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
    elif outcome.text:
        print(outcome.text, file=out)
    return outcome.code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
