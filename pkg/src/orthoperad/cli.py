"""Command line entry point: ``orthoperad COMMAND FILE [options]``.

Every command prints one JSON report with the keys ``command``,
``inputs_digest``, ``bounds``, ``status`` and ``result``. Exit codes: 0 when
the property holds or the value was computed, 1 on a property violation or
an exhausted budget, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Callable

from .algebra import check_perp_commutative, perp_abelianization
from .dsl import Workspace, load, parse
from .errors import BudgetExceeded, DslError, OrthoperadError
from .extension import action_violations, compare_extensions, extension_report, is_j_local, orbifoldize
from .fixtures import all_fixtures
from .monoid import DEFAULT_BOUND, DEFAULT_BUDGET, FiniteMonoid, as_presented, element_count
from .operad import ColoredOperad, OperadElement, check_operad_axioms
from .orthocat import is_j_closed, validate
from .perm import Permutation

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _letter(x) -> str:
    """Extension letters ``(g, b)`` or ``(g, (c, b))`` render as ``g:b`` / ``g:c:b``."""
    if isinstance(x, tuple):
        return ":".join(_letter(y) for y in x)
    return str(x)


def _word(w) -> list[str]:
    return [_letter(x) for x in w]


def _pick(kind: str, table: dict, name: str | None, candidates=None) -> str:
    pool = sorted(table) if candidates is None else sorted(candidates)
    if name is not None:
        if name not in table:
            raise InputError(f"no {kind} named {name}")
        return name
    if len(pool) != 1:
        raise InputError(f"choose a {kind} with --{kind} (candidates: {', '.join(pool) or 'none'})")
    return pool[0]


def _category(ws: Workspace, args) -> str:
    # by default the category that is not a declared subcategory
    sources = {j.source.name for name, j in ws.functors.items() if name in ws.embeddings}
    return _pick("category", ws.categories, args.category, set(ws.categories) - sources)


def _functor(ws: Workspace, args) -> str:
    return _pick("functor", ws.functors, args.functor)


def _algebra(ws: Workspace, args, category: str | None = None) -> str:
    cands = [n for n, A in ws.monfunctors.items() if category is None or A.ocat.name == category]
    return _pick("algebra", ws.monfunctors, args.algebra, cands)


def _parse_element(op: ColoredOperad, text: str) -> OperadElement:
    """``TARGET/PERM/MORPHISMS``, e.g. ``d/2,1/g1,g2``; ``d//`` is nullary."""
    try:
        target, perm, mors = text.split("/")
    except ValueError:
        raise InputError(f"operation {text!r} is not of the form TARGET/PERM/MORPHISMS") from None
    try:
        sigma = Permutation(tuple(int(x) for x in perm.split(",") if x))
    except ValueError as exc:
        raise InputError(f"bad permutation {perm!r}: {exc}") from None
    morphisms = tuple(m for m in mors.split(",") if m)
    cat = op.cat
    for m in morphisms:
        if m not in cat.morphisms or cat.tgt(m) != target:
            raise InputError(f"{m} is not a morphism into {target}")
    try:
        return op.element(target, sigma, morphisms)
    except (OrthoperadError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _element_dict(el: OperadElement) -> dict:
    return {
        "target": el.target,
        "profile": list(el.profile),
        "sigma": list(el.sigma.images),
        "morphisms": list(el.morphisms),
    }


# ---------------------------------------------------------------- commands


def cmd_validate(ws: Workspace, args) -> tuple[int, dict]:
    result: dict = {"categories": {}, "functors": {}, "algebras": {}, "actions": {}}
    bad = False
    for name, ocat in sorted(ws.categories.items()):
        v = validate(ocat.cat, ocat.orth).violations
        result["categories"][name] = v
        bad |= bool(v)
    for name, F in sorted(ws.functors.items()):
        v = F.validate().violations
        result["functors"][name] = v
        bad |= bool(v)
    for name, A in sorted(ws.monfunctors.items()):
        v = A.violations(args.bound)
        result["algebras"][name] = v
        bad |= bool(v)
    for name, (G, alg) in sorted(ws.actions.items()):
        v = action_violations(G, ws.monfunctors[alg])
        result["actions"][name] = v
        bad |= bool(v)
    return (VIOLATION if bad else OK), result


def cmd_component(ws: Workspace, args) -> tuple[int, dict]:
    ocat = ws.categories[_category(ws, args)]
    if args.target is None:
        raise InputError("component needs --target")
    if args.target not in ocat.cat.identities:
        raise InputError(f"unknown object {args.target}")
    profile = tuple(c for c in (args.profile or "").split(",") if c)
    for c in profile:
        if c not in ocat.cat.identities:
            raise InputError(f"unknown object {c}")
    classes = ColoredOperad(ocat).component(args.target, profile)
    return OK, {
        "category": ocat.name,
        "target": args.target,
        "profile": list(profile),
        "count": len(classes),
        "classes": [_element_dict(el) for el in classes],
    }


def cmd_compose(ws: Workspace, args) -> tuple[int, dict]:
    ocat = ws.categories[_category(ws, args)]
    op = ColoredOperad(ocat)
    if args.outer is None:
        raise InputError("compose needs --outer")
    outer = _parse_element(op, args.outer)
    inners = [_parse_element(op, s) for s in args.inner or []]
    try:
        out = op.gamma(outer, inners)
    except OrthoperadError as exc:
        raise InputError(str(exc)) from None
    return OK, {
        "outer": _element_dict(outer),
        "inners": [_element_dict(i) for i in inners],
        "composite": _element_dict(out),
    }


def cmd_axioms(ws: Workspace, args) -> tuple[int, dict]:
    ocat = ws.categories[_category(ws, args)]
    report = check_operad_axioms(ocat, args.arity, budget=args.budget)
    result = {"category": ocat.name, **report.as_dict()}
    return (OK if report.ok else VIOLATION), result


def cmd_perpcheck(ws: Workspace, args) -> tuple[int, dict]:
    A = ws.monfunctors[_algebra(ws, args)]
    report = check_perp_commutative(A, A.ocat, args.bound)
    result = {
        "algebra": A.name,
        "per_object": dict(sorted(report.per_object.items())),
        "exact": report.exact,
        "violations": [
            {"pair": [f1, f2], "elements": [_letter(a1), _letter(a2)]}
            for f1, f2, a1, a2 in report.violations
        ],
    }
    return (OK if report.ok else VIOLATION), result


def _counts(A, L: int) -> dict[str, int]:
    return {d: element_count(m, L) if not isinstance(m, FiniteMonoid) else len(m) for d, m in sorted(A.carriers.items())}


def cmd_abelianize(ws: Workspace, args) -> tuple[int, dict]:
    A = ws.monfunctors[_algebra(ws, args)]
    B = perp_abelianization(A, A.ocat, args.bound)
    before = {d: element_count(as_presented(m, args.bound), args.bound) for d, m in sorted(A.carriers.items())}
    return OK, {
        "algebra": A.name,
        "counts_before": before,
        "counts_after": _counts(B, args.bound),
        "relations": {
            d: [[_word(l), _word(r)] for l, r in m.relations] for d, m in sorted(B.carriers.items())
        },
    }


def _embedding_and_algebra(ws: Workspace, args):
    F = ws.functors[_functor(ws, args)]
    A = ws.monfunctors[_algebra(ws, args, F.source.name)]
    return F, A


def cmd_extend(ws: Workspace, args) -> tuple[int, dict]:
    F, A = _embedding_and_algebra(ws, args)
    report = extension_report(F, A, args.method, args.bound)
    out = report.as_dict()
    out["functor"], out["algebra"] = F.name, A.name
    return OK, out


def cmd_compare(ws: Workspace, args) -> tuple[int, dict]:
    F, A = _embedding_and_algebra(ws, args)
    kan, op = compare_extensions(F, A, args.bound)
    objects = {}
    for d in sorted(F.target.objects):
        objects[d] = {
            "kan": kan.counts[d],
            "operadic": op.counts[d],
            "kan_perp_commutative": kan.perp_commutative[d],
            "iso": kan.iso[d].iso,
            "comparison": kan.iso[d].as_dict(),
        }
    iso = all(v["iso"] for v in objects.values())
    return OK, {"functor": F.name, "algebra": A.name, "bound": args.bound, "objects": objects, "iso": iso}


def cmd_jclosed(ws: Workspace, args) -> tuple[int, dict]:
    j = ws.functors[_functor(ws, args)]
    dbar = j.target
    objs = [args.object] if args.object else list(dbar.objects)
    if args.object and args.object not in dbar.cat.identities:
        raise InputError(f"unknown object {args.object}")
    results = {d: is_j_closed(dbar, j, d) for d in objs}
    if args.object:
        r = results[args.object]
        out: dict = {args.object: r.closed}
        if r.counterexample:
            out["counterexample"] = list(r.counterexample)
        else:
            out["witnesses"] = _witnesses(r)
        return OK, out
    return OK, {
        "closed": {d: r.closed for d, r in sorted(results.items())},
        "counterexamples": {d: list(r.counterexample) for d, r in sorted(results.items()) if r.counterexample},
        "witnesses": {d: _witnesses(r) for d, r in sorted(results.items()) if r.closed},
    }


def _witnesses(r) -> list[dict]:
    return [
        {"pair": list(pair), "via": w.c, "g": w.g, "factors": [w.f1, w.f2]}
        for pair, w in sorted(r.witnesses.items())
    ]


def cmd_jlocal(ws: Workspace, args) -> tuple[int, dict]:
    j = ws.functors[_functor(ws, args)]
    A = ws.monfunctors[_algebra(ws, args, j.target.name)]
    report = is_j_local(j, A, args.bound)
    out = {
        "functor": j.name,
        "algebra": A.name,
        "bound": args.bound,
        "local": report.local,
        "per_object": {d: v.as_dict() for d, v in sorted(report.per_object.items())},
    }
    return (OK if report.local else VIOLATION), out


def cmd_orbifold(ws: Workspace, args) -> tuple[int, dict]:
    name = _pick("action", ws.actions, args.action)
    G, alg = ws.actions[name]
    A = ws.monfunctors[alg]
    B = orbifoldize(G, A)
    return OK, {
        "action": name,
        "algebra": alg,
        "fixed": {d: [_letter(a) for a in m.elements] for d, m in sorted(B.carriers.items())},
        "counts": {d: len(m) for d, m in sorted(B.carriers.items())},
    }


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "component": cmd_component,
    "compose": cmd_compose,
    "axioms": cmd_axioms,
    "perpcheck": cmd_perpcheck,
    "abelianize": cmd_abelianize,
    "extend": cmd_extend,
    "compare": cmd_compare,
    "jclosed": cmd_jclosed,
    "jlocal": cmd_jlocal,
    "orbifold": cmd_orbifold,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="declaration file ('-' for stdin)")
    common.add_argument("--category")
    common.add_argument("--functor")
    common.add_argument("--algebra")
    common.add_argument("--action")
    common.add_argument("--target")
    common.add_argument("--profile", help="comma separated objects")
    common.add_argument("--object")
    common.add_argument("--outer", help="operation TARGET/PERM/MORPHISMS")
    common.add_argument("--inner", action="append", help="inner operation, repeatable")
    common.add_argument("--method", choices=["kan", "operadic"], default="kan")
    common.add_argument("--arity", type=int, default=3)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="word length bound L")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = argparse.ArgumentParser(prog="orthoperad", description=__doc__.splitlines()[0])
    p.add_argument("--fixtures", action="store_true", help="list built-in fixtures and exit")
    sub = p.add_subparsers(dest="command")
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=fn.__doc__)
    return p


def _bounds(args) -> dict:
    return {"arity": args.arity, "bound": args.bound, "budget": args.budget}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run a command and return the exit code with the rendered output."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.fixtures:
        listing = {name: list(fx.sub_objects) for name, fx in sorted(all_fixtures().items())}
        return OK, json.dumps({"fixtures": listing}, sort_keys=True, indent=2)
    if args.command is None:
        parser.error("a command is required")
    report: dict = {"command": args.command, "bounds": _bounds(args)}
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as exc:
        report.update(inputs_digest=None, status="input-error", result={"error": str(exc)})
        return INPUT_ERROR, json.dumps(report, sort_keys=True, indent=2)
    report["inputs_digest"] = hashlib.sha256(text.encode()).hexdigest()
    try:
        ws = load(parse(text))
        code, result = COMMANDS[args.command](ws, args)
        status = "ok" if code == OK else "violation"
    except DslError as exc:
        code, status = INPUT_ERROR, "input-error"
        result = {"error": exc.message, "kind": type(exc).__name__, "line": exc.line, "column": exc.column}
    except InputError as exc:
        code, status, result = INPUT_ERROR, "input-error", {"error": str(exc)}
    except BudgetExceeded as exc:
        code, status = VIOLATION, "budget-exceeded"
        partial = exc.partial.as_dict() if hasattr(exc.partial, "as_dict") else None
        result = {"error": str(exc), "partial": partial}
    except OrthoperadError as exc:
        code, status, result = VIOLATION, "violation", {"error": str(exc), "kind": type(exc).__name__}
    report["status"] = status
    report["result"] = result
    return code, json.dumps(report, sort_keys=True, indent=2)


def main(argv: list[str] | None = None) -> int:
    code, out = run(argv)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
