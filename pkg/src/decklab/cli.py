"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 falsification (a proved
statement failed on concrete data).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .affine import (
    canonical_polynomial,
    is_affine,
    verify_recognizability,
    verify_weak_reconstructibility,
)
from .algebra import FiniteField, parse_field_spec
from .checks import CRITERIA, DEFAULT_SEED, run_criterion
from .config import caps_from_env
from .errors import CapExceeded, DecklabError, FalsificationEvent
from .functions import function_deck, identification_minor
from .io import dumps, load_function, load_structure
from .multiset import Multiset, cards
from .polyparse import compile_polynomial
from .reconstruction import (
    PatternTag,
    classify_pair,
    is_reconstructible,
    min_determining_cards,
    search_counterexamples,
    verify_theorem,
)
from .sweep import sweep_theorem

COMMANDS = ("deck", "check", "classify", "search", "verify-theorem", "verify-affine",
            "min-cards", "gf", "acceptance")


class UsageError(DecklabError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="decklab", description="Multiset and function deck reconstruction.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--groupoid", help="structure JSON path or alias (z2, z3, z4, gf2, gf3, gf4, lattice2)")
    p.add_argument("--field", help="finite field as p_k, e.g. 2_1, 3_1, 2_2")
    p.add_argument("--multiset", action="append", help='e.g. "<1,1,1,1>"; classify takes two')
    p.add_argument("--function", help="function JSON path")
    p.add_argument("--poly", help='polynomial in x1..xn, e.g. "x1*x2 + x3"')
    p.add_argument("--n", type=int, help="cardinality or arity")
    p.add_argument("--max-order", type=int)
    p.add_argument("--cap", type=int, help="enumeration cap")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, help="random sample count instead of exhaustive runs")
    p.add_argument("--tag", choices=[t.name for t in PatternTag], help="search: keep only this pattern")
    p.add_argument("--criteria", default="1-11", help="acceptance: e.g. 1-11 or 5,7")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null")
    return p


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} needs --{name.replace('_', '-')}")


def _structure(args):
    _need(args, "groupoid")
    return load_structure(args.groupoid)


def _field(args) -> FiniteField:
    _need(args, "field")
    try:
        return parse_field_spec(args.field, args.caps)
    except ValueError as exc:
        if isinstance(exc, DecklabError):
            raise
        raise UsageError(f"bad --field {args.field!r}; expected p_k") from None


def _algebra(args):
    """Field from --field, else the semiring of --groupoid."""
    if args.field:
        return _field(args)
    st = _structure(args)
    if st.semiring is None:
        raise UsageError(f"{args.groupoid} has no multiplication")
    return st.semiring


def _function(args, algebra):
    if args.function:
        return load_function(args.function)
    _need(args, "poly")
    return compile_polynomial(args.poly, algebra, args.n)


def _multiset(args, g, k=0):
    if not args.multiset or len(args.multiset) <= k:
        raise UsageError(f"{args.command} needs {k + 1} --multiset value(s)")
    return Multiset.parse(g.order, args.multiset[k])


def cmd_deck(args):
    if args.multiset:
        g = _structure(args).groupoid
        m = _multiset(args, g)
        return {"multiset": str(m), "deck": cards(g, m).to_json()}
    f = _function(args, _algebra(args) if (args.poly or args.field) else None)
    return {"function": f.to_json(), "deck": function_deck(f, args.caps).to_json()}


def cmd_check(args):
    g = _structure(args).groupoid
    m = _multiset(args, g)
    return {"multiset": str(m), **is_reconstructible(g, m, args.caps).as_dict()}


def cmd_classify(args):
    g = _structure(args).groupoid
    m, m2 = _multiset(args, g, 0), _multiset(args, g, 1)
    tags = classify_pair(g, m, m2)
    return {"M": str(m), "M2": str(m2), "patterns": [t.as_dict() for t in tags],
            "falsified": any(t.tag == PatternTag.UNCLASSIFIED for t in tags)}


def cmd_search(args):
    _need(args, "n", "max_order")
    tag = PatternTag[args.tag] if args.tag else None
    found = [c.as_dict() for c in search_counterexamples(
        args.max_order, args.n, tag, caps=args.caps, samples=args.samples, seed=args.seed)]
    return {"order": args.max_order, "n": args.n, "count": len(found), "counterexamples": found}


def cmd_verify_theorem(args):
    _need(args, "n")
    if args.groupoid:
        return verify_theorem(_structure(args).groupoid, args.n, args.caps)
    _need(args, "max_order")
    return sweep_theorem(args.n, args.max_order, args.workers)


def cmd_verify_affine(args):
    if args.function or args.poly:
        field = _field(args)
        f = _function(args, field)
        rep = is_affine(field, f)
        minors = []
        for i in range(1, f.n + 1):
            for j in range(i + 1, f.n + 1):
                minors.append({"couple": [i, j],
                               "affine": is_affine(field, identification_minor(f, (i, j))) is not None})
        poly = canonical_polynomial(field, f, args.caps)
        return {
            "function": f.to_json(),
            "affine": rep is not None,
            "representation": None if rep is None else {"coefficients": list(rep.coefficients),
                                                        "constant": rep.constant},
            "canonical_polynomial": [{"exponents": list(e), "coefficient": c} for e, c in sorted(poly.items())],
            "minors": minors,
        }
    _need(args, "n")
    alg = _algebra(args)
    out = {"weak_reconstructibility": verify_weak_reconstructibility(alg, args.n, caps=args.caps)}
    if isinstance(alg, FiniteField):
        out["recognizability"] = verify_recognizability(alg, args.n, args.samples, args.seed,
                                                        args.workers, args.caps)
    out["falsified"] = any(r["falsified"] for r in out.values())
    return out


def cmd_min_cards(args):
    _need(args, "n")
    return min_determining_cards(_structure(args).groupoid, args.n, args.caps).as_dict()


def cmd_gf(args):
    f = _field(args)
    return {"field": f.name, "p": f.p, "k": f.k, "q": f.q,
            "reduction_polynomial": list(f.reduction_polynomial),
            "add": f.add_table.tolist(), "mul": f.mul_table.tolist()}


def _parse_criteria(text: str) -> list:
    out = []
    try:
        for part in text.split(","):
            a, _, b = part.partition("-")
            out.extend(range(int(a), int(b or a) + 1))
    except ValueError:
        raise UsageError(f"bad --criteria {text!r}") from None
    bad = [k for k in out if k not in CRITERIA]
    if bad:
        raise UsageError(f"unknown criteria {bad}")
    return out


def cmd_acceptance(args):
    results = [run_criterion(k, args.workers, args.seed) for k in _parse_criteria(args.criteria)]
    return {"criteria": results, "passed": all(r["passed"] for r in results),
            "falsified": not all(r["passed"] for r in results)}


HANDLERS = {
    "deck": cmd_deck, "check": cmd_check, "classify": cmd_classify, "search": cmd_search,
    "verify-theorem": cmd_verify_theorem, "verify-affine": cmd_verify_affine,
    "min-cards": cmd_min_cards, "gf": cmd_gf, "acceptance": cmd_acceptance,
}

# echoed in every report; workers is left out so output does not depend on it
ECHO = ("groupoid", "field", "multiset", "function", "poly", "n", "max_order", "samples", "tag", "criteria")


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(v, sort_keys=True)}" for v in obj)
    return pad + json.dumps(obj)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    t0 = time.perf_counter()
    try:
        caps = caps_from_env()
        if args.cap is not None:
            if args.cap < 1:
                raise UsageError("--cap must be positive")
            caps = caps.replace(enumeration=args.cap)
        if args.workers < 1:
            raise UsageError("--workers must be positive")
        args.caps = caps
        result = HANDLERS[args.command](args)
        code = 2 if result.get("falsified") else 0
    except FalsificationEvent as exc:
        result, code = {"error": "falsification", "detail": exc.report, "falsified": True}, 2
    except CapExceeded as exc:
        print(f"decklab: {exc} (raise it with --cap or DECKLAB_CAP)", file=sys.stderr)
        return 1
    except (DecklabError, ValueError) as exc:
        print(f"decklab: {exc}", file=sys.stderr)
        return 1
    report = {
        "version": __version__,
        "command": args.command,
        "config": {k: getattr(args, k) for k in ECHO} | {"caps": vars(caps).copy()},
        "seed": args.seed,
        **result,
        "elapsed_ms": None if args.no_timing else round((time.perf_counter() - t0) * 1000, 3),
    }
    if args.format == "json":
        out.write(dumps(report) + "\n")
    else:
        out.write(_text(report) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
