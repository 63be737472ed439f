"""Command-line front end.

Subcommands: decide, combine, spectrum, classify, lattice, diagonal,
brute-check.  Output is JSON (or DOT for the lattice); exit codes follow
solver conventions: 0 satisfiable / success, 1 unsatisfiable, 2 error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .brute import brute_spectrum, random_cube
from .classify import build_lattice, filter_chain_demo, probe_certificate
from .combine import Method, combine_decide, quasi_gentle, n_shiny
from .diagonal import run_rounds
from .errors import CombineKitError
from .formulas import parse_formula, to_dnf
from .registry import Registry, load_registry
from .theories import Theory

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_ERROR = 2


def _emit(obj, fmt: str = "json"):
    if fmt == "text":
        print(obj)
    else:
        print(json.dumps(obj, sort_keys=True))


def _parse_for(theory: Theory, text: str):
    resolver = getattr(theory, "resolver", None)
    return parse_formula(text, resolver)


def _method_from_flag(name: str | None, registry: Registry):
    if name is None or name == "auto":
        return None
    name = name.lower()
    table = {
        "shiny": Method("shiny"),
        "nelson-oppen": Method("nelson-oppen"),
        "no": Method("nelson-oppen"),
        "gentle": Method("gentle"),
        "smcs": Method("smcs"),
        "cs": Method("cs"),
    }
    if name in table:
        return table[name]
    if name.startswith("n-shiny"):
        inner = name[len("n-shiny") :].strip("():")
        return n_shiny(int(inner)) if inner else n_shiny(4)
    if name.startswith("quasi-gentle"):
        return quasi_gentle()
    raise CombineKitError(f"unknown method {name!r}")


def cmd_decide(args, registry: Registry) -> int:
    theory = registry.resolve(args.theory)
    f = _parse_for(theory, args.formula)
    sat = any(theory.decide_cube(c) for c in to_dnf(f))
    _emit({"sat": sat}, args.format)
    return EXIT_SAT if sat else EXIT_UNSAT


def cmd_combine(args, registry: Registry) -> int:
    t1 = registry.resolve(args.theory1)
    t2 = registry.resolve(args.theory2)
    resolver = getattr(t1, "resolver", None) or getattr(t2, "resolver", None)
    f = parse_formula(args.formula, resolver)
    method = _method_from_flag(args.method, registry)
    verdict = combine_decide(t1, t2, f, method, override=args.override, cap=args.cap)
    _emit(verdict.to_json(), args.format)
    return EXIT_SAT if verdict.sat else EXIT_UNSAT


def cmd_spectrum(args, registry: Registry) -> int:
    theory = registry.resolve(args.theory)
    f = _parse_for(theory, args.formula)
    cubes = to_dnf(f)
    finite = set()
    for k in range(1, args.upto + 1):
        for c in cubes:
            try:
                hit = theory.spec_finite(c, k)
            except CombineKitError:
                hit = k in brute_spectrum(theory, c, k)
            if hit:
                finite.add(k)
                break
    has_inf = None
    if theory.certificate.infinitely_decidable:
        has_inf = any(theory.spec_inf(c) for c in cubes)
    _emit({"finite_part": sorted(finite), "has_inf": has_inf, "upto": args.upto}, args.format)
    return EXIT_SAT


def cmd_classify(args, registry: Registry) -> int:
    rows = []
    names = args.theories or [t.name for t in registry.all_theories()]
    for name in names:
        rows.extend(
            probe_certificate(registry.resolve(name), samples=args.samples, bound=args.K, seed=args.seed)
        )
    _emit(rows, args.format)
    bad = [r for r in rows if r["verdict"] == "fail"]
    return EXIT_SAT if not bad else EXIT_ERROR


def cmd_lattice(args, registry: Registry) -> int:
    report = build_lattice(registry.all_theories(), n=args.n)
    if args.format == "dot":
        print(report.to_dot())
    else:
        _emit(report.to_json(), args.format)
    return EXIT_SAT


def cmd_diagonal(args, registry: Registry) -> int:
    theory = registry.resolve(args.theory)
    last = None
    for state in run_rounds(theory, args.rounds):
        last = state
        _emit(state.to_json(), args.format)
    if last is not None and args.format != "text":
        _emit({"digest": last.digest()}, args.format)
    return EXIT_SAT


def cmd_brute_check(args, registry: Registry) -> int:
    theory = registry.resolve(args.theory)
    rng = random.Random(args.seed)
    mismatches = 0
    skipped = 0
    for _ in range(args.samples):
        cube = random_cube(theory, rng)
        window = brute_spectrum(theory, cube, args.K)
        for k in range(1, args.K + 1):
            try:
                got = theory.spec_finite(cube, k)
            except CombineKitError:
                skipped += 1
                continue
            if got != (k in window):
                mismatches += 1
        sat = theory.decide_cube(cube)
        if sat and not window:
            escape = theory.infinite_only(cube)
            if not escape and theory.certificate.infinitely_decidable:
                escape = theory.spec_inf(cube)
            if not escape:
                mismatches += 1
        if not sat and window:
            mismatches += 1
    status = "pass" if mismatches == 0 else "fail"
    _emit(
        {
            "theory": theory.name,
            "samples": args.samples,
            "K": args.K,
            "mismatches": mismatches,
            "withheld_queries": skipped,
            "status": status,
        },
        args.format,
    )
    return EXIT_SAT if mismatches == 0 else EXIT_ERROR


def cmd_filters(args, registry: Registry) -> int:
    _emit(filter_chain_demo(args.depth), args.format)
    return EXIT_SAT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="combinekit", description=__doc__)
    p.add_argument("--config", help="registry config path (or set COMBINEKIT_CONFIG)")
    p.add_argument("--format", default="json", choices=["json", "dot", "text"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--K", type=int, default=6, help="brute-force size bound")
    p.add_argument("--cap", type=int, default=10_000, help="iteration cap for unbounded scans")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="satisfiability of a formula in one theory")
    d.add_argument("theory")
    d.add_argument("formula")
    d.set_defaults(fn=cmd_decide)

    c = sub.add_parser("combine", help="joint satisfiability over a disjoint union")
    c.add_argument("theory1")
    c.add_argument("theory2")
    c.add_argument("formula")
    c.add_argument("--method", default="auto")
    c.add_argument("--override", action="store_true", help="run the method even if its hypotheses fail")
    c.set_defaults(fn=cmd_combine)

    s = sub.add_parser("spectrum", help="window view of a formula's spectrum")
    s.add_argument("theory")
    s.add_argument("formula")
    s.add_argument("--upto", type=int, default=6)
    s.set_defaults(fn=cmd_spectrum)

    cl = sub.add_parser("classify", help="run certificate probes")
    cl.add_argument("theories", nargs="*")
    cl.add_argument("--samples", type=int, default=25)
    cl.set_defaults(fn=cmd_classify)

    la = sub.add_parser("lattice", help="emit the property lattice")
    la.add_argument("--catalog", default="default")
    la.add_argument("--n", type=int, default=4)
    la.set_defaults(fn=cmd_lattice)

    di = sub.add_parser("diagonal", help="run the non-cofinite set construction")
    di.add_argument("--theory", default="T_leq_2")
    di.add_argument("--rounds", type=int, default=5)
    di.set_defaults(fn=cmd_diagonal)

    b = sub.add_parser("brute-check", help="oracle agreement suite for one theory")
    b.add_argument("--theory", required=True)
    b.add_argument("--samples", type=int, default=100)
    b.set_defaults(fn=cmd_brute_check)

    fi = sub.add_parser("filters", help="generated-filter chain/antichain demo")
    fi.add_argument("--depth", type=int, default=5)
    fi.set_defaults(fn=cmd_filters)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        registry = load_registry(args.config)
        return args.fn(args, registry)
    except CombineKitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
