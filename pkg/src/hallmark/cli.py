"""Command-line interface.

Exit codes: 0 success, 2 usage or input error, 3 the group is not in E_pi,
4 an internal assertion failed (a theorem would be contradicted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .config import BudgetExceeded, default_budget
from .corpus import (
    GroupFileError,
    builtin,
    format_perm,
    named_subgroups,
    parse_gens,
    parse_group,
)
from .hall import PrimeSet, hall_subgroups, is_pronormal, pi_part
from .harness import SCHEMA_VERSION, Options, report_json, verify_corpus
from .structure import as_subgroup, is_normal, normal_subgroups, subgroup, trivial
from .theorems import NotEPi, pronormal_hall_in_normal

EXIT_OK, EXIT_USAGE, EXIT_NOT_E, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


def load_group(text: str):
    """``builtin:NAME``, a path to a group file, or a bare builtin name."""
    if text.startswith("builtin:"):
        return builtin(text[len("builtin:"):]), text[len("builtin:"):]
    if os.path.exists(text):
        with open(text) as fh:
            G = parse_group(fh.read())
        return G, None
    return builtin(text), text


def resolve_subgroup(G, builtin_name, text: str):
    """Cycle-notation generators (``;``-separated) or a name: G, 1, normal:I, A4, H1, ..."""
    Gs = as_subgroup(G)
    name = text.strip()
    if name in ("G", "whole"):
        return Gs
    if name in ("1", "trivial"):
        return trivial(Gs)
    if name.startswith("normal:"):
        normals = normal_subgroups(Gs)
        i = int(name.split(":", 1)[1])
        if not 0 <= i < len(normals):
            raise UsageError(f"normal subgroup index {i} out of range 0..{len(normals) - 1}")
        return normals[i]
    if builtin_name:
        named = named_subgroups(builtin_name, G)
        if name in named:
            return named[name]
    if "(" not in name:
        raise UsageError(f"unknown subgroup name {name!r}")
    return subgroup(Gs, parse_gens(name, G.degree))


def _pi(text) -> PrimeSet:
    if text is None:
        raise UsageError("--pi is required")
    return PrimeSet.parse(text)


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, **data}, indent=1, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_info(args) -> int:
    G, name = load_group(args.group)
    Gs = as_subgroup(G)
    primes = list(PrimeSet.of(G.order()).primes)
    normals = normal_subgroups(Gs)
    data = {"name": name or G.name, "degree": G.degree, "order": G.order(), "primes": primes,
            "normal_subgroups": len(normals), "transitive": G.is_transitive()}
    _emit(args, data, [
        f"group       {data['name'] or '-'}",
        f"degree      {G.degree}",
        f"order       {G.order()}",
        "pi(G)       {" + ",".join(map(str, primes)) + "}",
        f"normal      {len(normals)} subgroups (orders {[N.order for N in normals]})",
        f"transitive  {'yes' if data['transitive'] else 'no'}",
    ])
    return EXIT_OK


def cmd_hall(args) -> int:
    G, _ = load_group(args.group)
    pi = _pi(args.pi)
    rep = hall_subgroups(G, pi)
    classes = [{"size": c.size, "representative": [format_perm(p) for p in c.representative.generators()]}
               for c in rep.classes]
    data = {"pi": list(pi.primes), "hall_order": rep.hall_order, "classes": classes,
            "E": rep.satisfies_E, "C": rep.satisfies_C}
    lines = [f"pi          {pi}", f"hall order  {rep.hall_order}",
             f"classes     {len(rep.classes)} (sizes {[c.size for c in rep.classes]})"]
    for i, c in enumerate(classes):
        lines.append(f"  [{i}] size {c['size']}: " + " ; ".join(c["representative"]))
    lines += [f"E_pi        {'yes' if rep.satisfies_E else 'no'}",
              f"C_pi        {'yes' if rep.satisfies_C else 'no'}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_pronormal(args) -> int:
    G, name = load_group(args.group)
    if args.subgroup is not None:
        H = resolve_subgroup(G, name, args.subgroup)
    elif args.hall_rep is not None:
        reps = hall_subgroups(G, _pi(args.pi)).representatives()
        if not 0 <= args.hall_rep < len(reps):
            raise UsageError(f"hall representative {args.hall_rep} out of range ({len(reps)} classes)")
        H = reps[args.hall_rep]
    else:
        raise UsageError("give --subgroup or --hall-rep")
    w = is_pronormal(G, H)
    t = H.table
    fail = w.failing()
    data = {"subgroup": [format_perm(p) for p in H.generators()], "order": H.order,
            "pronormal": w.verdict,
            "failing_g": None if fail is None else format_perm(t.perm(fail))}
    if args.trace:
        data["trace"] = [[format_perm(t.perm(g)), None if x is None else format_perm(t.perm(x))]
                         for g, x in w.trace]
    lines = [f"subgroup    order {H.order}: " + (" ; ".join(data["subgroup"]) or "()"),
             f"pronormal   {'yes' if w.verdict else 'no'}"]
    if fail is not None:
        lines.append(f"failing g   {data['failing_g']}  (H and H^g not conjugate in <H, H^g>)")
    if args.trace:
        lines += [f"  g={g:<24} x={x}" for g, x in data["trace"]]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_theorem1(args) -> int:
    G, name = load_group(args.group)
    pi = _pi(args.pi)
    A = resolve_subgroup(G, name, args.normal)
    if not is_normal(G, A):
        raise UsageError("the --normal subgroup is not normal in G")
    H, trace = pronormal_hall_in_normal(G, A, pi)
    levels = [vars(lv) for lv in trace.levels]
    data = {"pi": list(pi.primes), "A_order": A.order, "H": [format_perm(p) for p in H.generators()],
            "order": H.order, "hall_order": pi_part(A.order, pi), "pronormal": True,
            "trace": levels}
    lines = [f"H           order {H.order}: " + (" ; ".join(data["H"]) or "()"),
             f"checks      Hall in A (order {data['hall_order']}) ok, pronormal in G ok",
             f"recursion   depth {trace.depth}"]
    for lv in trace.levels:
        lines.append(f"  level {lv.depth}: |G|={lv.group_order} |B|={lv.B_order} |G/B|={lv.quotient_order}"
                     f" |V|={lv.V_order} |K|={lv.K_order} |H|={lv.H_order}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_verify_corpus(args) -> int:
    opts = Options(budget=args.budget or default_budget(),
                   include_conjecture_search=args.include_conjecture_search)
    groups = args.groups.split(",") if args.groups else None
    start = time.perf_counter()
    report = verify_corpus(opts, jobs=args.jobs, groups=groups, allow_skip=args.allow_skip)
    elapsed = time.perf_counter() - start
    text = report_json(report, timings=args.timings)
    if args.json == "-":
        sys.stdout.write(text)
    else:
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(text)
        for check, s in sorted(report["summary"].items()):
            tag = "" if s["mandatory"] else " (informational)"
            print(f"{check:<22} pass {s['pass']:>4}  fail {s['fail']:>3}  skipped {s['skipped']:>3}{tag}")
        print(f"aggregate: {report['aggregate']}  ({elapsed:.1f} s)")
    return EXIT_OK if report["aggregate"] == "pass" else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hallmark", description="Hall subgroups and pronormality")
    sub = p.add_subparsers(dest="command", required=True)

    def with_group(name, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("group", help="group file, builtin:NAME, or a builtin name")
        q.add_argument("--json", action="store_true", help="structured output")
        return q

    with_group("info", "order, prime divisors and normal structure").set_defaults(fn=cmd_info)
    q = with_group("hall", "pi-Hall subgroups up to conjugacy")
    q.add_argument("--pi", required=True)
    q.set_defaults(fn=cmd_hall)
    q = with_group("pronormal", "test a subgroup for pronormality")
    q.add_argument("--subgroup")
    q.add_argument("--hall-rep", type=int)
    q.add_argument("--pi")
    q.add_argument("--trace", action="store_true", help="print the conjugator per coset")
    q.set_defaults(fn=cmd_pronormal)
    q = with_group("theorem1", "construct a pronormal Hall subgroup of a normal subgroup")
    q.add_argument("--normal", required=True)
    q.add_argument("--pi", required=True)
    q.set_defaults(fn=cmd_theorem1)

    q = sub.add_parser("verify-corpus", help="run the exhaustive verification suite")
    q.add_argument("--budget", type=int)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--include-conjecture-search", action="store_true")
    q.add_argument("--allow-skip", action="store_true")
    q.add_argument("--json", metavar="PATH", help="write the report ('-' for stdout)")
    q.add_argument("--groups", help="comma-separated corpus names (default: all)")
    q.add_argument("--timings", action="store_true", help="include per-check seconds in the JSON")
    q.set_defaults(fn=cmd_verify_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except NotEPi as exc:
        print(f"not E_pi: {exc}", file=sys.stderr)
        return EXIT_NOT_E
    except (UsageError, GroupFileError, ValueError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
