"""Command-line front end.

Exit status: 0 yes / valid, 1 usage or parse error, 2 capacity exceeded,
3 no / invalid / property violated.  Reports are JSON on stdout; diagnostics
go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import below, cap, generators, modular, selfcheck, xcap
from .errors import CapacityError, PreconditionError
from .formats import (
    ParseError, format_instance, format_zp_instance, parse_instance, parse_solution,
    parse_tusc, parse_tusc_solution, parse_zp_instance, parse_zp_solution,
)
from .progressions import COVER, EXACT_COVER, Solution, Verdict, verify_solution

EXIT_YES, EXIT_USAGE, EXIT_CAPACITY, EXIT_NO = 0, 1, 2, 3

PROBLEMS = ("cap", "xcap", "zp-cap", "zp-xcap", "tusc", "cap-below")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 by default, which would read as a capacity error
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _triples(aps) -> list[list[int]]:
    return [[ap.first, ap.diff, ap.length] if hasattr(ap, "first") else [ap.start, ap.diff, ap.length]
            for ap in aps]


def _emit(report: dict) -> None:
    print(json.dumps(report, sort_keys=True))


def _threads(args) -> int:
    raw = args.threads if args.threads is not None else os.environ.get("AP_COVER_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise _UsageError(f"thread count must be an integer, got {raw!r}") from None
    if n < 1:
        raise _UsageError("thread count must be positive")
    return n


def _solve_integer(problem, X, k, minimize):
    if problem == "cap":
        if minimize:
            k, sol = cap.cover_minimize(X)
            return True, k, sol, None
        res = cap.cover_decide(X, k)
        return res.feasible, k, res.solution, res.stats.nodes
    if minimize:
        k, sol = xcap.exact_cover_minimize(X)
        return True, k, sol, None
    res = xcap.exact_cover_decide(X, k)
    return res.feasible, k, res.solution, res.stats.nodes


def _solve_zp(problem, inst, k, minimize):
    solver = modular.zp_min_exact_cover if problem == "zp-xcap" else modular.zp_min_cover
    size, aps = solver(inst)
    if minimize:
        return True, size, aps
    return size <= k, k, aps if size <= k else None


def _solve_below(problem, text, k, minimize, seed, mode):
    if problem == "tusc":
        inst, file_k = parse_tusc(text)
        k = k if k is not None else file_k
        run = lambda kk: below.tusc_below_decide(inst, kk, mode=mode, seed=seed)
        top = inst.guarantee
    else:
        X = parse_instance(text)
        run = lambda kk: below.cap_below_decide(X, kk, mode=mode, seed=seed)
        top = -(-len(X) // 2)
    if minimize:
        # largest k still answered yes; k = 0 always is
        best, res = 0, run(0)
        for kk in range(1, top + 1):
            nxt = run(kk)
            if not nxt.feasible:
                break
            best, res = kk, nxt
        return True, best, res
    if k is None:
        raise _UsageError("--k is required unless --minimize is given")
    res = run(k)
    return res.feasible, k, res


def cmd_solve(args) -> int:
    _threads(args)
    if args.k is None and not args.minimize and args.problem != "tusc":
        raise _UsageError("--k is required unless --minimize is given")
    if args.k is not None and args.k < 0:
        raise _UsageError("--k must be non-negative")
    text = _read(args.file)
    start = time.perf_counter()
    report = {"problem": args.problem}
    if args.problem in ("cap", "xcap"):
        X = parse_instance(text)
        ok, k, sol, nodes = _solve_integer(args.problem, X, args.k, args.minimize)
        witness = _triples(sol.aps) if ok else None
    elif args.problem in ("zp-cap", "zp-xcap"):
        inst = parse_zp_instance(text)
        ok, k, aps = _solve_zp(args.problem, inst, args.k, args.minimize)
        nodes = None
        witness = _triples(aps) if ok else None
        report["p"] = inst.p
    else:
        mode = below.RANDOMIZED if args.randomized else below.EXHAUSTIVE
        ok, k, res = _solve_below(args.problem, text, args.k, args.minimize, args.seed, mode)
        nodes = res.colorings
        if not ok:
            witness = None
        elif args.problem == "tusc":
            witness = [{"elements": sorted(e), "set": s} for s, e in res.cover]
        else:
            witness = _triples(res.solution.aps)
    report.update(decision="yes" if ok else "no", k=k, nodes=nodes,
                  elapsed=round(time.perf_counter() - start, 6))
    if ok and not args.no_witness:
        report["witness"] = witness
    _emit(report)
    return EXIT_YES if ok else EXIT_NO


def cmd_verify(args) -> int:
    inst_text, sol_text = _read(args.instance), _read(args.solution)
    if args.problem in ("cap", "xcap", "cap-below"):
        X = parse_instance(inst_text)
        kind = EXACT_COVER if args.problem == "xcap" else COVER
        aps = parse_solution(sol_text)
        verdict = verify_solution(X, Solution(tuple(aps), kind))
        size = len(aps)
    elif args.problem in ("zp-cap", "zp-xcap"):
        inst = parse_zp_instance(inst_text)
        aps = parse_zp_solution(sol_text, inst.p)
        verdict = modular.verify_zp_solution(inst, aps, exact=args.problem == "zp-xcap")
        size = len(aps)
    else:
        inst, _ = parse_tusc(inst_text)
        cover = parse_tusc_solution(sol_text)
        good = below.check_tusc_cover(inst, cover, len(cover))
        verdict = Verdict(good, "ok" if good else "invalid: not a cover by family members")
        size = len(cover)
    if verdict and args.k is not None and size > args.k:
        verdict = Verdict(False, f"too large: {size} sets exceed k={args.k}")
    print(verdict.reason, file=sys.stderr)
    return EXIT_YES if verdict else EXIT_NO


def cmd_gen(args) -> int:
    if args.kind == "union-of-aps":
        X, _ = generators.union_of_aps(args.k, args.length, args.max_value, seed=args.seed,
                                       disjoint=args.disjoint)
    elif args.kind == "no3ap":
        X = generators.no_three_ap(args.n, seed=args.seed)
    elif args.kind == "random":
        X = generators.random_instance(args.n, args.max_value, seed=args.seed)
    else:
        X = generators.powers(args.n)
    sys.stdout.write(format_instance(X))
    return EXIT_YES


def cmd_reduce_zp(args) -> int:
    X = parse_instance(_read(args.file))
    p, inst = modular.reduce_mod_p(X)
    cert = modular.suitability_report(p, X)
    print(f"p={p}: {cert.pairs_checked} differences and {cert.triples_checked} "
          f"triples checked, none divisible", file=sys.stderr)
    sys.stdout.write(format_zp_instance(inst))
    return EXIT_YES


def cmd_proptest(args) -> int:
    names = list(selfcheck.SUITES) if args.suite == "all" else [args.suite]
    status = EXIT_YES
    for name in names:
        res = selfcheck.run_suite(name, seed=args.seed, budget=args.budget)
        print(f"{name}: {'PASS' if res.passed else 'FAIL'} ({res.cases} cases)", file=sys.stderr)
        if not res.passed:
            _emit({"suite": name, "failure": res.failure, "counterexample": res.counterexample})
            status = EXIT_NO
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apcover", description="Covering integer sets by arithmetic progressions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide or minimize a cover problem")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("file", help="instance file ('-' for stdin)")
    p.add_argument("--k", type=int)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--no-witness", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--randomized", action="store_true",
                   help="random colourings for tusc/cap-below (may miss a yes)")
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--k", type=int, help="also require at most k sets")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=("union-of-aps", "no3ap", "random", "powers"))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--length", type=int, default=5)
    p.add_argument("--max-value", type=int, default=100)
    p.add_argument("--disjoint", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce-zp", help="project onto the smallest suitable prime")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce_zp)

    p = sub.add_parser("proptest", help="run randomized property suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all", *selfcheck.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100, help="random cases per property")
    p.set_defaults(func=cmd_proptest)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
