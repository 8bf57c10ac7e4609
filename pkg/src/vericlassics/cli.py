"""``vericlassics`` command-line tool.

Exit codes: 0 success, 1 semantic failure (fixture failed, solution not
certified, fuzz disagreement, contract violated), 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__, faults, formats
from .contracts import ContractContext, ContractMode, ContractViolation, using
from .fixtures import run_fixtures
from .formats import ParseError
from .fuzzing import PROBLEMS as FUZZ_PROBLEMS
from .fuzzing import run_fuzz
from .graphs import (
    CycleDetected,
    DiGraph,
    defines_valid_graph,
    find_euler_circuit,
    has_even_degrees,
    is_connected,
    topsort,
)
from .matching import (
    blocking_pairs,
    matching_problems,
    placement_blocking_pairs,
    placement_problems,
    stable_matching,
    teachers_placement,
)
from .numerics import div, power_dc
from .search_sort import binary_search, insertion_sort, is_sorted

OK, FAILED, USAGE = 0, 1, 2

SOLVE_PROBLEMS = ("div", "power", "search", "sort", "topsort", "euler", "match", "placement")
VERIFY_PROBLEMS = ("sort", "topsort", "euler", "trail", "match", "placement")


class InputError(Exception):
    """Input parsed but violates a precondition of the requested problem."""


def _read(path: Optional[str], what: str) -> str:
    if path is None:
        raise InputError(f"--{what} is required")
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _require(problems: Sequence[str]) -> None:
    if problems:
        raise InputError("precondition violated: " + ", ".join(problems))


def _digraph(text: str) -> DiGraph:
    g = formats.parse_graph(text)
    if not isinstance(g, DiGraph):
        raise InputError("expected a directed (D) graph file")
    return g


def _ugraph(text: str) -> dict:
    g = formats.parse_graph(text)
    if isinstance(g, DiGraph):
        raise InputError("expected an undirected (U) graph file")
    return g


# -- solve -----------------------------------------------------------------


def _solve_div(text: str) -> str:
    nums = formats.parse_ints(text)
    if len(nums) != 2:
        raise InputError("div expects two integers: n d")
    n, d = nums
    _require([c for c, ok in (("d>0", d > 0), ("n>=0", n >= 0)) if not ok])
    q, r = div(n, d)
    return f"q = {q} r = {r}"


def _solve_power(text: str) -> str:
    toks = text.split()
    if len(toks) != 2:
        raise InputError("power expects: x n")
    x = formats.parse_rational(toks[0])
    n = formats.parse_ints(toks[1])[0]
    _require([] if n >= 0 else ["n>=0"])
    return str(power_dc(x, n))


def _solve_search(text: str) -> str:
    lines = [ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()]
    if len(lines) != 2:
        raise InputError("search expects two lines: the sorted sequence, then the key")
    s = formats.parse_ints(lines[0])
    x = formats.parse_ints(lines[1])
    if len(x) != 1:
        raise InputError("search key must be a single integer")
    _require([] if is_sorted(s) else ["isSorted"])
    i = binary_search(s, x[0])
    return str(-1 if i is None else i)


def _solve_sort(text: str) -> str:
    a = formats.parse_ints(text)
    insertion_sort(a)
    return formats.format_sequence(a)


def _solve_topsort(text: str) -> str:
    g = _digraph(text)
    try:
        return formats.format_sequence(topsort(g))
    except CycleDetected as exc:
        raise InputError(str(exc)) from None


def _solve_euler(text: str) -> str:
    g = _ugraph(text)
    _require(
        [
            c
            for c, ok in (
                ("validGraph", defines_valid_graph(g)),
                ("nonempty", len(g) > 0),
                ("connected", is_connected(g)),
                ("evenDegrees", has_even_degrees(g)),
            )
            if not ok
        ]
    )
    return formats.format_sequence(find_euler_circuit(g))


def _solve_match(text: str) -> str:
    men, women = formats.parse_matching(text)
    _require(matching_problems(men, women))
    return formats.format_pairs(stable_matching(men, women))


def _solve_placement(text: str) -> str:
    inst = formats.parse_placement(text)
    _require(placement_problems(inst))
    return formats.format_pairs(teachers_placement(inst))


SOLVERS: dict[str, Callable[[str], str]] = {
    "div": _solve_div,
    "power": _solve_power,
    "search": _solve_search,
    "sort": _solve_sort,
    "topsort": _solve_topsort,
    "euler": _solve_euler,
    "match": _solve_match,
    "placement": _solve_placement,
}


# -- verify: each certifier returns the first violated clause, or None ------


def _certify_sort(instance: str, solution: str) -> Optional[str]:
    a, s = formats.parse_ints(instance), formats.parse_ints(solution)
    for i in range(len(s) - 1):
        if s[i] > s[i + 1]:
            return f"isSorted: s[{i}]={s[i]} > s[{i + 1}]={s[i + 1]}"
    if Counter(a) != Counter(s):
        return "multiset(s) == multiset(input)"
    return None


def _certify_topsort(instance: str, solution: str) -> Optional[str]:
    g, s = _digraph(instance), formats.parse_sequence(solution)
    if Counter(s) != Counter(g.V):
        return "multiset(s) == multiset(G.V)"
    pos = {v: i for i, v in enumerate(s)}
    for a, b in sorted(g.E):
        if pos[a] >= pos[b]:
            return f"edge ({a}, {b}) does not point forward in s"
    return None


def _certify_walk(g: dict, s: Sequence[int], closed: bool) -> Optional[str]:
    if not s:
        return "|s| > 0"
    if closed and s[0] != s[-1]:
        return "isValidCircuit: s[0] == s[|s|-1]"
    for x in s:
        if x not in g:
            return f"isValidWalk: {x} is not a vertex"
    used: set = set()
    for i in range(1, len(s)):
        a, b = s[i - 1], s[i]
        if b not in g[a]:
            return f"isValidWalk: {a}-{b} is not an edge"
        e = frozenset((a, b))
        if e in used:
            return f"isValidTrail: edge {a}-{b} repeated"
        used.add(e)
    for v in sorted(g):
        for w in sorted(g[v]):
            if v < w and frozenset((v, w)) not in used:
                return f"traversesEdge(s, {v}, {w})"
    return None


def _certify_euler(instance: str, solution: str) -> Optional[str]:
    return _certify_walk(_ugraph(instance), formats.parse_sequence(solution), closed=True)


def _certify_trail(instance: str, solution: str) -> Optional[str]:
    return _certify_walk(_ugraph(instance), formats.parse_sequence(solution), closed=False)


def _certify_match(instance: str, solution: str) -> Optional[str]:
    men, women = formats.parse_matching(instance)
    _require(matching_problems(men, women))
    m = formats.parse_pairs(solution)
    taken: set[int] = set()
    for p in sorted(m):
        r = m[p]
        if p not in men:
            return f"isValid: {p} is not a proposer"
        if r not in women:
            return f"isValid: {r} is not a responder"
        if r not in men[p]:
            return f"isValid: {p} does not list {r}"
        if p not in women[r]:
            return f"isValid: {r} does not list {p}"
        if r in taken:
            return f"isValid: {r} matched twice"
        taken.add(r)
    pairs = blocking_pairs(m, men, women)
    if pairs:
        return "isStable: blocking pair ({}, {})".format(*pairs[0])
    return None


def _certify_placement(instance: str, solution: str) -> Optional[str]:
    inst = formats.parse_placement(instance)
    _require(placement_problems(inst))
    m = formats.parse_pairs(solution)
    for t in sorted(m):
        if t not in inst.teachers:
            return f"Q1: {t} is not a teacher"
    for t in sorted(m):
        if m[t] not in inst.preferences[t]:
            return f"Q2: vacancy {m[t]} is not in the list of teacher {t}"
    holders = Counter(m.values())
    for v in sorted(holders):
        if holders[v] > 1:
            return f"Q2: vacancy {v} assigned twice"
    pairs = placement_blocking_pairs(inst, m)
    if pairs:
        return "Q3: blocking pair ({}, {})".format(*pairs[0])
    for t in sorted(inst.initial):
        if t not in m:
            return f"Q4: initially placed teacher {t} left unplaced"
    return None


CERTIFIERS: dict[str, Callable[[str, str], Optional[str]]] = {
    "sort": _certify_sort,
    "topsort": _certify_topsort,
    "euler": _certify_euler,
    "trail": _certify_trail,
    "match": _certify_match,
    "placement": _certify_placement,
}


# -- commands ----------------------------------------------------------------


def cmd_check(args: argparse.Namespace, ctx: ContractContext) -> int:
    results = run_fixtures()
    for r in results:
        if r.passed:
            print(f"PASS {r.name}")
            continue
        print(f"FAIL {r.name}: {r.detail}")
        if ctx.active:
            # rerun the group in Log mode so every violated label is listed
            with using(ContractMode.LOG) as log:
                run_fixtures([r.name])
            labels = list(dict.fromkeys(v.label for v in log.violations))
            if labels:
                print("  violated: " + ", ".join(labels))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} fixture groups passed")
    return OK if passed == len(results) else FAILED


def cmd_solve(args: argparse.Namespace, ctx: ContractContext) -> int:
    print(SOLVERS[args.problem](_read(args.input, "input")))
    return OK


def cmd_verify(args: argparse.Namespace, ctx: ContractContext) -> int:
    instance = _read(args.input, "input")
    solution = _read(args.solution, "solution")
    clause = CERTIFIERS[args.problem](instance, solution)
    if clause is None:
        print("certified")
        return OK
    print(f"not certified: {clause}")
    return FAILED


def cmd_fuzz(args: argparse.Namespace, ctx: ContractContext) -> int:
    out = run_fuzz(args.problem, args.seed, args.cases, only_case=args.case)
    if out.ok:
        print(f"fuzz {args.problem} seed={args.seed} cases={out.cases} commands={out.commands}: all agree")
        return OK
    index, result = out.failure
    print(f"fuzz {args.problem} seed={args.seed}: disagreement at case {index}")
    print(result.report.render())
    if result.trace:
        print("trace:")
        for k, line in enumerate(result.trace):
            print(f"  {k:3d} {line}")
    print(f"replay: vericlassics fuzz --problem {args.problem} --seed {args.seed} --case {index}")
    return FAILED


def cmd_report(args: argparse.Namespace, ctx: ContractContext) -> int:
    start = time.perf_counter()
    results = run_fixtures()
    total = time.perf_counter() - start
    rows = sorted(ctx.stats.items())
    width = max([len("operation"), *(len(op) for op, _ in rows)])
    print(f"contract mode: {ctx.mode.value}")
    print(f"{'operation':<{width}}  {'calls':>6}  {'checks':>7}  {'violations':>10}  {'seconds':>9}")
    for op, st in rows:
        print(f"{op:<{width}}  {st.calls:>6}  {st.checks:>7}  {st.violations:>10}  {st.seconds:>9.4f}")
    checks = sum(st.checks for _, st in rows)
    bad = sum(st.violations for _, st in rows)
    print(f"{'total':<{width}}  {'':>6}  {checks:>7}  {bad:>10}  {total:>9.4f}")
    print("per module:")
    modules: dict[str, list[int]] = {}
    for op, st in rows:
        acc = modules.setdefault(op.split(".")[0], [0, 0])
        acc[0] += st.checks
        acc[1] += st.violations
    for mod, (c, v) in sorted(modules.items()):
        print(f"  {mod:<14} checks={c} violations={v}")
    print("note: counts are runtime contract checks, not static proof obligations; times are not comparable to verifier timings")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print("fixture groups failed: " + ", ".join(failed))
    return OK


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "fuzz": cmd_fuzz,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--contracts",
        choices=[m.value for m in ContractMode],
        default=None,
        help="contract mode (default: assert; log for report)",
    )
    common.add_argument(
        "--inject",
        action="append",
        default=[],
        choices=sorted(faults.MUTATIONS),
        metavar="MUTATION",
        help="enable a named fault mutation (repeatable)",
    )

    parser = argparse.ArgumentParser(prog="vericlassics", description="Contract-checked classic algorithms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common], help="run the fixture groups")

    p = sub.add_parser("solve", parents=[common], help="solve an instance file")
    p.add_argument("--problem", required=True, choices=SOLVE_PROBLEMS)
    p.add_argument("--input", required=True)

    p = sub.add_parser("verify", parents=[common], help="certify a proposed solution")
    p.add_argument("--problem", required=True, choices=VERIFY_PROBLEMS)
    p.add_argument("--input", required=True)
    p.add_argument("--solution", required=True)

    p = sub.add_parser("fuzz", parents=[common], help="compare solvers with brute-force oracles")
    p.add_argument("--problem", required=True, choices=sorted(FUZZ_PROBLEMS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--case", type=int, default=None, help="replay a single case index")

    sub.add_parser("report", parents=[common], help="per-operation contract check counts and timings")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cases", 0) < 0 or (getattr(args, "case", None) or 0) < 0:
        parser.error("--cases and --case must be non-negative")
    default = "log" if args.command == "report" else "assert"
    mode = ContractMode.parse(args.contracts or default)
    with contextlib.ExitStack() as stack:
        stack.enter_context(faults.inject(*args.inject))
        ctx = stack.enter_context(using(mode))
        try:
            return COMMANDS[args.command](args, ctx)
        except (ParseError, InputError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE
        except ContractViolation as exc:
            print(f"contract violated: {exc}", file=sys.stderr)
            return FAILED


if __name__ == "__main__":
    sys.exit(main())
