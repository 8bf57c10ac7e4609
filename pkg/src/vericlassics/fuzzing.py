"""Seeded random instances checked against the brute-force oracles.

Every case draws from its own ``random.Random(f"{seed}:{case}")`` (CPython's
Mersenne Twister seeded through SHA-512 of the string), so a single failing
case can be replayed without re-running the ones before it.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from . import oracles
from .collections import BstSet, MaxHeap, OpenHashSet
from .contracts import ContractViolation
from .graphs import CycleDetected, DiGraph, find_euler_circuit, topsort
from .matching import PlacementInstance, stable_matching, teachers_placement
from .numerics import div, power_dc
from .oracles import OracleReport, Verdict
from .search_sort import binary_search, insertion_sort

__all__ = [
    "CaseResult",
    "FuzzOutcome",
    "PROBLEMS",
    "case_rng",
    "run_fuzz",
    "random_dag",
    "random_digraph",
    "random_eulerian_graph",
    "random_matching_instance",
    "random_placement_instance",
]


@dataclass
class CaseResult:
    report: OracleReport
    commands: int = 1
    trace: list[str] = field(default_factory=list)


@dataclass
class FuzzOutcome:
    problem: str
    seed: int
    cases: int = 0
    commands: int = 0
    failure: Optional[tuple[int, CaseResult]] = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def case_rng(seed: int, case: int) -> random.Random:
    return random.Random(f"{seed}:{case}")


def _agree(instance: str, value: Any, commands: int = 1, trace: Optional[list[str]] = None) -> CaseResult:
    return CaseResult(OracleReport(instance, value, value, Verdict.AGREE), commands, trace or [])


def _disagree(instance: str, expected: Any, actual: Any, commands: int = 1, trace: Optional[list[str]] = None) -> CaseResult:
    return CaseResult(OracleReport(instance, expected, actual, Verdict.DISAGREE), commands, trace or [])


# -- instance generators ---------------------------------------------------


def random_dag(rng: random.Random, n: int, p: float = 0.4) -> DiGraph:
    """Layered DAG: edges only go from an earlier layer to a later one."""
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    layers = [rng.randint(0, max(0, n - 1)) for _ in ids]
    edges = {
        (ids[i], ids[j])
        for i in range(n)
        for j in range(n)
        if layers[i] < layers[j] and rng.random() < p
    }
    return DiGraph.of(ids, edges)


def random_digraph(rng: random.Random, n: int, p: float = 0.3, max_edges: int = oracles.MAX_PATH_EDGES) -> DiGraph:
    """Arbitrary digraph, self-loops allowed, at most ``max_edges`` edges."""
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    edges = [e for e in pairs if rng.random() < p][:max_edges]
    return DiGraph.of(range(1, n + 1), edges)


def random_eulerian_graph(rng: random.Random, n: int, circuits: int = 2) -> dict[int, frozenset[int]]:
    """Connected graph with all degrees even.

    Superposes random simple cycles by symmetric difference of edge sets
    (which keeps every degree even) and keeps the component of the
    smallest vertex that still has edges.
    """
    edges: set[frozenset[int]] = set()
    if n >= 3:
        for _ in range(circuits):
            k = rng.randint(3, n)
            cyc = rng.sample(range(1, n + 1), k)
            ring = {frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)}
            edges ^= ring
    adj: dict[int, set[int]] = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if not adj:
        return {rng.randint(1, max(1, n)): frozenset()}
    start = min(adj)
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in comp:
                comp.add(w)
                stack.append(w)
    return {v: frozenset(adj[v]) for v in sorted(comp)}


def random_matching_instance(rng: random.Random, max_side: int = 6) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
    nm, nw = rng.randint(0, max_side), rng.randint(0, max_side)
    men_ids, women_ids = list(range(1, nm + 1)), list(range(1, nw + 1))
    men = {m: rng.sample(women_ids, min(rng.randint(0, 6), nw)) for m in men_ids}
    women = {w: rng.sample(men_ids, min(rng.randint(0, 6), nm)) for w in women_ids}
    return men, women


def random_placement_instance(rng: random.Random, max_side: int = 4) -> PlacementInstance:
    nt, nv = rng.randint(0, max_side), rng.randint(1, max_side)
    teachers = list(range(1, nt + 1))
    rng.shuffle(teachers)
    vacancies = list(range(1, nv + 1))
    initial: dict[int, int] = {}
    free = vacancies[:]
    rng.shuffle(free)
    for t in sorted(teachers):
        if free and rng.random() < 0.4:
            initial[t] = free.pop()
    prefs: dict[int, list[int]] = {}
    for t in teachers:
        wish = [v for v in rng.sample(vacancies, rng.randint(0, nv)) if v != initial.get(t)]
        if t in initial:
            wish.append(initial[t])
        prefs[t] = wish
    return PlacementInstance.build(vacancies, teachers, prefs, initial)


# -- per-problem cases -----------------------------------------------------


def _legal(kind: str, model: Any, keys: range) -> list[str]:
    if kind == "heap":
        return ["insert", "size"] + (["delete_max", "get_max"] if model else [])
    if kind == "hashset":
        ops = ["contains", "size"]
        if len(model) < len(keys):
            ops.append("insert")
        if model:
            ops.append("delete")
        return ops
    return ["insert", "delete", "contains", "size", "as_seq"] + (["min", "max"] if model else [])


def _is_legal(kind: str, cmd: tuple, model: Any) -> bool:
    op = cmd[0]
    if op in ("delete_max", "get_max", "min", "max"):
        return bool(model)
    if kind == "hashset" and op == "insert":
        return cmd[1] not in model
    if kind == "hashset" and op == "delete":
        return cmd[1] in model
    return True


def _empty_model(kind: str) -> Any:
    return Counter() if kind == "heap" else frozenset()


def _container_case(kind: str, rng: random.Random) -> CaseResult:
    length = rng.randint(1, 64)
    if kind == "heap":
        capacity: Optional[int] = rng.randint(1, 4)
        keys = range(-20, 21)
    elif kind == "hashset":
        capacity = rng.randint(1, 5)
        keys = range(0, 25)
    else:
        capacity = None
        keys = range(0, 31)

    model = _empty_model(kind)
    commands: list[tuple] = []
    for _ in range(length):
        op = rng.choice(_legal(kind, model, keys))
        if op == "insert" and kind == "hashset":
            cmd: tuple = (op, rng.choice([k for k in keys if k not in model]))
        elif op == "delete" and kind == "hashset":
            cmd = (op, rng.choice(sorted(model)))
        elif op in ("insert", "delete", "contains"):
            cmd = (op, rng.choice(keys))
        else:
            cmd = (op,)
        commands.append(cmd)
        model, _ = oracles.reference_model_step(kind, cmd, model)

    result = replay_container(kind, capacity, commands)
    if result.report.agrees:
        return result
    return shrink_container(kind, capacity, commands, result)


def _new_container(kind: str, capacity: Optional[int]) -> Any:
    if kind == "heap":
        return MaxHeap(capacity=capacity)
    if kind == "hashset":
        return OpenHashSet(hash=lambda x: x, capacity=capacity)
    return BstSet()


def replay_container(kind: str, capacity: Optional[int], commands: list[tuple]) -> CaseResult:
    """Run ``commands`` against a fresh container and the reference model.

    An illegal command sequence (say ``delete_max`` on an empty heap)
    counts as agreement so that shrinking never reports one.
    """
    obj = _new_container(kind, capacity)
    model = _empty_model(kind)
    trace = [" ".join(map(str, cmd)) for cmd in commands]
    for step, cmd in enumerate(commands):
        if not _is_legal(kind, cmd, model):
            return _agree(kind, "illegal sequence", step, trace[:step])
        model, expected = oracles.reference_model_step(kind, cmd, model)
        where = f"{kind} step {step}" if capacity is None else f"{kind} (capacity {capacity}) step {step}"
        try:
            actual = _apply(obj, cmd)
        except ContractViolation as exc:
            return _disagree(where, expected, f"ContractViolation({exc.label!r}, {exc.kind.value})", step + 1, trace[: step + 1])
        if actual != expected:
            return _disagree(where, expected, actual, step + 1, trace[: step + 1])
        problem = _container_fault(kind, obj, model)
        if problem:
            return _disagree(where, "class invariant holds", problem, step + 1, trace[: step + 1])
    return _agree(kind, "model agreement", len(commands), trace)


def shrink_container(kind: str, capacity: Optional[int], commands: list[tuple], failure: CaseResult) -> CaseResult:
    """Greedily drop commands while the sequence still fails.

    The result is 1-minimal: removing any single remaining command makes
    the failure go away (or the sequence illegal).
    """
    commands = commands[: failure.commands]
    progress = True
    while progress:
        progress = False
        for i in range(len(commands)):
            trial = commands[:i] + commands[i + 1 :]
            r = replay_container(kind, capacity, trial)
            if not r.report.agrees:
                commands, failure, progress = trial[: r.commands], r, True
                break
    return failure


def _apply(obj: Any, cmd: tuple) -> Any:
    op, *args = cmd
    if op == "size":
        return len(obj)
    if op == "as_seq":
        return obj.as_sorted_seq()
    if op == "min":
        return obj.min()
    if op == "max":
        return obj.max()
    return getattr(obj, op)(*args)


def _container_fault(kind: str, obj: Any, model: Any) -> Optional[str]:
    if kind == "heap":
        if not obj.heap_inv():
            return "heap invariant broken"
        if obj.elems() != model:
            return "contents differ from model"
    elif kind == "hashset":
        if not obj.valid():
            return "hash table invariant broken"
        if not obj.counting_identity():
            return "counting identity broken"
        if obj.full() != (obj.count_nil() == 0):
            return "full() disagrees with Nil count"
        if obj.elems() != model:
            return "contents differ from model"
    else:
        if not obj.valid():
            return "BST invariant broken"
        if obj.elems() != model:
            return "contents differ from model"
    return None


def _topsort_case(rng: random.Random) -> CaseResult:
    if rng.random() < 0.25:
        g = random_digraph(rng, rng.randint(1, 5))
    else:
        g = random_dag(rng, rng.randint(0, 10))
    desc = repr(g)
    acyclic = oracles.acyclic_by_definition(g) if len(g.E) <= oracles.MAX_PATH_EDGES else None
    try:
        s = topsort(g)
    except CycleDetected:
        if acyclic is False:
            return _agree(desc, "CycleDetected")
        return _disagree(desc, "a topological order", "CycleDetected")
    if acyclic is False:
        return _disagree(desc, "CycleDetected", s)
    if len(g.V) <= oracles.MAX_TOPO_VERTICES:
        orders = oracles.all_topological_orders(g)
        r = OracleReport.compare(desc, sorted(orders), tuple(s), accepted=orders)
        return CaseResult(r)
    ok = oracles.is_topological_order(s, g)
    return CaseResult(OracleReport(desc, "a topological order", s, Verdict.AGREE if ok else Verdict.DISAGREE))


def _match_case(rng: random.Random) -> CaseResult:
    men, women = random_matching_instance(rng)
    desc = f"men={men} women={women}"
    got = stable_matching(men, women)
    if len(men) <= oracles.MAX_MATCHING_SIDE and len(women) <= oracles.MAX_MATCHING_SIDE:
        stable = oracles.all_stable_matchings(men, women)
        return CaseResult(OracleReport.compare(desc, stable, got, accepted=stable))
    ok = oracles.valid_matching(got, men, women) and not oracles.blocking_pair_exists(got, men, women)
    return CaseResult(OracleReport(desc, "a valid stable matching", got, Verdict.AGREE if ok else Verdict.DISAGREE))


def _placement_case(rng: random.Random) -> CaseResult:
    inst = random_placement_instance(rng)
    desc = repr(inst)
    got = teachers_placement(inst)
    stable = oracles.all_stable_placements(inst.vacancies, inst.teachers, inst.preferences, inst.initial)
    return CaseResult(OracleReport.compare(desc, stable, got, accepted=stable))


def _euler_case(rng: random.Random) -> CaseResult:
    g = random_eulerian_graph(rng, rng.randint(1, 7), circuits=rng.randint(1, 3))
    desc = f"G={ {v: sorted(ns) for v, ns in g.items()} }"
    r = find_euler_circuit(g)
    n_edges = sum(len(ns) for ns in g.values()) // 2
    if n_edges <= oracles.MAX_EULER_EDGES and oracles.exhaustive_euler_circuit(g) is None:
        return _disagree(desc, "no Euler circuit", r)
    ok = oracles.closed_euler_walk(r, g)
    return CaseResult(OracleReport(desc, "an Euler circuit", r, Verdict.AGREE if ok else Verdict.DISAGREE))


def _sort_case(rng: random.Random) -> CaseResult:
    a = [rng.randint(-50, 50) for _ in range(rng.randint(0, 40))]
    desc = f"sort {a}"
    b = list(a)
    insertion_sort(b)
    return CaseResult(OracleReport.compare(desc, sorted(a), b))


def _search_case(rng: random.Random) -> CaseResult:
    s = sorted(rng.randint(-30, 30) for _ in range(rng.randint(0, 40)))
    x = rng.randint(-35, 35)
    desc = f"search {x} in {s}"
    i = binary_search(s, x)
    if x in s:
        ok = i is not None and s[i] == x
        return CaseResult(OracleReport(desc, f"an index of {x}", i, Verdict.AGREE if ok else Verdict.DISAGREE))
    return CaseResult(OracleReport.compare(desc, None, i))


def _div_case(rng: random.Random) -> CaseResult:
    n, d = rng.randint(0, 2000), rng.randint(1, 60)
    return CaseResult(OracleReport.compare(f"div({n}, {d})", (n // d, n % d), div(n, d)))


def _power_case(rng: random.Random) -> CaseResult:
    x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    n = rng.randint(0, 60)
    expected = Fraction(1)
    for _ in range(n):
        expected *= x
    return CaseResult(OracleReport.compare(f"power({x}, {n})", expected, power_dc(x, n)))


PROBLEMS: dict[str, Callable[[random.Random], CaseResult]] = {
    "heap": lambda rng: _container_case("heap", rng),
    "hashset": lambda rng: _container_case("hashset", rng),
    "treeset": lambda rng: _container_case("treeset", rng),
    "match": _match_case,
    "placement": _placement_case,
    "topsort": _topsort_case,
    "euler": _euler_case,
    "sort": _sort_case,
    "search": _search_case,
    "div": _div_case,
    "power": _power_case,
}


def run_case(problem: str, seed: int, case: int) -> CaseResult:
    rng = case_rng(seed, case)
    try:
        return PROBLEMS[problem](rng)
    except ContractViolation as exc:
        return _disagree(f"{problem} case {case}", "all contracts hold", f"ContractViolation({exc.label!r}, {exc.kind.value}) in {exc.op}")


def run_fuzz(problem: str, seed: int, cases: int, *, only_case: Optional[int] = None, stop_on_failure: bool = True) -> FuzzOutcome:
    """Run ``cases`` cases (or just ``only_case``) and stop at the first disagreement."""
    if problem not in PROBLEMS:
        raise KeyError(f"unknown fuzz problem {problem!r}")
    outcome = FuzzOutcome(problem, seed)
    indices = [only_case] if only_case is not None else range(cases)
    for i in indices:
        result = run_case(problem, seed, i)
        outcome.cases += 1
        outcome.commands += result.commands
        if not result.report.agrees and outcome.failure is None:
            outcome.failure = (i, result)
            if stop_on_failure:
                break
    return outcome
