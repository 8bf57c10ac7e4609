"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import contextlib
import os
import random
import subprocess
import sys
import time
import xml.etree.ElementTree as ET
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest
from conftest import ACCEPTANCE

from vericlassics import faults, oracles
from vericlassics.collections import DELETED, NIL, BstSet, MaxHeap, OpenHashSet, Some
from vericlassics.collections.bst import as_set, is_strictly_sorted
from vericlassics.contracts import ContractMode, using
from vericlassics.fixtures import EULER_GRAPH, TRAIL_GRAPH, run_fixtures
from vericlassics.fuzzing import (
    case_rng,
    random_dag,
    random_digraph,
    random_eulerian_graph,
    random_matching_instance,
    random_placement_instance,
    run_fuzz,
)
from vericlassics.graphs import (
    DiGraph,
    dfs,
    euler_trail_degrees,
    find_euler_circuit,
    has_incoming_edges,
    is_acyclic,
    is_euler_circuit,
    is_euler_trail,
    remove_vertex,
    topsort,
)
from vericlassics.matching import PlacementInstance, blocking_pairs, stable_matching, teachers_placement
from vericlassics.numerics import div, power_dc, power_naive
from vericlassics.search_sort import binary_search, insertion_sort, is_sorted

ROOT = Path(__file__).resolve().parent.parent


@contextlib.contextmanager
def criterion(name, limit):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        ACCEPTANCE[name] = f"FAIL ({exc})"
        print(f"{name}: FAIL ({exc})")
        raise
    detail = "; ".join(notes + [f"{time.perf_counter() - start:.2f}s < {limit}s"])
    ACCEPTANCE[name] = f"PASS ({detail})"
    print(f"{name}: PASS ({detail})")


def _seeded(label, i):
    return random.Random(f"acceptance:{label}:{i}")


# -- 1. fixture suite ----------------------------------------------------------


def test_fixture_suite():
    with criterion("fixture suite", 1.0) as notes:
        results = run_fixtures()
        assert all(r.passed for r in results), [r for r in results if not r.passed]
        # the vectors themselves, compared exactly
        assert div(15, 6) == (2, 3)
        assert [power_dc(x, n) for x, n in [(2, 5), (-2, 2), (-2, 1), (-2, 0), (0, 0)]] == [32, 4, -2, 1, 1]
        a = [1, 4, 4, 6, 8]
        assert binary_search(a, 6) == 3 and binary_search(a, 3) is None and binary_search(a, 4) in {1, 2}
        s1, s2 = [9, 4, 6, 3, 8], [9, 3, 6, 9]
        insertion_sort(s1)
        insertion_sort(s2)
        assert (s1, s2) == ([3, 4, 6, 8, 9], [3, 6, 9, 9])
        h = MaxHeap()
        for x in (2, 5, 1, 1):
            h.insert(x)
        assert [h.delete_max() for _ in range(4)] == [5, 2, 1, 1]
        hs = OpenHashSet(hash=len)
        hs.insert("Hello")
        hs.insert("World")
        assert hs.elems() == {"Hello", "World"} and hs.contains("Hello") and not hs.contains("ANSI")
        hs.delete("Hello")
        assert hs.elems() == {"World"} and not hs.contains("Hello")
        t = BstSet([2, 5, 1, 4, 4])
        assert t.as_sorted_seq() == [1, 2, 4, 5] and (t.min(), t.max()) == (1, 5)
        t.delete(5)
        assert t.elems() == {1, 2, 4}
        assert stable_matching({1: [1, 2], 2: [1, 2]}, {1: [1], 2: [2]}) == {1: 1, 2: 2}
        assert stable_matching({1: [2, 1], 2: [1, 2]}, {1: [1, 2], 2: [2, 1]}) == {1: 2, 2: 1}
        men3, women3 = {1: [1, 2], 2: [1]}, {1: [1, 2], 2: [2, 1]}
        got3 = stable_matching(men3, women3)
        # the vector accepts {1: 2, 2: 1} or {1: 1}; the first has blocking pair (1, 1)
        assert got3 in ({1: 2, 2: 1}, {1: 1})
        assert blocking_pairs({1: 2, 2: 1}, men3, women3) == [(1, 1)]
        notes.append(f"matching test 3 -> {got3}, in accepted set {{1: 2, 2: 1}}, {{1: 1}}")
        tp1 = PlacementInstance.build({1, 2}, [1, 2, 3], {1: [2, 1], 2: [1, 2], 3: [2]}, {1: 1})
        tp2 = PlacementInstance.build({1, 2}, [1, 2, 3], {1: [2, 1], 2: [1, 2], 3: [2, 1]}, {3: 1})
        assert teachers_placement(tp1) == {1: 2, 2: 1} and teachers_placement(tp2) == {1: 2, 3: 1}
        chain, fork = DiGraph.of({1, 2, 3}, {(1, 2), (2, 3)}), DiGraph.of({1, 2, 3}, {(1, 2), (1, 3)})
        assert topsort(chain) == [1, 2, 3] and topsort(fork) in ([1, 2, 3], [1, 3, 2])
        assert is_euler_circuit([1, 2, 3, 4, 5, 3, 1], EULER_GRAPH)
        assert is_euler_trail([3, 2, 1, 3, 4, 5], TRAIL_GRAPH)
        assert is_euler_circuit(find_euler_circuit(EULER_GRAPH), EULER_GRAPH)
        notes.append(f"{len(results)} fixture groups")


# -- 2. lemma properties -------------------------------------------------------

CASES = 250


def _lemma_product_of_powers(rng):
    x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    a, b = rng.randint(0, 64), rng.randint(0, 64)
    return power_naive(x, a) * power_naive(x, b) == power_naive(x, a + b)


def _lemma_sorting_uniqueness(rng):
    a = [rng.randint(-20, 20) for _ in range(rng.randint(0, 25))]
    b = a[:]
    rng.shuffle(b)
    insertion_sort(a)
    insertion_sort(b)
    return is_sorted(a) and is_sorted(b) and Counter(a) == Counter(b) and a == b


def _lemma_max_at_top(rng):
    h = MaxHeap(capacity=rng.randint(1, 4))
    for _ in range(rng.randint(1, 40)):
        if h.is_empty() or rng.random() < 0.6:
            h.insert(rng.randint(-50, 50))
        else:
            h.delete_max()
        if not h.max_is_at_top():
            return False
    return True


def _lemma_counting_identity(rng):
    h = OpenHashSet(hash=lambda x: x, capacity=rng.randint(1, 6))
    model: set[int] = set()
    for _ in range(rng.randint(1, 50)):
        x = rng.randint(0, 20)
        if x in model:
            h.delete(x)
            model.discard(x)
        else:
            h.insert(x)
            model.add(x)
        cells = h.slots()
        v = sum(isinstance(c, Some) for c in cells)
        d = sum(c is DELETED for c in cells)
        n = sum(c is NIL for c in cells)
        if v + d + n != len(cells) or v != len(model) or d != h.deleted or h.full() != (n == 0):
            return False
    return True


def _lemma_as_set_concat(rng):
    s1 = [rng.randint(0, 9) for _ in range(rng.randint(0, 10))]
    s2 = [rng.randint(0, 9) for _ in range(rng.randint(0, 10))]
    return as_set(s1 + s2) == as_set(s1) | as_set(s2)


def _lemma_bst_uniqueness(rng):
    xs = rng.sample(range(100), rng.randint(0, 30))
    s = BstSet(xs).as_sorted_seq()
    other = sorted(set(xs))
    return is_strictly_sorted(s) and is_strictly_sorted(other) and as_set(s) == as_set(other) and s == other


def _acyclic_sample(rng):
    if rng.random() < 0.5:
        return random_dag(rng, rng.randint(1, 7))
    while True:
        g = random_digraph(rng, rng.randint(1, 7), p=0.15)
        if is_acyclic(g):
            return g


def _lemma_zero_indegree(rng):
    g = _acyclic_sample(rng)
    return any(not has_incoming_edges(g, v) for v in g.V)


def _lemma_subgraph_acyclic(rng):
    g = _acyclic_sample(rng)
    return all(is_acyclic(remove_vertex(v, g)) for v in g.V)


def _random_trail(rng):
    """A random edge-simple walk and the graph made of exactly its edges."""
    n = rng.randint(2, 7)
    used: set[frozenset] = set()
    walk = [rng.randint(1, n)]
    for _ in range(rng.randint(1, 12)):
        here = walk[-1]
        options = [w for w in range(1, n + 1) if w != here and frozenset((here, w)) not in used]
        if not options:
            break
        w = rng.choice(options)
        used.add(frozenset((here, w)))
        walk.append(w)
    adj: dict[int, set[int]] = {v: set() for v in walk}
    for e in used:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    return walk, {v: frozenset(ns) for v, ns in adj.items()}


def _lemma_trail_degrees(rng):
    walk, g = _random_trail(rng)
    if not is_euler_trail(walk, g):
        return False
    first, last = walk[0], walk[-1]
    # count degrees independently of the library predicate
    degree = Counter(x for v in g for x in g[v])
    parity_ok = all((degree[x] % 2 == 1) == ((x == first) != (x == last)) for x in g)
    return parity_ok and euler_trail_degrees(g, walk)


def _lemma_dfs_returns(rng):
    g = random_eulerian_graph(rng, rng.randint(3, 7), circuits=rng.randint(1, 3))
    v = rng.choice(sorted(g))
    r, rest = dfs(v, g)
    return r[0] == r[-1] == v and not rest[v]


LEMMAS = {
    "product-of-powers": _lemma_product_of_powers,
    "sorting uniqueness": _lemma_sorting_uniqueness,
    "max-at-top": _lemma_max_at_top,
    "counting identity / full iff no Nil": _lemma_counting_identity,
    "asSet concatenation": _lemma_as_set_concat,
    "BST sorted-sequence uniqueness": _lemma_bst_uniqueness,
    "zero-indegree existence": _lemma_zero_indegree,
    "subgraph acyclicity": _lemma_subgraph_acyclic,
    "Euler-trail degree parity": _lemma_trail_degrees,
    "DFS returns to start": _lemma_dfs_returns,
}


def test_lemma_properties():
    with criterion("lemma-property suite", 30.0) as notes:
        failures = {}
        for name, lemma in LEMMAS.items():
            bad = [i for i in range(CASES) if not lemma(_seeded(name, i))]
            if bad:
                failures[name] = bad[:5]
        assert not failures, f"counterexample cases: {failures}"
        notes.append(f"{len(LEMMAS)} lemmas x {CASES} cases, 0 failures")


# -- 3. oracle equivalence -----------------------------------------------------

INSTANCES = 120


def test_oracle_equivalence():
    with criterion("oracle equivalence", 60.0) as notes:
        graphs = 0
        for n in range(0, 5):
            vs = list(range(1, n + 1))
            pairs = [(a, b) for a in vs for b in vs]
            for mask in range(1 << len(pairs)):
                g = DiGraph.of(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])
                assert is_acyclic(g) == oracles.acyclic_by_definition(g), g
                graphs += 1
        notes.append(f"{graphs} digraphs with |V|<=4 exhaustively")

        for case in range(INSTANCES):
            rng = case_rng(101, case)
            g = random_dag(rng, rng.randint(0, oracles.MAX_TOPO_VERTICES))
            assert tuple(topsort(g)) in oracles.all_topological_orders(g)
            men, women = random_matching_instance(case_rng(102, case), max_side=oracles.MAX_MATCHING_SIDE)
            assert stable_matching(men, women) in oracles.all_stable_matchings(men, women)
            inst = random_placement_instance(case_rng(103, case))
            stable = oracles.all_stable_placements(inst.vacancies, inst.teachers, inst.preferences, inst.initial)
            assert teachers_placement(inst) in stable
        euler_cases = 0
        case = 0
        while euler_cases < INSTANCES:
            rng = case_rng(104, case)
            case += 1
            g = random_eulerian_graph(rng, rng.randint(1, 7), circuits=rng.randint(1, 3))
            if sum(map(len, g.values())) // 2 > oracles.MAX_EULER_EDGES:
                continue
            witness = oracles.exhaustive_euler_circuit(g)
            assert witness is not None and is_euler_circuit(witness, g)
            r = find_euler_circuit(g)
            assert is_euler_circuit(r, g) and oracles.closed_euler_walk(r, g)
            euler_cases += 1
        notes.append(f"{INSTANCES} instances each for topsort, match, placement, euler")

        commands = {}
        for kind in ("heap", "hashset", "treeset"):
            for seed in (1, 2, 3):
                out = run_fuzz(kind, seed, 40)
                assert out.ok, out.failure[1].report.render()
                assert out.commands >= 500
                commands[kind] = min(commands.get(kind, out.commands), out.commands)
        notes.append("container fuzzing, min commands per seed: " + ", ".join(f"{k}={v}" for k, v in commands.items()))


# -- 4. contract-mode soundness ------------------------------------------------


def _suite_outcomes(mode, tmp_path):
    xml = tmp_path / f"junit-{mode}.xml"
    env = dict(os.environ, VERICLASSICS_CONTRACTS=mode)
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(ROOT / "tests"),
         "--ignore", str(ROOT / "tests" / "test_acceptance.py"), f"--junitxml={xml}"],
        cwd=ROOT, env=env, capture_output=True, text=True,
    )
    outcomes = {}
    for tc in ET.parse(xml).getroot().iter("testcase"):
        kids = {child.tag for child in tc}
        status = "failed" if kids & {"failure", "error"} else "skipped" if "skipped" in kids else "passed"
        outcomes[f"{tc.get('classname')}::{tc.get('name')}"] = status
    return proc.returncode, outcomes


@pytest.mark.own_contracts
def test_contract_mode_soundness(tmp_path):
    with criterion("contract-mode soundness", 180.0) as notes:
        runs = {mode.value: _suite_outcomes(mode.value, tmp_path) for mode in ContractMode}
        for mode, (code, outcomes) in runs.items():
            failed = [k for k, v in outcomes.items() if v != "passed"]
            assert code == 0 and not failed, f"{mode}: {failed[:5]}"
        ids = {mode: set(o) for mode, (_, o) in runs.items()}
        assert ids["off"] == ids["assert"] == ids["log"]
        notes.append(f"{len(ids['off'])} tests pass under off, assert and log")

        with using(ContractMode.LOG) as ctx:
            assert all(r.passed for r in run_fixtures())
        per_module: Counter = Counter()
        for op, st in ctx.stats.items():
            per_module[op.split(".")[0]] += st.checks
        assert not ctx.violations
        expected = {"numerics", "search_sort", "collections", "matching", "graphs"}
        assert set(per_module) == expected and all(per_module[m] > 0 for m in expected), per_module
        assert len(ctx.stats) >= 10
        notes.append(f"Log report: {len(ctx.stats)} rows, {ctx.checks_evaluated} checks, 0 violations")


# -- 5. fault injection --------------------------------------------------------

FAULT_PROBLEMS = {
    "heap-child-flip": "heap",
    "tombstone-as-nil": "hashset",
    "bst-skip-restore": "treeset",
    "gs-skip-reject": "match",
    "euler-splice-off-by-one": "euler",
}


@pytest.mark.own_contracts
def test_fault_injection_sensitivity():
    with criterion("fault-injection sensitivity", 60.0) as notes:
        assert set(FAULT_PROBLEMS) == set(faults.MUTATIONS)
        for mutation, problem in FAULT_PROBLEMS.items():
            with faults.inject(mutation):
                with using(ContractMode.ASSERT):
                    by_contract = run_fuzz(problem, 1, 300)
                with using(ContractMode.OFF):
                    by_oracle = run_fuzz(problem, 1, 300)
                    fixtures_ok = all(r.passed for r in run_fixtures())
            assert not by_contract.ok or not by_oracle.ok, f"{mutation} not caught"
            caught = []
            if not by_contract.ok:
                caught.append(f"contract {by_contract.failure[1].report.actual}")
            if not by_oracle.ok:
                caught.append("oracle")
            if not fixtures_ok:
                caught.append("fixtures")
            notes.append(f"{mutation}: " + " + ".join(caught))
        assert all(r.passed for r in run_fixtures())
