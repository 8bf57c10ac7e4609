import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vericlassics import oracles
from vericlassics.contracts import ContractMode, ContractViolation, using
from vericlassics.fixtures import EULER_GRAPH, TRAIL_GRAPH
from vericlassics.fuzzing import case_rng, random_dag, random_digraph, random_eulerian_graph
from vericlassics.graphs import (
    CycleDetected,
    DiGraph,
    dfs,
    edges_of,
    euler_trail_degrees,
    find_euler_circuit,
    has_even_degrees,
    has_incoming_edges,
    is_acyclic,
    is_connected,
    is_euler_circuit,
    is_euler_trail,
    is_top_sorting,
    remove_vertex,
    topsort,
    ugraph,
)

CHAIN = DiGraph.of({1, 2, 3}, {(1, 2), (2, 3)})
FORK = DiGraph.of({1, 2, 3}, {(1, 2), (1, 3)})
TRIANGLE = ugraph([(1, 2), (2, 3), (1, 3)])

# -- topological sort --------------------------------------------------------


def test_topsort_fixtures():
    assert is_top_sorting([1, 2, 3], CHAIN)
    assert topsort(CHAIN) == [1, 2, 3]
    assert is_top_sorting([1, 2, 3], FORK) and is_top_sorting([1, 3, 2], FORK)
    assert topsort(FORK) in ([1, 2, 3], [1, 3, 2])


def test_topsort_small_cases():
    assert topsort(DiGraph.of([])) == []
    assert topsort(DiGraph.of([5])) == [5]
    assert not is_top_sorting([2, 1, 3], CHAIN)
    assert not is_top_sorting([1, 2], CHAIN)


def test_topsort_cycle_reports_remaining_subgraph():
    g = DiGraph.of({1, 2, 3, 4}, {(1, 2), (2, 3), (3, 2), (3, 4)})
    with pytest.raises(CycleDetected) as info:
        topsort(g)
    rest = info.value.remaining
    assert rest.V == {2, 3, 4}
    assert all(has_incoming_edges(rest, v) for v in rest.V)


def test_topsort_rejects_self_loop():
    with pytest.raises(CycleDetected):
        topsort(DiGraph.of({1}, {(1, 1)}))


def test_topsort_invalid_graph_precondition():
    with using(ContractMode.ASSERT):
        with pytest.raises(ContractViolation, match="validGraph"):
            topsort(DiGraph(frozenset({1}), frozenset({(1, 2)})))


@given(st.integers(0, 10**6))
def test_kahn_output_is_topological(seed):
    rng = random.Random(seed)
    g = random_dag(rng, rng.randint(0, 10))
    assert is_top_sorting(topsort(g), g)
    assert oracles.is_topological_order(topsort(g), g)


def test_is_acyclic_examples():
    assert is_acyclic(CHAIN)
    assert not is_acyclic(DiGraph.of({1, 2}, {(1, 2), (2, 1)}))
    assert not is_acyclic(DiGraph.of({1}, {(1, 1)}))


@given(st.integers(0, 10**6))
def test_zero_indegree_exists_in_acyclic_graphs(seed):
    rng = random.Random(seed)
    g = random_digraph(rng, rng.randint(1, 7), p=0.2) if rng.random() < 0.5 else random_dag(rng, rng.randint(1, 7))
    if is_acyclic(g):
        assert any(not has_incoming_edges(g, v) for v in g.V)


@given(st.integers(0, 10**6))
def test_subgraph_of_acyclic_is_acyclic(seed):
    rng = random.Random(seed)
    g = random_dag(rng, rng.randint(1, 8))
    assert is_acyclic(g)
    for v in g.V:
        assert is_acyclic(remove_vertex(v, g))


def test_random_dag_generator_is_acyclic_by_definition():
    for case in range(100):
        g = random_dag(case_rng(4, case), 6)
        assert len(g.E) <= oracles.MAX_PATH_EDGES and oracles.acyclic_by_definition(g)


# -- Euler circuits ------------------------------------------------------------


def test_euler_fixtures():
    c = [1, 2, 3, 4, 5, 3, 1]
    assert has_even_degrees(EULER_GRAPH) and is_connected(EULER_GRAPH)
    assert is_euler_circuit(c, EULER_GRAPH)
    assert is_euler_trail([3, 2, 1, 3, 4, 5], TRAIL_GRAPH)
    r = find_euler_circuit(EULER_GRAPH)
    assert is_euler_circuit(r, EULER_GRAPH)
    assert r == c


def test_euler_small_cases():
    assert is_euler_circuit([7], {7: frozenset()})
    assert find_euler_circuit({7: frozenset()}) == [7]
    assert not is_euler_circuit([1, 2, 3], TRIANGLE)
    assert is_euler_trail([1, 2, 3, 1], TRIANGLE)
    assert not is_euler_trail([1, 2, 1, 2], ugraph([(1, 2)]))
    r = find_euler_circuit(TRIANGLE)
    assert len(r) == 4 and r[0] == r[-1] == 1


def test_connectivity_and_degrees():
    assert is_connected({})
    assert not is_connected(ugraph([], [1, 2]))
    assert has_even_degrees(ugraph([], [1]))
    assert not has_even_degrees(ugraph([(1, 2)]))


def test_euler_preconditions():
    with using(ContractMode.ASSERT):
        with pytest.raises(ContractViolation, match="evenDegrees"):
            find_euler_circuit(ugraph([(1, 2)]))
        with pytest.raises(ContractViolation, match="connected"):
            find_euler_circuit(ugraph([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]))
        with pytest.raises(ContractViolation, match="nonempty"):
            find_euler_circuit({})


@given(st.integers(0, 10**6))
def test_euler_output_check(seed):
    rng = random.Random(seed)
    g = random_eulerian_graph(rng, rng.randint(1, 7), circuits=rng.randint(1, 3))
    assert has_even_degrees(g) and is_connected(g)
    assert is_euler_circuit(find_euler_circuit(g), g)


@given(st.integers(0, 10**6))
def test_dfs_returns_to_start_and_leaves_even_degrees(seed):
    rng = random.Random(seed)
    g = random_eulerian_graph(rng, rng.randint(3, 7), circuits=rng.randint(1, 3))
    v = rng.choice(sorted(g))
    r, rest = dfs(v, g)
    assert r[0] == r[-1] == v
    assert has_even_degrees(rest) and not rest[v]
    walked = {frozenset(p) for p in zip(r, r[1:])}
    assert edges_of(rest) == edges_of(g) - walked


def _random_trail(rng, g):
    """Random Euler trail of ``g`` found by exhaustive search, or None."""
    edges = edges_of(g)
    starts = sorted(g)
    rng.shuffle(starts)
    for s in starts:
        for perm in itertools.islice(itertools.permutations(sorted(edges, key=sorted)), 200):
            walk, ok = [s], True
            for e in perm:
                if walk[-1] not in e:
                    ok = False
                    break
                (other,) = e - {walk[-1]}
                walk.append(other)
            if ok:
                return walk
    return None


def test_euler_trail_degree_parity():
    checked = 0
    for case in range(300):
        rng = case_rng(8, case)
        n = rng.randint(2, 5)
        pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
        g = ugraph([p for p in pairs if rng.random() < 0.5], range(1, n + 1))
        g = {v: ns for v, ns in g.items() if ns} or {1: frozenset()}
        if len(edges_of(g)) > 5:
            continue
        t = _random_trail(rng, g)
        if t is not None:
            assert is_euler_trail(t, g)
            assert euler_trail_degrees(g, t)
            checked += 1
    assert checked >= 100
