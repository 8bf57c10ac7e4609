"""The worked examples for every algorithm, as runnable fixture groups.

Each group raises :class:`FixtureFailure` (or lets a
:class:`~vericlassics.contracts.ContractViolation` escape) when an
expected value is not reproduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from .collections import BstSet, MaxHeap, OpenHashSet
from .contracts import ContractViolation
from .graphs import DiGraph, find_euler_circuit, is_euler_circuit, is_euler_trail, is_top_sorting, topsort, ugraph
from .matching import PlacementInstance, is_stable, move_to_head, stable_matching, teachers_placement, vacancies_prefs
from .numerics import div, power_dc
from .search_sort import binary_search, insertion_sort

__all__ = ["FixtureFailure", "FixtureResult", "FIXTURES", "run_fixtures", "EULER_GRAPH", "TRAIL_GRAPH"]


class FixtureFailure(AssertionError):
    pass


def _expect(what: str, actual: Any, expected: Any) -> None:
    if actual != expected:
        raise FixtureFailure(f"{what}: expected {expected!r}, got {actual!r}")


def _expect_in(what: str, actual: Any, accepted: Iterable[Any]) -> None:
    accepted = list(accepted)
    if actual not in accepted:
        raise FixtureFailure(f"{what}: expected one of {accepted!r}, got {actual!r}")


EULER_GRAPH = ugraph([(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)])
TRAIL_GRAPH = ugraph([(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])


def division() -> None:
    _expect("div(15, 6)", div(15, 6), (2, 3))


def power() -> None:
    for x, n, want in [(2, 5, 32), (-2, 2, 4), (-2, 1, -2), (-2, 0, 1), (0, 0, 1)]:
        _expect(f"powerDC({x}, {n})", power_dc(x, n), want)


def binary_search_group() -> None:
    a = [1, 4, 4, 6, 8]
    _expect("binarySearch(a, 6)", binary_search(a, 6), 3)
    _expect("binarySearch(a, 3)", binary_search(a, 3), None)
    _expect_in("binarySearch(a, 4)", binary_search(a, 4), {1, 2})


def insertion_sort_group() -> None:
    a = [9, 4, 6, 3, 8]
    insertion_sort(a)
    _expect("sort [9,4,6,3,8]", a, [3, 4, 6, 8, 9])
    b = [9, 3, 6, 9]
    insertion_sort(b)
    _expect("sort [9,3,6,9]", b, [3, 6, 9, 9])


def priority_queue() -> None:
    h = MaxHeap()
    _expect("isEmpty()", h.is_empty(), True)
    for x in (2, 5, 1, 1):
        h.insert(x)
    for want in (5, 2, 1, 1):
        _expect("deleteMax()", h.delete_max(), want)
    _expect("isEmpty()", h.is_empty(), True)


def hash_set() -> None:
    h = OpenHashSet(hash=len)
    _expect("elems", h.elems(), set())
    h.insert("Hello")
    _expect("elems", h.elems(), {"Hello"})
    h.insert("World")
    _expect("elems", h.elems(), {"Hello", "World"})
    _expect('contains("Hello")', h.contains("Hello"), True)
    _expect('contains("ANSI")', h.contains("ANSI"), False)
    h.delete("Hello")
    _expect("elems", h.elems(), {"World"})
    _expect('contains("Hello")', h.contains("Hello"), False)


def tree_set() -> None:
    s = BstSet()
    for x in (2, 5, 1, 4, 4):
        s.insert(x)
    _expect("asSeq()", s.as_sorted_seq(), [1, 2, 4, 5])
    _expect("min()", s.min(), 1)
    _expect("max()", s.max(), 5)
    s.delete(5)
    _expect("elems after delete(5)", s.elems(), {1, 2, 4})


def stable_marriage() -> None:
    men = {1: [1, 2], 2: [1, 2]}
    women = {1: [1], 2: [2]}
    _expect("stableMatching test 1", stable_matching(men, women), {1: 1, 2: 2})

    men = {1: [2, 1], 2: [1, 2]}
    women = {1: [1, 2], 2: [2, 1]}
    got = stable_matching(men, women)
    _expect_in("stableMatching test 2", got, [{1: 2, 2: 1}, {1: 1, 2: 2}])
    _expect("stableMatching test 2 (lowest-id order)", got, {1: 2, 2: 1})

    men = {1: [1, 2], 2: [1]}
    women = {1: [1, 2], 2: [2, 1]}
    got = stable_matching(men, women)
    _expect_in("stableMatching test 3", got, [{1: 2, 2: 1}, {1: 1}])
    _expect("stableMatching test 3 (lowest-id order)", got, {1: 1})
    _expect("isStable(test 3 result)", is_stable(got, men, women), True)

    _expect("moveToHead([1,2,3], 3)", move_to_head([1, 2, 3], 3), [3, 1, 2])

    tp1 = PlacementInstance.build({1, 2}, [1, 2, 3], {1: [2, 1], 2: [1, 2], 3: [2]}, {1: 1})
    _expect("vacanciesPrefs test1TP", vacancies_prefs(tp1), {1: [1, 2, 3], 2: [1, 2, 3]})
    _expect("teachersPlacement test1TP", teachers_placement(tp1), {1: 2, 2: 1})

    tp2 = PlacementInstance.build({1, 2}, [1, 2, 3], {1: [2, 1], 2: [1, 2], 3: [2, 1]}, {3: 1})
    _expect("vacanciesPrefs test2TP", vacancies_prefs(tp2), {1: [3, 1, 2], 2: [1, 2, 3]})
    _expect("teachersPlacement test2TP", teachers_placement(tp2), {1: 2, 3: 1})


def topological_sort() -> None:
    g = DiGraph.of({1, 2, 3}, {(1, 2), (2, 3)})
    _expect("isTopSorting([1,2,3])", is_top_sorting([1, 2, 3], g), True)
    _expect("topsort single solution", topsort(g), [1, 2, 3])
    g = DiGraph.of({1, 2, 3}, {(1, 2), (1, 3)})
    _expect("isTopSorting([1,2,3])", is_top_sorting([1, 2, 3], g), True)
    _expect("isTopSorting([1,3,2])", is_top_sorting([1, 3, 2], g), True)
    _expect_in("topsort multiple solutions", topsort(g), [[1, 2, 3], [1, 3, 2]])


def euler() -> None:
    c = [1, 2, 3, 4, 5, 3, 1]
    _expect("isEulerCircuit(c, G)", is_euler_circuit(c, EULER_GRAPH), True)
    _expect("isEulerTrail([3,2,1,3,4,5], G)", is_euler_trail([3, 2, 1, 3, 4, 5], TRAIL_GRAPH), True)
    r = find_euler_circuit(EULER_GRAPH)
    _expect("isEulerCircuit(findEulerCircuit(G), G)", is_euler_circuit(r, EULER_GRAPH), True)
    _expect("findEulerCircuit(G)", r, c)


FIXTURES: dict[str, Callable[[], None]] = {
    "division": division,
    "power": power,
    "binary_search": binary_search_group,
    "insertion_sort": insertion_sort_group,
    "priority_queue": priority_queue,
    "hash_set": hash_set,
    "tree_set": tree_set,
    "stable_marriage": stable_marriage,
    "topological_sort": topological_sort,
    "euler": euler,
}


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    detail: Optional[str] = None


def run_fixtures(names: Optional[Iterable[str]] = None) -> list[FixtureResult]:
    """Run fixture groups under the active contract context."""
    results = []
    for name in names or FIXTURES:
        try:
            FIXTURES[name]()
        except ContractViolation as exc:
            results.append(FixtureResult(name, False, f"contract {exc.kind.value} {exc.label!r} violated in {exc.op}"))
        except (FixtureFailure, ValueError, KeyError, IndexError) as exc:
            results.append(FixtureResult(name, False, f"{type(exc).__name__}: {exc}"))
        else:
            results.append(FixtureResult(name, True))
    return results
