"""Brute-force reference answers for small instances.

Nothing here shares code with the solvers it is used to check.  Each
oracle refuses inputs above its size bound with :class:`SizeExceeded`.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence

from .graphs.digraph import DiGraph
from .graphs.euler import UGraph

__all__ = [
    "SizeExceeded",
    "Verdict",
    "OracleReport",
    "exists_simple_path",
    "acyclic_by_definition",
    "is_topological_order",
    "all_topological_orders",
    "valid_matching",
    "blocking_pair_exists",
    "all_stable_matchings",
    "all_stable_placements",
    "closed_euler_walk",
    "exhaustive_euler_circuit",
    "reference_model_step",
    "MAX_PATH_EDGES",
    "MAX_TOPO_VERTICES",
    "MAX_MATCHING_SIDE",
    "MAX_EULER_EDGES",
]

MAX_PATH_EDGES = 20
MAX_TOPO_VERTICES = 8
MAX_MATCHING_SIDE = 4
MAX_EULER_EDGES = 8


class SizeExceeded(ValueError):
    pass


class Verdict(enum.Enum):
    AGREE = "Agree"
    DISAGREE = "Disagree"


@dataclass(frozen=True)
class OracleReport:
    instance: str
    expected: Any
    actual: Any
    verdict: Verdict

    @classmethod
    def compare(cls, instance: str, expected: Any, actual: Any, *, accepted: Optional[Iterable[Any]] = None) -> "OracleReport":
        """``Agree`` iff ``actual == expected``, or ``actual`` is in ``accepted``."""
        if accepted is not None:
            ok = any(actual == a for a in accepted)
        else:
            ok = actual == expected
        return cls(instance, expected, actual, Verdict.AGREE if ok else Verdict.DISAGREE)

    @property
    def agrees(self) -> bool:
        return self.verdict is Verdict.AGREE

    def render(self) -> str:
        return (
            f"instance: {self.instance}\n"
            f"expected: {self.expected!r}\n"
            f"actual:   {self.actual!r}\n"
            f"verdict:  {self.verdict.value}"
        )


# -- directed graphs -------------------------------------------------------


def exists_simple_path(g: DiGraph, u: int, v: int) -> bool:
    """Nonempty path from ``u`` to ``v`` using no edge twice.

    Direct unfolding of the recursive definition: either ``(u, v)`` is an
    edge, or some edge leaves ``u`` and the rest of the path avoids it.
    """
    if len(g.E) > MAX_PATH_EDGES:
        raise SizeExceeded(f"exists_simple_path needs |E| <= {MAX_PATH_EDGES}")
    memo: dict[tuple[int, frozenset], bool] = {}

    def go(a: int, edges: frozenset) -> bool:
        key = (a, edges)
        if key not in memo:
            memo[key] = (a, v) in edges or any(
                e[0] == a and go(e[1], edges - {e}) for e in edges
            )
        return memo[key]

    return go(u, frozenset(g.E))


def acyclic_by_definition(g: DiGraph) -> bool:
    return not any(exists_simple_path(g, v, v) for v in g.V)


def is_topological_order(s: Sequence[int], g: DiGraph) -> bool:
    """Literal check: same multiset as V, and no pair i <= j with edge s[j] -> s[i]."""
    return Counter(s) == Counter(g.V) and not any(
        (s[j], s[i]) in g.E for i in range(len(s)) for j in range(i, len(s))
    )


def all_topological_orders(g: DiGraph) -> set[tuple[int, ...]]:
    if len(g.V) > MAX_TOPO_VERTICES:
        raise SizeExceeded(f"all_topological_orders needs |V| <= {MAX_TOPO_VERTICES}")
    # Permutations built left to right; a prefix is dropped as soon as its
    # newest element has an edge back to itself or to an earlier element.
    found: set[tuple[int, ...]] = set()
    prefix: list[int] = []
    left = set(g.V)

    def extend() -> None:
        if not left:
            found.add(tuple(prefix))
            return
        for x in sorted(left):
            if (x, x) in g.E or any((x, y) in g.E for y in prefix):
                continue
            prefix.append(x)
            left.discard(x)
            extend()
            left.add(x)
            prefix.pop()

    extend()
    return found


# -- stable matching -------------------------------------------------------


Prefs = Mapping[int, Sequence[int]]


def _ranks(prefs: Prefs) -> dict[int, dict[int, int]]:
    return {a: {b: k for k, b in enumerate(bs)} for a, bs in prefs.items()}


def valid_matching(match: Mapping[int, int], men: Prefs, women: Prefs) -> bool:
    """Injective and every pair mutually listed."""
    if len(set(match.values())) != len(match):
        return False
    return all(m in men and w in women and w in men[m] and m in women[w] for m, w in match.items())


def blocking_pair_exists(match: Mapping[int, int], men: Prefs, women: Prefs) -> bool:
    """Scan every mutually acceptable pair for one that both sides prefer."""
    rank_m, rank_w = _ranks(men), _ranks(women)
    husband = {w: m for m, w in match.items()}
    for m, ws in men.items():
        for w in ws:
            if m not in rank_w.get(w, {}):
                continue
            cur_w = match.get(m)
            if cur_w is not None and rank_m[m][cur_w] <= rank_m[m][w]:
                continue
            cur_m = husband.get(w)
            if cur_m is not None and rank_w[w][cur_m] <= rank_w[w][m]:
                continue
            return True
    return False


def _partial_injections(options: Mapping[int, Sequence[int]]) -> Iterable[dict[int, int]]:
    """Every injective partial map sending each key to one of its options."""
    order = sorted(options)
    match: dict[int, int] = {}
    taken: set[int] = set()

    def extend(k: int) -> Iterable[dict[int, int]]:
        if k == len(order):
            yield dict(match)
            return
        a = order[k]
        yield from extend(k + 1)
        for b in options[a]:
            if b not in taken:
                match[a] = b
                taken.add(b)
                yield from extend(k + 1)
                del match[a]
                taken.discard(b)

    return extend(0)


def all_stable_matchings(men: Prefs, women: Prefs) -> list[dict[int, int]]:
    """Every injective, mutually-acceptable partial matching with no blocking pair."""
    if len(men) > MAX_MATCHING_SIDE or len(women) > MAX_MATCHING_SIDE:
        raise SizeExceeded(f"all_stable_matchings needs at most {MAX_MATCHING_SIDE} agents per side")
    acceptable = {m: [w for w in ws if m in women.get(w, ())] for m, ws in men.items()}
    return [
        match for match in _partial_injections(acceptable) if not blocking_pair_exists(match, men, women)
    ]


def all_stable_placements(
    vacancies: Iterable[int],
    teachers: Sequence[int],
    preferences: Prefs,
    initial: Mapping[int, int],
) -> list[dict[int, int]]:
    """Placements with no teacher/vacancy pair that would both rather switch.

    A vacancy ranks its initial holder first and everybody else by the
    teacher ranking; an empty vacancy takes anyone.  Incumbents must end
    up placed.
    """
    if len(teachers) > MAX_MATCHING_SIDE or len(set(vacancies)) > MAX_MATCHING_SIDE:
        raise SizeExceeded(f"all_stable_placements needs at most {MAX_MATCHING_SIDE} teachers and vacancies")
    rank = {t: k for k, t in enumerate(teachers)}
    incumbent = {v: t for t, v in initial.items()}

    def vacancy_prefers(v: int, t: int, holder: Optional[int]) -> bool:
        if holder is None:
            return True
        if holder == t:
            return False
        if incumbent.get(v) == t:
            return True
        if incumbent.get(v) == holder:
            return False
        return rank[t] < rank[holder]

    found = []
    for placement in _partial_injections({t: list(preferences[t]) for t in teachers}):
        if any(t not in placement for t in initial):
            continue
        holder = {v: t for t, v in placement.items()}
        blocked = False
        for t in teachers:
            vs = list(preferences[t])
            for v in vs:
                if t in placement and vs.index(v) >= vs.index(placement[t]):
                    continue
                if vacancy_prefers(v, t, holder.get(v)):
                    blocked = True
                    break
            if blocked:
                break
        if not blocked:
            found.append(placement)
    return found


# -- Euler circuits --------------------------------------------------------


def closed_euler_walk(s: Sequence[int], g: UGraph) -> bool:
    """``s`` is closed, steps only along edges, and walks each edge exactly once."""
    if not s or s[0] != s[-1]:
        return False
    walked = Counter(frozenset((s[i - 1], s[i])) for i in range(1, len(s)))
    edges = Counter(frozenset((v, w)) for v in g for w in g[v] if v < w)
    return all(x in g for x in s) and walked == edges


def exhaustive_euler_circuit(g: UGraph) -> Optional[list[int]]:
    """Some Euler circuit of ``g`` found by backtracking, or ``None``."""
    edges = {frozenset((v, w)) for v in g for w in g[v]}
    if len(edges) > MAX_EULER_EDGES:
        raise SizeExceeded(f"exhaustive_euler_circuit needs at most {MAX_EULER_EDGES} edges")
    if not g:
        return None
    if not edges:
        return [min(g)]
    start = min(v for v in g if g[v])
    path = [start]
    used: set[frozenset] = set()

    def search() -> bool:
        if len(used) == len(edges):
            return path[-1] == start
        here = path[-1]
        for w in sorted(g[here]):
            e = frozenset((here, w))
            if e in used:
                continue
            used.add(e)
            path.append(w)
            if search():
                return True
            path.pop()
            used.discard(e)
        return False

    return list(path) if search() else None


# -- container reference models --------------------------------------------


def reference_model_step(kind: str, command: Sequence[Any], state: Any) -> tuple[Any, Any]:
    """Apply one command to an immutable reference model.

    ``kind`` is ``heap`` (state: :class:`collections.Counter`),
    ``hashset`` or ``treeset`` (state: frozenset).  Returns the new state
    and the value the real container should report.
    """
    op, *args = command
    if kind == "heap":
        bag = Counter(state)
        if op == "insert":
            bag[args[0]] += 1
            return bag, None
        if op in ("delete_max", "get_max"):
            top = max(bag.elements())
            if op == "delete_max":
                bag[top] -= 1
                bag += Counter()  # drop zero counts
            return bag, top
        if op == "size":
            return bag, sum(bag.values())
    elif kind in ("hashset", "treeset"):
        s = frozenset(state)
        if op == "insert":
            return s | {args[0]}, None
        if op == "delete":
            return s - {args[0]}, None
        if op == "contains":
            return s, args[0] in s
        if op == "size":
            return s, len(s)
        if kind == "treeset":
            if op == "min":
                return s, min(s)
            if op == "max":
                return s, max(s)
            if op == "as_seq":
                return s, sorted(s)
    raise ValueError(f"unknown command {command!r} for {kind}")
