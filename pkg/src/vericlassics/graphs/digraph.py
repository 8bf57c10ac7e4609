"""Directed graphs as vertex/edge sets, and Kahn's topological sort."""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..contracts import current, operation

__all__ = [
    "DiGraph",
    "CycleDetected",
    "valid_graph",
    "remove_vertex",
    "has_incoming_edges",
    "is_top_sorting",
    "is_acyclic",
    "topsort",
]

Edge = tuple[int, int]


@dataclass(frozen=True)
class DiGraph:
    V: frozenset[int]
    E: frozenset[Edge]

    @classmethod
    def of(cls, vertices: Iterable[int], edges: Iterable[Edge] = ()) -> "DiGraph":
        edges = frozenset((int(a), int(b)) for a, b in edges)
        return cls(frozenset(vertices), edges)

    def __repr__(self) -> str:
        return f"DiGraph(V={sorted(self.V)}, E={sorted(self.E)})"


class CycleDetected(ValueError):
    """Raised by :func:`topsort` when the graph has a cycle.

    ``remaining`` is the subgraph left when no vertex without incoming
    edges could be found.
    """

    def __init__(self, remaining: DiGraph):
        self.remaining = remaining
        super().__init__(f"graph has a cycle among vertices {sorted(remaining.V)}")


def valid_graph(g: DiGraph) -> bool:
    return all(a in g.V and b in g.V for a, b in g.E)


def remove_vertex(v: int, g: DiGraph) -> DiGraph:
    return DiGraph(g.V - {v}, frozenset(e for e in g.E if v not in e))


def has_incoming_edges(g: DiGraph, v: int) -> bool:
    return any(b == v and a in g.V for a, b in g.E)


def is_top_sorting(s: Sequence[int], g: DiGraph) -> bool:
    """``s`` lists every vertex once and no edge points backwards (or is a loop)."""
    if Counter(s) != Counter(g.V):
        return False
    pos = {v: i for i, v in enumerate(s)}
    return all(pos[a] < pos[b] for a, b in g.E)


def is_acyclic(g: DiGraph) -> bool:
    """Iterative three-colour DFS; a self-loop counts as a cycle."""
    succ: dict[int, list[int]] = {v: [] for v in g.V}
    for a, b in g.E:
        succ[a].append(b)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(g.V, WHITE)
    for root in g.V:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        stack = [(root, iter(succ[root]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                colour[v] = BLACK
                stack.pop()
            elif colour[w] == GREY:
                return False
            elif colour[w] == WHITE:
                colour[w] = GREY
                stack.append((w, iter(succ[w])))
    return True


@operation("graphs.topsort")
def topsort(g: DiGraph) -> list[int]:
    """Kahn's algorithm, always taking the smallest vertex with no incoming edge.

    Raises :class:`CycleDetected` if the graph is not acyclic.
    """
    ctx = current()
    ctx.check_pre("validGraph", lambda: valid_graph(g))
    indegree = dict.fromkeys(g.V, 0)
    succ: dict[int, list[int]] = {v: [] for v in g.V}
    for a, b in g.E:
        indegree[b] += 1
        succ[a].append(b)
    ready = [v for v, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    s: list[int] = []
    placed: set[int] = set()

    def remaining() -> DiGraph:
        return DiGraph(
            frozenset(v for v in g.V if v not in placed),
            frozenset(e for e in g.E if e[0] not in placed and e[1] not in placed),
        )

    while len(s) < len(g.V):
        if ctx.active:
            rest = remaining()
            ctx.check_invariant("multiset(s)==multiset(V-R.V)", lambda: Counter(s) == Counter(g.V - rest.V))
            ctx.check_invariant(
                "no backward edge in s",
                lambda: all((s[j], s[i]) not in g.E for i in range(len(s)) for j in range(i, len(s))),
            )
            ctx.check_invariant(
                "no edge from R into s", lambda: all((v, u) not in g.E for u in s for v in rest.V)
            )
            ctx.check_invariant("iterations<=|V|", lambda: len(s) <= len(g.V))
        if not ready:
            rest = remaining()
            ctx.check_assert(
                "no zero-indegree vertex left",
                lambda: all(has_incoming_edges(rest, v) for v in rest.V),
            )
            raise CycleDetected(rest)
        v = heapq.heappop(ready)
        if ctx.active:
            ctx.check_assert("!hasIncomingEdges(R, v)", lambda: not has_incoming_edges(remaining(), v))
        s.append(v)
        placed.add(v)
        for w in succ[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(ready, w)
    ctx.check_post("isTopSorting", lambda: is_top_sorting(s, g))
    return s
