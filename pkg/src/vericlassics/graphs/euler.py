"""Undirected graphs as adjacency maps, Euler trail/circuit predicates and
Hierholzer's construction."""

from __future__ import annotations

from typing import AbstractSet, Dict, FrozenSet, Iterable, Mapping, Sequence

from .. import faults
from ..contracts import current, operation

__all__ = [
    "UGraph",
    "ugraph",
    "defines_valid_graph",
    "edges_of",
    "rmv_edge",
    "has_even_degrees",
    "is_connected",
    "is_valid_walk",
    "is_valid_trail",
    "is_valid_circuit",
    "traverses_edge",
    "is_euler_circuit",
    "is_euler_trail",
    "euler_trail_degrees",
    "dfs",
    "find_euler_circuit",
]

UGraph = Mapping[int, AbstractSet[int]]


def ugraph(edges: Iterable[tuple[int, int]] = (), vertices: Iterable[int] = ()) -> Dict[int, FrozenSet[int]]:
    """Build a symmetric adjacency map from an edge list."""
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return {v: frozenset(ns) for v, ns in adj.items()}


def defines_valid_graph(g: UGraph) -> bool:
    """Anti-reflexive and symmetric, with every neighbour a key."""
    return all(w != v and w in g and v in g[w] for v in g for w in g[v])


def edges_of(g: UGraph) -> set[frozenset[int]]:
    return {frozenset((v, w)) for v in g for w in g[v]}


def rmv_edge(u: int, v: int, g: UGraph) -> Dict[int, FrozenSet[int]]:
    return {
        x: frozenset(g[x] - {v}) if x == u else frozenset(g[x] - {u}) if x == v else frozenset(g[x])
        for x in g
    }


def has_even_degrees(g: UGraph) -> bool:
    return all(len(g[v]) % 2 == 0 for v in g)


def is_connected(g: UGraph) -> bool:
    if not g:
        return True
    start = next(iter(g))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g)


def traverses_edge(s: Sequence[int], u: int, v: int) -> bool:
    target = {u, v}
    return any({s[i - 1], s[i]} == target for i in range(1, len(s)))


def is_valid_walk(s: Sequence[int], g: UGraph) -> bool:
    return all(x in g for x in s) and all(s[i + 1] in g[s[i]] for i in range(len(s) - 1))


def is_valid_trail(s: Sequence[int], g: UGraph) -> bool:
    if not is_valid_walk(s, g):
        return False
    seen: set[frozenset[int]] = set()
    for i in range(1, len(s)):
        e = frozenset((s[i - 1], s[i]))
        if e in seen:
            return False
        seen.add(e)
    return True


def is_valid_circuit(s: Sequence[int], g: UGraph) -> bool:
    return len(s) > 0 and s[-1] == s[0] and is_valid_trail(s, g)


def _covers_all_edges(s: Sequence[int], g: UGraph) -> bool:
    walked = {frozenset((s[i - 1], s[i])) for i in range(1, len(s))}
    return edges_of(g) <= walked


def is_euler_circuit(s: Sequence[int], g: UGraph) -> bool:
    return is_valid_circuit(s, g) and _covers_all_edges(s, g)


def is_euler_trail(s: Sequence[int], g: UGraph) -> bool:
    return len(s) > 0 and is_valid_trail(s, g) and _covers_all_edges(s, g)


def euler_trail_degrees(g: UGraph, r: Sequence[int]) -> bool:
    """Odd-degree vertices are exactly the ends of ``r`` when they differ."""
    first, last = r[0], r[-1]
    return all(((x == first) != (x == last)) == (len(g[x]) % 2 == 1) for x in g)


def _remaining_matches(g: UGraph, r: Sequence[int], rest: UGraph) -> bool:
    walked = {frozenset((r[i - 1], r[i])) for i in range(1, len(r))}
    return edges_of(rest) == edges_of(g) - walked


@operation("graphs.dfs")
def dfs(v: int, g: UGraph) -> tuple[list[int], Dict[int, FrozenSet[int]]]:
    """Walk unused edges from ``v`` (smallest neighbour first) until stuck.

    Returns the closed trail and the graph of edges not walked.  With all
    degrees even the walk can only get stuck back at ``v``.
    """
    ctx = current()
    ctx.check_pre("hasEvenDegrees", lambda: has_even_degrees(g))
    ctx.check_pre("v in G", lambda: v in g)
    rest: dict[int, set[int]] = {x: set(ns) for x, ns in g.items()}
    r = [v]
    u = v
    budget = len(edges_of(g)) if ctx.active else 0
    while rest[u]:
        w = min(rest[u])
        r.append(w)
        rest[u].discard(w)
        rest[w].discard(u)
        u = w
        if ctx.active:
            budget -= 1
            ctx.check_invariant("edges remaining >= 0", budget >= 0)
            ctx.check_invariant("isValidTrail", lambda: is_valid_trail(r, g))
    remaining = {x: frozenset(ns) for x, ns in rest.items()}
    ctx.check_assert("u==v", u == v)
    ctx.check_post("isValidCircuit", lambda: is_valid_circuit(r, g) and r[0] == v)
    ctx.check_post("hasEvenDegrees(R)", lambda: has_even_degrees(remaining))
    ctx.check_post("R == G - edges(r)", lambda: _remaining_matches(g, r, remaining))
    ctx.check_post("R[v]=={}", not remaining[v])
    return r, remaining


@operation("graphs.find_euler_circuit")
def find_euler_circuit(g: UGraph) -> list[int]:
    """Hierholzer: a closed walk from the smallest vertex, then subcircuits
    spliced in at the first vertex that still has unused edges."""
    ctx = current()
    ctx.check_pre("validGraph", lambda: defines_valid_graph(g))
    ctx.check_pre("nonempty", len(g) > 0)
    ctx.check_pre("connected", lambda: is_connected(g))
    ctx.check_pre("evenDegrees", lambda: has_even_degrees(g))
    if not g:
        raise ValueError("graph has no vertices")
    start = min(g)
    r, rest = dfs(start, g)
    splices = 0
    max_splices = len(g)
    while True:
        i = next((k for k, x in enumerate(r) if rest[x]), None)
        if i is None:
            break
        splices += 1
        ctx.check_invariant("splices<=|V|", splices <= max_splices)
        if ctx.active:
            ctx.check_invariant("isValidCircuit(r)", lambda: is_valid_circuit(r, g) and r[0] == start)
            ctx.check_invariant("hasEvenDegrees(R)", lambda: has_even_degrees(rest))
            ctx.check_invariant("R == G - edges(r)", lambda: _remaining_matches(g, r, rest))
        c, rest = dfs(r[i], rest)
        if faults.enabled("euler-splice-off-by-one"):
            r = r[:i] + c + r[i:]
        else:
            r = r[:i] + c + r[i + 1 :]
    ctx.check_post("isEulerCircuit", lambda: is_euler_circuit(r, g))
    return r
