"""Text formats read and written by the command-line tool.

Graph files::

    D            # or U for undirected
    v 4          # isolated vertex
    e 1 2        # edge

Matching files have ``[proposers]`` and ``[responders]`` sections with
lines ``id: p1 p2 ...``.  Placement files use ``[vacancies]``,
``[teachers]`` (one ranked line), ``[preferences]`` and ``[initial]``
(``teacher vacancy`` pairs).  Matchings are written one ``p -> r`` per line.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .graphs import DiGraph, ugraph
from .matching import PlacementInstance

__all__ = [
    "ParseError",
    "parse_graph",
    "parse_matching",
    "parse_placement",
    "parse_pairs",
    "parse_sequence",
    "parse_ints",
    "parse_rational",
    "format_pairs",
    "format_sequence",
]

Graph = Union[DiGraph, dict]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _lines(text: str) -> Iterator[tuple[int, str]]:
    """Nonblank lines with comments stripped, numbered from 1."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int | None = None) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no) from None


def parse_ints(text: str) -> list[int]:
    return [_int(tok, no) for no, line in _lines(text) for tok in line.split()]


def parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, got {tok!r}") from None


def parse_graph(text: str) -> Graph:
    """Return a :class:`DiGraph` for ``D`` files and an adjacency map for ``U``."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    no, kind = lines[0]
    if kind not in ("D", "U"):
        raise ParseError(f"first line must be D or U, got {kind!r}", no)
    vertices: list[int] = []
    edges: list[tuple[int, int]] = []
    seen: set = set()
    for no, line in lines[1:]:
        tag, *rest = line.split()
        if tag == "v" and len(rest) == 1:
            vertices.append(_int(rest[0], no))
        elif tag == "e" and len(rest) == 2:
            a, b = _int(rest[0], no), _int(rest[1], no)
            if kind == "U":
                if a == b:
                    raise ParseError(f"self-loop {a} in undirected graph", no)
                key: object = frozenset((a, b))
            else:
                key = (a, b)
            if key in seen:
                raise ParseError(f"edge {a} {b} listed twice", no)
            seen.add(key)
            edges.append((a, b))
        else:
            raise ParseError(f"expected 'v <id>' or 'e <id> <id>', got {line!r}", no)
    if kind == "D":
        return DiGraph.of([*vertices, *(x for e in edges for x in e)], edges)
    return ugraph(edges, vertices)


def _sections(text: str, allowed: Iterable[str]) -> dict[str, list[tuple[int, str]]]:
    allowed = set(allowed)
    out: dict[str, list[tuple[int, str]]] = {}
    name = None
    for no, line in _lines(text):
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in allowed:
                raise ParseError(f"unknown section [{name}]", no)
            if name in out:
                raise ParseError(f"section [{name}] repeated", no)
            out[name] = []
        elif name is None:
            raise ParseError("content before the first section header", no)
        else:
            out[name].append((no, line))
    return out


def _pref_table(lines: list[tuple[int, str]]) -> dict[int, list[int]]:
    table: dict[int, list[int]] = {}
    for no, line in lines:
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'id: p1 p2 ...', got {line!r}", no)
        agent = _int(head.strip(), no)
        if agent in table:
            raise ParseError(f"agent {agent} listed twice", no)
        table[agent] = [_int(tok, no) for tok in tail.split()]
    return table


def parse_matching(text: str) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
    sec = _sections(text, ("proposers", "responders"))
    for name in ("proposers", "responders"):
        if name not in sec:
            raise ParseError(f"missing section [{name}]")
    return _pref_table(sec["proposers"]), _pref_table(sec["responders"])


def parse_placement(text: str) -> PlacementInstance:
    sec = _sections(text, ("vacancies", "teachers", "preferences", "initial"))
    for name in ("vacancies", "teachers", "preferences"):
        if name not in sec:
            raise ParseError(f"missing section [{name}]")
    vacancies = [_int(tok, no) for no, line in sec["vacancies"] for tok in line.split()]
    if len(sec["teachers"]) > 1:
        raise ParseError("[teachers] must be a single ranked line", sec["teachers"][1][0])
    teachers = [_int(tok, no) for no, line in sec["teachers"] for tok in line.split()]
    initial: dict[int, int] = {}
    for no, line in sec.get("initial", []):
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"expected 'teacher vacancy', got {line!r}", no)
        t, v = _int(toks[0], no), _int(toks[1], no)
        if t in initial:
            raise ParseError(f"teacher {t} initially placed twice", no)
        initial[t] = v
    return PlacementInstance.build(vacancies, teachers, _pref_table(sec["preferences"]), initial)


def parse_pairs(text: str) -> dict[int, int]:
    pairs: dict[int, int] = {}
    for no, line in _lines(text):
        left, sep, right = line.partition("->")
        if not sep:
            raise ParseError(f"expected 'p -> r', got {line!r}", no)
        p, r = _int(left.strip(), no), _int(right.strip(), no)
        if p in pairs:
            raise ParseError(f"{p} assigned twice", no)
        pairs[p] = r
    return pairs


def parse_sequence(text: str) -> list[int]:
    """The first nonblank line as a vertex sequence."""
    for no, line in _lines(text):
        return [_int(tok, no) for tok in line.split()]
    raise ParseError("empty solution file")


def format_pairs(m: Mapping[int, int]) -> str:
    return "\n".join(f"{p} -> {m[p]}" for p in sorted(m))


def format_sequence(s: Iterable[object]) -> str:
    return " ".join(map(str, s))
