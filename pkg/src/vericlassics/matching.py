"""Gale-Shapley stable matching with incomplete lists, and teacher placement.

Agents are natural numbers.  A preference table maps each agent to a
duplicate-free list of acceptable counterparts, most preferred first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, Mapping, Optional, Sequence

from . import faults
from .contracts import current, operation

__all__ = [
    "PrefTable",
    "Matching",
    "PlacementInstance",
    "has_duplicates",
    "is_injective",
    "precedes",
    "is_valid",
    "unstable",
    "is_stable",
    "blocking_pairs",
    "matching_problems",
    "stable_matching",
    "move_to_head",
    "vacancies_prefs",
    "teacher_has_precedence",
    "placement_problems",
    "placement_blocking_pairs",
    "teachers_placement",
]

PrefTable = Mapping[int, Sequence[int]]
Matching = Dict[int, int]


def has_duplicates(s: Sequence[Hashable]) -> bool:
    return len(set(s)) != len(s)


def is_injective(m: Mapping[int, int]) -> bool:
    return len(set(m.values())) == len(m)


def precedes(e1: Hashable, e2: Hashable, s: Sequence[Hashable]) -> bool:
    """True iff some occurrence of ``e1`` comes strictly before some ``e2``."""
    try:
        first = list(s).index(e1)
    except ValueError:
        return False
    return e2 in s[first + 1 :]


def is_valid(couples: Mapping[int, int], men: PrefTable, women: PrefTable) -> bool:
    """Injective, and every couple appears in both partners' lists."""
    if not is_injective(couples):
        return False
    for m, w in couples.items():
        if m not in men or w not in women:
            return False
        if w not in men[m] or m not in women[w]:
            return False
    return True


def unstable(m: int, w: int, couples: Mapping[int, int], men: PrefTable, women: PrefTable) -> bool:
    """``(m, w)`` is a blocking pair: each prefers the other to the status quo."""
    if w not in men[m] or m not in women[w]:
        return False
    if m in couples and not precedes(w, couples[m], men[m]):
        return False
    return all(precedes(m, m2, women[w]) for m2, w2 in couples.items() if w2 == w)


def blocking_pairs(couples: Mapping[int, int], men: PrefTable, women: PrefTable) -> list[tuple[int, int]]:
    return [
        (m, w)
        for m in sorted(men)
        for w in sorted(women)
        if unstable(m, w, couples, men, women)
    ]


def is_stable(couples: Mapping[int, int], men: PrefTable, women: PrefTable) -> bool:
    return not any(unstable(m, w, couples, men, women) for m in men for w in women)


def matching_problems(men: PrefTable, women: PrefTable) -> list[str]:
    """Names of the input requirements the two tables violate."""
    problems = []
    if any(w not in women for ws in men.values() for w in ws):
        problems.append("P1")
    if any(m not in men for ms in women.values() for m in ms):
        problems.append("P2")
    if any(has_duplicates(s) for s in (*men.values(), *women.values())):
        problems.append("useq")
    return problems


@operation("matching.stable_matching")
def stable_matching(men: PrefTable, women: PrefTable) -> Matching:
    """Men-proposing Gale-Shapley.

    The free man with the lowest id who still has someone to propose to
    goes next.  A woman only accepts men on her own list.
    """
    ctx = current()
    ctx.check_pre("P1", lambda: all(w in women for ws in men.values() for w in ws))
    ctx.check_pre("P2", lambda: all(m in men for ms in women.values() for m in ms))
    ctx.check_pre("useq", lambda: not any(has_duplicates(s) for s in (*men.values(), *women.values())))

    couples: Matching = {}
    fiance: dict[int, int] = {}  # woman -> man
    explored: dict[int, list[int]] = {m: [] for m in men}
    bound = sum(len(ws) for ws in men.values())
    steps = 0
    order = sorted(men)

    while True:
        m = next(
            (m for m in order if m not in couples and len(explored[m]) < len(men[m])),
            None,
        )
        if m is None:
            break
        steps += 1
        ctx.check_invariant("termination bound", lambda: steps <= bound)

        w = men[m][len(explored[m])]
        rival = fiance.get(w)
        if rival is not None:
            if m in women[w] and precedes(m, rival, women[w]):
                if not faults.enabled("gs-skip-reject"):
                    del couples[rival]
                couples[m] = w
                fiance[w] = m
        elif m in women[w]:
            couples[m] = w
            fiance[w] = m
        explored[m].append(w)

        if ctx.active:
            ctx.check_invariant("I1", lambda: explored.keys() == men.keys())
            ctx.check_invariant(
                "I2", lambda: all(list(men[k][: len(e)]) == e for k, e in explored.items())
            )
            ctx.check_invariant("I3", lambda: is_valid(couples, explored, women))
            ctx.check_invariant("I4", lambda: is_stable(couples, explored, women))
            ctx.check_invariant("I5", lambda: all(couples[k] == explored[k][-1] for k in couples))

    ctx.check_post("Q1 isValid", lambda: is_valid(couples, men, women))
    ctx.check_post("Q2 isStable", lambda: is_stable(couples, men, women))
    return couples


# -- teacher placement -----------------------------------------------------


@dataclass(frozen=True)
class PlacementInstance:
    """Vacancies, teachers ranked best first, their wish lists, and who
    currently holds which vacancy."""

    vacancies: frozenset[int]
    teachers: tuple[int, ...]
    preferences: Mapping[int, Sequence[int]] = field(default_factory=dict)
    initial: Mapping[int, int] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        vacancies: Iterable[int],
        teachers: Iterable[int],
        preferences: Mapping[int, Sequence[int]],
        initial: Optional[Mapping[int, int]] = None,
    ) -> "PlacementInstance":
        return cls(
            frozenset(vacancies),
            tuple(teachers),
            {t: tuple(vs) for t, vs in preferences.items()},
            dict(initial or {}),
        )


@operation("matching.move_to_head")
def move_to_head(s: Sequence[int], x: int) -> list[int]:
    ctx = current()
    ctx.check_pre("x in s", lambda: x in s)
    i = list(s).index(x)
    return [s[i], *s[:i], *s[i + 1 :]]


@operation("matching.vacancies_prefs")
def vacancies_prefs(inst: PlacementInstance) -> dict[int, list[int]]:
    """Each vacancy ranks teachers by rank, with its incumbent (if any) first."""
    holder = {v: t for t, v in inst.initial.items()}
    return {
        v: move_to_head(inst.teachers, holder[v]) if v in holder else list(inst.teachers)
        for v in sorted(inst.vacancies)
    }


def teacher_has_precedence(
    t: int,
    v: int,
    final: Mapping[int, int],
    teachers: Sequence[int],
    initial: Mapping[int, int],
) -> bool:
    """Would vacancy ``v`` take ``t`` over whoever holds it in ``final``?"""
    holder = next((t2 for t2, v2 in final.items() if v2 == v), None)
    if holder is None:
        return True
    return t != holder and (
        initial.get(t) == v or (initial.get(holder) != v and precedes(t, holder, teachers))
    )


def placement_problems(inst: PlacementInstance) -> list[str]:
    """Names of the input requirements ``inst`` violates."""
    problems = []
    teachers, prefs, initial = inst.teachers, inst.preferences, inst.initial
    if has_duplicates(teachers) or any(has_duplicates(vs) for vs in prefs.values()):
        problems.append("useq")
    if set(teachers) != set(prefs):
        problems.append("P1")
    if any(v not in inst.vacancies for vs in prefs.values() for v in vs):
        problems.append("P2")
    if any(t not in teachers or v not in inst.vacancies for t, v in initial.items()) or not is_injective(initial):
        problems.append("P3")
    if any(t not in prefs or not prefs[t] or prefs[t][-1] != v for t, v in initial.items()):
        problems.append("P4")
    return problems


def placement_blocking_pairs(inst: PlacementInstance, final: Mapping[int, int]) -> list[tuple[int, int]]:
    """Teacher/vacancy pairs that would both rather be together."""
    pairs = []
    for t in inst.teachers:
        for v in inst.preferences.get(t, ()):
            wants = t not in final or precedes(v, final[t], inst.preferences[t])
            if wants and teacher_has_precedence(t, v, final, inst.teachers, inst.initial):
                pairs.append((t, v))
    return pairs


@operation("matching.teachers_placement")
def teachers_placement(inst: PlacementInstance) -> Matching:
    """Place teachers by running stable matching with teachers proposing."""
    ctx = current()
    if ctx.active:
        problems = placement_problems(inst)
        for clause in ("useq", "P1", "P2", "P3", "P4"):
            ctx.check_pre(clause, clause not in problems)
    final = stable_matching(inst.preferences, vacancies_prefs(inst))
    teachers = set(inst.teachers)
    ctx.check_post("Q1", lambda: set(final) <= teachers)
    ctx.check_post("Q2", lambda: all(final[t] in inst.preferences[t] for t in final))
    ctx.check_post("Q3", lambda: not placement_blocking_pairs(inst, final))
    ctx.check_post("Q4", lambda: all(t in final for t in inst.initial))
    return final
