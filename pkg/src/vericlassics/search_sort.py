"""Binary search over sorted integer sequences and in-place insertion sort."""

from __future__ import annotations

from collections import Counter
from typing import MutableSequence, Optional, Sequence

from .contracts import check_invariant, check_post, check_pre, current, operation, snapshot

__all__ = ["is_sorted", "binary_search", "insertion_sort"]


def is_sorted(s: Sequence[int]) -> bool:
    """True iff ``s`` is nondecreasing."""
    return all(s[i] <= s[i + 1] for i in range(len(s) - 1))


@operation("search_sort.binary_search")
def binary_search(s: Sequence[int], x: int) -> Optional[int]:
    """Index of some occurrence of ``x`` in sorted ``s``, or ``None`` if absent.

    With duplicates any matching index may be returned.
    """
    check_pre("isSorted", lambda: is_sorted(s))
    low, high = 0, len(s)
    while low < high:
        check_invariant("0<=low<=high<=|s|", lambda: 0 <= low <= high <= len(s))
        check_invariant(
            "x !in s[..low] && x !in s[high..]",
            lambda: x not in s[:low] and x not in s[high:],
        )
        mid = low + (high - low) // 2
        if s[mid] < x:
            low = mid + 1
        elif s[mid] > x:
            high = mid
        else:
            check_post("s[index]==x", lambda: s[mid] == x)
            return mid
    check_post("x !in s", lambda: x not in s)
    return None


def _insertion_inv(a: Sequence[int], i: int, j: int) -> bool:
    # forall l < r <= i, r != j: a[l] <= a[r]
    # == a[..i+1] minus slot j is sorted, and a[j] <= everything after it
    rest = list(a[:j]) + list(a[j + 1 : i + 1])
    return is_sorted(rest) and (j == i or a[j] <= a[j + 1])


@operation("search_sort.insertion_sort")
def insertion_sort(a: MutableSequence[int]) -> None:
    """Sort ``a`` in place."""
    ctx = current()
    old = snapshot(Counter(a)) if ctx.active else None
    n = len(a)
    for i in range(n):
        ctx.check_invariant("isSorted(a[..i])", lambda: is_sorted(a[:i]))
        j = i
        while j > 0 and a[j - 1] > a[j]:
            ctx.check_invariant("insertionInv", lambda: _insertion_inv(a, i, j))
            a[j - 1], a[j] = a[j], a[j - 1]
            j -= 1
    ctx.check_post("isSorted(a)", lambda: is_sorted(a))
    ctx.check_post("multiset(a)==old(multiset(a))", lambda: Counter(a) == old.value)
