"""Sorted set of integers on an unbalanced binary search tree."""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .. import faults
from ..contracts import current, operation, snapshot

__all__ = ["BstSet", "as_set", "is_strictly_sorted"]


def as_set(s: Iterable[int]) -> set[int]:
    return set(s)


def is_strictly_sorted(s: list[int]) -> bool:
    return all(s[i] < s[i + 1] for i in range(len(s) - 1))


class _Node:
    __slots__ = ("value", "left", "right")

    def __init__(self, value: int):
        self.value = value
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None

    def contains(self, x: int) -> bool:
        node: Optional[_Node] = self
        while node is not None:
            if x == node.value:
                return True
            node = node.left if x < node.value else node.right
        return False

    def insert(self, x: int) -> None:
        if x == self.value:
            return
        if x < self.value:
            if self.left is None:
                self.left = _Node(x)
            else:
                self.left.insert(x)
        else:
            if self.right is None:
                self.right = _Node(x)
            else:
                self.right.insert(x)

    def max(self) -> int:
        return self.value if self.right is None else self.right.max()

    def min(self) -> int:
        return self.value if self.left is None else self.left.min()

    def delete(self, x: int) -> Optional[_Node]:
        """Remove ``x`` from this subtree and return the new subtree root."""
        if x == self.value:
            if self.left is None:
                return self.right
            if self.right is None:
                return self.left
            # both children: pull up the in-order predecessor
            self.value = self.left.max()
            if not faults.enabled("bst-skip-restore"):
                self.left = self.left.delete(self.value)
        elif x > self.value and self.right is not None:
            self.right = self.right.delete(x)
        elif x < self.value and self.left is not None:
            self.left = self.left.delete(x)
        return self

    def as_seq(self) -> list[int]:
        left = self.left.as_seq() if self.left is not None else []
        right = self.right.as_seq() if self.right is not None else []
        return left + [self.value] + right


def _nodes(root: Optional[_Node]) -> Iterator[_Node]:
    stack = [root] if root is not None else []
    while stack:
        node = stack.pop()
        yield node
        if node.left is not None:
            stack.append(node.left)
        if node.right is not None:
            stack.append(node.right)


def _ordered(node: Optional[_Node], lo: Optional[int], hi: Optional[int]) -> bool:
    # every value strictly inside (lo, hi)
    stack = [(node, lo, hi)]
    while stack:
        n, lo, hi = stack.pop()
        if n is None:
            continue
        if (lo is not None and n.value <= lo) or (hi is not None and n.value >= hi):
            return False
        stack.append((n.left, lo, n.value))
        stack.append((n.right, n.value, hi))
    return True


class BstSet:
    """Set of integers kept in a binary search tree.

    Inserting a present value and deleting an absent one are no-ops.
    Deleting a node with two children replaces it with the largest value
    of its left subtree.
    """

    def __init__(self, values: Iterable[int] = ()):
        self._root: Optional[_Node] = None
        for v in values:
            self.insert(v)

    def __len__(self) -> int:
        return sum(1 for _ in _nodes(self._root))

    def __contains__(self, x: int) -> bool:
        return self.contains(x)

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_sorted_seq())

    def __repr__(self) -> str:
        return f"BstSet({self.as_sorted_seq()!r})"

    @property
    def root_value(self) -> Optional[int]:
        return None if self._root is None else self._root.value

    def is_empty(self) -> bool:
        return self._root is None

    def elems(self) -> set[int]:
        return {n.value for n in _nodes(self._root)}

    def valid(self) -> bool:
        """Class invariant: BST ordering, no shared nodes, no repeated values."""
        seen: set[int] = set()
        values: list[int] = []
        for n in _nodes(self._root):
            if id(n) in seen:
                return False
            seen.add(id(n))
            values.append(n.value)
        if len(set(values)) != len(values):
            return False
        return _ordered(self._root, None, None)

    @operation("collections.bst_contains")
    def contains(self, x: int) -> bool:
        ctx = current()
        res = self._root is not None and self._root.contains(x)
        ctx.check_post("contains(x) <==> x in elems", lambda: res == (x in self.elems()))
        return res

    @operation("collections.bst_insert")
    def insert(self, x: int) -> None:
        ctx = current()
        old = snapshot(self.elems()) if ctx.active else None
        if self._root is None:
            self._root = _Node(x)
        else:
            self._root.insert(x)
        ctx.check_post("elems==old(elems)+{x}", lambda: self.elems() == old.value | {x})
        ctx.check_invariant("Valid", self.valid)

    @operation("collections.bst_min")
    def min(self) -> int:
        ctx = current()
        ctx.check_pre("!isEmpty", lambda: self._root is not None)
        if self._root is None:
            raise ValueError("min of an empty set")
        m = self._root.min()
        ctx.check_post("min in elems && min<=all", lambda: m in self.elems() and all(x >= m for x in self.elems()))
        return m

    @operation("collections.bst_max")
    def max(self) -> int:
        ctx = current()
        ctx.check_pre("!isEmpty", lambda: self._root is not None)
        if self._root is None:
            raise ValueError("max of an empty set")
        m = self._root.max()
        ctx.check_post("max in elems && max>=all", lambda: m in self.elems() and all(x <= m for x in self.elems()))
        return m

    @operation("collections.bst_delete")
    def delete(self, x: int) -> None:
        ctx = current()
        old = snapshot(self.elems()) if ctx.active else None
        if self._root is not None:
            self._root = self._root.delete(x)
        ctx.check_post("elems==old(elems)-{x}", lambda: self.elems() == old.value - {x})
        ctx.check_post("empty iff old(elems)=={x}", lambda: (self._root is None) == (old.value <= {x}))
        ctx.check_invariant("Valid", self.valid)

    @operation("collections.bst_as_sorted_seq")
    def as_sorted_seq(self) -> list[int]:
        ctx = current()
        s = [] if self._root is None else self._root.as_seq()
        ctx.check_post("isSorted(s)", lambda: is_strictly_sorted(s))
        ctx.check_post("asSet(s)==elems", lambda: as_set(s) == self.elems())
        return s
