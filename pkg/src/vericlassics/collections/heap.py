"""Max-priority queue stored as a binary heap in a growable array."""

from __future__ import annotations

from collections import Counter

from .. import faults
from ..contracts import current, operation, snapshot

__all__ = ["MaxHeap"]


class MaxHeap:
    """Binary max-heap of integers.

    ``heap`` is a fixed-capacity array; only ``heap[:size]`` is live.
    When full, the array is reallocated at twice the current size.
    """

    initial_capacity = 10

    @operation("collections.heap_new")
    def __init__(self, capacity: int | None = None):
        cap = self.initial_capacity if capacity is None else capacity
        if cap < 1:
            raise ValueError("capacity must be positive")
        self._heap: list[int] = [0] * cap
        self._size = 0
        current().check_post("isEmpty", lambda: self.is_empty())

    def __len__(self) -> int:
        return self._size

    def __repr__(self) -> str:
        return f"MaxHeap({self._heap[: self._size]!r}, capacity={self.capacity})"

    @property
    def capacity(self) -> int:
        return len(self._heap)

    def slots(self) -> list[int]:
        """Copy of the live part of the array, in heap order."""
        return self._heap[: self._size]

    def elems(self) -> Counter:
        return Counter(self._heap[: self._size])

    def is_empty(self) -> bool:
        return self._size == 0

    # -- invariants -------------------------------------------------------

    def heap_inv(self) -> bool:
        h, size = self._heap, self._size
        return size <= len(h) and all(h[i] <= h[(i - 1) // 2] for i in range(1, size))

    def _heapify_up_inv(self, k: int) -> bool:
        h, size = self._heap, self._size
        if size > len(h):
            return False
        if any(h[i] > h[(i - 1) // 2] for i in range(1, size) if i != k):
            return False
        if k > 0:
            # children of k stay below k's parent
            parent = (k - 1) // 2
            return all(h[i] <= h[parent] for i in (2 * k + 1, 2 * k + 2) if i < size)
        return True

    def _heapify_down_inv(self, k: int) -> bool:
        h, size = self._heap, self._size
        if size > len(h):
            return False
        if any(h[i] > h[(i - 1) // 2] for i in range(1, size) if (i - 1) // 2 != k):
            return False
        if k > 0:
            parent = (k - 1) // 2
            return all(h[i] <= h[parent] for i in (2 * k + 1, 2 * k + 2) if i < size)
        return True

    def max_is_at_top(self) -> bool:
        h = self._heap
        return all(h[i] <= h[0] for i in range(self._size))

    # -- operations -------------------------------------------------------

    @operation("collections.heap_insert")
    def insert(self, x: int) -> None:
        ctx = current()
        ctx.check_pre("heapInv", self.heap_inv)
        old = snapshot(self.elems()) if ctx.active else None
        if self._size == len(self._heap):
            self._grow()
        self._heap[self._size] = x
        self._size += 1
        self._heapify_up()
        ctx.check_post("elems==old(elems)+{x}", lambda: self.elems() == old.value + Counter([x]))
        ctx.check_post("heapInv", self.heap_inv)

    def _grow(self) -> None:
        ctx = current()
        ctx.check_pre("size==capacity", lambda: self._size == len(self._heap))
        old = snapshot(self._heap[: self._size]) if ctx.active else None
        new_cap = self.initial_capacity if self._size == 0 else 2 * self._size
        self._heap = self._heap + [0] * (new_cap - len(self._heap))
        ctx.check_post("capacity>size", lambda: len(self._heap) > self._size)
        ctx.check_post("heap[..size]==old", lambda: self._heap[: self._size] == old.value)

    def _heapify_up(self) -> None:
        ctx = current()
        h = self._heap
        k = self._size - 1
        ctx.check_pre("heapifyUpInv(size-1)", lambda: self._heapify_up_inv(k))
        old = snapshot(self.elems()) if ctx.active else None
        while k > 0 and h[k] > h[(k - 1) // 2]:
            ctx.check_invariant("heapifyUpInv", lambda: 0 <= k < self._size and self._heapify_up_inv(k))
            parent = (k - 1) // 2
            h[k], h[parent] = h[parent], h[k]
            k = parent
        ctx.check_post("heapInv", self.heap_inv)
        ctx.check_post("multiset preserved", lambda: self.elems() == old.value)

    @operation("collections.heap_delete_max")
    def delete_max(self) -> int:
        ctx = current()
        ctx.check_pre("!isEmpty", lambda: not self.is_empty())
        ctx.check_pre("heapInv", self.heap_inv)
        if self._size == 0:
            raise IndexError("delete_max from an empty heap")
        old = snapshot(self.elems()) if ctx.active else None
        ctx.check_assert("maxIsAtTop", self.max_is_at_top)
        x = self._heap[0]
        self._size -= 1
        if self._size > 0:
            self._heap[0] = self._heap[self._size]
            self._heapify_down()
        ctx.check_post("isMax(x, old(elems))", lambda: x in old.value and all(y <= x for y in old.value))
        ctx.check_post("elems==old(elems)-{x}", lambda: self.elems() == old.value - Counter([x]))
        ctx.check_post("heapInv", self.heap_inv)
        return x

    def _heapify_down(self) -> None:
        ctx = current()
        h = self._heap
        size = self._size
        k = 0
        ctx.check_pre("heapifyDownInv(0)", lambda: self._heapify_down_inv(0))
        old = snapshot(self.elems()) if ctx.active else None
        while True:
            ctx.check_invariant("heapifyDownInv", lambda: 0 <= k < size and self._heapify_down_inv(k))
            left, right = 2 * k + 1, 2 * k + 2
            if left >= size:
                break
            if faults.enabled("heap-child-flip"):
                bigger = right if right < size and h[right] < h[left] else left
            else:
                bigger = right if right < size and h[right] > h[left] else left
            if h[k] > h[bigger]:
                break
            h[k], h[bigger] = h[bigger], h[k]
            k = bigger
        ctx.check_post("heapInv", self.heap_inv)
        ctx.check_post("multiset preserved", lambda: self.elems() == old.value)

    @operation("collections.heap_get_max")
    def get_max(self) -> int:
        ctx = current()
        ctx.check_pre("!isEmpty", lambda: not self.is_empty())
        if self._size == 0:
            raise IndexError("get_max from an empty heap")
        ctx.check_assert("maxIsAtTop", self.max_is_at_top)
        x = self._heap[0]
        ctx.check_post("isMax(x, elems)", lambda: all(y <= x for y in self.elems()))
        return x
