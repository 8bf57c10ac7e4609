"""Hash set with open addressing, linear probing and tombstones."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Generic, Hashable, Iterator, TypeVar, Union

from .. import faults
from ..contracts import current, operation, snapshot

__all__ = ["Marker", "NIL", "DELETED", "Some", "Cell", "OpenHashSet"]

T = TypeVar("T", bound=Hashable)


class Marker(enum.Enum):
    NIL = "Nil"
    DELETED = "Deleted"

    def __repr__(self) -> str:
        return self.value


NIL = Marker.NIL
DELETED = Marker.DELETED


@dataclass(frozen=True)
class Some(Generic[T]):
    value: T


Cell = Union[Marker, Some]


class OpenHashSet(Generic[T]):
    """Set stored in a table of cells probed linearly from ``hash(x) % len``.

    ``hash`` is any function from values to naturals.  Deleting leaves a
    ``DELETED`` tombstone so probe chains through the slot stay intact;
    inserts reuse the first tombstone found on the probe path.  When no
    ``NIL`` cell is left the table is rebuilt at ``2 * len + 1`` slots.
    """

    initial_capacity = 101

    @operation("collections.hs_new")
    def __init__(self, hash: Callable[[T], int] = hash, capacity: int | None = None):
        cap = self.initial_capacity if capacity is None else capacity
        if cap < 1:
            raise ValueError("capacity must be positive")
        self.hash = hash
        self._table: list[Cell] = [NIL] * cap
        self.used = 0
        self.deleted = 0
        current().check_post("elems=={}", lambda: self.elems() == set())

    def __len__(self) -> int:
        return self.used

    def __iter__(self) -> Iterator[T]:
        return (c.value for c in self._table if isinstance(c, Some))

    def __contains__(self, x: T) -> bool:
        return self.contains(x)

    def __repr__(self) -> str:
        return f"OpenHashSet({self._table!r})"

    @property
    def capacity(self) -> int:
        return len(self._table)

    def slots(self) -> list[Cell]:
        return list(self._table)

    def home(self, x: T) -> int:
        return self.hash(x) % len(self._table)

    # -- abstraction and invariants ----------------------------------------

    def elems(self) -> set[T]:
        return {c.value for c in self._table if isinstance(c, Some)}

    def count_nil(self) -> int:
        return sum(1 for c in self._table if c is NIL)

    def count_deleted(self) -> int:
        return sum(1 for c in self._table if c is DELETED)

    def count_some(self) -> int:
        return sum(1 for c in self._table if isinstance(c, Some))

    def valid_pos(self, x: T, i: int, table: list[Cell] | None = None) -> bool:
        """``x`` may live at slot ``i``: the probe from its home reaches ``i``
        without crossing a ``NIL`` cell or another copy of ``x``."""
        t = self._table if table is None else table
        h = self.hash(x) % len(t)
        if h <= i:
            between = range(h, i)
        else:
            between = [*range(h, len(t)), *range(0, i)]
        return all(t[j] is not NIL and t[j] != Some(x) for j in between)

    def table_inv(self) -> bool:
        t = self._table
        return all(self.valid_pos(c.value, i) for i, c in enumerate(t) if isinstance(c, Some))

    def counting_identity(self) -> bool:
        """``used + deleted + #Nil == len`` and the same with distinct values."""
        n, d = self.count_nil(), self.count_deleted()
        size = len(self._table)
        return self.used + self.deleted + n == size and len(self.elems()) + d + n == size

    def valid(self) -> bool:
        """Class invariant."""
        return (
            len(self._table) > 0
            and self.table_inv()
            and self.used == self.count_some()
            and self.deleted == self.count_deleted()
            and self.used == len(self.elems())
        )

    def full(self) -> bool:
        return self.used + self.deleted == len(self._table)

    # -- operations --------------------------------------------------------

    def _locate(self, x: T) -> int:
        """Slot holding ``x``, else the slot an insert of ``x`` should use,
        else -1 when the table has neither ``NIL`` nor a tombstone to offer."""
        t = self._table
        h = self.hash(x) % len(t)
        reuse = -1
        for i in (*range(h, len(t)), *range(0, h)):
            cell = t[i]
            if cell is NIL or cell == Some(x):
                return i
            if cell is DELETED and reuse == -1:
                reuse = i
        return reuse

    @operation("collections.hs_contains")
    def contains(self, x: T) -> bool:
        ctx = current()
        ctx.check_pre("valid", self.valid)
        pos = self._locate(x)
        res = pos != -1 and self._table[pos] == Some(x)
        ctx.check_post("res <==> x in elems", lambda: res == (x in self.elems()))
        return res

    @operation("collections.hs_insert")
    def insert(self, x: T) -> None:
        ctx = current()
        ctx.check_pre("valid", self.valid)
        ctx.check_pre("x !in elems", lambda: x not in self.elems())
        old = snapshot(self.elems()) if ctx.active else None
        if self.full():
            self._rehash()
        self._insert_aux(x)
        ctx.check_post("elems==old(elems)+{x}", lambda: self.elems() == old.value | {x})
        ctx.check_post("countingLemma", self.counting_identity)
        ctx.check_post("valid", self.valid)

    def _insert_aux(self, x: T) -> None:
        ctx = current()
        ctx.check_pre("!full", lambda: not self.full())
        old_deleted = self.deleted
        i = self._locate(x)
        ctx.check_assert(
            "locate finds a free valid slot",
            lambda: 0 <= i < len(self._table)
            and not isinstance(self._table[i], Some)
            and self.valid_pos(x, i),
        )
        if i == -1 or isinstance(self._table[i], Some):
            raise ValueError(f"{x!r} is already in the set")
        if self._table[i] is DELETED:
            self.deleted -= 1
        self._table[i] = Some(x)
        self.used += 1
        ctx.check_post("deleted<=old(deleted)", lambda: self.deleted <= old_deleted)

    def _rehash(self) -> None:
        ctx = current()
        old_table = self._table
        old = snapshot(self.elems()) if ctx.active else None
        self._table = [NIL] * (len(old_table) * 2 + 1)
        self.used = 0
        self.deleted = 0
        for cell in old_table:
            if isinstance(cell, Some):
                self._insert_aux(cell.value)
            ctx.check_invariant("deleted==0", lambda: self.deleted == 0)
        ctx.check_post("!full", lambda: not self.full())
        ctx.check_post("elems==old(elems)", lambda: self.elems() == old.value)
        ctx.check_post("countingLemma", self.counting_identity)

    @operation("collections.hs_delete")
    def delete(self, x: T) -> None:
        ctx = current()
        ctx.check_pre("valid", self.valid)
        ctx.check_pre("x in elems", lambda: x in self.elems())
        old = snapshot(self.elems()) if ctx.active else None
        i = self._locate(x)
        if i == -1 or self._table[i] != Some(x):
            raise KeyError(x)
        if faults.enabled("tombstone-as-nil"):
            self._table[i] = NIL
        else:
            self._table[i] = DELETED
        self.deleted += 1
        self.used -= 1
        ctx.check_post("elems==old(elems)-{x}", lambda: self.elems() == old.value - {x})
        ctx.check_post("countingLemma", self.counting_identity)
        ctx.check_post("valid", self.valid)
