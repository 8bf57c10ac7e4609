"""Containers carrying their class invariants as checkable predicates."""

from .bst import BstSet
from .hashset import DELETED, NIL, Cell, OpenHashSet, Some
from .heap import MaxHeap

__all__ = ["MaxHeap", "OpenHashSet", "Cell", "Some", "NIL", "DELETED", "BstSet"]
