"""Single-line mutations that can be switched on to test the checkers.

Each name below corresponds to exactly one line in the library that
behaves differently while the mutation is enabled.  They exist so that the
contract and oracle machinery can be shown to catch real bugs.
"""

from __future__ import annotations

import contextlib
from typing import Iterator

MUTATIONS = {
    "heap-child-flip": "heap sift-down picks the smaller child instead of the larger",
    "tombstone-as-nil": "hash set delete writes Nil instead of a Deleted tombstone",
    "bst-skip-restore": "BST two-child delete copies the predecessor up but never removes it",
    "gs-skip-reject": "Gale-Shapley keeps the displaced partner engaged",
    "euler-splice-off-by-one": "Hierholzer splice keeps the vertex it should replace",
}

_enabled: set[str] = set()


def enabled(name: str) -> bool:
    return name in _enabled


@contextlib.contextmanager
def inject(*names: str) -> Iterator[None]:
    unknown = set(names) - MUTATIONS.keys()
    if unknown:
        raise KeyError(f"unknown mutation(s): {', '.join(sorted(unknown))}")
    added = set(names) - _enabled
    _enabled.update(added)
    try:
        yield
    finally:
        _enabled.difference_update(added)
