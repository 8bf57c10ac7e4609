"""Runtime design-by-contract machinery.

Every algorithm in this package states its preconditions, postconditions,
loop invariants and intermediate assertions through the ``check_*``
functions below.  Whether those predicates are evaluated, and what happens
when one fails, is decided by the active :class:`ContractContext`:

* ``ContractMode.OFF``: predicates are never evaluated (pass them as
  zero-argument callables so nothing is computed either).
* ``ContractMode.ASSERT``: a failing predicate raises :class:`ContractViolation`.
* ``ContractMode.LOG``: a failing predicate is recorded and execution goes on.

The active context lives in a :mod:`contextvars` variable, so each thread
(and each ``asyncio`` task) gets its own counters.
"""

from __future__ import annotations

import contextlib
import contextvars
import copy
import enum
import functools
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Iterator, TypeVar, Union

__all__ = [
    "ContractMode",
    "Kind",
    "ContractViolation",
    "Violation",
    "OpStats",
    "ContractContext",
    "Snapshot",
    "current",
    "using",
    "check_pre",
    "check_post",
    "check_invariant",
    "check_assert",
    "snapshot",
    "operation",
]

V = TypeVar("V")
F = TypeVar("F", bound=Callable[..., Any])
Predicate = Union[bool, Callable[[], bool]]


class ContractMode(enum.Enum):
    OFF = "off"
    ASSERT = "assert"
    LOG = "log"

    @classmethod
    def parse(cls, text: str) -> "ContractMode":
        return cls(text.strip().lower())


class Kind(enum.Enum):
    PRE = "Pre"
    POST = "Post"
    INVARIANT = "Invariant"
    ASSERTION = "Assertion"


class ContractViolation(AssertionError):
    """A contract predicate evaluated to false in ``ASSERT`` mode."""

    def __init__(self, label: str, kind: Kind, op: str | None = None):
        self.label = label
        self.kind = kind
        self.op = op
        where = f" in {op}" if op else ""
        super().__init__(f"{kind.value} contract {label!r} violated{where}")


@dataclass(frozen=True)
class Violation:
    label: str
    kind: Kind
    op: str | None = None

    def __str__(self) -> str:
        return f"{self.op or '<toplevel>'}: {self.kind.value} {self.label}"


@dataclass
class OpStats:
    calls: int = 0
    checks: int = 0
    violations: int = 0
    seconds: float = 0.0


class ContractContext:
    """Mode, counters and violation log for one thread of execution."""

    def __init__(self, mode: ContractMode | str = ContractMode.ASSERT):
        if isinstance(mode, str):
            mode = ContractMode.parse(mode)
        self.mode = mode
        self.checks_evaluated = 0
        self.violations: list[Violation] = []
        self.stats: dict[str, OpStats] = {}
        self._ops: list[str] = []

    def __repr__(self) -> str:
        return (
            f"ContractContext(mode={self.mode.value}, "
            f"checks_evaluated={self.checks_evaluated}, "
            f"violations={len(self.violations)})"
        )

    @property
    def active(self) -> bool:
        return self.mode is not ContractMode.OFF

    @property
    def current_op(self) -> str | None:
        return self._ops[-1] if self._ops else None

    def _row(self, op: str | None) -> OpStats:
        key = op or "<toplevel>"
        row = self.stats.get(key)
        if row is None:
            row = self.stats[key] = OpStats()
        return row

    def check(self, kind: Kind, label: str, predicate: Predicate) -> None:
        if self.mode is ContractMode.OFF:
            return
        held = predicate() if callable(predicate) else predicate
        self.checks_evaluated += 1
        op = self.current_op
        row = self._row(op)
        row.checks += 1
        if held:
            return
        row.violations += 1
        self.violations.append(Violation(label, kind, op))
        if self.mode is ContractMode.ASSERT:
            raise ContractViolation(label, kind, op)

    def check_pre(self, label: str, predicate: Predicate) -> None:
        self.check(Kind.PRE, label, predicate)

    def check_post(self, label: str, predicate: Predicate) -> None:
        self.check(Kind.POST, label, predicate)

    def check_invariant(self, label: str, predicate: Predicate) -> None:
        self.check(Kind.INVARIANT, label, predicate)

    def check_assert(self, label: str, predicate: Predicate) -> None:
        self.check(Kind.ASSERTION, label, predicate)

    @contextlib.contextmanager
    def scope(self, op: str) -> Iterator[None]:
        """Attribute checks made inside the block to operation ``op``."""
        outermost = op not in self._ops
        row = self._row(op)
        row.calls += 1
        self._ops.append(op)
        start = time.perf_counter()
        try:
            yield
        finally:
            self._ops.pop()
            if outermost:
                row.seconds += time.perf_counter() - start


_current: contextvars.ContextVar[ContractContext] = contextvars.ContextVar(
    "vericlassics_contract_context"
)


def current() -> ContractContext:
    """Return the active context, creating an ASSERT-mode one on first use."""
    try:
        return _current.get()
    except LookupError:
        ctx = ContractContext()
        _current.set(ctx)
        return ctx


@contextlib.contextmanager
def using(ctx: ContractContext | ContractMode | str) -> Iterator[ContractContext]:
    """Make ``ctx`` (or a fresh context in the given mode) active in the block."""
    if not isinstance(ctx, ContractContext):
        ctx = ContractContext(ctx)
    token = _current.set(ctx)
    try:
        yield ctx
    finally:
        _current.reset(token)


def check_pre(label: str, predicate: Predicate) -> None:
    current().check(Kind.PRE, label, predicate)


def check_post(label: str, predicate: Predicate) -> None:
    current().check(Kind.POST, label, predicate)


def check_invariant(label: str, predicate: Predicate) -> None:
    current().check(Kind.INVARIANT, label, predicate)


def check_assert(label: str, predicate: Predicate) -> None:
    current().check(Kind.ASSERTION, label, predicate)


@dataclass(frozen=True)
class Snapshot(Generic[V]):
    """Deep copy of a value taken at operation entry (``old(...)``)."""

    _value: V = field(repr=False)

    @property
    def value(self) -> V:
        # hand out copies so callers cannot mutate the captured state
        return copy.deepcopy(self._value)

    def __repr__(self) -> str:
        return f"Snapshot({self._value!r})"


def snapshot(value: V) -> Snapshot[V]:
    return Snapshot(copy.deepcopy(value))


def operation(name: str) -> Callable[[F], F]:
    """Decorator attributing a function's contract checks to ``name``."""

    def decorate(fn: F) -> F:
        @functools.wraps(fn)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            ctx = current()
            if not ctx.active:
                return fn(*args, **kwargs)
            with ctx.scope(name):
                return fn(*args, **kwargs)

        wrapper.op_name = name  # type: ignore[attr-defined]
        return wrapper  # type: ignore[return-value]

    return decorate
