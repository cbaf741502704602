"""Shared search primitives: costs, rational weights, node records, open list.

Costs are non-negative Python integers in domain units (tile moves, graph
edge weights, alignment column costs).  ``INF`` is the single non-integer
cost value: it compares greater than every finite cost and is absorbing
under addition, which is exactly what the float infinity already does.
Fractional weights never touch floating point: a weight p/q turns the
priority of a node into the integer key ``q*g + p*h``, so expansion order
and all regression output are bit-exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Hashable, Iterator

INF = float("inf")

# Finite costs are ints; INF is the only float a Cost may hold.
Cost = int | float

# Opaque hashable handle produced by each domain's canonical state encoding.
StateId = Hashable


class ContractViolationWarning(UserWarning):
    """Emitted when an operation is invoked outside its stated contract."""


@dataclass(frozen=True)
class Weight:
    """Exact rational weight w = p/q >= 1 applied to the heuristic term.

    ``p`` multiplies h, ``q`` multiplies g.  Ordering by the integer key
    ``q*g + p*h`` is identical to ordering by ``g + (p/q)*h`` computed in
    exact rational arithmetic, with no rounding.
    """

    p: int
    q: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise TypeError("weight numerator and denominator must be ints")
        if self.q < 1 or self.p < self.q:
            raise ValueError(f"weight {self.p}/{self.q} must satisfy p >= q >= 1")

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse 'P/Q' or a bare integer 'P'."""
        body = text.strip()
        if "/" in body:
            num, _, den = body.partition("/")
            return cls(int(num), int(den))
        return cls(int(body))

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Weight":
        return cls(value.numerator, value.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def epsilon(self) -> Fraction:
        """Suboptimality slack w - 1 as an exact fraction."""
        return Fraction(self.p - self.q, self.q)

    def key(self, g: Cost, h: Cost) -> int:
        if g == INF or h == INF:
            raise ValueError("priority keys are defined for finite costs only")
        return self.q * g + self.p * h

    def is_unit(self) -> bool:
        return self.p == self.q

    def __float__(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


UNIT_WEIGHT = Weight(1, 1)


def priority_key(g: Cost, h: Cost, weight: Weight) -> int:
    """Integer expansion priority q*g + p*h; equals g+h when p == q == 1."""
    return weight.key(g, h)


class NodeStatus(Enum):
    OPEN = "open"
    CLOSED = "closed"
    PRUNED = "pruned"


@dataclass(slots=True)
class NodeRecord:
    """Per-state bookkeeping: best known g, cached h, parent link, status."""

    state: StateId
    g: int
    h: int
    parent: StateId | None = None
    status: NodeStatus = NodeStatus.OPEN
    expanded: bool = False

    @property
    def f(self) -> int:
        return self.g + self.h


class SearchSpace:
    """Abstract problem contract consumed by every search algorithm.

    Implementations must guarantee h >= 0 everywhere, h(goal) == 0, a
    finite branching factor, and deterministic successor order.  Bundled
    domains all provide admissible heuristics.
    """

    def start(self) -> StateId:
        raise NotImplementedError

    def is_goal(self, state: StateId) -> bool:
        raise NotImplementedError

    def successors(self, state: StateId) -> list[tuple[StateId, int]]:
        """Return (successor, edge cost) pairs in a fixed order."""
        raise NotImplementedError

    def heuristic(self, state: StateId) -> int:
        raise NotImplementedError


class _Heap:
    """Array-backed indexed min-heap: one entry per state, true decrease-key.

    Entries are (key_tuple, state); a position map supports update and
    removal in O(log n) without tombstones, so the heap contents always
    equal the membership index exactly.
    """

    def __init__(self) -> None:
        self._entries: list[tuple[tuple, StateId]] = []
        self._pos: dict[StateId, int] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, state: StateId) -> bool:
        return state in self._pos

    def peek(self) -> tuple[tuple, StateId]:
        return self._entries[0]

    def push(self, state: StateId, key: tuple) -> None:
        if state in self._pos:
            self.update(state, key)
            return
        self._entries.append((key, state))
        self._sift_up(len(self._entries) - 1)

    def update(self, state: StateId, key: tuple) -> None:
        i = self._pos[state]
        old = self._entries[i][0]
        self._entries[i] = (key, state)
        if key < old:
            self._sift_up(i)
        else:
            self._sift_down(i)

    def pop(self) -> tuple[tuple, StateId]:
        top = self._entries[0]
        self._delete_at(0)
        return top

    def remove(self, state: StateId) -> None:
        self._delete_at(self._pos[state])

    def rebuild(self, rekey) -> None:
        """Re-key every entry with ``rekey(state, old_key)`` and re-heapify."""
        items = sorted((rekey(s, k), s) for k, s in self._entries)
        self._entries = items
        self._pos = {s: i for i, (_, s) in enumerate(items)}

    def _delete_at(self, i: int) -> None:
        _, state = self._entries[i]
        del self._pos[state]
        last = self._entries.pop()
        if i < len(self._entries):
            self._entries[i] = last
            self._pos[last[1]] = i
            self._sift_down(i)
            self._sift_up(i)

    def _sift_up(self, i: int) -> None:
        entries, pos = self._entries, self._pos
        item = entries[i]
        while i > 0:
            parent = (i - 1) >> 1
            if item[0] < entries[parent][0]:
                entries[i] = entries[parent]
                pos[entries[i][1]] = i
                i = parent
            else:
                break
        entries[i] = item
        pos[item[1]] = i

    def _sift_down(self, i: int) -> None:
        entries, pos = self._entries, self._pos
        n = len(entries)
        item = entries[i]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            right = child + 1
            if right < n and entries[right][0] < entries[child][0]:
                child = right
            if entries[child][0] < item[0]:
                entries[i] = entries[child]
                pos[entries[i][1]] = i
                i = child
            else:
                break
        entries[i] = item
        pos[item[1]] = i


class OpenList:
    """Open set ordered by weighted key with configurable tie-breaking.

    Primary order is (q*g + p*h, h, insertion seq) under the default
    least-h tie rule, or (key, seq) under plain FIFO.  A second index
    ordered by unweighted f = g + h makes the frontier lower bound an
    O(1) query.  Pushing a state that is already open replaces its entry
    when the new key is better (decrease-key); stale duplicates never
    exist.  Callers mutate a record's fields and then push it again to
    re-key it.
    """

    def __init__(self, weight: Weight = UNIT_WEIGHT, tie_break: str = "h") -> None:
        if tie_break not in ("h", "fifo"):
            raise ValueError(f"unknown tie_break {tie_break!r}")
        self._p = weight.p
        self._q = weight.q
        self._tie_h = tie_break == "h"
        self._seq = 0
        self._records: dict[StateId, NodeRecord] = {}
        self._main = _Heap()
        self._by_f = _Heap()

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, state: StateId) -> bool:
        return state in self._records

    def __iter__(self) -> Iterator[NodeRecord]:
        return iter(list(self._records.values()))

    def _main_key(self, record: NodeRecord, seq: int) -> tuple:
        key = self._q * record.g + self._p * record.h
        if self._tie_h:
            return (key, record.h, seq)
        return (key, seq)

    def push(self, record: NodeRecord) -> bool:
        """Insert or decrease-key; returns False when the push is ignored."""
        self._seq += 1
        key = self._main_key(record, self._seq)
        if record.state in self._records:
            current = self._main._entries[self._main._pos[record.state]][0]
            if key >= current:
                if __debug__:
                    warnings.warn(
                        f"push of {record.state!r} without a better key ignored",
                        ContractViolationWarning,
                        stacklevel=2,
                    )
                return False
        self._records[record.state] = record
        self._main.push(record.state, key)
        self._by_f.push(record.state, (record.g + record.h, self._seq))
        return True

    def pop_min(self) -> NodeRecord:
        _, state = self._main.pop()
        self._by_f.remove(state)
        return self._records.pop(state)

    def remove(self, state: StateId) -> NodeRecord:
        self._main.remove(state)
        self._by_f.remove(state)
        return self._records.pop(state)

    def peek_min_key(self) -> tuple | None:
        return self._main.peek()[0] if self._records else None

    def peek_min_f(self) -> Cost:
        """Least unweighted f over the open set, INF when empty."""
        if not self._records:
            return INF
        return self._by_f.peek()[0][0]

    def rebuild(self, weight: Weight) -> None:
        """Recompute every priority key under a new weight."""
        self._p = weight.p
        self._q = weight.q
        records = self._records

        def rekey(state: StateId, old: tuple) -> tuple:
            rec = records[state]
            key = self._q * rec.g + self._p * rec.h
            return (key, rec.h, old[-1]) if self._tie_h else (key, old[-1])

        self._main.rebuild(rekey)


def open_push(open_list: OpenList, record: NodeRecord) -> OpenList:
    """Insert a record with decrease-key-on-duplicate semantics."""
    record.status = NodeStatus.OPEN
    open_list.push(record)
    return open_list


def reopen(
    open_list: OpenList,
    record: NodeRecord,
    new_g: int,
    new_parent: StateId | None = None,
) -> NodeRecord:
    """Move a closed record back to open after a strict g improvement.

    Calls with ``new_g >= record.g`` or a non-closed record leave the
    record untouched and flag the contract violation in debug mode.
    """
    if record.status is not NodeStatus.CLOSED or new_g >= record.g:
        if __debug__:
            warnings.warn(
                f"reopen of {record.state!r} without improvement ignored",
                ContractViolationWarning,
                stacklevel=2,
            )
        return record
    record.g = new_g
    if new_parent is not None:
        record.parent = new_parent
    record.status = NodeStatus.OPEN
    open_list.push(record)
    return record
