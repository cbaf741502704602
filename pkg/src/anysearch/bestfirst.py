"""Best-first search family: A*, weighted A*, anytime weighted A*, the
upper-bound-pruned variant, and the weight-decreasing repair variant.

All searches share the same record/open-list plumbing and return a
:class:`SearchResult`.  The anytime searches additionally stream
``sink(incumbent, bounds, stats)`` on every incumbent improvement, on a
geometric expansion schedule, and once at termination; bound emissions
are monotone (upper never rises, lower never falls) and close to
``lower == upper`` whenever the search runs to completion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

from .core import (
    INF,
    UNIT_WEIGHT,
    Cost,
    NodeRecord,
    NodeStatus,
    OpenList,
    SearchSpace,
    StateId,
    Weight,
)

ExpandHook = Callable[[StateId, int, int], None]


class Status(Enum):
    CONVERGED = "converged"
    INTERRUPTED = "interrupted"
    NO_SOLUTION = "no-solution"


@dataclass(frozen=True)
class FoundAt:
    expansions: int
    wall_time_s: float


@dataclass(frozen=True)
class Incumbent:
    """A complete solution: goal state, exact path cost, and the path itself."""

    goal_state: StateId
    cost: int
    path: tuple[StateId, ...]
    found_at: FoundAt


@dataclass
class IncumbentTrace:
    """Improving solutions in discovery order; costs strictly decrease."""

    entries: list[Incumbent] = field(default_factory=list)

    def append(self, incumbent: Incumbent) -> None:
        if self.entries and incumbent.cost >= self.entries[-1].cost:
            raise ValueError("incumbent trace must strictly improve")
        self.entries.append(incumbent)

    def costs(self) -> list[int]:
        return [e.cost for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class BoundPair:
    """Current lower and upper bounds on the optimal solution cost.

    ``reported_ratio`` is the published suboptimality guarantee: the raw
    ratio upper/lower capped at the weight in force when the incumbent
    was found (both are valid bounds, so their minimum is too).
    """

    lower: Cost
    upper: Cost
    reported_ratio: Fraction | None = None

    @property
    def difference(self) -> Cost:
        return 0 if self.upper == self.lower else self.upper - self.lower

    @property
    def ratio(self) -> Fraction | None:
        if self.upper == self.lower:
            return Fraction(1)
        if self.upper == INF or self.lower <= 0:
            return None
        return Fraction(int(self.upper), int(self.lower))


@dataclass
class SearchStats:
    expansions: int = 0
    distinct_expanded: int = 0
    stored: int = 0
    generated: int = 0
    recursive_calls: int = 0

    @property
    def reexpansions(self) -> int:
        return self.expansions - self.distinct_expanded


@dataclass(frozen=True)
class SearchLimits:
    """Resource caps; any exceeded limit interrupts the search."""

    max_expansions: int | None = None
    max_stored: int | None = None
    max_wall_time: float | None = None

    def exceeded(self, stats: SearchStats, started: float) -> bool:
        if self.max_expansions is not None and stats.expansions >= self.max_expansions:
            return True
        if self.max_stored is not None and stats.stored > self.max_stored:
            return True
        if self.max_wall_time is not None:
            return time.perf_counter() - started >= self.max_wall_time
        return False


@dataclass
class SearchResult:
    status: Status
    incumbent: Incumbent | None
    bounds: BoundPair
    stats: SearchStats
    trace: IncumbentTrace

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


Sink = Callable[[Incumbent | None, BoundPair, SearchStats], None]


def error_bound(
    incumbent: Incumbent | None, open_min_f: Cost, weight: Weight
) -> BoundPair:
    """Bounds from the incumbent cost and the least f over the frontier.

    An empty frontier (INF) or one at/above the incumbent closes the gap:
    the incumbent is then provably optimal, so lower equals upper and the
    error is 0.  With an incumbent present the reported ratio is
    min(upper/lower, w); without one it is undefined.
    """
    upper: Cost = incumbent.cost if incumbent is not None else INF
    lower: Cost = min(open_min_f, upper)
    reported: Fraction | None = None
    if incumbent is not None:
        w = weight.as_fraction()
        if lower == upper:
            reported = min(Fraction(1), w)
        elif lower <= 0:
            reported = w
        else:
            reported = min(Fraction(int(upper), int(lower)), w)
    return BoundPair(lower, upper, reported)


class _Emitter:
    """Sink cadence and monotone bound publication.

    Emits on demand (incumbent improvements), whenever the expansion
    count crosses the next power of two, and once at finalization.  The
    published lower bound is the running maximum of the sampled frontier
    minima, which is still a valid lower bound because earlier samples
    never stop being true.
    """

    def __init__(self, sink: Sink | None, weight: Weight, stats: SearchStats) -> None:
        self._sink = sink
        self.weight = weight
        self._stats = stats
        self._next = 1
        self._floor: Cost = 0
        self.bounds = BoundPair(0, INF)

    def _publish(self, incumbent: Incumbent | None, raw_lower: Cost) -> BoundPair:
        if raw_lower > self._floor:
            self._floor = raw_lower
        self.bounds = error_bound(incumbent, self._floor, self.weight)
        return self.bounds

    def improve(self, incumbent: Incumbent, raw_lower: Cost) -> None:
        bounds = self._publish(incumbent, raw_lower)
        if self._sink is not None:
            self._sink(incumbent, bounds, self._stats)

    def step(self, incumbent: Incumbent | None, raw_lower: Cost) -> None:
        if self._stats.expansions < self._next:
            return
        while self._next <= self._stats.expansions:
            self._next <<= 1
        bounds = self._publish(incumbent, raw_lower)
        if self._sink is not None:
            self._sink(incumbent, bounds, self._stats)

    def finalize(self, incumbent: Incumbent | None, raw_lower: Cost) -> BoundPair:
        bounds = self._publish(incumbent, raw_lower)
        if self._sink is not None:
            self._sink(incumbent, bounds, self._stats)
        return bounds


def _path_cost(space: SearchSpace, path: list[StateId]) -> int:
    total = 0
    for u, v in zip(path, path[1:]):
        total += min(c for s, c in space.successors(u) if s == v)
    return total


def _extract_incumbent(
    space: SearchSpace,
    records: dict[StateId, NodeRecord],
    goal: StateId,
    stats: SearchStats,
    started: float,
) -> Incumbent:
    """Freeze the parent-pointer path at discovery time.

    Parent chains always walk strictly decreasing g, so the walk
    terminates; the recomputed edge-cost sum can only undercut the
    g-estimate when ancestors improved after this branch was generated,
    and the tighter value is the cost of a real path, so it is kept.
    """
    path = [goal]
    while True:
        parent = records[path[-1]].parent
        if parent is None:
            break
        path.append(parent)
    path.reverse()
    cost = _path_cost(space, path)
    return Incumbent(
        goal,
        cost,
        tuple(path),
        FoundAt(stats.expansions, time.perf_counter() - started),
    )


def _empty_result(status: Status, stats: SearchStats, bounds: BoundPair) -> SearchResult:
    return SearchResult(status, None, bounds, stats, IncumbentTrace())


def _selection_search(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits,
    prune_bound: Cost,
    tie_break: str,
    on_expand: ExpandHook | None,
) -> SearchResult:
    """Best-first search that tests goals at selection and stops at the first.

    Covers classic A* (w = 1), weighted A*, and the bound-pruned variant
    (w = 1 with a finite ``prune_bound``): nodes with f >= prune_bound
    are never inserted into the open list.  Closed nodes are reopened
    whenever their g improves.
    """
    started = time.perf_counter()
    stats = SearchStats()
    records: dict[StateId, NodeRecord] = {}
    open_list = OpenList(weight, tie_break)
    trace = IncumbentTrace()

    start = space.start()
    h0 = space.heuristic(start)
    stats.generated = 1
    if h0 < prune_bound:
        root = NodeRecord(start, 0, h0)
        records[start] = root
        open_list.push(root)
        stats.stored = 1

    while len(open_list):
        if limits.exceeded(stats, started):
            lower = min(open_list.peek_min_f(), INF)
            return _empty_result(Status.INTERRUPTED, stats, BoundPair(lower, INF))
        record = open_list.pop_min()
        if space.is_goal(record.state):
            incumbent = _extract_incumbent(space, records, record.state, stats, started)
            trace.append(incumbent)
            lower = min(open_list.peek_min_f(), incumbent.cost)
            bounds = error_bound(incumbent, lower, weight)
            return SearchResult(Status.CONVERGED, incumbent, bounds, stats, trace)
        record.status = NodeStatus.CLOSED
        stats.expansions += 1
        if not record.expanded:
            record.expanded = True
            stats.distinct_expanded += 1
        if on_expand is not None:
            on_expand(record.state, record.g, record.h)
        for nxt, cost in space.successors(record.state):
            stats.generated += 1
            g2 = record.g + cost
            held = records.get(nxt)
            h2 = held.h if held is not None else space.heuristic(nxt)
            if g2 + h2 >= prune_bound:
                continue
            if held is None:
                held = NodeRecord(nxt, g2, h2, record.state)
                records[nxt] = held
                open_list.push(held)
                if len(records) > stats.stored:
                    stats.stored = len(records)
            elif g2 < held.g:
                held.g = g2
                held.parent = record.state
                held.status = NodeStatus.OPEN
                open_list.push(held)
    return _empty_result(Status.NO_SOLUTION, stats, BoundPair(INF, INF))


def astar(
    space: SearchSpace,
    limits: SearchLimits | None = None,
    *,
    tie_break: str = "h",
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Classic A*: admissible ordering, goal test at selection, reopening."""
    return _selection_search(
        space, UNIT_WEIGHT, limits or SearchLimits(), INF, tie_break, on_expand
    )


def weighted_astar(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None = None,
    *,
    tie_break: str = "h",
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Weighted A*: stops at the first goal selected; cost <= w * optimum."""
    return _selection_search(
        space, weight, limits or SearchLimits(), INF, tie_break, on_expand
    )


def enhanced_astar(
    space: SearchSpace,
    upper_bound: Cost,
    limits: SearchLimits | None = None,
    *,
    tie_break: str = "h",
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """A* that never stores nodes with f >= a caller-supplied upper bound.

    The insertion test is strict, so a bound exactly equal to the optimal
    cost prunes every optimal goal; callers wanting the optimum must pass
    optimum + 1 (or any larger valid bound, such as a weighted A*
    solution cost + 1).  An invalid bound surfaces as NO_SOLUTION.
    """
    return _selection_search(
        space, UNIT_WEIGHT, limits or SearchLimits(), upper_bound, tie_break, on_expand
    )


def _purge_open(
    open_list: OpenList,
    records: dict[StateId, NodeRecord],
    upper: Cost,
) -> None:
    """Drop open records that can no longer beat the incumbent.

    Records still referenced as a parent are kept so path extraction
    never walks into a hole; they are cheap relative to the open index.
    """
    parents = {rec.parent for rec in records.values()}
    doomed = [
        rec.state
        for rec in open_list
        if rec.g + rec.h >= upper and rec.state not in parents
    ]
    for state in doomed:
        open_list.remove(state)
        del records[state]


def anytime_wastar(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None = None,
    sink: Sink | None = None,
    *,
    tie_break: str = "h",
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Anytime weighted A*.

    Selection follows the weighted key q*g + p*h; goals are tested as
    soon as they are generated; successors whose unweighted f reaches the
    incumbent's cost are never inserted; popped nodes at or above the
    incumbent are discarded unexpanded; closed nodes reopen when their g
    improves.  The search keeps going after the first solution and, when
    the open list empties, the last incumbent is optimal and the bounds
    meet.
    """
    limits = limits or SearchLimits()
    started = time.perf_counter()
    stats = SearchStats()
    records: dict[StateId, NodeRecord] = {}
    open_list = OpenList(weight, tie_break)
    trace = IncumbentTrace()
    emitter = _Emitter(sink, weight, stats)
    incumbent: Incumbent | None = None

    start = space.start()
    h0 = space.heuristic(start)
    root = NodeRecord(start, 0, h0)
    records[start] = root
    open_list.push(root)
    stats.generated = 1
    stats.stored = 1

    if space.is_goal(start):
        incumbent = _extract_incumbent(space, records, start, stats, started)
        trace.append(incumbent)
        emitter.improve(incumbent, open_list.peek_min_f())

    status = Status.NO_SOLUTION
    while len(open_list):
        if limits.max_stored is not None and len(records) > limits.max_stored and incumbent:
            _purge_open(open_list, records, incumbent.cost)
        if limits.exceeded(stats, started):
            status = Status.INTERRUPTED
            break
        record = open_list.pop_min()
        upper: Cost = incumbent.cost if incumbent is not None else INF
        if record.f >= upper:
            record.status = NodeStatus.PRUNED
            continue
        assert incumbent is None or record.f < incumbent.cost
        record.status = NodeStatus.CLOSED
        stats.expansions += 1
        if not record.expanded:
            record.expanded = True
            stats.distinct_expanded += 1
        if on_expand is not None:
            on_expand(record.state, record.g, record.h)
        for nxt, cost in space.successors(record.state):
            stats.generated += 1
            g2 = record.g + cost
            held = records.get(nxt)
            h2 = held.h if held is not None else space.heuristic(nxt)
            upper = incumbent.cost if incumbent is not None else INF
            if g2 + h2 >= upper:
                continue
            if space.is_goal(nxt):
                if held is None:
                    held = NodeRecord(nxt, g2, h2, record.state, NodeStatus.PRUNED)
                    records[nxt] = held
                    if len(records) > stats.stored:
                        stats.stored = len(records)
                elif g2 < held.g:
                    held.g = g2
                    held.parent = record.state
                else:
                    continue
                candidate = _extract_incumbent(space, records, nxt, stats, started)
                if incumbent is None or candidate.cost < incumbent.cost:
                    incumbent = candidate
                    trace.append(incumbent)
                    emitter.improve(incumbent, open_list.peek_min_f())
                continue
            if held is None:
                held = NodeRecord(nxt, g2, h2, record.state)
                records[nxt] = held
                open_list.push(held)
                if len(records) > stats.stored:
                    stats.stored = len(records)
            elif g2 < held.g:
                held.g = g2
                held.parent = record.state
                held.status = NodeStatus.OPEN
                open_list.push(held)
        emitter.step(incumbent, open_list.peek_min_f())
    else:
        status = Status.CONVERGED if incumbent is not None else Status.NO_SOLUTION

    bounds = emitter.finalize(incumbent, open_list.peek_min_f())
    return SearchResult(status, incumbent, bounds, stats, trace)


def ara_star(
    space: SearchSpace,
    start_weight: Weight,
    step: Fraction | str,
    limits: SearchLimits | None = None,
    sink: Sink | None = None,
    *,
    tie_break: str = "h",
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Anytime repair search: weighted episodes with a decreasing weight.

    Better paths to closed nodes are recorded immediately but their
    reexpansion is deferred: the state parks in an inconsistency set
    instead of reopening.  Each incumbent improvement emits with the
    weight in force at discovery, then the weight drops by ``step``
    (clamped at 1), every open key is recomputed, and the parked states
    move back to the open list.  The search is optimal at convergence,
    which requires both the open list and the parked set to empty.
    """
    step = Fraction(step)
    if step <= 0:
        raise ValueError("weight step must be positive")
    limits = limits or SearchLimits()
    started = time.perf_counter()
    stats = SearchStats()
    records: dict[StateId, NodeRecord] = {}
    weight = start_weight
    open_list = OpenList(weight, tie_break)
    incons: dict[StateId, None] = {}  # insertion-ordered set
    trace = IncumbentTrace()
    emitter = _Emitter(sink, weight, stats)
    incumbent: Incumbent | None = None

    def raw_lower() -> Cost:
        lower = open_list.peek_min_f()
        for state in incons:
            rec = records[state]
            if rec.f < lower:
                lower = rec.f
        return lower

    start = space.start()
    h0 = space.heuristic(start)
    root = NodeRecord(start, 0, h0)
    records[start] = root
    open_list.push(root)
    stats.generated = 1
    stats.stored = 1

    if space.is_goal(start):
        incumbent = _extract_incumbent(space, records, start, stats, started)
        trace.append(incumbent)
        emitter.improve(incumbent, raw_lower())

    status = Status.NO_SOLUTION
    while len(open_list) or incons:
        if not len(open_list):
            # Deferred improvements are all that is left; resume on them.
            for state in incons:
                rec = records[state]
                rec.status = NodeStatus.OPEN
                open_list.push(rec)
            incons.clear()
            continue
        if limits.max_stored is not None and len(records) > limits.max_stored and incumbent:
            _purge_open(open_list, records, incumbent.cost)
        if limits.exceeded(stats, started):
            status = Status.INTERRUPTED
            break
        record = open_list.pop_min()
        upper: Cost = incumbent.cost if incumbent is not None else INF
        if record.f >= upper:
            record.status = NodeStatus.PRUNED
            continue
        assert incumbent is None or record.f < incumbent.cost
        record.status = NodeStatus.CLOSED
        stats.expansions += 1
        if not record.expanded:
            record.expanded = True
            stats.distinct_expanded += 1
        if on_expand is not None:
            on_expand(record.state, record.g, record.h)
        for nxt, cost in space.successors(record.state):
            stats.generated += 1
            g2 = record.g + cost
            held = records.get(nxt)
            h2 = held.h if held is not None else space.heuristic(nxt)
            upper = incumbent.cost if incumbent is not None else INF
            if g2 + h2 >= upper:
                continue
            if space.is_goal(nxt):
                if held is None:
                    held = NodeRecord(nxt, g2, h2, record.state, NodeStatus.PRUNED)
                    records[nxt] = held
                    if len(records) > stats.stored:
                        stats.stored = len(records)
                elif g2 < held.g:
                    held.g = g2
                    held.parent = record.state
                else:
                    continue
                candidate = _extract_incumbent(space, records, nxt, stats, started)
                if incumbent is None or candidate.cost < incumbent.cost:
                    incumbent = candidate
                    trace.append(incumbent)
                    emitter.improve(incumbent, raw_lower())
                    new_fraction = max(Fraction(1), weight.as_fraction() - step)
                    if new_fraction != weight.as_fraction():
                        weight = Weight.from_fraction(new_fraction)
                        emitter.weight = weight
                        open_list.rebuild(weight)
                    for state in list(incons):
                        rec = records[state]
                        rec.status = NodeStatus.OPEN
                        open_list.push(rec)
                    incons.clear()
                continue
            if held is None:
                held = NodeRecord(nxt, g2, h2, record.state)
                records[nxt] = held
                open_list.push(held)
                if len(records) > stats.stored:
                    stats.stored = len(records)
            elif g2 < held.g:
                held.g = g2
                held.parent = record.state
                if held.status is NodeStatus.CLOSED:
                    incons[nxt] = None  # defer reexpansion
                else:
                    held.status = NodeStatus.OPEN
                    open_list.push(held)
        emitter.step(incumbent, raw_lower())
    else:
        status = Status.CONVERGED if incumbent is not None else Status.NO_SOLUTION

    bounds = emitter.finalize(incumbent, raw_lower())
    return SearchResult(status, incumbent, bounds, stats, trace)
