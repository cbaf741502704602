"""Linear-space best-first search by stack-based backtracking.

Two flavors of weighted search share one engine:

* virtual-frontier ordering: backed-up values are weighted evaluations
  ``q*g + p*h`` and backtracking thresholds compare those values
  directly, so expansion order matches weighted A* over the frontier the
  stack merely represents;
* stack-frontier ordering: backed-up values are unweighted lower bounds
  F, and decisions use the dynamic key ``g + w*(F - g)``, i.e. the
  weight applies to the improved heuristic ``F - g``.

The anytime variants test goals at generation, keep searching after a
solution, prune any child whose admissible bound reaches the incumbent's
cost, and detect convergence when the stack unwinds completely (or as
soon as the stack-frontier lower bound meets the incumbent).  The
recursion is run on an explicit stack so deep problems cannot overflow
the interpreter; "recursive calls" remains the counted time proxy.

Only the memory on the stack is retained between steps: the nodes along
the current path plus the generated siblings of each of them.  The one
piece of graph-style duplicate handling is that a successor equal to a
frame's own parent state is never generated (a move is never undone
immediately); it applies identically to every variant here.
"""

from __future__ import annotations

import time
from bisect import insort
from dataclasses import dataclass

from .bestfirst import (
    BoundPair,
    ExpandHook,
    FoundAt,
    Incumbent,
    IncumbentTrace,
    SearchLimits,
    SearchResult,
    SearchStats,
    Sink,
    Status,
    _Emitter,
    error_bound,
)
from .core import INF, Cost, SearchSpace, StateId, Weight


@dataclass(slots=True)
class StackEntry:
    """A generated child retained on the stack: static costs plus backed-up values.

    ``value`` orders siblings (weighted evaluation or unweighted F,
    depending on the variant); ``fvalue`` is always the admissible
    backed-up bound used for pruning and the frontier lower bound.  A
    stored value strictly above the static evaluation marks a previously
    expanded subtree.
    """

    state: StateId
    g: Cost
    h: Cost
    order: int
    value: Cost
    fvalue: Cost

    def sort_key(self) -> tuple:
        return (self.value, self.order)


@dataclass(slots=True)
class _Frame:
    state: StateId
    g: int
    h: int
    parent_state: StateId | None
    value: Cost
    fvalue: Cost
    bound: Cost
    children: list[StackEntry] | None = None
    active: StackEntry | None = None


_SENTINEL_ORDER = 1 << 30


def _frontier_min(stack: list[_Frame]) -> Cost:
    """Least admissible backed-up value over the stack frontier."""
    best: Cost = INF
    for frame in stack:
        if frame.children is None:
            if frame.fvalue < best:
                best = frame.fvalue
            continue
        for child in frame.children:
            if child is frame.active:
                continue
            if child.fvalue < best:
                best = child.fvalue
    return best


def _drive(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None,
    *,
    weighted_order: bool,
    anytime: bool,
    sink: Sink | None,
    on_expand: ExpandHook | None,
) -> SearchResult:
    limits = limits or SearchLimits()
    started = time.perf_counter()
    stats = SearchStats()
    trace = IncumbentTrace()
    emitter = _Emitter(sink, weight, stats)
    incumbent: Incumbent | None = None
    seen: set[StateId] = set()
    p, q = weight.p, weight.q

    def wkey(g: Cost, fvalue: Cost) -> Cost:
        if fvalue == INF or g == INF:
            return INF
        return q * g + p * (fvalue - g)

    def guard_key(child: StackEntry) -> Cost:
        return child.value if weighted_order else wkey(child.g, child.fvalue)

    start = space.start()
    h0 = space.heuristic(start)
    root_value = weight.key(0, h0) if weighted_order else h0
    stack: list[_Frame] = [_Frame(start, 0, h0, None, root_value, h0, INF)]
    stats.recursive_calls = 1
    stats.generated = 1
    entries = 0
    status = Status.NO_SOLUTION

    def path_here(extra: StateId | None = None) -> tuple[StateId, ...]:
        path = [frame.state for frame in stack]
        if extra is not None:
            path.append(extra)
        return tuple(path)

    def improve(goal: StateId | None, cost: int) -> None:
        nonlocal incumbent
        if incumbent is not None and cost >= incumbent.cost:
            return
        incumbent = Incumbent(
            goal if goal is not None else stack[-1].state,
            cost,
            path_here(goal),
            FoundAt(stats.expansions, time.perf_counter() - started),
        )
        trace.append(incumbent)
        emitter.improve(incumbent, _frontier_min(stack))

    def pop_and_return(rv_value: Cost, rv_fvalue: Cost) -> None:
        nonlocal entries
        frame = stack.pop()
        if frame.children is not None:
            entries -= sum(1 for c in frame.children if c.state is not None)
        if stack:
            parent = stack[-1]
            child = parent.active
            assert parent.children[0] is child
            child.value = rv_value
            child.fvalue = rv_fvalue
            parent.active = None
            parent.children.pop(0)
            insort(parent.children, child, key=StackEntry.sort_key)

    while stack:
        if limits.exceeded(stats, started):
            status = Status.INTERRUPTED
            break
        frame = stack[-1]
        upper: Cost = incumbent.cost if incumbent is not None else INF

        if frame.children is None:
            if space.is_goal(frame.state):
                if not anytime:
                    incumbent = Incumbent(
                        frame.state,
                        frame.g,
                        path_here(),
                        FoundAt(stats.expansions, time.perf_counter() - started),
                    )
                    trace.append(incumbent)
                    bounds = error_bound(incumbent, _frontier_min(stack), weight)
                    return SearchResult(Status.CONVERGED, incumbent, bounds, stats, trace)
                improve(None, frame.g)
                pop_and_return(frame.value, frame.g + frame.h)
                continue
            stats.expansions += 1
            if frame.state not in seen:
                seen.add(frame.state)
                stats.distinct_expanded += 1
            if on_expand is not None:
                on_expand(frame.state, frame.g, frame.h)
            succ = [
                (s, c)
                for s, c in space.successors(frame.state)
                if s != frame.parent_state
            ]
            stats.generated += len(succ)
            if not succ:
                pop_and_return(INF, INF)
                continue
            children: list[StackEntry] = []
            for order, (s2, cost) in enumerate(succ):
                g2 = frame.g + cost
                h2 = space.heuristic(s2)
                f2 = g2 + h2
                if anytime and space.is_goal(s2) and f2 < upper:
                    improve(s2, f2)
                    upper = incumbent.cost
                fvalue: Cost = frame.fvalue if f2 < frame.fvalue else f2
                if weighted_order:
                    static_order = q * g2 + p * h2
                    value: Cost = (
                        frame.value if static_order < frame.value else static_order
                    )
                    if anytime and fvalue >= upper:
                        value = INF
                        fvalue = INF
                else:
                    if anytime and f2 >= upper:
                        fvalue = INF
                    value = fvalue
                children.append(StackEntry(s2, g2, h2, order, value, fvalue))
            children.sort(key=StackEntry.sort_key)
            if len(children) == 1:
                children.append(
                    StackEntry(None, INF, 0, _SENTINEL_ORDER, INF, INF)
                )
            frame.children = children
            entries += len(succ)
            if entries > stats.stored:
                stats.stored = entries
            continue

        best = frame.children[0]
        if best.value >= INF:
            pop_and_return(best.value, min(c.fvalue for c in frame.children))
            continue
        if anytime and best.fvalue >= upper:
            if weighted_order:
                # Admissible bound says this branch cannot improve; retire it.
                child = frame.children.pop(0)
                child.value = INF
                child.fvalue = INF
                insort(frame.children, child, key=StackEntry.sort_key)
                continue
            pop_and_return(best.value, min(c.fvalue for c in frame.children))
            continue
        if guard_key(best) > frame.bound:
            pop_and_return(best.value, min(c.fvalue for c in frame.children))
            continue
        child_bound = min(frame.bound, guard_key(frame.children[1]))
        frame.active = best
        stack.append(
            _Frame(best.state, best.g, best.h, frame.state, best.value, best.fvalue, child_bound)
        )
        stats.recursive_calls += 1
        if anytime:
            emitter.step(incumbent, _frontier_min(stack))
            if incumbent is not None and emitter.bounds.lower >= incumbent.cost:
                status = Status.CONVERGED
                break

    else:
        if anytime and incumbent is not None:
            status = Status.CONVERGED

    bounds = emitter.finalize(incumbent, _frontier_min(stack) if stack else INF)
    return SearchResult(status, incumbent, bounds, stats, trace)


def rbfs_weighted(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None = None,
    *,
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Recursive best-first search ordered by the weighted evaluation.

    Backed-up values are weighted, new nodes are expanded in nondecreasing
    weighted order (regenerations aside), and the search exits at the
    first goal expansion.
    """
    return _drive(
        space,
        weight,
        limits,
        weighted_order=True,
        anytime=False,
        sink=None,
        on_expand=on_expand,
    )


def wrbfs(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None = None,
    *,
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Weighted search over the stack frontier.

    Backs up unweighted lower bounds F and weights the improved heuristic
    F - g when deciding how far to commit before backtracking.  Exits at
    the first goal expansion.
    """
    return _drive(
        space,
        weight,
        limits,
        weighted_order=False,
        anytime=False,
        sink=None,
        on_expand=on_expand,
    )


def anytime_wrbfs(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None = None,
    sink: Sink | None = None,
    *,
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Anytime stack-frontier search: converges to the optimum in linear space.

    Goals are tested at generation and the incumbent path is copied off
    the stack immediately.  Children whose f reaches the incumbent's cost
    are pruned by setting their backed-up value to infinity; the search
    is over when the stack empties or the frontier lower bound meets the
    incumbent.
    """
    return _drive(
        space,
        weight,
        limits,
        weighted_order=False,
        anytime=True,
        sink=sink,
        on_expand=on_expand,
    )


def anytime_rbfs_weighted(
    space: SearchSpace,
    weight: Weight,
    limits: SearchLimits | None = None,
    sink: Sink | None = None,
    *,
    on_expand: ExpandHook | None = None,
) -> SearchResult:
    """Anytime search ordered by weighted backed-up values.

    Keeps the admissible backed-up bound alongside the weighted ordering
    value of every stack entry and uses the admissible one for pruning,
    the lower bound, and convergence detection.
    """
    return _drive(
        space,
        weight,
        limits,
        weighted_order=True,
        anytime=True,
        sink=sink,
        on_expand=on_expand,
    )
