"""Independent ground-truth solvers used only by tests and acceptance checks.

None of these share search machinery with the main algorithms: uniform-cost
search is a bare Dijkstra over the space contract, path enumeration walks
every simple path, and the alignment solver sweeps the full lattice with
dynamic programming.  They favor clarity over speed and fail loudly at
their resource caps.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .core import Cost, SearchSpace, StateId
from .domains.graphs import ExplicitGraph
from .domains.msa import MsaState, ScoringScheme


class NoSolutionError(RuntimeError):
    """The instance provably has no solution."""


class OracleLimitError(RuntimeError):
    """The instance exceeds the oracle's hard resource cap."""


@dataclass(frozen=True)
class OracleResult:
    optimal_cost: int
    optimal_path: tuple[StateId, ...]
    explored: int


def uniform_cost(space: SearchSpace, max_expansions: int = 2_000_000) -> OracleResult:
    """Exact cheapest-path cost by Dijkstra, ignoring the heuristic."""
    start = space.start()
    best: dict[StateId, int] = {start: 0}
    parent: dict[StateId, StateId | None] = {start: None}
    counter = itertools.count()
    frontier: list[tuple[int, int, StateId]] = [(0, next(counter), start)]
    done: set[StateId] = set()
    explored = 0
    while frontier:
        d, _, state = heapq.heappop(frontier)
        if state in done:
            continue
        if space.is_goal(state):
            path = [state]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            path.reverse()
            return OracleResult(d, tuple(path), explored)
        done.add(state)
        explored += 1
        if explored > max_expansions:
            raise OracleLimitError(f"uniform-cost cap of {max_expansions} expansions hit")
        for nxt, cost in space.successors(state):
            nd = d + cost
            if nxt not in best or nd < best[nxt]:
                best[nxt] = nd
                parent[nxt] = state
                heapq.heappush(frontier, (nd, next(counter), nxt))
    raise NoSolutionError("goal unreachable")


def enumerate_paths(graph: ExplicitGraph, max_len: int | None = None) -> OracleResult:
    """Exact minimum over every simple start-to-goal path; tiny graphs only."""
    if graph.n_vertices > 10:
        raise OracleLimitError("path enumeration is capped at 10 vertices")
    limit = max_len if max_len is not None else graph.n_vertices
    best_cost: Cost | None = None
    best_path: tuple[int, ...] | None = None
    explored = 0

    def walk(vertex: int, cost: int, path: list[int]) -> None:
        nonlocal best_cost, best_path, explored
        explored += 1
        if graph.is_goal(vertex):
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_path = tuple(path)
            return
        if len(path) > limit:
            return
        for nxt, c in graph.successors(vertex):
            if nxt not in path:
                path.append(nxt)
                walk(nxt, cost + c, path)
                path.pop()

    walk(graph.start(), 0, [graph.start()])
    if best_cost is None:
        raise NoSolutionError("goal unreachable")
    return OracleResult(best_cost, best_path, explored)


def exact_alignment(
    sequences: list[str],
    scheme: ScoringScheme,
    max_cells: int = 1_000_000,
) -> OracleResult:
    """Exact sum-of-pairs optimum for 2 or 3 sequences by full-lattice DP."""
    n = len(sequences)
    if n not in (2, 3):
        raise OracleLimitError("exact alignment supports 2 or 3 sequences")
    dims = [len(seq) + 1 for seq in sequences]
    cells = 1
    for d in dims:
        cells *= d
    if cells > max_cells:
        raise OracleLimitError(f"lattice of {cells} cells exceeds cap {max_cells}")

    codes = [[scheme.encode(ch) for ch in seq] for seq in sequences]
    costs = scheme.costs
    gap = scheme.gap_cost
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    moves = []
    for mask in range(1, 1 << n):
        delta = tuple((mask >> i) & 1 for i in range(n))
        pair_kinds = []
        for i, j in pairs:
            if delta[i] and delta[j]:
                pair_kinds.append((i, j))
            elif delta[i] or delta[j]:
                pair_kinds.append(None)
        gaps = gap * sum(1 for k in pair_kinds if k is None)
        subs = [k for k in pair_kinds if k is not None]
        moves.append((delta, gaps, subs))

    dist: dict[MsaState, int] = {}
    ranges = [range(d) for d in dims]
    for point in itertools.product(*ranges):
        if all(p == 0 for p in point):
            dist[point] = 0
            continue
        best = None
        for delta, gaps, subs in moves:
            prev = tuple(p - d for p, d in zip(point, delta))
            if any(p < 0 for p in prev):
                continue
            move_cost = gaps
            for i, j in subs:
                move_cost += costs[codes[i][prev[i]]][codes[j][prev[j]]]
            candidate = dist[prev] + move_cost
            if best is None or candidate < best:
                best = candidate
        dist[point] = best

    goal = tuple(d - 1 for d in dims)
    path = [goal]
    point = goal
    while any(p > 0 for p in point):
        chosen = None
        for delta, gaps, subs in moves:
            prev = tuple(p - d for p, d in zip(point, delta))
            if any(p < 0 for p in prev):
                continue
            move_cost = gaps
            for i, j in subs:
                move_cost += costs[codes[i][prev[i]]][codes[j][prev[j]]]
            if dist[prev] + move_cost == dist[point]:
                chosen = prev
                break
        point = chosen
        path.append(point)
    path.reverse()
    return OracleResult(dist[goal], tuple(path), cells)


def suffix_costs(
    sequences: list[str],
    scheme: ScoringScheme,
    max_cells: int = 1_000_000,
) -> dict[MsaState, int]:
    """Exact remaining cost from every lattice point, by backward full-lattice DP.

    Test-side companion to :func:`exact_alignment` for admissibility audits.
    """
    n = len(sequences)
    if n not in (2, 3):
        raise OracleLimitError("suffix sweep supports 2 or 3 sequences")
    dims = [len(seq) + 1 for seq in sequences]
    cells = 1
    for d in dims:
        cells *= d
    if cells > max_cells:
        raise OracleLimitError(f"lattice of {cells} cells exceeds cap {max_cells}")
    codes = [[scheme.encode(ch) for ch in seq] for seq in sequences]
    costs = scheme.costs
    gap = scheme.gap_cost
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    moves = []
    for mask in range(1, 1 << n):
        delta = tuple((mask >> i) & 1 for i in range(n))
        moves.append(delta)

    remaining: dict[MsaState, int] = {}
    ranges = [range(d - 1, -1, -1) for d in dims]
    goal = tuple(d - 1 for d in dims)
    for point in itertools.product(*ranges):
        if point == goal:
            remaining[point] = 0
            continue
        best = None
        for delta in moves:
            nxt = tuple(p + d for p, d in zip(point, delta))
            if any(a > b for a, b in zip(nxt, goal)):
                continue
            move_cost = 0
            for i, j in pairs:
                if delta[i] and delta[j]:
                    move_cost += costs[codes[i][point[i]]][codes[j][point[j]]]
                elif delta[i] or delta[j]:
                    move_cost += gap
            candidate = move_cost + remaining[nxt]
            if best is None or candidate < best:
                best = candidate
        remaining[point] = best
    return remaining
