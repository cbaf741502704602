"""Explicit weighted digraphs with per-vertex heuristic labels.

The loader validates every invariant the search algorithms rely on:
non-negative integer edge costs of at least 1, heuristic 0 at goals, and
admissibility of the heuristic labels against an internal uniform-cost
sweep over the reversed graph.
"""

from __future__ import annotations

import heapq
import math
import random

from ..core import INF, Cost, SearchSpace, StateId
from . import ParseError, ValidationError


class ExplicitGraph(SearchSpace):
    """A digraph given by an edge list, a start vertex, and a goal set."""

    def __init__(
        self,
        n_vertices: int,
        edges: list[tuple[int, int, int]],
        start: int,
        goals: set[int],
        heuristic_values: list[int],
    ) -> None:
        self.n_vertices = n_vertices
        self.edges = list(edges)
        self._start = start
        self.goals = set(goals)
        self.h_values = list(heuristic_values)
        self._adj: list[list[tuple[int, int]]] = [[] for _ in range(n_vertices)]
        for u, v, c in self.edges:
            self._adj[u].append((v, c))
        self._validate()

    def _validate(self) -> None:
        if not (0 <= self._start < self.n_vertices):
            raise ValidationError("start vertex out of range")
        if not self.goals:
            raise ValidationError("goal set is empty")
        for g in self.goals:
            if not (0 <= g < self.n_vertices):
                raise ValidationError("goal vertex out of range")
        if len(self.h_values) != self.n_vertices:
            raise ValidationError("heuristic line must label every vertex")
        for u, v, c in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValidationError(f"edge ({u}, {v}) out of range")
            if c < 1:
                raise ValidationError(f"edge ({u}, {v}) has cost {c} < 1")
        for v, h in enumerate(self.h_values):
            if h < 0:
                raise ValidationError(f"heuristic of vertex {v} is negative")
        for g in self.goals:
            if self.h_values[g] != 0:
                raise ValidationError(f"goal vertex {g} has nonzero heuristic")
        dist = self.distances_to_goal()
        for v, h in enumerate(self.h_values):
            if h > dist[v]:
                raise ValidationError(
                    f"heuristic of vertex {v} is {h}, exceeds true distance {dist[v]}"
                )

    def distances_to_goal(self) -> list[Cost]:
        """Exact distance from every vertex to the nearest goal (INF if none)."""
        rev: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for u, v, c in self.edges:
            rev[v].append((u, c))
        dist: list[Cost] = [INF] * self.n_vertices
        heap = [(0, g) for g in sorted(self.goals)]
        for _, g in heap:
            dist[g] = 0
        heapq.heapify(heap)
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for u, c in rev[v]:
                nd = d + c
                if nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, u))
        return dist

    # SearchSpace contract

    def start(self) -> StateId:
        return self._start

    def is_goal(self, state: StateId) -> bool:
        return state in self.goals

    def successors(self, state: StateId) -> list[tuple[StateId, int]]:
        return self._adj[state]

    def heuristic(self, state: StateId) -> int:
        return self.h_values[state]


def _data_lines(text: str) -> list[tuple[int, str]]:
    """Non-empty, non-comment lines paired with their 1-based line numbers."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def _ints(line: str, lineno: int, expect: int | None = None) -> list[int]:
    try:
        values = [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise ParseError(f"line {lineno}: expected integers: {exc}") from None
    if expect is not None and len(values) != expect:
        raise ParseError(f"line {lineno}: expected {expect} values, got {len(values)}")
    return values


def load_graph(text: str) -> ExplicitGraph:
    """Parse the graph instance format.

    Layout: header ``V E start goal_count``, a line of goal vertices, a
    line of V heuristic values, then E lines ``u v cost``.  Lines starting
    with ``#`` are ignored.
    """
    lines = _data_lines(text)
    if not lines:
        raise ParseError("line 1: empty graph file")
    lineno, header = lines[0]
    n, m, start, goal_count = _ints(header, lineno, expect=4)
    if len(lines) < 3 + m:
        raise ParseError(f"line {lines[-1][0]}: file ends before {m} edge lines")
    lineno, goal_line = lines[1]
    goals = _ints(goal_line, lineno, expect=goal_count)
    lineno, h_line = lines[2]
    h_values = _ints(h_line, lineno, expect=n)
    edges = []
    for lineno, line in lines[3 : 3 + m]:
        u, v, c = _ints(line, lineno, expect=3)
        edges.append((u, v, c))
    return ExplicitGraph(n, edges, start, set(goals), h_values)


def format_graph(graph: ExplicitGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{graph.n_vertices} {len(graph.edges)} {graph.start()} {len(graph.goals)}")
    lines.append(" ".join(str(g) for g in sorted(graph.goals)))
    lines.append(" ".join(str(h) for h in graph.h_values))
    lines.extend(f"{u} {v} {c}" for u, v, c in graph.edges)
    return "\n".join(lines) + "\n"


def gen_graph(
    n_vertices: int,
    n_edges: int,
    cost_min: int = 1,
    cost_max: int = 10,
    seed: int = 0,
) -> ExplicitGraph:
    """Deterministic random solvable digraph with admissible heuristics.

    A random backbone path from vertex 0 to vertex n-1 guarantees
    solvability; extra edges are sprinkled on top.  Heuristic labels are
    the true goal distance scaled down by one random factor <= 1 and
    rounded up, which keeps them admissible, consistent, and nonzero off
    the goal.
    """
    if n_vertices < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    start, goal = 0, n_vertices - 1

    middle = list(range(1, n_vertices - 1))
    rng.shuffle(middle)
    hops = middle[: rng.randint(0, min(3, len(middle)))]
    backbone = [start] + hops + [goal]
    edge_set: dict[tuple[int, int], int] = {}
    for u, v in zip(backbone, backbone[1:]):
        edge_set[(u, v)] = rng.randint(cost_min, cost_max)
    attempts = 0
    while len(edge_set) < n_edges and attempts < 20 * n_edges:
        attempts += 1
        u = rng.randrange(n_vertices)
        v = rng.randrange(n_vertices)
        if u != v and (u, v) not in edge_set:
            edge_set[(u, v)] = rng.randint(cost_min, cost_max)
    edges = [(u, v, c) for (u, v), c in edge_set.items()]

    scale = rng.uniform(0.3, 1.0)
    probe = ExplicitGraph(n_vertices, edges, start, {goal}, [0] * n_vertices)
    dist = probe.distances_to_goal()
    h_values = [
        0 if d == INF or d == 0 else math.ceil(scale * d) for d in dist
    ]
    return ExplicitGraph(n_vertices, edges, start, {goal}, h_values)
