"""Sliding-tile puzzles (3x3 and 4x4) with the Manhattan-distance heuristic.

The goal configuration places the blank in the upper-left corner with the
tiles in numerical order, so tile t belongs at cell index t.  States are
row-major tuples with 0 as the blank.
"""

from __future__ import annotations

import random

from ..core import SearchSpace, StateId
from . import ParseError, ValidationError

TileState = tuple[int, ...]

_NEIGHBORS: dict[int, list[tuple[int, ...]]] = {}
_DIST: dict[int, list[list[int]]] = {}


def _tables(width: int) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    if width not in _NEIGHBORS:
        size = width * width
        nbrs = []
        for pos in range(size):
            r, c = divmod(pos, width)
            cell = []
            if r > 0:
                cell.append(pos - width)
            if c > 0:
                cell.append(pos - 1)
            if c < width - 1:
                cell.append(pos + 1)
            if r < width - 1:
                cell.append(pos + width)
            nbrs.append(tuple(cell))
        dist = [[0] * size for _ in range(size)]
        for tile in range(size):
            tr, tc = divmod(tile, width)
            for pos in range(size):
                r, c = divmod(pos, width)
                dist[tile][pos] = abs(r - tr) + abs(c - tc)
        _NEIGHBORS[width] = nbrs
        _DIST[width] = dist
    return _NEIGHBORS[width], _DIST[width]


def goal_state(width: int) -> TileState:
    return tuple(range(width * width))


def manhattan_h(tiles: TileState, width: int) -> int:
    """Sum over non-blank tiles of the grid distance to the tile's home cell."""
    _, dist = _tables(width)
    total = 0
    for pos, tile in enumerate(tiles):
        if tile:
            total += dist[tile][pos]
    return total


def tile_successors(tiles: TileState, width: int) -> list[tuple[TileState, int]]:
    """Unit-cost moves sliding an orthogonal neighbor into the blank."""
    nbrs, _ = _tables(width)
    blank = tiles.index(0)
    out = []
    for pos in nbrs[blank]:
        nxt = list(tiles)
        nxt[blank] = nxt[pos]
        nxt[pos] = 0
        out.append((tuple(nxt), 1))
    return out


def is_solvable(tiles: TileState, width: int) -> bool:
    """Reachability of the blank-first goal by the standard parity argument.

    A move is a transposition of the blank with a tile and changes the
    blank's taxicab offset by one, so inversion parity plus blank-distance
    parity is invariant and must be even (it is zero at the goal).
    """
    inversions = 0
    size = width * width
    for i in range(size):
        for j in range(i + 1, size):
            if tiles[i] > tiles[j]:
                inversions += 1
    blank = tiles.index(0)
    r, c = divmod(blank, width)
    return (inversions + r + c) % 2 == 0


class TilePuzzle(SearchSpace):
    """Search-space wrapper around one start configuration."""

    def __init__(self, width: int, tiles: TileState) -> None:
        if width not in (3, 4):
            raise ValidationError(f"width must be 3 or 4, got {width}")
        if sorted(tiles) != list(range(width * width)):
            raise ValidationError("tiles must be a permutation of 0..width^2-1")
        if not is_solvable(tiles, width):
            raise ValidationError("tile configuration is not solvable")
        self.width = width
        self.tiles = tuple(tiles)
        self._goal = goal_state(width)

    def start(self) -> StateId:
        return self.tiles

    def is_goal(self, state: StateId) -> bool:
        return state == self._goal

    def successors(self, state: StateId) -> list[tuple[StateId, int]]:
        return tile_successors(state, self.width)

    def heuristic(self, state: StateId) -> int:
        return manhattan_h(state, self.width)


def load_tiles(text: str) -> TilePuzzle:
    """Parse a tile instance: width on the first line, row-major tiles next."""
    lines = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(lines) < 2:
        raise ParseError("line 1: expected a width line and a tiles line")
    lineno, head = lines[0]
    try:
        width = int(head)
    except ValueError:
        raise ParseError(f"line {lineno}: width must be an integer") from None
    body = " ".join(line for _, line in lines[1:])
    try:
        tiles = tuple(int(tok) for tok in body.split())
    except ValueError:
        raise ParseError(f"line {lines[1][0]}: tiles must be integers") from None
    if len(tiles) != width * width:
        raise ParseError(
            f"line {lines[1][0]}: expected {width * width} tiles, got {len(tiles)}"
        )
    return TilePuzzle(width, tiles)


def format_tiles(puzzle: TilePuzzle, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(str(puzzle.width))
    lines.append(" ".join(str(t) for t in puzzle.tiles))
    return "\n".join(lines) + "\n"


def gen_tiles(width: int, walk: int, seed: int = 0) -> TilePuzzle:
    """Scramble the goal with a seeded random walk that never undoes a move."""
    rng = random.Random(seed)
    state = goal_state(width)
    previous: TileState | None = None
    for _ in range(walk):
        moves = [s for s, _ in tile_successors(state, width) if s != previous]
        previous = state
        state = rng.choice(moves)
    return TilePuzzle(width, state)
