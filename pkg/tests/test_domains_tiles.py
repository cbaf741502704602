import random

import pytest

from anysearch import SearchLimits, astar
from anysearch.domains import (
    ParseError,
    TilePuzzle,
    ValidationError,
    gen_tiles,
    is_solvable,
    load_tiles,
    manhattan_h,
    tile_successors,
)
from anysearch.domains.tiles import format_tiles, goal_state


def independent_tile_table(width):
    """Per-tile distance table built from scratch, for cross-checking."""
    table = {}
    for tile in range(1, width * width):
        for pos in range(width * width):
            r1, c1 = divmod(pos, width)
            r2, c2 = divmod(tile, width)
            table[(tile, pos)] = abs(r1 - r2) + abs(c1 - c2)
    return table


class TestManhattan:
    def test_goal_is_zero(self):
        assert manhattan_h(goal_state(3), 3) == 0
        assert manhattan_h(goal_state(4), 4) == 0

    def test_single_displaced_tile(self):
        # Tile 1 slid left into the blank's home corner.
        assert manhattan_h((1, 0, 2, 3, 4, 5, 6, 7, 8), 3) == 1

    def test_reversed_board_against_independent_table(self):
        board = tuple(reversed(range(9)))
        table = independent_tile_table(3)
        expected = sum(
            table[(tile, pos)] for pos, tile in enumerate(board) if tile != 0
        )
        assert manhattan_h(board, 3) == expected == 20

    def test_consistency_one_step_change(self):
        rng = random.Random(5)
        state = goal_state(3)
        for _ in range(300):
            nxt, _ = rng.choice(tile_successors(state, 3))
            assert abs(manhattan_h(nxt, 3) - manhattan_h(state, 3)) <= 1
            state = nxt


class TestSuccessors:
    def test_corner_blank_has_two_moves(self):
        assert len(tile_successors(goal_state(3), 3)) == 2

    def test_center_blank_has_four_moves(self):
        state = (4, 1, 2, 3, 0, 5, 6, 7, 8)
        assert len(tile_successors(state, 3)) == 4

    def test_moves_cost_one_and_invert(self):
        state = gen_tiles(3, 12, seed=2).tiles
        for nxt, cost in tile_successors(state, 3):
            assert cost == 1
            assert state in [s for s, _ in tile_successors(nxt, 3)]


class TestSolvability:
    def test_goal_and_neighbors_solvable(self):
        assert is_solvable(goal_state(3), 3)
        for nxt, _ in tile_successors(goal_state(3), 3):
            assert is_solvable(nxt, 3)

    def test_two_tile_swap_is_unsolvable(self):
        tiles = list(goal_state(3))
        tiles[1], tiles[2] = tiles[2], tiles[1]
        assert not is_solvable(tuple(tiles), 3)
        with pytest.raises(ValidationError):
            TilePuzzle(3, tuple(tiles))

    def test_solvability_preserved_by_walks(self):
        for seed in range(10):
            assert is_solvable(gen_tiles(4, 25, seed=seed).tiles, 4)


class TestLoadTiles:
    def test_example_parse(self):
        puzzle = load_tiles("3\n1 2 0 3 4 5 6 7 8")
        assert puzzle.width == 3
        assert puzzle.tiles.index(0) == 2

    def test_roundtrip(self):
        puzzle = gen_tiles(4, 20, seed=9)
        again = load_tiles(format_tiles(puzzle, comment="roundtrip"))
        assert again.tiles == puzzle.tiles

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(ParseError, match="line 1"):
            load_tiles("three\n1 2 0 3 4 5 6 7 8")
        with pytest.raises(ParseError, match="expected 9 tiles"):
            load_tiles("3\n1 2 0")
        with pytest.raises(ParseError):
            load_tiles("")

    def test_bad_permutation_rejected(self):
        with pytest.raises(ValidationError):
            load_tiles("3\n1 1 2 3 4 5 6 7 8")


class TestGenTiles:
    def test_deterministic(self):
        assert gen_tiles(3, 30, seed=4).tiles == gen_tiles(3, 30, seed=4).tiles

    def test_seeds_vary(self):
        boards = {gen_tiles(3, 30, seed=s).tiles for s in range(8)}
        assert len(boards) > 1

    def test_generated_instances_solve_within_default_limits(self):
        for seed in range(5):
            puzzle = gen_tiles(3, 40, seed=seed)
            result = astar(puzzle, SearchLimits(max_expansions=200_000))
            assert result.converged
            assert result.incumbent.cost <= 40
