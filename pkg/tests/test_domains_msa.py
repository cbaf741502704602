import random

import pytest

from anysearch.domains import (
    MsaProblem,
    PAM250_SCHEME,
    ParseError,
    ValidationError,
    alignment_cost,
    gen_sequences,
    load_fasta,
    load_scheme,
    msa_successors,
    pairwise_heuristic,
)
from anysearch.domains.msa import (
    ScoringScheme,
    alignment_from_path,
    build_suffix_tables,
    format_fasta,
    format_scheme,
)
from anysearch.oracle import exact_alignment, suffix_costs


class TestScheme:
    def test_costs_nonnegative_and_symmetric(self):
        n = len(PAM250_SCHEME.alphabet)
        for i in range(n):
            for j in range(n):
                assert PAM250_SCHEME.costs[i][j] >= 0
                assert PAM250_SCHEME.costs[i][j] == PAM250_SCHEME.costs[j][i]

    def test_transform_constants(self):
        assert PAM250_SCHEME.max_score == 17
        assert PAM250_SCHEME.gap_cost == 8
        assert PAM250_SCHEME.cost("W", "W") == 0
        assert PAM250_SCHEME.cost("A", "A") == 15
        assert PAM250_SCHEME.cost("C", "W") == 25

    def test_identity_cost_below_double_gap(self):
        # Matching two identical residues always beats two gap columns.
        for ch in PAM250_SCHEME.alphabet:
            assert PAM250_SCHEME.cost(ch, ch) < 2 * PAM250_SCHEME.gap_cost

    def test_scheme_file_roundtrip(self):
        text = format_scheme(PAM250_SCHEME)
        again = load_scheme(text)
        assert again.costs == PAM250_SCHEME.costs
        assert again.gap_cost == 8
        assert again.max_score == 17

    def test_scheme_parse_errors(self):
        with pytest.raises(ParseError, match="missing 'alphabet'"):
            load_scheme("gap_cost 8\ntransform max_score 17\nsimilarity\n0")
        with pytest.raises(ParseError, match="similarity rows"):
            load_scheme(
                "alphabet AR\ngap_cost 8\ntransform max_score 2\nsimilarity\n2 0\n"
            )

    def test_asymmetric_matrix_rejected(self):
        with pytest.raises(ValidationError, match="symmetric"):
            ScoringScheme("AR", 8, ((0, 1), (2, 0)))

    def test_unknown_residue(self):
        with pytest.raises(ValidationError, match="unknown residue"):
            PAM250_SCHEME.cost("A", "B")


class TestSuccessors:
    def test_two_unfinished_sequences_give_three_moves(self):
        assert len(msa_successors((0, 0), ["AR", "ND"], PAM250_SCHEME)) == 3

    def test_three_sequences_give_seven_moves(self):
        assert len(msa_successors((0, 0, 0), ["AR", "ND", "CQ"], PAM250_SCHEME)) == 7

    def test_single_advance_costs_one_gap(self):
        moves = dict(msa_successors((0, 0), ["AR", "ND"], PAM250_SCHEME))
        assert moves[(1, 0)] == 8
        assert moves[(0, 1)] == 8

    def test_joint_advance_costs_substitution(self):
        moves = dict(msa_successors((0, 0), ["AR", "ND"], PAM250_SCHEME))
        assert moves[(1, 1)] == PAM250_SCHEME.cost("A", "N")

    def test_finished_sequences_stop_advancing(self):
        moves = msa_successors((2, 0), ["AR", "ND"], PAM250_SCHEME)
        assert all(nxt[0] == 2 for nxt, _ in moves)
        assert len(moves) == 1


class TestPairwiseHeuristic:
    def test_goal_state_is_zero(self):
        seqs = ["ARN", "DC"]
        tables = build_suffix_tables(seqs, PAM250_SCHEME)
        assert pairwise_heuristic((3, 2), tables) == 0

    def test_exact_for_two_sequences(self):
        rng = random.Random(3)
        for _ in range(10):
            seqs = [s for _, s in gen_sequences(2, 4, 9, seed=rng.randint(0, 999))]
            tables = build_suffix_tables(seqs, PAM250_SCHEME)
            oracle = exact_alignment(seqs, PAM250_SCHEME)
            assert pairwise_heuristic((0, 0), tables) == oracle.optimal_cost

    def test_admissible_at_every_lattice_point_for_three_sequences(self):
        for seed in range(5):
            seqs = [s for _, s in gen_sequences(3, 4, 7, seed=seed)]
            tables = build_suffix_tables(seqs, PAM250_SCHEME)
            remaining = suffix_costs(seqs, PAM250_SCHEME)
            for state, true_left in remaining.items():
                assert pairwise_heuristic(state, tables) <= true_left


class TestCostDecomposition:
    def test_path_cost_equals_alignment_cost(self):
        rng = random.Random(17)
        for seed in range(10):
            seqs = [s for _, s in gen_sequences(3, 3, 6, seed=seed)]
            problem = MsaProblem(seqs)
            state = problem.start()
            path = [state]
            total = 0
            while not problem.is_goal(state):
                nxt, cost = rng.choice(problem.successors(state))
                total += cost
                state = nxt
                path.append(state)
            columns = alignment_from_path(path, seqs)
            assert alignment_cost(columns, PAM250_SCHEME) == total


class TestFasta:
    def test_load_and_roundtrip(self):
        text = ">a\nARNDC\n>b\nQEGH\nILK\n"
        entries = load_fasta(text)
        assert entries == [("a", "ARNDC"), ("b", "QEGHILK")]
        assert load_fasta(format_fasta(entries)) == entries

    def test_invalid_residue_names_character(self):
        with pytest.raises(ParseError, match="'B'"):
            load_fasta(">a\nAB\n")

    def test_data_before_header_rejected(self):
        with pytest.raises(ParseError, match="before any '>'"):
            load_fasta("ARN\n")

    def test_gen_sequences_deterministic(self):
        assert gen_sequences(3, 8, 12, seed=5) == gen_sequences(3, 8, 12, seed=5)


class TestProblem:
    def test_needs_two_sequences(self):
        with pytest.raises(ValidationError):
            MsaProblem(["ARN"])

    def test_heuristic_at_goal_zero(self):
        problem = MsaProblem(["AR", "ND"])
        assert problem.heuristic((2, 2)) == 0
