import pytest

from anysearch.core import INF
from anysearch.domains import ExplicitGraph, ParseError, ValidationError, gen_graph, load_graph
from anysearch.domains.graphs import format_graph

GOOD = """\
# tiny example
4 4 0 1
3
2 1 1 0
0 1 1
0 2 3
1 3 2
2 3 1
"""


class TestLoadGraph:
    def test_parses_header_goals_heuristics_edges(self):
        g = load_graph(GOOD)
        assert g.n_vertices == 4
        assert g.start() == 0
        assert g.is_goal(3) and not g.is_goal(0)
        assert g.heuristic(0) == 2
        assert sorted(g.successors(0)) == [(1, 1), (2, 3)]

    def test_roundtrip(self):
        g = load_graph(GOOD)
        again = load_graph(format_graph(g, comment="roundtrip"))
        assert again.edges == g.edges
        assert again.h_values == g.h_values

    def test_parse_error_names_line(self):
        with pytest.raises(ParseError, match="line 1"):
            load_graph("4 4 0 x\n3\n0 0 0 0\n0 1 1\n0 2 3\n1 3 2\n2 3 1")
        with pytest.raises(ParseError, match="line 4"):
            load_graph("4 4 0 1\n3\n0 0 0 0\n0 1 oops\n0 2 3\n1 3 2\n2 3 1")
        with pytest.raises(ParseError, match="edge lines"):
            load_graph("4 4 0 1\n3\n0 0 0 0\n0 1 1")

    def test_negative_edge_cost_rejected(self):
        bad = GOOD.replace("0 2 3", "0 2 -3")
        with pytest.raises(ValidationError, match="cost"):
            load_graph(bad)

    def test_zero_edge_cost_rejected(self):
        bad = GOOD.replace("2 3 1", "2 3 0")
        with pytest.raises(ValidationError, match="cost"):
            load_graph(bad)

    def test_inadmissible_heuristic_rejected(self):
        bad = GOOD.replace("2 1 1 0", "4 1 1 0")  # h(0)=4 > dist(0)=3
        with pytest.raises(ValidationError, match="exceeds true distance"):
            load_graph(bad)

    def test_nonzero_goal_heuristic_rejected(self):
        bad = GOOD.replace("2 1 1 0", "2 1 1 1")
        with pytest.raises(ValidationError, match="goal"):
            load_graph(bad)

    def test_out_of_range_edge_rejected(self):
        bad = GOOD.replace("2 3 1", "2 9 1")
        with pytest.raises(ValidationError, match="out of range"):
            load_graph(bad)


class TestDistances:
    def test_distances_to_goal(self):
        g = load_graph(GOOD)
        assert g.distances_to_goal() == [3, 2, 1, 0]

    def test_unreachable_vertex_is_inf(self):
        g = ExplicitGraph(3, [(0, 2, 5)], 0, {2}, [5, 0, 0])
        assert g.distances_to_goal()[1] == INF


class TestGenGraph:
    def test_deterministic(self):
        a = gen_graph(12, 30, 1, 9, seed=3)
        b = gen_graph(12, 30, 1, 9, seed=3)
        assert a.edges == b.edges and a.h_values == b.h_values

    def test_admissible_by_construction(self):
        for seed in range(20):
            g = gen_graph(15, 40, 1, 9, seed=seed)
            text = format_graph(g)
            load_graph(text)  # re-validates admissibility and costs

    def test_goal_reachable(self):
        for seed in range(20):
            g = gen_graph(10, 12, 1, 5, seed=seed)
            assert g.distances_to_goal()[g.start()] != INF

    def test_heuristic_nonzero_off_goal_for_reachable(self):
        for seed in range(10):
            g = gen_graph(10, 25, 1, 1, seed=seed)
            dist = g.distances_to_goal()
            for v in range(g.n_vertices):
                if dist[v] not in (0, INF):
                    assert g.heuristic(v) >= 1
