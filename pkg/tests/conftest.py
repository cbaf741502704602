import pytest

from anysearch.domains import ExplicitGraph, gen_graph


@pytest.fixture
def diamond_graph():
    """Two goal paths of costs 4 and 5, zero heuristic everywhere."""
    return ExplicitGraph(
        4,
        [(0, 1, 1), (0, 2, 1), (1, 3, 4), (2, 3, 3)],
        start=0,
        goals={3},
        heuristic_values=[0, 0, 0, 0],
    )


@pytest.fixture
def reopen_graph():
    """Under weight 2, vertex 3 is closed at g=5 via 0-1-3, then reopened at g=4
    via 0-2-3; the optimal route to the goal 4 costs 6."""
    return ExplicitGraph(
        5,
        [(0, 1, 1), (1, 3, 4), (0, 2, 3), (2, 3, 1), (3, 4, 2)],
        start=0,
        goals={4},
        heuristic_values=[0, 0, 3, 2, 0],
    )


@pytest.fixture
def chain_graph():
    """Directed 3-node chain with edge costs 2 and 3."""
    return ExplicitGraph(
        3,
        [(0, 1, 2), (1, 2, 3)],
        start=0,
        goals={2},
        heuristic_values=[0, 0, 0],
    )


def make_random_graphs(count, seed_base=0, vertices=(4, 8), edge_factor=2.5, costs=(1, 9)):
    graphs = []
    for i in range(count):
        n = vertices[0] + (i % (vertices[1] - vertices[0] + 1))
        graphs.append(
            gen_graph(
                n,
                int(n * edge_factor),
                costs[0],
                costs[1],
                seed=seed_base + i,
            )
        )
    return graphs
