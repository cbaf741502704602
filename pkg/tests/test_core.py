import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from anysearch.core import (
    INF,
    ContractViolationWarning,
    NodeRecord,
    NodeStatus,
    OpenList,
    Weight,
    open_push,
    priority_key,
    reopen,
)


class TestWeight:
    def test_parse_fraction_and_integer(self):
        assert Weight.parse("3/2") == Weight(3, 2)
        assert Weight.parse("2") == Weight(2, 1)
        assert str(Weight(13, 10)) == "13/10"
        assert str(Weight(2, 1)) == "2"

    def test_requires_p_at_least_q_at_least_one(self):
        with pytest.raises(ValueError):
            Weight(1, 2)
        with pytest.raises(ValueError):
            Weight(3, 0)
        with pytest.raises(TypeError):
            Weight(1.5, 1)

    def test_epsilon(self):
        assert Weight(3, 2).epsilon() == Fraction(1, 2)
        assert Weight(1, 1).epsilon() == 0
        assert Weight(13, 10).epsilon() == Fraction(3, 10)

    def test_key_examples(self):
        assert priority_key(3, 4, Weight(3, 2)) == 18
        assert priority_key(5, 0, Weight(7, 1)) == 5
        assert priority_key(99, 100, Weight(100, 99)) == 19801

    def test_key_rejects_infinite_costs(self):
        with pytest.raises(ValueError):
            priority_key(INF, 0, Weight(1, 1))

    @given(
        st.lists(
            st.tuples(st.integers(0, 10**6), st.integers(0, 10**6)),
            min_size=2,
            max_size=20,
        ),
        st.integers(1, 50),
        st.integers(1, 50),
    )
    def test_key_order_matches_exact_rational_order(self, pairs, a, b):
        p, q = max(a, b), min(a, b)
        w = Weight(p, q)
        frac = w.as_fraction()
        by_key = sorted(pairs, key=lambda gh: w.key(*gh))
        by_rational = sorted(pairs, key=lambda gh: gh[0] + frac * gh[1])
        assert [w.key(*gh) for gh in by_key] == sorted(w.key(*gh) for gh in pairs)
        assert [gh[0] + frac * gh[1] for gh in by_rational] == [
            gh[0] + frac * gh[1] for gh in by_key
        ]

    def test_unit_weight_key_is_f(self):
        w = Weight(1, 1)
        for g, h in [(0, 0), (3, 4), (10, 0), (7, 7)]:
            assert w.key(g, h) == g + h


class TestInfinity:
    def test_compares_above_every_finite_cost(self):
        assert INF > 10**100
        assert not (INF < 10**100)

    def test_absorbing_under_addition(self):
        assert INF + 5 == INF
        assert 5 + INF == INF
        assert INF + INF == INF


class TestOpenList:
    def test_pop_minimal_key_first(self):
        ol = OpenList(Weight(1, 1))
        ol.push(NodeRecord("s1", 7, 0))
        ol.push(NodeRecord("s2", 3, 0))
        assert ol.pop_min().state == "s2"
        assert ol.pop_min().state == "s1"
        assert len(ol) == 0

    def test_decrease_key_replaces_without_duplicating(self):
        ol = OpenList(Weight(1, 1))
        rec = NodeRecord("s1", 7, 0)
        ol.push(rec)
        rec.g = 5
        ol.push(rec)
        popped = ol.pop_min()
        assert popped.g == 5
        assert len(ol) == 0

    def test_ties_break_on_least_h(self):
        ol = OpenList(Weight(1, 1))
        ol.push(NodeRecord("s1", 5, 2))
        ol.push(NodeRecord("s2", 6, 1))
        assert ol.pop_min().state == "s2"

    def test_fifo_beyond_equal_key_and_h(self):
        ol = OpenList(Weight(1, 1))
        ol.push(NodeRecord("a", 3, 1))
        ol.push(NodeRecord("b", 3, 1))
        assert ol.pop_min().state == "a"

    def test_fifo_tie_rule_variant(self):
        ol = OpenList(Weight(1, 1), tie_break="fifo")
        ol.push(NodeRecord("high-h", 2, 5))
        ol.push(NodeRecord("low-h", 6, 1))
        assert ol.pop_min().state == "high-h"

    def test_push_without_better_key_is_ignored(self):
        ol = OpenList(Weight(1, 1))
        rec = NodeRecord("s1", 5, 0)
        ol.push(rec)
        worse = NodeRecord("s1", 9, 0)
        with pytest.warns(ContractViolationWarning):
            assert not ol.push(worse)
        assert ol.pop_min().g == 5

    def test_peek_min_f_tracks_unweighted_f(self):
        ol = OpenList(Weight(3, 1))
        ol.push(NodeRecord("a", 0, 10))  # key 30, f 10
        ol.push(NodeRecord("b", 8, 1))  # key 11, f 9
        assert ol.peek_min_f() == 9
        assert ol.pop_min().state == "b"
        assert ol.peek_min_f() == 10

    def test_peek_min_f_empty_is_inf(self):
        assert OpenList().peek_min_f() == INF

    def test_rebuild_reorders_under_new_weight(self):
        ol = OpenList(Weight(5, 1))
        ol.push(NodeRecord("deep", 10, 1))  # key 15 under w=5, 11 under w=1
        ol.push(NodeRecord("shallow", 1, 3))  # key 16 under w=5, 4 under w=1
        assert ol.peek_min_key()[0] == 15
        ol.rebuild(Weight(1, 1))
        assert ol.pop_min().state == "shallow"

    def test_drained_pop_sequence_sorted_by_key_then_h(self):
        rng = random.Random(31)
        for _ in range(30):
            p = rng.randint(2, 6)
            ol = OpenList(Weight(p, 2))
            live = {}
            for _ in range(150):
                state = rng.randint(0, 40)
                g, h = rng.randint(0, 50), rng.randint(0, 50)
                if state in live:
                    if g < live[state].g:
                        live[state].g = g
                        ol.push(live[state])
                else:
                    rec = NodeRecord(state, g, h)
                    live[state] = rec
                    ol.push(rec)
                assert len(ol) == len(live)
            popped = []
            while len(ol):
                rec = ol.pop_min()
                popped.append((2 * rec.g + p * rec.h, rec.h))
            assert popped == sorted(popped)

    def test_every_pop_is_minimal_at_pop_time(self):
        rng = random.Random(7)
        ol = OpenList(Weight(3, 2))
        live = {}
        for step in range(500):
            if rng.random() < 0.6 or not live:
                state = rng.randint(0, 60)
                g, h = rng.randint(0, 30), rng.randint(0, 30)
                if state in live:
                    if g < live[state].g:
                        live[state].g = g
                        ol.push(live[state])
                else:
                    rec = NodeRecord(state, g, h)
                    live[state] = rec
                    ol.push(rec)
            else:
                expected = min((2 * r.g + 3 * r.h, r.h) for r in live.values())
                rec = ol.pop_min()
                assert (2 * rec.g + 3 * rec.h, rec.h) == expected
                del live[rec.state]


class TestReopen:
    def test_reopen_improves_g_and_requeues(self):
        ol = OpenList(Weight(1, 1))
        rec = NodeRecord("x", 10, 2, parent="p0", status=NodeStatus.CLOSED)
        reopen(ol, rec, 8, new_parent="p1")
        assert rec.status is NodeStatus.OPEN
        assert rec.g == 8 and rec.parent == "p1"
        assert ol.pop_min() is rec

    def test_reopen_without_improvement_is_a_flagged_noop(self):
        ol = OpenList(Weight(1, 1))
        rec = NodeRecord("x", 10, 2, status=NodeStatus.CLOSED)
        with pytest.warns(ContractViolationWarning):
            reopen(ol, rec, 10)
        assert rec.g == 10
        assert rec.status is NodeStatus.CLOSED
        assert len(ol) == 0

    def test_parent_chain_cost_equals_g_after_random_relaxations(self):
        # Simulate relaxation over random digraphs with the contract ops and
        # check every record's parent chain re-sums to its g.
        rng = random.Random(11)
        for trial in range(20):
            n = rng.randint(4, 9)
            edges = {}
            for _ in range(3 * n):
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v and (u, v) not in edges:
                    edges[(u, v)] = rng.randint(1, 9)
            adj = {u: [] for u in range(n)}
            for (u, v), c in edges.items():
                adj[u].append((v, c))
            ol = OpenList(Weight(2, 1))
            records = {0: NodeRecord(0, 0, 0)}
            open_push(ol, records[0])
            while len(ol):
                rec = ol.pop_min()
                rec.status = NodeStatus.CLOSED
                for v, c in adj[rec.state]:
                    g2 = rec.g + c
                    held = records.get(v)
                    if held is None:
                        held = NodeRecord(v, g2, 0, parent=rec.state)
                        records[v] = held
                        open_push(ol, held)
                    elif g2 < held.g:
                        if held.status is NodeStatus.CLOSED:
                            reopen(ol, held, g2, new_parent=rec.state)
                        else:
                            held.g = g2
                            held.parent = rec.state
                            ol.push(held)
            for rec in records.values():
                total = 0
                node = rec
                while node.parent is not None:
                    total += edges[(node.parent, node.state)]
                    node = records[node.parent]
                assert total == rec.g
