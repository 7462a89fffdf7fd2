"""
Tests for the circular-lemma arithmetic and the Folner constant
"""

import pytest

from src.core.arithmetic import (
    DivisibilityGraph,
    divides_mersenne,
    folner_bound_check,
    folner_square,
    folner_steps,
    is_all_ones,
    ord2_mod,
    order_tuple_search,
)


class TestOrders:
    """Test ord2_mod and divides_mersenne"""

    def test_small_orders(self):
        """Test known orders of 2"""
        assert ord2_mod(1) == 1
        assert ord2_mod(3) == 2
        assert ord2_mod(7) == 3
        assert ord2_mod(31) == 5
        assert ord2_mod(4) is None

    def test_orders_match_powers(self):
        """Test ord2_mod against the first power of 2 that is 1"""
        for m in range(3, 400, 2):
            k, value = 1, 2 % m
            while value != 1:
                k, value = k + 1, value * 2 % m
            assert ord2_mod(m) == k

    def test_rejects_nonpositive(self):
        """Test modulus validation"""
        with pytest.raises(ValueError):
            ord2_mod(0)

    def test_divides_mersenne_big_integers(self):
        """Test d | 2^r - 1 against exact big-integer division"""
        for d in range(1, 201):
            for r in range(1, 65):
                assert divides_mersenne(d, r) == ((2 ** r - 1) % d == 0), (d, r)


class TestDivisibilityGraph:
    """Test DivisibilityGraph"""

    @pytest.fixture
    def graph(self):
        """Create the graph on 1..100"""
        return DivisibilityGraph(100)

    def test_edges(self, graph):
        """Test r -> d exactly when d | 2^r - 1"""
        assert graph.has_edge(3, 7)
        assert not graph.has_edge(2, 7)
        assert not graph.has_edge(6, 4)
        assert graph.successors(3) == [1, 7]

    def test_candidates_keep_one(self, graph):
        """Test that 1 survives trimming"""
        assert 1 in graph.cycle_candidates()

    def test_rejects_bad_bound(self):
        """Test bound validation"""
        with pytest.raises(ValueError):
            DivisibilityGraph(0)


class TestOrderTupleSearch:
    """Test order_tuple_search"""

    @pytest.mark.parametrize("n", range(1, 13))
    def test_only_all_ones(self, n):
        """Test that only the all-ones cycle exists below 2000"""
        cycles = order_tuple_search(n, 2000)
        assert cycles == [(1,) * n]
        assert is_all_ones(cycles)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 13))
    def test_only_all_ones_large_bound(self, n):
        """Test that only the all-ones cycle exists below 10^5"""
        assert is_all_ones(order_tuple_search(n, 100000))

    def test_is_all_ones(self):
        """Test the all-ones predicate"""
        assert not is_all_ones([])
        assert not is_all_ones([(1, 1), (3, 1)])
        assert not is_all_ones([(1, 3)])

    def test_rejects_bad_length(self):
        """Test cycle length validation"""
        with pytest.raises(ValueError):
            order_tuple_search(0, 10)


class TestFolner:
    """Test the Folner constant comparison"""

    def test_steps(self):
        """Test every step is a strict integer inequality"""
        check = folner_steps()
        assert check.passed
        assert check.steps[-1][1:] == (49, 48)

    def test_bound(self):
        """Test the bound check and the squared constant"""
        assert folner_bound_check()
        assert folner_square() == (1, 36)
