from __future__ import annotations

import random
from itertools import combinations

import pytest

from tdkit import CesInstance, Graph, ces_cost, ces_decide, ces_solve_bounded, ces_solve_exact
from tdkit.ces import (
    DuplicateEdgeError,
    InvalidVertexError,
    SelfLoopError,
    TooLargeError,
)

K3 = Graph(3, ((0, 1), (1, 2), (0, 2)))
K4 = Graph(4, tuple(combinations(range(4), 2)))


def random_graph(rng, n, edge_prob=0.5):
    edges = tuple(e for e in combinations(range(n), 2) if rng.random() < edge_prob)
    return Graph(n, edges)


class TestGraph:
    def test_normalizes_endpoint_order(self):
        g = Graph(3, ((2, 0), (1, 0)))
        assert g.edges == ((0, 2), (0, 1))  # order of edges preserved

    def test_rejects_self_loop(self):
        with pytest.raises(SelfLoopError):
            Graph(2, ((0, 0),))

    def test_rejects_duplicate_even_reversed(self):
        with pytest.raises(DuplicateEdgeError):
            Graph(2, ((0, 1), (1, 0)))

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidVertexError):
            Graph(2, ((0, 2),))

    def test_edges_inside(self):
        assert K4.edges_inside({0, 1, 2}) == 3
        assert K4.edges_inside({0}) == 0


class TestCost:
    def test_edge_subset_of_triangle(self):
        assert ces_cost(CesInstance(K3, 3), {0, 1}) == 8

    def test_empty_subset_pays_every_edge(self):
        rng = random.Random(0)
        for n in range(1, 7):
            g = random_graph(rng, n)
            for c in (1, 3, 5):
                assert ces_cost(CesInstance(g, c), set()) == c * g.m

    def test_full_subset(self):
        assert ces_cost(CesInstance(K3, 3), {0, 1, 2}) == 9
        rng = random.Random(1)
        for n in range(1, 7):
            g = random_graph(rng, n)
            assert ces_cost(CesInstance(g, 2), range(n)) == n * g.m

    def test_rejects_invalid_vertex(self):
        with pytest.raises(InvalidVertexError):
            ces_cost(CesInstance(K3, 1), {3})

    def test_rejects_bad_cost(self):
        with pytest.raises(ValueError):
            CesInstance(K3, 0)


class TestSolveExact:
    def test_triangle(self):
        sol = ces_solve_exact(CesInstance(K3, 3))
        assert sol.cost == 8 and sol.subset == (0, 1)  # lexicographically first tie

    def test_edgeless(self):
        sol = ces_solve_exact(CesInstance(Graph(4, ()), 5))
        assert sol.cost == 0 and sol.subset == ()

    def test_single_edge_prefers_empty(self):
        sol = ces_solve_exact(CesInstance(Graph(2, ((0, 1),)), 1))
        assert sol.cost == 1 and sol.subset == ()

    def test_too_large(self):
        with pytest.raises(TooLargeError):
            ces_solve_exact(CesInstance(Graph(26, ()), 1))

    def test_solution_cost_recomputable(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_graph(rng, rng.randint(1, 7))
            inst = CesInstance(g, rng.randint(1, 5))
            sol = ces_solve_exact(inst)
            assert ces_cost(inst, sol.subset) == sol.cost


class TestSolveBounded:
    def test_triangle_matches_exact(self):
        assert ces_solve_bounded(CesInstance(K3, 3)).cost == 8

    def test_k4_prefers_empty(self):
        sol = ces_solve_bounded(CesInstance(K4, 2))
        assert sol.cost == 12 and sol.subset == ()

    def test_edgeless(self):
        sol = ces_solve_bounded(CesInstance(Graph(3, ()), 5))
        assert sol.cost == 0 and sol.subset == ()

    def test_cost_agrees_with_exact_everywhere(self):
        rng = random.Random(11)
        for _ in range(120):
            g = random_graph(rng, rng.randint(1, 10))
            c = rng.randint(1, 4)
            inst = CesInstance(g, c)
            assert ces_solve_bounded(inst).cost == ces_solve_exact(inst).cost


class TestDecide:
    def test_threshold_boundary(self):
        inst = CesInstance(K3, 3)
        assert ces_decide(inst, 8)
        assert not ces_decide(inst, 7)

    def test_trivial_budget_always_accepts(self):
        rng = random.Random(13)
        for _ in range(20):
            g = random_graph(rng, rng.randint(1, 6))
            c = rng.randint(1, 4)
            assert ces_decide(CesInstance(g, c), c * g.m)


def test_isolated_vertex_changes_no_optimum():
    rng = random.Random(21)
    for _ in range(30):
        n = rng.randint(1, 6)
        g = random_graph(rng, n)
        bigger = Graph(n + 1, g.edges)  # vertex n is isolated
        for c in (1, 2, 4):
            assert (
                ces_solve_exact(CesInstance(g, c)).cost
                == ces_solve_exact(CesInstance(bigger, c)).cost
            )
