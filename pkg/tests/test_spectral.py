"""Spectrum, Cheeger constant, triangles, and effective resistance."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from expander_rewire.errors import CapacityError, DomainError
from expander_rewire.graph import (
    Graph,
    complete,
    cycle,
    dumbbell,
    path,
    random_regular,
    ring_of_cliques,
)
from expander_rewire.spectral import (
    adjacency_matrix,
    cheeger_bounds,
    cheeger_exact,
    common_neighbors,
    effective_resistance,
    laplacian_pinv,
    resistance_triangle_bound,
    spectrum,
    triangle_count,
)

from conftest import build_connected_graph, connected_graphs
from oracles import cheeger_bruteforce, top_two_eigenvalues_power, triangles_bruteforce


class TestSpectrum:
    def test_complete_4(self):
        rep = spectrum(complete(4))
        assert np.allclose(rep.eigenvalues, [3, -1, -1, -1], atol=1e-9)
        assert rep.gap == pytest.approx(4.0, abs=1e-9)
        assert rep.normalized_gap == pytest.approx(4.0 / 3.0, abs=1e-9)
        assert rep.mu_abs == pytest.approx(1.0, abs=1e-9)

    def test_cycle_4(self):
        rep = spectrum(cycle(4))
        assert np.allclose(rep.eigenvalues, [2, 0, 0, -2], atol=1e-9)
        assert rep.gap == pytest.approx(2.0, abs=1e-9)
        assert rep.normalized_gap == pytest.approx(1.0, abs=1e-9)

    def test_dumbbell_25_gap_is_tiny(self):
        rep = spectrum(dumbbell(25))
        assert rep.normalized_gap < 0.05

    def test_eigenvalues_descending_and_traceless(self):
        rep = spectrum(dumbbell(5))
        ev = rep.eigenvalues
        assert all(ev[i] >= ev[i + 1] - 1e-12 for i in range(len(ev) - 1))
        assert sum(ev) == pytest.approx(0.0, abs=1e-8)

    def test_regular_top_eigenvalue_is_degree(self):
        rep = spectrum(ring_of_cliques(4, 5))
        assert rep.eigenvalues[0] == pytest.approx(4.0, abs=1e-9)
        assert rep.regular_degree == 4

    def test_spectral_expander_flag(self):
        rep = spectrum(complete(6))
        assert rep.is_spectral_expander(0.5)
        assert not rep.is_spectral_expander(0.1)
        with pytest.raises(DomainError):
            spectrum(dumbbell(3)).is_spectral_expander(0.5)

    def test_disconnected_rejected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(DomainError):
            spectrum(g)

    @given(connected_graphs)
    @settings(max_examples=15, deadline=None)
    def test_top_two_match_power_iteration(self, g):
        rep = spectrum(g)
        mu1, mu2 = top_two_eigenvalues_power(adjacency_matrix(g))
        assert rep.eigenvalues[0] == pytest.approx(mu1, abs=1e-8)
        assert rep.eigenvalues[1] == pytest.approx(mu2, abs=1e-8)


class TestCheeger:
    def test_complete_values(self):
        for n in range(3, 11):
            assert cheeger_exact(complete(n)).exact == Fraction(math.ceil(n / 2))

    def test_path_values(self):
        for n in range(2, 11):
            assert cheeger_exact(path(n)).exact == Fraction(1, n // 2)

    def test_dumbbell_bridge_cut(self):
        rep = cheeger_exact(dumbbell(3))
        assert rep.exact == Fraction(1, 3)
        assert rep.witness in (frozenset({0, 1, 2}), frozenset({3, 4, 5}))

    def test_cycle6_value(self):
        # arc of three nodes has boundary 2
        assert cheeger_exact(cycle(6)).exact == Fraction(2, 3)

    def test_witness_achieves_ratio(self):
        g = build_connected_graph(5, min_n=6, max_n=10)
        rep = cheeger_exact(g)
        s = rep.witness
        boundary = sum(1 for u in s for v in g.neighbors(u) if v not in s)
        assert Fraction(boundary, len(s)) == rep.exact

    def test_matches_bruteforce(self):
        for seed in range(8):
            g = build_connected_graph(seed, min_n=4, max_n=9)
            assert cheeger_exact(g).exact == cheeger_bruteforce(g)

    def test_capacity_error_points_to_bounds(self):
        with pytest.raises(CapacityError, match="cheeger_bounds"):
            cheeger_exact(complete(21))

    def test_bounds_complete4(self):
        rep = cheeger_bounds(complete(4))
        assert rep.spectral_lower == pytest.approx(2.0, abs=1e-9)
        assert rep.spectral_upper == pytest.approx(math.sqrt(24), abs=1e-9)
        assert rep.spectral_lower <= 2.0 <= rep.spectral_upper

    def test_bounds_cycle6(self):
        rep = cheeger_bounds(cycle(6))
        assert rep.spectral_lower == pytest.approx(0.5, abs=1e-9)
        assert rep.spectral_upper == pytest.approx(2.0, abs=1e-9)

    def test_bounds_ring_of_cliques_bottleneck(self):
        rep = cheeger_bounds(ring_of_cliques(4, 50))
        assert rep.spectral_lower < 0.1

    def test_bounds_reject_irregular(self):
        with pytest.raises(DomainError):
            cheeger_bounds(dumbbell(3))

    def test_sandwich_on_small_regular_graphs(self):
        graphs = [cycle(n) for n in range(3, 15)]
        graphs += [complete(n) for n in range(3, 15)]
        graphs += [random_regular(10, 3, seed=s) for s in range(3)]
        graphs += [ring_of_cliques(3, 3)]
        for g in graphs:
            exact = cheeger_exact(g).exact
            rep = cheeger_bounds(g)
            assert rep.spectral_lower <= exact + 1e-9
            assert exact <= rep.spectral_upper + 1e-9


class TestTriangles:
    def test_complete4(self):
        assert triangle_count(complete(4)) == 4

    def test_path_is_triangle_free(self):
        assert triangle_count(path(10)) == 0

    def test_ring_of_cliques(self):
        assert triangle_count(ring_of_cliques(4, 50)) == 350

    def test_trace_formula(self):
        g = dumbbell(4)
        a = adjacency_matrix(g)
        assert triangle_count(g) == round(np.trace(a @ a @ a) / 6)

    @given(connected_graphs)
    @settings(max_examples=25, deadline=None)
    def test_matches_bruteforce(self, g):
        assert triangle_count(g) == triangles_bruteforce(g)


class TestCommonNeighbors:
    def test_complete5_edge(self):
        assert common_neighbors(complete(5), 0, 1) == 3

    def test_dumbbell_bridge(self):
        assert common_neighbors(dumbbell(25), 24, 25) == 0

    def test_path_two_apart(self):
        assert common_neighbors(path(5), 0, 2) == 1

    def test_same_node_rejected(self):
        with pytest.raises(DomainError):
            common_neighbors(path(3), 1, 1)


class TestEffectiveResistance:
    def test_tree_edge_is_one(self):
        g = path(5)
        for u, v in g.edges():
            assert effective_resistance(g, u, v) == pytest.approx(1.0, abs=1e-9)

    def test_complete3_edge(self):
        r = effective_resistance(complete(3), 0, 1)
        assert r == pytest.approx(2.0 / 3.0, abs=1e-9)
        assert r == pytest.approx(resistance_triangle_bound(complete(3), 0, 1), abs=1e-9)

    def test_complete_n_edge_is_2_over_n(self):
        for n in (4, 6, 9):
            assert effective_resistance(complete(n), 0, 1) == pytest.approx(2 / n, abs=1e-9)

    def test_disconnected_pair_is_infinite(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert effective_resistance(g, 0, 3) == math.inf

    def test_same_node_rejected(self):
        with pytest.raises(DomainError):
            effective_resistance(path(3), 2, 2)

    def test_pinv_cache_invalidated_by_mutation(self):
        g = cycle(4)
        r_before = effective_resistance(g, 0, 1)
        p1 = laplacian_pinv(g)
        assert laplacian_pinv(g) is p1
        g.add_edge(0, 2)
        assert laplacian_pinv(g) is not p1
        assert effective_resistance(g, 0, 1) < r_before

    @given(connected_graphs)
    @settings(max_examples=25, deadline=None)
    def test_triangle_bound_on_edges(self, g):
        for u, v in g.edges():
            assert effective_resistance(g, u, v) <= resistance_triangle_bound(g, u, v) + 1e-9

    @given(connected_graphs)
    @settings(max_examples=20, deadline=None)
    def test_foster_sum(self, g):
        total = sum(effective_resistance(g, u, v) for u, v in g.edges())
        assert total == pytest.approx(g.n - 1, abs=1e-6)
