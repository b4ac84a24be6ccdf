import math
import unittest

import networkx as nx
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hypchroma import formulas, kernel, net_coloring
from hypchroma.exceptions import InvalidInputError, SizeExceededError
from hypchroma.utils import make_rng

D, R, SEED = 1.0, 3.0, 7
R0 = formulas.consistent_r0(D)


def _crown(n):
    g = nx.Graph()
    g.add_nodes_from(range(2 * n))
    g.add_edges_from((2 * i, 2 * j + 1) for i in range(n) for j in range(n) if i != j)
    return g


class TestNets(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.net = net_coloring.build_net(R, R0, seed=SEED)

    def test_separated(self):
        self.assertGreater(self.net.min_separation(), R0)

    def test_centers_lie_in_the_disk(self):
        rho, _ = self.net.index.polar(self.net.centers)
        self.assertTrue(np.all(rho <= R + 1e-9))
        self.assertTrue(np.allclose(self.net.centers[0], kernel.origin().vector))

    def test_covers_the_disk(self):
        samples = net_coloring.sample_disk(make_rng(99), R, 2000)
        owners = net_coloring._lowest_cover(self.net, samples, R0)
        self.assertLessEqual(np.sum(owners == net_coloring.UNCOVERED), 20)

    def test_owner_is_within_reach(self):
        samples = net_coloring.sample_disk(make_rng(5), R, 200)
        owners = net_coloring._lowest_cover(self.net, samples, R0)
        for x, c in zip(samples, owners):
            if c != net_coloring.UNCOVERED:
                self.assertLessEqual(float(kernel.distances(x[None, :], self.net.centers[c])[0]), R0)

    @settings(max_examples=25, deadline=None)
    @given(rho=st.floats(0.0, R), theta=st.floats(0.0, 2 * math.pi), reach=st.floats(0.1, 2.0))
    def test_bucket_query_finds_every_center_in_reach(self, rho, theta, reach):
        q = kernel.from_polar(rho, theta).vector
        found = set(self.net.index.near(q, reach))
        dd = kernel.distances(self.net.centers, q)
        self.assertTrue(set(np.flatnonzero(dd <= reach).tolist()) <= found)

    def test_same_seed_same_net(self):
        again = net_coloring.build_net(R, R0, seed=SEED)
        np.testing.assert_array_equal(again.centers, self.net.centers)

    def test_small_disk_is_one_center(self):
        net = net_coloring.build_net(0.2, 0.5)
        self.assertEqual(len(net), 1)
        self.assertEqual(net.min_separation(), math.inf)

    def test_sample_disk_radius(self):
        pts = net_coloring.sample_disk(make_rng(0), 2.0, 500)
        self.assertTrue(np.all(kernel.distances(pts, kernel.origin().vector) <= 2.0 + 1e-9))

    def test_bad_radius(self):
        with self.assertRaises(InvalidInputError):
            net_coloring.build_net(-1.0, 0.4)


class TestDistanceGraph(unittest.TestCase):
    def _pair(self, separation):
        o = kernel.origin()
        centers = [o.vector, kernel.point_at(o, 0.0, separation).vector]
        return net_coloring.Net.from_centers(centers, R0, 5.0)

    def test_edge_window(self):
        lo, hi = D - 2 * R0, D + 2 * R0
        for separation, edge in ((D, True), (lo + 1e-6, True), (hi - 1e-6, True),
                                 (hi + 1e-6, False), (lo - 1e-6, False)):
            with self.subTest(separation=separation):
                graph = net_coloring.build_distance_graph(self._pair(separation), D)
                self.assertEqual(graph.edge_count, int(edge))

    def test_r0_above_two_fifths(self):
        with self.assertRaises(InvalidInputError):
            net_coloring.build_distance_graph(self._pair(1.0), 0.5)

    def test_degree_within_bound(self):
        net = net_coloring.build_net(R, R0, seed=SEED)
        graph = net_coloring.build_distance_graph(net, D)
        self.assertLessEqual(graph.max_degree, formulas.degree_bound(D, R0))
        self.assertEqual(len(graph.adjacency), len(net))


class TestGreedy(unittest.TestCase):
    def test_empty_graph(self):
        self.assertEqual(net_coloring.greedy_color(nx.Graph()).count, 0)

    def test_triangle(self):
        self.assertEqual(net_coloring.greedy_color(nx.complete_graph(3)).count, 3)

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(1, 40), p=st.floats(0.0, 1.0), seed=st.integers(0, 10**6),
           order=st.sampled_from(net_coloring.COLOR_ORDERS))
    def test_at_most_max_degree_plus_one(self, n, p, seed, order):
        g = nx.gnp_random_graph(n, p, seed=seed)
        coloring = net_coloring.greedy_color(g, order)
        self.assertTrue(coloring.is_proper(g))
        self.assertLessEqual(coloring.count, max(dict(g.degree()).values()) + 1)

    def test_dsatur_beats_natural_on_crowns(self):
        g = _crown(6)
        self.assertEqual(net_coloring.greedy_color(g, "natural").count, 6)
        self.assertEqual(net_coloring.greedy_color(g, "dsatur").count, 2)

    def test_unknown_order(self):
        with self.assertRaises(InvalidInputError):
            net_coloring.greedy_color(nx.path_graph(3), "random")


class TestExactChromatic(unittest.TestCase):
    def test_known_graphs(self):
        self.assertEqual(net_coloring.exact_chromatic(nx.complete_graph(4)), 4)
        self.assertEqual(net_coloring.exact_chromatic(nx.cycle_graph(5)), 3)
        self.assertEqual(net_coloring.exact_chromatic(nx.cycle_graph(6)), 2)
        self.assertEqual(net_coloring.exact_chromatic(nx.petersen_graph()), 3)
        self.assertEqual(net_coloring.exact_chromatic(nx.Graph()), 0)

    def test_crown_is_bipartite(self):
        self.assertEqual(net_coloring.exact_chromatic(_crown(6)), 2)

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(1, 7), p=st.floats(0.0, 1.0), seed=st.integers(0, 10**6))
    def test_agrees_with_brute_force(self, n, p, seed):
        g = nx.gnp_random_graph(n, p, seed=seed)
        self.assertEqual(net_coloring.exact_chromatic(g), net_coloring.brute_force_chromatic(g))

    def test_size_limit(self):
        with self.assertRaises(SizeExceededError):
            net_coloring.exact_chromatic(nx.complete_graph(4), limit=3)


class TestPointColor(unittest.TestCase):
    def setUp(self):
        o = kernel.origin()
        self.a = kernel.point_at(o, 0.0, 0.3).vector
        self.b = kernel.point_at(o, math.pi, 0.3).vector

    def test_lowest_index_wins_a_tie(self):
        net = net_coloring.Net.from_centers([self.a, self.b], 0.4, 2.0)
        coloring = net_coloring.Coloring(np.array([3, 7]))
        self.assertEqual(net_coloring.point_color(net, coloring, kernel.origin()), 3)
        swapped = net_coloring.Net.from_centers([self.b, self.a], 0.4, 2.0)
        self.assertEqual(net_coloring.point_color(swapped, coloring, kernel.origin()), 3)

    def test_single_owner(self):
        net = net_coloring.Net.from_centers([self.a, self.b], 0.4, 2.0)
        coloring = net_coloring.Coloring(np.array([3, 7]))
        p = kernel.point_at(kernel.origin(), math.pi, 0.5)
        self.assertEqual(net_coloring.point_color(net, coloring, p), 7)

    def test_uncovered(self):
        net = net_coloring.Net.from_centers([self.a], 0.4, 2.0)
        coloring = net_coloring.Coloring(np.array([0]))
        far = kernel.point_at(kernel.origin(), math.pi, 1.5)
        self.assertEqual(net_coloring.point_color(net, coloring, far), net_coloring.UNCOVERED)


class TestValidation(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.result, cls.net, cls.coloring = net_coloring.run_net_experiment(D, R, seed=SEED, trials=2000)

    def test_no_violations(self):
        self.assertEqual(self.result["violations"], 0)
        self.assertLessEqual(self.result["colors_used"], self.result["max_degree"] + 1)
        self.assertEqual(self.result["phi_plus_one"], 138)
        self.assertNotIn("wall_time", self.result)

    def test_merged_classes_are_caught(self):
        bad = self.coloring.merged(0, 1)
        self.assertGreater(net_coloring.validate_coloring(self.net, bad, D, 2000, seed=1), 0)

    def test_zero_trials(self):
        self.assertEqual(net_coloring.validation_counts(self.net, self.coloring, D, 0), (0, 0))

    def test_d_beyond_the_disk(self):
        with self.assertRaises(InvalidInputError):
            net_coloring.validate_coloring(self.net, self.coloring, 5.0, 10)

    def test_thread_count_does_not_change_counts(self):
        one = net_coloring.validation_counts(self.net, self.coloring, D, 12_000, seed=3, threads=1)
        many = net_coloring.validation_counts(self.net, self.coloring, D, 12_000, seed=3, threads=4)
        self.assertEqual(one, many)

    def test_deterministic(self):
        again, _, _ = net_coloring.run_net_experiment(D, R, seed=SEED, trials=2000)
        self.assertEqual(again, self.result)

    def test_timing_is_opt_in(self):
        result, _, _ = net_coloring.run_net_experiment(D, 1.5, seed=0, trials=10, timing=True)
        self.assertGreaterEqual(result["wall_time"], 0)

    def test_r0_above_two_fifths(self):
        with self.assertRaises(InvalidInputError):
            net_coloring.run_net_experiment(D, R, r0=0.5)
