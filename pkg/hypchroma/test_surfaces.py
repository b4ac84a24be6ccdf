import json
import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from hypchroma import formulas, kernel, rotations, surfaces
from hypchroma.exceptions import (
    BlueprintError,
    CombinatorialError,
    ConstructionRuleError,
    GeometryInfeasibleError,
    PairingError,
)
from hypchroma.test_rotations import K5_TORUS


def _round_trip(S):
    return surfaces.surface_from_dict(json.loads(json.dumps(surfaces.surface_to_dict(S))))


class TestPairings(unittest.TestCase):
    @given(N=st.integers(3, 30))
    def test_canonical_pairing_is_a_clique_pairing(self, N):
        pairing = surfaces.canonical_pairing(N)
        self.assertEqual(len(pairing), N * (N + 1) // 2)
        surfaces.check_clique_pairing(N, surfaces._normalize_pairing(N, pairing))

    def test_unpasted_sides_are_rejected(self):
        with self.assertRaises(ConstructionRuleError):
            surfaces.build_ideal_surface(3, pairing=[((0, 0), (1, 2))])

    def test_two_shared_sides_are_rejected(self):
        pairing = surfaces.canonical_pairing(3)
        (p, s), (q, j) = pairing[0]
        bad = [((p, s), (q, j)), ((p, s + 1), (q, (j + 1) % 3))] + pairing[2:]
        with self.assertRaises(ConstructionRuleError):
            surfaces.build_ideal_surface(3, pairing=bad)


class TestIdealSurfaces(unittest.TestCase):
    def test_ideal_triangles(self):
        S = surfaces.build_ideal_surface(3)
        self.assertEqual(len(S.polygons), 4)
        self.assertEqual(S.construction["clique_vertices"], [0, 1, 2, 3])
        self.assertAlmostEqual(S.construction["edge_length"], math.log(3), delta=1e-12)
        self.assertEqual(surfaces.euler(S), {
            "chi": -2, "boundaries": 2, "cusps": 2, "orientable": True, "genus": 1,
        })

    def test_one_crossing_reaches_the_next_center(self):
        S = surfaces.build_ideal_surface(3)
        chain = kernel.develop(S, [(0, 0)], start=0)
        self.assertAlmostEqual(chain.distance(0, 1), math.log(3), delta=1e-9)

    def test_certified(self):
        for N in (3, 4, 5):
            cert = surfaces.certify_clique(surfaces.build_ideal_surface(N), max_polygons=4)
            self.assertTrue(cert.certified, cert.as_dict())
            self.assertGreater(cert.margin, 0)
            self.assertLessEqual(cert.edge_length_error, 1e-9)
            self.assertEqual(cert.method, "development")

    def test_single_polygon_budget_is_indeterminate(self):
        cert = surfaces.certify_clique(surfaces.build_ideal_surface(3), max_polygons=1)
        self.assertEqual(cert.status, "indeterminate")
        self.assertIsNone(cert.margin)
        self.assertTrue(cert.notes)

    def test_reversed_pasting_is_non_orientable(self):
        pairing = [(a, b, i == 0) for i, (a, b) in enumerate(surfaces.canonical_pairing(3))]
        S = surfaces.build_ideal_surface(3, pairing=pairing)
        report = surfaces.euler(S)
        self.assertFalse(report["orientable"])
        self.assertIsNone(report["genus"])


class TestTruncatedSurfaces(unittest.TestCase):
    def test_topology(self):
        S = surfaces.build_truncated_surface(5, 1.0)
        report = surfaces.euler(S)
        self.assertEqual(report["chi"], -9)
        self.assertTrue(report["orientable"])
        self.assertEqual(report["cusps"], 0)
        self.assertGreaterEqual(report["genus"], 0)
        self.assertTrue(S.construction["funnels"])

    def test_certified(self):
        for t in (0.1, 1.0):
            S = surfaces.build_truncated_surface(5, t)
            cert = surfaces.certify_clique(S)
            self.assertTrue(cert.certified, cert.as_dict())
            self.assertLessEqual(cert.edge_length_error, 1e-9)
            self.assertAlmostEqual(cert.edge_length, formulas.dN_of_t(5, t), delta=1e-12)

    def test_built_for_a_distance(self):
        S = surfaces.build_truncated_for_distance(3.0)
        self.assertEqual(S.construction["kind"], "truncated")
        self.assertAlmostEqual(S.construction["edge_length"], 3.0, delta=1e-9)

    def test_below_d3_is_infeasible(self):
        with self.assertRaises(GeometryInfeasibleError):
            surfaces.build_truncated_for_distance(1.0)

    def test_descriptor_round_trip(self):
        S = surfaces.build_truncated_surface(5, 0.5)
        back = _round_trip(S)
        self.assertEqual(surfaces.euler(back), surfaces.euler(S))
        self.assertEqual(back.pastings, S.pastings)

    def test_tampered_descriptor_is_rejected(self):
        data = json.loads(json.dumps(surfaces.surface_to_dict(surfaces.build_truncated_surface(5, 0.5))))
        data["derived"]["chi"] += 2
        with self.assertRaises(CombinatorialError):
            surfaces.surface_from_dict(data)


class TestTriangleSurfaces(unittest.TestCase):
    def test_equilateral_k19(self):
        S = surfaces.build_triangle_surface(rotations.shipped_blueprint("k19"))
        self.assertEqual(len(S.polygons), 114)
        self.assertEqual(surfaces.euler(S)["genus"], 20)
        for total in S.vertex_angle_sums():
            self.assertAlmostEqual(total, 2 * math.pi, delta=1e-12)
        cert = surfaces.certify_clique(S)
        self.assertTrue(cert.certified)
        self.assertEqual(cert.method, "segment")

    def test_small_degree_is_infeasible(self):
        with self.assertRaises(GeometryInfeasibleError) as ctx:
            surfaces.build_triangle_surface(rotations.shipped_blueprint("k7"))
        self.assertEqual(ctx.exception.details["genus"], 1)
        self.assertEqual(ctx.exception.details["N"], 6)

    def test_combinatorial_k4(self):
        S = surfaces.build_triangle_surface(rotations.shipped_blueprint("k4"), metric=False)
        self.assertEqual(surfaces.euler(S)["genus"], 0)
        self.assertFalse(S.construction["metric"])
        self.assertEqual(surfaces.certify_clique(S).status, "indeterminate")

    def test_non_triangular_blueprint(self):
        with self.assertRaises(BlueprintError):
            surfaces.build_triangle_surface(rotations.parse_rotation_system(K5_TORUS), metric=False)

    def test_holed_k19_keeps_its_genus(self):
        F = surfaces.build_triangle_surface(rotations.shipped_blueprint("k19"), mode="holed")
        report = surfaces.euler(F)
        self.assertEqual((report["genus"], report["boundaries"]), (20, 114))


class TestClosing(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.holed_k19 = surfaces.build_triangle_surface(rotations.shipped_blueprint("k19"), mode="holed")

    def test_closed_k19(self):
        S = surfaces.close_surface(self.holed_k19)
        self.assertEqual(surfaces.euler(S)["genus"], 77)
        self.assertEqual(S.free_boundaries, [])
        self.assertTrue(surfaces.certify_clique(S).certified)

    @settings(max_examples=5, deadline=None)
    @given(k=st.integers(1, 6))
    def test_genus_patch_adds_exactly_its_genus(self, k):
        S = surfaces.close_surface(self.holed_k19, extra_genus=k)
        self.assertEqual(surfaces.euler(S)["genus"], 77 + k)
        self.assertEqual(S.free_boundaries, [])

    def test_k19_block_with_a_genus_5_patch(self):
        self.assertEqual(surfaces.euler(surfaces.close_surface(self.holed_k19, extra_genus=5))["genus"], 82)

    def test_combinatorial_k4_block(self):
        F = surfaces.build_triangle_surface(rotations.shipped_blueprint("k4"), mode="holed", metric=False)
        self.assertEqual(surfaces.euler(surfaces.close_surface(F))["genus"], 2)

    def test_boundary_pairing_must_cover_every_curve(self):
        F = surfaces.build_triangle_surface(rotations.shipped_blueprint("k4"), mode="holed", metric=False)
        pairs = [(surfaces.hole_key(0), surfaces.hole_key(1))]
        partial = surfaces.GluedSurface(F.polygons, F.pastings, pairs, construction=F.construction)
        self.assertEqual(len(partial.free_boundaries), 2)
        with self.assertRaises(PairingError):
            surfaces.close_surface(partial, boundary_pairing=[(surfaces.hole_key(2), surfaces.hole_key(2))])

    def test_closed_descriptor_round_trip(self):
        F = surfaces.build_triangle_surface(rotations.shipped_blueprint("k4"), mode="holed", metric=False)
        S = surfaces.close_surface(F, extra_genus=1)
        self.assertEqual(surfaces.euler(_round_trip(S))["genus"], 3)

    def test_two_hole_patch_is_pasted_to_the_block(self):
        F = surfaces.build_triangle_surface(rotations.shipped_blueprint("k4"), mode="holed", metric=False)
        S = surfaces.close_surface(F, extra_genus=2)
        patch = len(S.polygons) - 1
        partners = [b if a[1] == patch else a for a, b in S.boundary_pastings if patch in (a[1], b[1])]
        self.assertEqual(len(partners), 2)
        self.assertTrue(all(key[1] != patch for key in partners))
        self.assertEqual(surfaces.euler(S)["genus"], 4)

    def test_one_hole_patch_for_an_odd_boundary_count(self):
        patch = surfaces.PolygonSpec(surfaces.PolygonKind.GENUS_PATCH, genus=1, holes=3)
        F = surfaces.GluedSurface([patch], [], construction={})
        S = surfaces.close_surface(F, extra_genus=1)
        self.assertEqual(S.polygons[-1].holes, 1)
        self.assertEqual(S.free_boundaries, [])
        self.assertEqual(surfaces.euler(S), {
            "chi": -4, "boundaries": 0, "cusps": 0, "orientable": True, "genus": 3,
        })

    def test_patch_holes_must_be_covered_by_an_explicit_pairing(self):
        F = surfaces.build_triangle_surface(rotations.shipped_blueprint("k4"), mode="holed", metric=False)
        pairs = [(surfaces.hole_key(0), surfaces.hole_key(1)), (surfaces.hole_key(2), surfaces.hole_key(3))]
        with self.assertRaises(PairingError):
            surfaces.close_surface(F, boundary_pairing=pairs, extra_genus=1)


class TestChains(unittest.TestCase):
    def test_prefix_lower_bounds(self):
        blocks = [("k4", rotations.shipped_blueprint("k4")), ("k19", rotations.shipped_blueprint("k19"))]
        S = surfaces.build_infinite_chain(blocks)
        self.assertEqual(S.construction["prefix_lower_bounds"], [0, 19])
        self.assertEqual(S.construction["lower_bound"], 19)
        self.assertEqual(len(S.boundary_pastings), 1)
        self.assertTrue(surfaces.certify_clique(S).certified)

    def test_prefix(self):
        blocks = [("k4", rotations.shipped_blueprint("k4")), ("k19", rotations.shipped_blueprint("k19"))]
        S = surfaces.build_infinite_chain(blocks, prefix=1)
        self.assertEqual(S.construction["prefix_lower_bounds"], [0])
        self.assertEqual(surfaces.certify_clique(S).status, "indeterminate")

    def test_missing_blueprint(self):
        with self.assertRaises(BlueprintError):
            surfaces.build_infinite_chain([("k31", None)])
