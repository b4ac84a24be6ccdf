import math
import unittest

from hypchroma import collars, formulas
from hypchroma.exceptions import ParameterRegimeError

EPS = formulas.CONVEX_THINNESS
GRID = [(l_gamma, d) for l_gamma in (0.05, 0.1, 0.5) for d in (2.0, 4.0, 8.0)]


class TestSlicing(unittest.TestCase):
    def test_sections_are_tall_and_thin(self):
        for l_gamma, d in GRID:
            with self.subTest(l_gamma=l_gamma, d=d):
                dec = collars.slice_half_collar(l_gamma, EPS, d)
                for section in dec.sections[:-1]:
                    self.assertGreater(section.height, d / 2)
                for section in dec.sections:
                    self.assertLess(section.diam_bound, d)

    def test_sections_tile_the_half_collar(self):
        for l_gamma, d in GRID:
            dec = collars.slice_half_collar(l_gamma, EPS, d)
            self.assertAlmostEqual(dec.sections[0].rho_top, dec.collar.boundary_distance, delta=1e-12)
            self.assertEqual(dec.sections[-1].rho_bottom, 0.0)
            for upper, lower in zip(dec.sections, dec.sections[1:]):
                self.assertAlmostEqual(upper.rho_bottom, lower.rho_top, delta=1e-12)

    def test_shorter_geodesics_need_more_sections(self):
        few = collars.slice_half_collar(0.5, EPS, 2.0).sections
        many = collars.slice_half_collar(0.05, EPS, 2.0).sections
        self.assertGreater(len(many), len(few))

    def test_parallel_curve_length(self):
        self.assertEqual(collars.parallel_curve_length(0.3, 0.0), 0.3)
        self.assertAlmostEqual(collars.parallel_curve_length(0.3, 2.0), 0.3 * math.cosh(2.0))

    def test_convexity_certificate(self):
        for l_gamma in (0.05, 0.1, 0.5):
            self.assertGreater(collars.convexity_certificate(l_gamma, EPS), 0)


class TestCylinderColoring(unittest.TestCase):
    def test_grid(self):
        for l_gamma, d in GRID:
            with self.subTest(l_gamma=l_gamma, d=d):
                dec = collars.decompose_cylinder(l_gamma, EPS, d)
                self.assertLessEqual(dec.max_degree, 4)
                self.assertLessEqual(dec.colors, 10)
                self.assertEqual(len(dec.half("+")), len(dec.half("-")))

    def test_halves_use_disjoint_palettes(self):
        dec = collars.decompose_cylinder(0.05, EPS, 2.0)
        plus = {s.color for s in dec.half("+")}
        minus = {s.color for s in dec.half("-")}
        self.assertFalse(plus & minus)
        self.assertTrue(all(0 <= c < 5 for c in plus))
        self.assertTrue(all(5 <= c < 10 for c in minus))

    def test_coloring_is_proper_on_the_section_graph(self):
        dec = collars.decompose_cylinder(0.1, EPS, 4.0)
        g = collars.section_graph(dec)
        for u, v in g.edges():
            self.assertNotEqual(dec.sections[u].color, dec.sections[v].color)

    def test_as_dict(self):
        out = collars.decomposition_to_dict(collars.decompose_cylinder(0.1, EPS, 2.0))
        self.assertEqual(out["l_gamma"], 0.1)
        self.assertLess(out["d_prime"], 2.0)
        self.assertEqual(len(out["sections"]), 2 * len(collars.slice_half_collar(0.1, EPS, 2.0).sections))

    def test_budget(self):
        self.assertEqual(collars.cylinder_budget(2), 30)


class TestRegime(unittest.TestCase):
    def assertRegime(self, inequality, *args, **kwargs):
        with self.assertRaises(ParameterRegimeError) as ctx:
            collars.slice_half_collar(*args, **kwargs)
        self.assertEqual(ctx.exception.inequality, inequality)
        self.assertIn(inequality, str(ctx.exception))

    def test_non_convex_thinness(self):
        self.assertRegime("eps <= arcsinh(1/sqrt 2)", 0.1, 0.8, 4.0)

    def test_geodesic_in_the_thick_part(self):
        self.assertRegime("sinh(eps) >= sinh(l_gamma/2)", 2.0, EPS, 4.0)

    def test_d_too_small(self):
        self.assertRegime("l(gamma+) < 2d' - d", 0.1, EPS, 1.0)

    def test_r0_below_the_boundary_curve(self):
        self.assertRegime("l(gamma+) <= r0", 0.1, EPS, 4.0, r0=0.5)

    def test_r0_above_half_d(self):
        self.assertRegime("r0 <= d/2", 0.1, EPS, 2.0, r0=1.5)
