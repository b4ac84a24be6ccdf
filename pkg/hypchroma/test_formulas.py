import math
import unittest

from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from hypchroma import formulas, kernel
from hypchroma.exceptions import GeometryInfeasibleError, InvalidInputError


class TestCollar(unittest.TestCase):
    def test_margin_positive_below_arcsinh_one(self):
        for eps in (0.1, 0.3, 0.5, 0.7, formulas.ASINH_ONE - 1e-3):
            for l_gamma in (0.01, 0.1, 0.5, 1.0):
                if math.sinh(eps) < math.sinh(l_gamma / 2):
                    continue
                self.assertGreater(formulas.collar_geometry(l_gamma, eps).margin, 0)

    def test_margin_at_the_convex_threshold(self):
        geom = formulas.collar_geometry(1e-6, formulas.CONVEX_THINNESS)
        self.assertAlmostEqual(geom.margin, math.log(2) / 2, delta=1e-4)

    def test_margin_vanishes_at_arcsinh_one(self):
        geom = formulas.collar_geometry(1e-6, formulas.ASINH_ONE)
        self.assertLess(geom.margin, 1e-3)

    def test_thinness_above_arcsinh_one_is_rejected(self):
        with self.assertRaises(InvalidInputError):
            formulas.collar_geometry(0.1, 1.0)

    def test_geodesic_outside_the_thin_part(self):
        with self.assertRaises(GeometryInfeasibleError):
            formulas.collar_geometry(2.0, 0.5)

    def test_as_dict_names(self):
        out = formulas.collar_geometry(0.2, 0.5).as_dict()
        self.assertEqual(set(out), {"l_gamma", "eps", "w", "K_C", "margin"})

    def test_convexity_gap_is_positive(self):
        self.assertGreater(formulas.convexity_gap(), 0)


class TestCliqueDistances(unittest.TestCase):
    def test_ideal_triangle(self):
        self.assertAlmostEqual(formulas.ideal_clique_distance(3), math.log(3), delta=1e-12)

    def test_d5(self):
        self.assertAlmostEqual(formulas.ideal_clique_distance(5), 2.25, delta=0.01)

    def test_dN_of_zero_is_dN(self):
        for N in (3, 4, 7):
            self.assertAlmostEqual(formulas.dN_of_t(N, 0.0), formulas.ideal_clique_distance(N), delta=1e-12)

    def test_relation_at_N5_t1(self):
        d = formulas.dN_of_t(5, 1.0)
        self.assertAlmostEqual(math.cosh(0.5), math.cosh(d / 2) * math.sin(math.pi / 5), delta=1e-12)

    def test_solve_t(self):
        t = formulas.solve_t(5, 3.0)
        self.assertAlmostEqual(t, 1.698285, delta=1e-6)
        self.assertAlmostEqual(formulas.dN_of_t(5, t), 3.0, delta=1e-12)

    @given(N=st.integers(3, 40), t=st.floats(1e-3, 5.0))
    def test_solve_t_inverts_dN_of_t(self, N, t):
        self.assertAlmostEqual(formulas.solve_t(N, formulas.dN_of_t(N, t)), t, delta=1e-9)

    def test_below_dN_is_infeasible(self):
        with self.assertRaises(GeometryInfeasibleError):
            formulas.solve_t(5, 1.0)

    def test_semi_regular_sides_meet_the_kernel(self):
        sides = formulas.semi_regular_sides(5, 1.0)
        self.assertAlmostEqual(kernel.truncation_length(5, sides.inradius_s), 1.0, delta=1e-9)
        # sinh(s/2) sinh(t/2) = cos(pi/N) is symmetric in s and t
        self.assertAlmostEqual(formulas.semi_regular_sides(5, sides.s).s, 1.0, delta=1e-9)


class TestTriangles(unittest.TestCase):
    def test_l12(self):
        self.assertAlmostEqual(formulas.equilateral_side(12), math.acosh(3 + 2 * math.sqrt(3)), delta=1e-12)
        side = formulas.equilateral_side(12)
        self.assertAlmostEqual(side, 2.553374, delta=1e-6)
        self.assertAlmostEqual(kernel.angle_from_sides(side, side, side), 2 * math.pi / 12, delta=1e-10)

    def test_small_degrees_are_infeasible(self):
        for N in (3, 4, 5, 6):
            with self.assertRaises(GeometryInfeasibleError) as ctx:
                formulas.equilateral_side(N)
            self.assertEqual(ctx.exception.details["N"], N)

    def test_inradius_and_circumradius_agree(self):
        N = 12
        r = formulas.equilateral_inradius(N)
        side = formulas.equilateral_side(N)
        # circumradius R with sinh(side/2) = sinh(R) sin(pi/3); inradius from the right triangle
        R = math.asinh(math.sinh(side / 2) / math.sin(math.pi / 3))
        self.assertAlmostEqual(math.cosh(R), math.cosh(r) * math.cosh(side / 2), delta=1e-9)

    def test_altitude_by_law_of_sines(self):
        side = formulas.equilateral_side(12)
        self.assertAlmostEqual(
            math.sinh(formulas.equilateral_altitude(12)), math.sinh(side) * math.sin(math.pi / 6), delta=1e-9
        )

    def test_holed_triangle_at_12(self):
        holed = formulas.holed_triangle_metrics(12, formulas.hole_length())
        self.assertAlmostEqual(holed.side, 4.118, delta=2e-3)
        self.assertAlmostEqual(holed.vertex_to_hole, 3.428, delta=2e-3)
        self.assertGreater(holed.margin, 0)

    def test_hole_length_default(self):
        self.assertAlmostEqual(math.sinh(formulas.hole_length() / 6), 0.25, delta=1e-12)


class TestDegreeBound(unittest.TestCase):
    def test_value_at_d1(self):
        self.assertAlmostEqual(formulas.degree_bound(1.0, 0.4), 137.65, delta=0.01)

    @given(d=st.floats(0.1, 20.0), frac=st.floats(0.05, 1.0))
    def test_product_identity(self, d, frac):
        r0 = frac * 2 * d / 5
        a = formulas.degree_bound(d, r0)
        b = formulas.degree_bound_difference_form(d, r0)
        self.assertAlmostEqual(a / b, 1.0, delta=1e-9)

    def test_r0_above_two_fifths_is_rejected(self):
        with self.assertRaises(InvalidInputError):
            formulas.degree_bound(1.0, 0.5)

    def test_annulus_area_by_quadrature(self):
        d, r0 = 3.0, 1.0
        area, _ = quad(lambda rho: 2 * math.pi * math.sinh(rho), d - 2.5 * r0, d + 2.5 * r0)
        ball = kernel.ball_area(r0 / 2)
        self.assertAlmostEqual(area / ball, formulas.degree_bound(d, r0), delta=1e-6 * area / ball)

    def test_phi_branches(self):
        self.assertEqual(math.floor(formulas.phi(1.0)) + 1, 138)
        d = formulas.PHI_THRESHOLD + 1
        self.assertAlmostEqual(formulas.phi(d), math.sinh(formulas.PHI_THRESHOLD) * math.sinh(d))

    def test_consistent_r0(self):
        self.assertAlmostEqual(formulas.consistent_r0(1.0), 0.4)
        self.assertAlmostEqual(formulas.consistent_r0(10.0), formulas.ASINH_ONE)
        self.assertAlmostEqual(formulas.phi_consistent(1.0), formulas.phi(1.0), delta=1e-9)
