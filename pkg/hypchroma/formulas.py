"""Closed-form hyperbolic trigonometry used by the bounds and constructions."""

import logging
import math
from dataclasses import dataclass

from hypchroma import hooks, validations
from hypchroma.exceptions import GeometryInfeasibleError, InvalidInputError
from hypchroma.utils import acosh

logger = logging.getLogger(__name__)

ASINH_ONE = math.asinh(1.0)
# largest thinness for which half-collars stay convex
CONVEX_THINNESS = math.asinh(1.0 / math.sqrt(2.0))
PHI_THRESHOLD = 10.0 * ASINH_ONE


@dataclass(frozen=True)
class CollarGeometry:
    l_gamma: float
    eps: float
    width: float
    boundary_distance: float

    @property
    def margin(self):
        return self.width - self.boundary_distance

    def as_dict(self):
        return {
            "l_gamma": self.l_gamma,
            "eps": self.eps,
            "w": self.width,
            "K_C": self.boundary_distance,
            "margin": self.margin,
        }


def collar_width(l_gamma):
    l_gamma = validations.validate_positive(l_gamma, "l_gamma")
    return math.asinh(1.0 / math.sinh(l_gamma / 2.0))


def collar_geometry(l_gamma, eps):
    l_gamma = validations.validate_positive(l_gamma, "l_gamma")
    eps = validations.validate_positive(eps, "eps")
    if eps > ASINH_ONE + hooks.formula_tol:
        raise InvalidInputError(f"thinness {eps} exceeds arcsinh(1)")
    half = math.sinh(l_gamma / 2.0)
    ratio = math.sinh(eps) / half
    if ratio < 1.0 - hooks.formula_tol:
        raise GeometryInfeasibleError(
            f"sinh(eps) = {math.sinh(eps):.6g} < sinh(l_gamma/2) = {half:.6g}: "
            "the geodesic is not in the eps-thin part"
        )
    return CollarGeometry(l_gamma, eps, collar_width(l_gamma), acosh(ratio, "K_C"))


def convexity_gap():
    """log 2 - arcsinh(1/sqrt 2); positive, so escaping a half-collar costs more
    than crossing it when the thinness is at most arcsinh(1/sqrt 2)."""
    return math.log(2.0) - CONVEX_THINNESS


def ideal_clique_distance(N):
    """d_N: twice the inradius of the regular ideal N-gon."""
    N = validations.validate_integer(N, "N", minimum=3)
    return acosh(2.0 / math.sin(math.pi / N) ** 2 - 1.0)


def dN_of_t(N, t):
    """Center distance of two semi-regular 2N-gons with truncation length t."""
    N = validations.validate_integer(N, "N", minimum=3)
    t = validations.validate_nonnegative(t, "t")
    return 2.0 * acosh(math.cosh(t / 2.0) / math.sin(math.pi / N))


def solve_t(N, d):
    N = validations.validate_integer(N, "N", minimum=3)
    d = validations.validate_positive(d, "d")
    arg = math.cosh(d / 2.0) * math.sin(math.pi / N)
    if arg < 1.0 - 1e3 * hooks.formula_tol:
        raise GeometryInfeasibleError(
            f"d = {d} is below d_{N} = {ideal_clique_distance(N):.12g}; no truncation realizes it"
        )
    return 2.0 * acosh(max(arg, 1.0))


@dataclass(frozen=True)
class SemiRegularSides:
    N: int
    t: float
    s: float
    inradius_s: float
    inradius_t: float

    def as_dict(self):
        return {
            "N": self.N,
            "t": self.t,
            "s": self.s,
            "inradius_s": self.inradius_s,
            "inradius_t": self.inradius_t,
        }


def semi_regular_sides(N, t):
    """Side s and both inradii of the right-angled 2N-gon with alternate sides t."""
    N = validations.validate_integer(N, "N", minimum=3)
    t = validations.validate_positive(t, "t")
    s = 2.0 * math.asinh(math.cos(math.pi / N) / math.sinh(t / 2.0))
    inradius_t = acosh(math.cosh(s / 2.0) / math.sin(math.pi / N))
    return SemiRegularSides(N, t, s, dN_of_t(N, t) / 2.0, inradius_t)


def _require_metric_degree(N):
    N = validations.validate_integer(N, "N", minimum=3)
    if N <= 6:
        regime = "Euclidean" if N == 6 else "spherical"
        raise GeometryInfeasibleError(
            f"angle 2pi/{N} is in the {regime} regime; equilateral hyperbolic triangles need N >= 7",
            details={"N": N, "regime": regime},
        )
    return N


def equilateral_side(N):
    """l_N: side of the equilateral triangle with all angles 2pi/N."""
    N = _require_metric_degree(N)
    beta = 2.0 * math.pi / N
    return acosh((math.cos(beta) ** 2 + math.cos(beta)) / math.sin(beta) ** 2)


def equilateral_inradius(N):
    N = _require_metric_degree(N)
    return acosh(math.cos(math.pi / N) / math.sin(math.pi / 3.0))


def equilateral_altitude(N):
    """Distance from a vertex to the line through the opposite side."""
    side = equilateral_side(N)
    return math.asinh(math.sinh(side) * math.sin(2.0 * math.pi / N))


@dataclass(frozen=True)
class HoledTriangle:
    N: int
    t: float
    side: float
    vertex_to_hole: float
    altitude: float

    @property
    def margin(self):
        return self.vertex_to_hole - self.side / 2.0

    def as_dict(self):
        return {
            "N": self.N,
            "t": self.t,
            "side": self.side,
            "a": self.vertex_to_hole,
            "altitude": self.altitude,
            "margin": self.margin,
        }


def hole_length(sinh_value=None):
    """Boundary length t with sinh(t/6) = sinh_value."""
    if sinh_value is None:
        sinh_value = hooks.default_hole_sinh
    sinh_value = validations.validate_positive(sinh_value, "sinh(t/6)")
    return 6.0 * math.asinh(sinh_value)


def holed_triangle_metrics(N, t):
    N = _require_metric_degree(N)
    t = validations.validate_positive(t, "t")
    side = 2.0 * acosh(math.cosh(t / 6.0) / math.sin(math.pi / N), "holed side")
    a = acosh(math.sinh(side / 2.0) / math.sinh(t / 6.0), "vertex-to-hole distance")
    return HoledTriangle(N, t, side, a, holed_altitude(N, t, side))


def holed_altitude(N, t, side=None):
    """Distance from a vertex of the holed triangle to the line of the opposite side."""
    if side is None:
        side = holed_triangle_metrics(N, t).side
    return math.asinh(math.sinh(side) * math.sin(2.0 * math.pi / N))


def _check_r0(d, r0):
    d = validations.validate_positive(d, "d")
    r0 = validations.validate_positive(r0, "r0")
    if r0 > 2.0 * d / 5.0 * (1.0 + hooks.formula_tol):
        raise InvalidInputError(f"r0 = {r0} exceeds 2d/5 = {2.0 * d / 5.0}")
    return d, r0


def degree_bound(d, r0):
    """Bound on the degree of a net center in the distance graph."""
    d, r0 = _check_r0(d, r0)
    return math.sinh(2.5 * r0) * math.sinh(d) / math.sinh(r0 / 4.0) ** 2


def degree_bound_difference_form(d, r0):
    """Annulus area over ball area, before the product identity is applied."""
    d, r0 = _check_r0(d, r0)
    outer = math.sinh((d + 2.5 * r0) / 2.0) ** 2
    inner = math.sinh((d - 2.5 * r0) / 2.0) ** 2
    return (outer - inner) / math.sinh(r0 / 4.0) ** 2


def phi(d):
    """Color count minus one, with the branch constant exactly as printed."""
    d = validations.validate_positive(d, "d")
    if d <= PHI_THRESHOLD:
        return math.sinh(d) ** 2 / math.sinh(d / 10.0) ** 2
    return math.sinh(PHI_THRESHOLD) * math.sinh(d)


def consistent_r0(d):
    d = validations.validate_positive(d, "d")
    return min(2.0 * d / 5.0, ASINH_ONE)


def phi_consistent(d):
    """degree_bound at r0 = min(2d/5, arcsinh 1)."""
    return degree_bound(d, consistent_r0(d))
