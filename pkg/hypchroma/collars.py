"""Thin-part coloring: slicing half-collars into sections of diameter < d.

Sections are cut from the boundary curve down to the core geodesic. A section
whose outer curve has length L gets height d' - L/2, so its diameter bound
(height plus half the outer curve) stays at d' < d.
"""

import logging
import math
from dataclasses import dataclass, field

import networkx as nx

from hypchroma import bounds, formulas, hooks, validations
from hypchroma.exceptions import ParameterRegimeError

logger = logging.getLogger(__name__)

HALVES = ("+", "-")
COLORS_PER_HALF = 5


def parallel_curve_length(l_gamma, rho):
    """Length of the curve at distance rho from the core geodesic."""
    l_gamma = validations.validate_positive(l_gamma, "l_gamma")
    rho = validations.validate_nonnegative(rho, "rho")
    return l_gamma * math.cosh(rho)


def convexity_certificate(l_gamma, eps):
    """2(w - K_C) - l_gamma/2: leaving the collar costs more than going around it."""
    collar = formulas.collar_geometry(l_gamma, eps)
    return 2.0 * collar.margin - l_gamma / 2.0


@dataclass
class Section:
    half: str
    rho_top: float
    rho_bottom: float
    outer_length: float
    color: int = -1

    @property
    def height(self):
        return self.rho_top - self.rho_bottom

    @property
    def diam_bound(self):
        return self.height + self.outer_length / 2.0

    def as_dict(self):
        return {
            "half": self.half,
            "rho_top": self.rho_top,
            "rho_bottom": self.rho_bottom,
            "height": self.height,
            "diam_bound": self.diam_bound,
            "color": self.color,
        }


@dataclass
class SectionDecomposition:
    collar: formulas.CollarGeometry
    d: float
    d_prime: float
    sections: list = field(default_factory=list)
    colors: int = 0
    max_degree: int = 0

    def half(self, name):
        return [s for s in self.sections if s.half == name]

    def as_dict(self):
        return {
            "l_gamma": self.collar.l_gamma,
            "eps": self.collar.eps,
            "K_C": self.collar.boundary_distance,
            "d": self.d,
            "d_prime": self.d_prime,
            "colors": self.colors,
            "max_degree": self.max_degree,
            "sections": [s.as_dict() for s in self.sections],
        }


def check_regime(l_gamma, eps, d, r0=None):
    """Raise ParameterRegimeError naming the first inequality that fails."""
    if eps > formulas.CONVEX_THINNESS + hooks.formula_tol:
        raise ParameterRegimeError("half-collars may not be convex", "eps <= arcsinh(1/sqrt 2)")
    if math.sinh(eps) < math.sinh(l_gamma / 2.0):
        raise ParameterRegimeError(
            "geodesic is not in the thin part", "sinh(eps) >= sinh(l_gamma/2)"
        )
    collar = formulas.collar_geometry(l_gamma, eps)
    boundary = parallel_curve_length(l_gamma, collar.boundary_distance)
    d_prime = d * hooks.slicer_d_prime_factor
    if r0 is not None:
        if not boundary <= r0:
            raise ParameterRegimeError(
                f"boundary curve length {boundary:.6g} exceeds r0", "l(gamma+) <= r0"
            )
        if not r0 <= d / 2.0:
            raise ParameterRegimeError(f"r0 = {r0} exceeds d/2", "r0 <= d/2")
    if not boundary < 2.0 * d_prime - d:
        raise ParameterRegimeError(
            f"boundary curve length {boundary:.6g} leaves no section taller than d/2",
            "l(gamma+) < 2d' - d",
        )
    return collar, d_prime


def slice_half_collar(l_gamma, eps, d, r0=None, half="+"):
    l_gamma = validations.validate_positive(l_gamma, "l_gamma")
    eps = validations.validate_positive(eps, "eps")
    d = validations.validate_positive(d, "d")
    collar, d_prime = check_regime(l_gamma, eps, d, r0)
    sections = []
    rho = collar.boundary_distance
    while True:
        outer = l_gamma * math.cosh(rho)
        height = d_prime - outer / 2.0
        if rho <= height:
            sections.append(Section(half, rho, 0.0, outer))
            break
        sections.append(Section(half, rho, rho - height, outer))
        rho -= height
    logger.debug("half-collar l=%g eps=%g d=%g: %d sections", l_gamma, eps, d, len(sections))
    return SectionDecomposition(collar, d, d_prime, sections)


def _may_realize(gap, span, d):
    return gap <= d <= span


def section_graph(decomposition):
    """Conservative adjacency: an edge wherever a distance-d pair is possible."""
    d = decomposition.d
    g = nx.Graph()
    sections = decomposition.sections
    g.add_nodes_from(range(len(sections)))
    for i, a in enumerate(sections):
        for j in range(i + 1, len(sections)):
            b = sections[j]
            slack = max(a.outer_length, b.outer_length) / 2.0
            if a.half == b.half:
                upper, lower = (a, b) if a.rho_bottom >= b.rho_bottom else (b, a)
                gap = max(0.0, upper.rho_bottom - lower.rho_top)
                span = upper.rho_top - lower.rho_bottom + slack
            else:
                # every path between the halves crosses the core geodesic
                gap = a.rho_bottom + b.rho_bottom
                span = a.rho_top + b.rho_top + slack
            if _may_realize(gap, span, d):
                g.add_edge(i, j, same_half=a.half == b.half)
    return g


def color_cylinder(plus, minus=None):
    """Color both halves of a collar; the halves use disjoint five-color palettes."""
    if minus is None:
        minus = plus
    sections = [Section("+", s.rho_top, s.rho_bottom, s.outer_length) for s in plus.sections]
    sections += [Section("-", s.rho_top, s.rho_bottom, s.outer_length) for s in minus.sections]
    decomposition = SectionDecomposition(plus.collar, plus.d, plus.d_prime, sections)
    g = section_graph(decomposition)
    within = nx.Graph()
    within.add_nodes_from(g)
    within.add_edges_from((u, v) for u, v, same in g.edges(data="same_half") if same)
    decomposition.max_degree = max((deg for _, deg in within.degree()), default=0)
    for offset, name in enumerate(HALVES):
        nodes = [i for i, s in enumerate(sections) if s.half == name]
        coloring = nx.greedy_color(within.subgraph(nodes), strategy="largest_first")
        for i, c in coloring.items():
            sections[i].color = c + offset * COLORS_PER_HALF
    assert not any(
        sections[u].color == sections[v].color for u, v in g.edges()
    ), "section coloring is not proper"
    decomposition.colors = len({s.color for s in sections})
    return decomposition


def decompose_cylinder(l_gamma, eps, d, r0=None):
    plus = slice_half_collar(l_gamma, eps, d, r0, half="+")
    return color_cylinder(plus)


def cylinder_budget(g):
    return bounds.cylinder_color_budget(g)


def decomposition_to_dict(decomposition):
    return decomposition.as_dict()
