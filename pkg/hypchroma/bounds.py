"""Bound calculators for chromatic numbers of hyperbolic surfaces.

Integer quantities (embedding genera, triangle counts, closed genera) are
computed with exact integer arithmetic from the Euler characteristic.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from hypchroma import formulas, validations
from hypchroma.exceptions import InternalConsistencyError, InvalidInputError

logger = logging.getLogger(__name__)

THICK_THRESHOLD = 8.0 * formulas.ASINH_ONE
PRINTED_GENUS_R0 = 4.0 * formulas.ASINH_ONE
CONSISTENT_GENUS_R0 = 2.0 * formulas.CONVEX_THINNESS


def upper_bound_in_d(d):
    return math.floor(formulas.phi(d)) + 1


@dataclass(frozen=True)
class LowerChoice:
    N: int
    t_d: float
    degenerate: bool = False

    @property
    def clique(self):
        """Polygon count of the construction; every pair of polygons shares a side."""
        return self.N + 1


def lower_bound_in_d(d):
    """Largest N with d_N <= d, and the truncation t_d realizing d exactly."""
    d = validations.validate_positive(d, "d")
    d_N = formulas.ideal_clique_distance
    if d < d_N(3):
        return LowerChoice(3, 0.0, degenerate=True)
    N = max(3, int(math.pi / math.asin(math.sqrt(2.0 / (math.cosh(d) + 1.0)))))
    while N > 3 and d_N(N) > d:
        N -= 1
    while d_N(N + 1) <= d:
        N += 1
    return LowerChoice(N, formulas.solve_t(N, d))


def ringel_youngs_genus(n):
    """Genus of a minimal orientable embedding of K_n.

    Uses the ceiling; the floor form in print is reported by
    ringel_youngs_discrepancy. The two agree for n = 0, 3, 4, 7 mod 12, the
    residues with triangular embeddings.
    """
    n = validations.validate_integer(n, "n", minimum=3)
    num = (n - 3) * (n - 4)
    return -(-num // 12)


def printed_ringel_youngs_genus(n):
    """The floor form (n-3)(n-4)/12, kept only to report its discrepancy."""
    n = validations.validate_integer(n, "n", minimum=3)
    return (n - 3) * (n - 4) // 12


def ringel_youngs_discrepancy(n):
    exact = ringel_youngs_genus(n)
    printed = printed_ringel_youngs_genus(n)
    if printed != exact:
        logger.warning(
            "floor form (n-3)(n-4)/12 gives %d for K_%d; the minimal genus is the ceiling %d",
            printed,
            n,
            exact,
        )
    return {"n": n, "exact": exact, "printed": printed, "agrees": printed == exact}


def _euler_genus(n):
    # g_n for the triangular residues; floor and ceiling coincide there
    return (n - 3) * (n - 4) // 12


def triangle_count(N):
    """T_N: faces of the triangular embedding of K_{N+1}."""
    N = validations.validate_triangulation_order(N)
    g = _euler_genus(N + 1)
    T = 1 - 2 * g + N * (N - 1) // 2
    if (N + 1) - N * (N + 1) // 2 + T != 2 - 2 * g:
        raise InternalConsistencyError(f"T_{N} = {T} breaks V - E + F = 2 - 2g at g = {g}")
    return T


def min_closed_genus(N):
    """Genus after pasting all T_N boundary curves of the block surface in pairs."""
    T = triangle_count(N)
    if T % 2:
        raise InvalidInputError(f"T_{N} = {T} is odd; boundaries cannot be paired")
    return _euler_genus(N + 1) + T // 2


def printed_min_genus(N):
    """The closed form N^2/4 - N/2 + 1/2, kept only to report its discrepancy."""
    return Fraction(N * N, 4) - Fraction(N, 2) + Fraction(1, 2)


def min_genus_discrepancy(N):
    exact = min_closed_genus(N)
    printed = printed_min_genus(N)
    if printed != exact:
        logger.warning(
            "closed form N^2/4 - N/2 + 1/2 gives %s for N = %d; Euler arithmetic gives %d",
            printed,
            N,
            exact,
        )
    return {"N": N, "exact": exact, "printed": str(printed), "agrees": printed == exact}


def thick_ball_count_bound(g, r0):
    """Upper bound on the number of disjoint r0/2-balls in the thick part."""
    g = validations.validate_genus(g, minimum=2)
    r0 = validations.validate_positive(r0, "r0")
    return (g - 1) / math.sinh(r0 / 4.0) ** 2


def cylinder_color_budget(g):
    g = validations.validate_genus(g, minimum=2)
    return 10 * (3 * g - 3)


def genus_count_at(g, r0):
    return math.ceil(thick_ball_count_bound(g, r0) - 1e-9) + cylinder_color_budget(g)


def genus_upper_bound(g, d):
    g = validations.validate_genus(g, minimum=2)
    d = validations.validate_positive(d, "d")
    if d >= THICK_THRESHOLD:
        return genus_count_at(g, PRINTED_GENUS_R0)
    return upper_bound_in_d(d)


@dataclass(frozen=True)
class GenusChoice:
    N: int
    clique: int
    degenerate: bool = False


def genus_lower_choice(g):
    g = validations.validate_genus(g, minimum=0)
    if g < min_closed_genus(11):
        return GenusChoice(0, 0, degenerate=True)
    # min_closed_genus(N) = (N(N-1) + 2) / 4; start from its inverse and adjust
    N = 11 + 12 * max(0, (math.isqrt(4 * g) - 11) // 12)
    while N > 11 and min_closed_genus(N) > g:
        N -= 12
    while min_closed_genus(N + 12) <= g:
        N += 12
    return GenusChoice(N, N + 1)


def scan_genus_lower(g_max):
    """Genera in [28, g_max] where clique(g) >= sqrt(2g) - 10 fails.

    The clique is constant on each admissible block, so the test
    (clique + 10)^2 >= 2g runs at the largest genus of every block.
    """
    g_max = validations.validate_genus(g_max, minimum=0)
    logger.warning(
        "checking clique >= sqrt(2g) - 10 against Euler genera; "
        "the printed chain bounds the genus by N^2/4 - N/2 + 1/2"
    )
    failures = []
    N = 11
    while min_closed_genus(N) <= g_max:
        top = min(min_closed_genus(N + 12) - 1, g_max)
        clique = N + 1
        if (clique + 10) ** 2 < 2 * top:
            # report every failing genus in the block
            lo = max(min_closed_genus(N), (clique + 10) ** 2 // 2 + 1)
            failures.extend(range(lo, top + 1))
        N += 12
    if failures:
        logger.warning("clique >= sqrt(2g) - 10 fails at %d genera up to %d", len(failures), g_max)
    return failures


def closed_equilateral_family(N):
    """Closed surface tiled by equilateral triangles along the K_{N+1} blueprint."""
    N = validations.validate_triangulation_order(N)
    g = _euler_genus(N + 1)
    return {
        "N": N,
        "genus": g,
        "clique": N + 1,
        "edge": formulas.equilateral_side(N),
        "heawood_check": (N + 1) ** 2 >= 12 * g + 72,
    }


def fitted_constants(d_grid, g_grid):
    """Envelope constants over the evaluation grids; empirical, not proven."""
    d_grid = [validations.validate_positive(d, "d") for d in d_grid]
    g_grid = [validations.validate_genus(g, minimum=2) for g in g_grid]
    c1 = max(upper_bound_in_d(d) / math.exp(d) for d in d_grid)
    lowers = [lower_bound_in_d(d) for d in d_grid]
    c2 = min(lo.N / math.exp(d / 2.0) for lo, d in zip(lowers, d_grid) if not lo.degenerate)
    c3 = max(genus_count_at(g, PRINTED_GENUS_R0) / g for g in g_grid)
    chosen = [(genus_lower_choice(g), g) for g in g_grid]
    c4 = min((ch.clique / math.sqrt(g) for ch, g in chosen if not ch.degenerate), default=None)

    def entry(value, grid):
        return {"value": value, "kind": "fitted", "grid": [min(grid), max(grid)]}

    return {
        "C1": entry(c1, d_grid),
        "C2": entry(c2, d_grid),
        "C3": entry(c3, g_grid),
        "C4": entry(c4, g_grid),
    }


@dataclass
class BoundsReport:
    input: dict
    upper_colors: int
    lower_clique: object
    r0: float
    N: object = None
    t_d: object = None
    T_N: object = None
    min_genus: object = None
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def as_dict(self):
        out = {
            "input": self.input,
            "upper_colors": self.upper_colors,
            "lower_clique": self.lower_clique,
            "r0": self.r0,
            "N": self.N,
            "t_d": self.t_d,
            "T_N": self.T_N,
            "min_genus": self.min_genus,
            "notes": list(self.notes),
        }
        out.update(self.extra)
        return out


def report_for_distance(d):
    d = validations.validate_positive(d, "d")
    upper = upper_bound_in_d(d)
    lower = lower_bound_in_d(d)
    notes = ["upper_colors = floor(phi(d)) + 1 with phi as printed"]
    consistent = math.floor(formulas.phi_consistent(d)) + 1
    if d > formulas.PHI_THRESHOLD:
        notes.append("phi large-d branch uses the printed constant sinh(10 arcsinh 1)")
        logger.warning(
            "phi(%s) uses the printed constant sinh(10 arcsinh 1); the consistent bound gives %d colors",
            d,
            consistent,
        )
    elif d > 2.5 * formulas.ASINH_ONE:
        notes.append("phi switches branch at 10 arcsinh(1) while r0 switches at 2.5 arcsinh(1)")
        logger.warning(
            "d = %s lies between the r0 switch 2.5 arcsinh(1) and the phi switch 10 arcsinh(1)",
            d,
        )
    if lower.degenerate:
        notes.append("d < d_3: no ideal-polygon construction realizes d")
        lower_clique = None
    else:
        notes.append("lower_clique counts the N+1 polygons; lower_clique_N is the N reading")
        lower_clique = lower.clique
        if upper < lower_clique:
            raise InternalConsistencyError(f"upper bound {upper} is below the clique {lower_clique} at d = {d}")
    return BoundsReport(
        input={"d": d},
        upper_colors=upper,
        lower_clique=lower_clique,
        r0=formulas.consistent_r0(d),
        N=lower.N,
        t_d=lower.t_d,
        notes=notes,
        extra={
            "phi": formulas.phi(d),
            "phi_variant": "printed",
            "upper_colors_consistent": consistent,
            "lower_clique_N": None if lower.degenerate else lower.N,
            "degenerate": lower.degenerate,
        },
    )


def report_for_genus(g, d=None):
    g = validations.validate_genus(g, minimum=2)
    upper = genus_count_at(g, PRINTED_GENUS_R0)
    notes = [
        "upper_colors uses r0 = 4 arcsinh(1): eps = r0/2 exceeds arcsinh(1) and arcsinh(1/sqrt 2)",
        "upper_colors_consistent uses r0 = 2 arcsinh(1/sqrt 2)",
    ]
    extra = {
        "upper_colors_consistent": genus_count_at(g, CONSISTENT_GENUS_R0),
        "r0_consistent": CONSISTENT_GENUS_R0,
        "regime_violated": True,
    }
    logger.warning(
        "genus bound uses r0 = 4 arcsinh(1) outside its regime; r0 = 2 arcsinh(1/sqrt 2) gives %d",
        extra["upper_colors_consistent"],
    )
    if d is not None:
        extra["upper_colors_at_d"] = genus_upper_bound(g, d)
        if d < THICK_THRESHOLD:
            notes.append("d < 8 arcsinh(1): upper_colors_at_d falls back to the bound in d")
    choice = genus_lower_choice(g)
    T_N = min_genus = None
    if choice.degenerate:
        notes.append("genus below 28: no block surface construction")
        lower_clique = None
        N = None
    else:
        N = choice.N
        lower_clique = choice.clique
        T_N = triangle_count(N)
        min_genus = min_closed_genus(N)
        discrepancy = min_genus_discrepancy(N)
        extra["printed_min_genus"] = discrepancy["printed"]
        if not discrepancy["agrees"]:
            notes.append("min_genus from Euler arithmetic; printed closed form disagrees")
        chain = math.sqrt(2 * g) - 10
        extra["sqrt_chain_holds"] = lower_clique >= chain
        notes.append("clique >= sqrt(2g) - 10 checked against Euler genera, not the printed chain")
        logger.warning(
            "sqrt(2g) - 10 = %.3f for g = %d checked with clique %d; the printed chain uses N^2/4",
            chain,
            g,
            lower_clique,
        )
        if upper < lower_clique:
            raise InternalConsistencyError(f"upper bound {upper} is below the clique {lower_clique} at g = {g}")
    return BoundsReport(
        input={"genus": g, "d": d},
        upper_colors=upper,
        lower_clique=lower_clique,
        r0=PRINTED_GENUS_R0,
        N=N,
        T_N=T_N,
        min_genus=min_genus,
        notes=notes,
        extra=extra,
    )
