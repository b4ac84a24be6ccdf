"""Oracle cross-checks runnable from the command line.

Each suite collects failures as dicts naming the check and the values that
disagreed. A run with no failures passes.
"""

import logging
import math

import numpy as np

from hypchroma import bounds, formulas, hooks, kernel, net_coloring, rotations, surfaces
from hypchroma.exceptions import HypchromaError, InvalidInputError

logger = logging.getLogger(__name__)

SUITES = ("formulas", "surfaces", "rotations", "nets", "all")
ORACLE_ORDERS = (3, 4, 5, 7, 12)


class _Checks:
    def __init__(self, suite):
        self.suite = suite
        self.failures = []
        self.count = 0

    def close(self, name, got, want, tol):
        self.count += 1
        if not abs(got - want) <= tol:
            self.failures.append({"suite": self.suite, "check": name, "got": got, "want": want})

    def true(self, name, ok, **details):
        self.count += 1
        if not ok:
            self.failures.append({"suite": self.suite, "check": name, **details})

    def run(self, name, fn, *args, **kwargs):
        """Call fn; a domain error counts as a failure of the named check."""
        try:
            return fn(*args, **kwargs)
        except HypchromaError as e:
            self.count += 1
            self.failures.append({"suite": self.suite, "check": name, "error": str(e)})
            return None


def check_formulas():
    c = _Checks("formulas")
    tol = hooks.oracle_tol
    c.close("d_3 = ln 3", formulas.ideal_clique_distance(3), math.log(3), tol)
    for N in ORACLE_ORDERS:
        c.close(f"d_{N} vs inradius", formulas.ideal_clique_distance(N), 2 * kernel.ideal_polygon_inradius(N), tol)
        for t in (1e-3, 0.5, 1.0):
            d = formulas.dN_of_t(N, t)
            c.close(f"t from d_{N}({t})", kernel.truncation_length(N, d / 2), t, tol)
            c.close(f"solve_t(d_{N}({t}))", formulas.solve_t(N, d), t, tol)
    c.close("l_12", formulas.equilateral_side(12), math.acosh(3 + 2 * math.sqrt(3)), 1e-12)
    for t3, alpha in ((0.5, 0.3), (1.0, 1.0), (2.0, 1.4)):
        quad = kernel.solve_right_quadrilateral(t3, alpha)
        A, B, C, D = kernel.realize_right_quadrilateral(t3, alpha)
        c.close(f"quad summit {t3},{alpha}", kernel.dist(C, D), quad.summit, 1e-9)
        c.close(f"quad leg {t3},{alpha}", kernel.dist(B, C), quad.leg, 1e-9)
        c.close(f"quad angle {t3},{alpha}", kernel.angle_at(C, B, D), alpha, 1e-9)
    for eps in np.arange(0.1, formulas.ASINH_ONE - 1e-3, 0.1):
        for l_gamma in np.linspace(0.01, 4.0, 40):
            if math.sinh(eps) < math.sinh(l_gamma / 2):
                continue
            geom = c.run("collar", formulas.collar_geometry, l_gamma, eps)
            if geom is not None:
                c.true(f"collar margin eps={eps:.2f} l={l_gamma:.2f}", geom.margin > 0, margin=geom.margin)
    thin = formulas.collar_geometry(1e-6, formulas.CONVEX_THINNESS)
    c.close("collar margin at the convex threshold", thin.margin, math.log(2) / 2, 1e-4)
    c.close("degree_bound(1, 2/5)", formulas.degree_bound(1.0, 0.4), math.sinh(1) ** 2 / math.sinh(0.1) ** 2, 1e-9)
    c.close(
        "degree bound product identity",
        formulas.degree_bound(3.0, 1.0),
        formulas.degree_bound_difference_form(3.0, 1.0),
        1e-9 * formulas.degree_bound(3.0, 1.0),
    )
    c.true("upper_bound_in_d(1) = 138", bounds.upper_bound_in_d(1.0) == 138, got=bounds.upper_bound_in_d(1.0))
    c.true("T_11 = 44", bounds.triangle_count(11) == 44, got=bounds.triangle_count(11))
    c.true("min_closed_genus(11) = 28", bounds.min_closed_genus(11) == 28)
    c.true("genus_upper_bound(2) = 31", bounds.genus_upper_bound(2, bounds.THICK_THRESHOLD) == 31)
    c.true("genus_upper_bound(10) = 279", bounds.genus_upper_bound(10, bounds.THICK_THRESHOLD) == 279)
    c.true("genus_lower_choice(28)", bounds.genus_lower_choice(28).clique == 12)
    lower = bounds.lower_bound_in_d(20.0)
    c.true("N at d = 20", 30000 <= lower.N <= 40000, got=lower.N)
    return c


def check_surfaces(depth=None):
    c = _Checks("surfaces")
    built = [(f"ideal N={N}", lambda N=N: surfaces.build_ideal_surface(N)) for N in (3, 4, 5)]
    built += [
        (f"truncated N=5 t={t}", lambda t=t: surfaces.build_truncated_surface(5, t)) for t in (0.1, 1.0)
    ]
    for name, build in built:
        S = c.run(name, build)
        if S is None:
            continue
        c.true(f"{name} orientable", surfaces.euler(S)["orientable"])
        cert = c.run(name, surfaces.certify_clique, S, depth)
        if cert is not None:
            c.true(f"{name} certified", cert.certified, status=cert.status, margin=cert.margin)
            c.true(f"{name} edge length", cert.edge_length_error <= hooks.oracle_tol, error=cert.edge_length_error)
        again = c.run(name, surfaces.surface_from_dict, surfaces.surface_to_dict(S))
        if again is not None:
            c.true(f"{name} descriptor round trip", surfaces.euler(again) == surfaces.euler(S))
    S = surfaces.build_ideal_surface(3)
    c.true("ideal N=3 has 4 triangles", len(S.polygons) == 4)
    k19 = rotations.shipped_blueprint("k19")
    F = c.run("holed K19", surfaces.build_triangle_surface, k19, mode="holed")
    if F is not None:
        closed = surfaces.euler(surfaces.close_surface(F))
        c.true("closed K19 block genus", closed["genus"] == 77, got=closed["genus"])
        cert = surfaces.certify_clique(F)
        c.true("holed K19 certified", cert.certified, margin=cert.margin)
    E = c.run("equilateral K19", surfaces.build_triangle_surface, k19)
    if E is not None:
        c.true("equilateral K19 genus", surfaces.euler(E)["genus"] == 20)
        sums = E.vertex_angle_sums()
        c.true("equilateral K19 angle sums", all(abs(s - 2 * math.pi) < 1e-9 for s in sums), count=len(sums))
    return c


def check_rotations(paths=()):
    c = _Checks("rotations")
    expected = {"k4": (4, 0, True), "k7": (14, 1, True), "k19": (114, 20, True)}
    for name, (faces, genus, triangular) in expected.items():
        rs = c.run(name, rotations.shipped_blueprint, name)
        if rs is None:
            continue
        report = rotations.face_report(rs)
        c.true(f"{name} faces", report["F"] == faces, got=report["F"], want=faces)
        c.true(f"{name} genus", report["genus"] == genus, got=report["genus"], want=genus)
        if triangular:
            c.true(f"{name} triangular", report["triangular"])
        c.true(f"{name} minimal genus", rotations.verify_ringel_youngs(rs, rs.n))
    for path in paths:
        rs = c.run(str(path), rotations.load_rotation_system, path)
        if rs is None:
            continue
        report = c.run(str(path), rotations.face_report, rs)
        if report is None:
            continue
        if not rotations.is_complete(rs, rs.n):
            c.true(f"{path} complete", False, reason="not a complete graph")
            continue
        minimal = bounds.ringel_youngs_discrepancy(rs.n)
        want = minimal["exact"]
        c.true(
            f"{path} genus",
            report["genus"] == want,
            reason="genus mismatch",
            got=report["genus"],
            want=want,
            printed_floor=minimal["printed"],
        )
    return c


def check_nets(seeds=3, radius=4.0, trials=20_000, threads=None):
    c = _Checks("nets")
    d = 1.0
    bound = formulas.degree_bound(d, 0.4)
    for seed in range(seeds):
        result, net, _ = net_coloring.run_net_experiment(d, radius, seed, trials, threads=threads)
        c.true(f"seed {seed} degree", result["max_degree"] <= bound, got=result["max_degree"])
        c.true(
            f"seed {seed} colors",
            result["colors_used"] <= min(result["max_degree"] + 1, result["phi_plus_one"]),
            got=result["colors_used"],
        )
        c.true(f"seed {seed} violations", result["violations"] == 0, got=result["violations"])
        c.true(f"seed {seed} separation", net.min_separation() > net.r)
    return c


def run_suite(suite, depth=None, paths=(), threads=None, seeds=3):
    if suite not in SUITES:
        raise InvalidInputError(f"unknown suite {suite!r}")
    names = ["formulas", "surfaces", "rotations", "nets"] if suite == "all" else [suite]
    results = []
    for name in names:
        if name == "formulas":
            checks = check_formulas()
        elif name == "surfaces":
            checks = check_surfaces(depth)
        elif name == "rotations":
            checks = check_rotations(paths)
        else:
            checks = check_nets(seeds=seeds, threads=threads)
        logger.info("suite %s: %d checks, %d failures", name, checks.count, len(checks.failures))
        results.append(checks)
    failures = [f for checks in results for f in checks.failures]
    return {
        "suites": {checks.suite: {"checks": checks.count, "failures": len(checks.failures)} for checks in results},
        "failures": failures,
        "passed": not failures,
    }
