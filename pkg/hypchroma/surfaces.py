"""Surfaces glued from hyperbolic polygons, and certificates for the complete
graphs they carry.

Polygon sides run counterclockwise: side k joins corner k to corner k+1. An
orientation-preserving pasting of side k of P with side j of Q identifies
corner k with corner j+1 and corner k+1 with corner j; a reversed pasting
identifies k with j and k+1 with j+1.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
from networkx.utils import UnionFind

from hypchroma import bounds, formulas, hooks, kernel, rotations, validations
from hypchroma.exceptions import (
    BlueprintError,
    CombinatorialError,
    ConnectivityError,
    ConstructionRuleError,
    GeometryInfeasibleError,
    InvalidInputError,
    OrientabilityError,
    PairingError,
)
from hypchroma.utils import resolve_threads

logger = logging.getLogger(__name__)


class PolygonKind(str, Enum):
    IDEAL_REGULAR = "ideal_regular"
    SEMI_REGULAR = "semi_regular"
    EQUILATERAL = "equilateral"
    HOLED_TRIANGLE = "holed_triangle"
    GENUS_PATCH = "genus_patch"


def _finite(length):
    return None if length is None or math.isinf(length) else length


@dataclass(frozen=True)
class PolygonSpec:
    kind: PolygonKind
    N: int = 0
    t: float = 0.0
    genus: int = 0
    holes: int = 0

    @property
    def metric(self):
        if self.kind in (PolygonKind.EQUILATERAL, PolygonKind.HOLED_TRIANGLE):
            return self.N >= 7
        return self.kind is not PolygonKind.GENUS_PATCH

    @property
    def side_count(self):
        if self.kind is PolygonKind.IDEAL_REGULAR:
            return self.N
        if self.kind is PolygonKind.SEMI_REGULAR:
            return 2 * self.N
        if self.kind is PolygonKind.GENUS_PATCH:
            return 0
        return 3

    @property
    def chi_contribution(self):
        if self.kind is PolygonKind.GENUS_PATCH:
            # no sides: a closed genus-g surface with holes removed
            return 2 - self.holes - 2 * self.genus
        return 1 - self.holes - 2 * self.genus

    @property
    def hole_length(self):
        return self.t if self.holes else None

    def corner_is_ideal(self, k):
        return self.kind is PolygonKind.IDEAL_REGULAR

    def corner_angle(self, k):
        if self.kind is PolygonKind.IDEAL_REGULAR:
            return 0.0
        if self.kind is PolygonKind.SEMI_REGULAR:
            return math.pi / 2
        return 2 * math.pi / self.N

    def side_length(self, k):
        if not self.metric:
            return None
        if self.kind is PolygonKind.IDEAL_REGULAR:
            return math.inf
        if self.kind is PolygonKind.SEMI_REGULAR:
            if k % 2:
                return self.t
            return formulas.semi_regular_sides(self.N, self.t).s
        if self.kind is PolygonKind.EQUILATERAL:
            return formulas.equilateral_side(self.N)
        return formulas.holed_triangle_metrics(self.N, self.t).side

    def side_frame(self, k):
        """Isometry taking the origin to the side midpoint, facing away from the center."""
        if self.kind is PolygonKind.IDEAL_REGULAR:
            theta, r = 2 * math.pi * k / self.N, formulas.ideal_clique_distance(self.N) / 2
        elif self.kind is PolygonKind.SEMI_REGULAR:
            sides = formulas.semi_regular_sides(self.N, self.t)
            theta = math.pi * k / self.N
            r = sides.inradius_t if k % 2 else sides.inradius_s
        elif self.kind is PolygonKind.EQUILATERAL and self.metric:
            theta, r = 2 * math.pi * k / 3, formulas.equilateral_inradius(self.N)
        else:
            raise CombinatorialError(f"{self.kind.value} polygons cannot be developed")
        return kernel.Isometry.rotation(theta) @ kernel.Isometry.translation(r)

    def as_dict(self):
        return {
            "kind": self.kind.value,
            "params": {"N": self.N, "t": self.t, "genus": self.genus, "holes": self.holes},
            "sides": [_finite(self.side_length(k)) for k in range(self.side_count)],
        }


@dataclass(frozen=True)
class Pasting:
    p: int
    s: int
    q: int
    j: int
    reversed: bool = False


def hole_key(p, h=0):
    return ("hole", p, h)


class GluedSurface:
    """Polygons with side pastings and boundary-curve pastings.

    Topology is derived on construction; instances are not mutated afterwards.
    """

    def __init__(self, polygons, pastings, boundary_pastings=(), construction=None):
        self.polygons = tuple(polygons)
        self.pastings = tuple(pastings)
        self.construction = dict(construction or {})
        self._partner = {}
        for pst in self.pastings:
            self._add_partner((pst.p, pst.s), (pst.q, pst.j, pst.reversed))
            self._add_partner((pst.q, pst.j), (pst.p, pst.s, pst.reversed))
        self._check_lengths()
        self._derive_corners()
        self._derive_boundaries()
        self.boundary_pastings = tuple(tuple(pair) for pair in boundary_pastings)
        self._check_boundary_pastings()
        self._check_connected()
        self.orientable = self._orientable()

    def _add_partner(self, side, target):
        p, s = side
        if not 0 <= p < len(self.polygons) or not 0 <= s < self.polygons[p].side_count:
            raise CombinatorialError(f"side {s} of polygon {p} does not exist")
        if side in self._partner:
            raise CombinatorialError(f"side {s} of polygon {p} is pasted twice")
        if (target[0], target[1]) == side:
            raise CombinatorialError(f"side {s} of polygon {p} is pasted to itself")
        self._partner[side] = target

    def _check_lengths(self):
        for pst in self.pastings:
            a = self.polygons[pst.p].side_length(pst.s)
            b = self.polygons[pst.q].side_length(pst.j)
            if a is None or b is None or (math.isinf(a) and math.isinf(b)):
                continue
            if abs(a - b) > hooks.develop_tol:
                raise PairingError(
                    f"pasted sides ({pst.p},{pst.s}) and ({pst.q},{pst.j}) differ: {a} vs {b}"
                )

    # -- kernel development interface --

    def partner(self, p, s):
        return self._partner.get((p, s))

    def side_frame(self, p, s):
        return self.polygons[p].side_frame(s)

    def side_length(self, p, s):
        length = self.polygons[p].side_length(s)
        if length is None:
            raise CombinatorialError(f"polygon {p} carries no metric")
        return length

    # -- derived topology --

    def _derive_corners(self):
        uf = UnionFind()
        for p, poly in enumerate(self.polygons):
            for c in range(poly.side_count):
                uf[(p, c)]
        for pst in self.pastings:
            m_p = self.polygons[pst.p].side_count
            m_q = self.polygons[pst.q].side_count
            if pst.reversed:
                uf.union((pst.p, pst.s), (pst.q, pst.j))
                uf.union((pst.p, (pst.s + 1) % m_p), (pst.q, (pst.j + 1) % m_q))
            else:
                uf.union((pst.p, pst.s), (pst.q, (pst.j + 1) % m_q))
                uf.union((pst.p, (pst.s + 1) % m_p), (pst.q, pst.j))
        classes = {}
        for corner in sorted(uf.parents):
            classes.setdefault(uf[corner], []).append(corner)
        self.vertex_classes = sorted(sorted(c) for c in classes.values())
        self._class_of = {}
        for idx, cls in enumerate(self.vertex_classes):
            for corner in cls:
                self._class_of[corner] = idx

    def _derive_boundaries(self):
        free = [
            (p, s)
            for p, poly in enumerate(self.polygons)
            for s in range(poly.side_count)
            if (p, s) not in self._partner
        ]
        g = nx.Graph()
        g.add_nodes_from(free)
        by_vertex = {}
        for p, s in free:
            m = self.polygons[p].side_count
            for corner in ((p, s), (p, (s + 1) % m)):
                by_vertex.setdefault(self._class_of[corner], []).append((p, s))
        for sides in by_vertex.values():
            g.add_edges_from(zip(sides, sides[1:]))
        self.boundaries = {}
        for p, poly in enumerate(self.polygons):
            for h in range(poly.holes):
                self.boundaries[hole_key(p, h)] = poly.hole_length
        for comp in sorted(sorted(c) for c in nx.connected_components(g)):
            p, s = comp[0]
            lengths = [self.polygons[q].side_length(k) for q, k in comp]
            total = None if None in lengths else sum(lengths)
            self.boundaries[("sides", p, s)] = total
        self._free_sides = free

    def _check_boundary_pastings(self):
        used = set()
        for a, b in self.boundary_pastings:
            for key in (a, b):
                if key not in self.boundaries:
                    raise PairingError(f"unknown boundary curve {key}")
                if key in used:
                    raise PairingError(f"boundary curve {key} is pasted twice")
                used.add(key)
            la, lb = self.boundaries[a], self.boundaries[b]
            if a == b:
                raise PairingError(f"boundary curve {a} is pasted to itself")
            if la is not None and lb is not None and abs(la - lb) > hooks.develop_tol:
                raise PairingError(f"boundary curves {a} and {b} differ: {la} vs {lb}")
        self.free_boundaries = [key for key in self.boundaries if key not in used]

    def _check_connected(self):
        g = nx.Graph()
        g.add_nodes_from(range(len(self.polygons)))
        g.add_edges_from((pst.p, pst.q) for pst in self.pastings)
        g.add_edges_from((a[1], b[1]) for a, b in self.boundary_pastings)
        if self.polygons and not nx.is_connected(g):
            raise ConnectivityError(
                f"surface has {nx.number_connected_components(g)} components"
            )

    def _orientable(self):
        sign = {}
        adjacency = {}
        for pst in self.pastings:
            flip = -1 if pst.reversed else 1
            adjacency.setdefault(pst.p, []).append((pst.q, flip))
            adjacency.setdefault(pst.q, []).append((pst.p, flip))
        for root in range(len(self.polygons)):
            if root in sign:
                continue
            sign[root] = 1
            stack = [root]
            while stack:
                p = stack.pop()
                for q, flip in adjacency.get(p, ()):
                    want = sign[p] * flip
                    if q not in sign:
                        sign[q] = want
                        stack.append(q)
                    elif sign[q] != want:
                        return False
        return True

    def vertex_angle_sums(self):
        """Angle sums at finite vertices not on a free side."""
        on_boundary = set()
        for p, s in self._free_sides:
            m = self.polygons[p].side_count
            on_boundary.add(self._class_of[(p, s)])
            on_boundary.add(self._class_of[(p, (s + 1) % m)])
        sums = []
        for idx, cls in enumerate(self.vertex_classes):
            if idx in on_boundary:
                continue
            if any(self.polygons[p].corner_is_ideal(c) for p, c in cls):
                continue
            sums.append(sum(self.polygons[p].corner_angle(c) for p, c in cls))
        return sums

    def __repr__(self):
        return f"GluedSurface({self.construction.get('kind', 'custom')}, polygons={len(self.polygons)})"


def euler(S):
    """Euler characteristic, genus and boundary count; cusps count as boundaries."""
    V = sum(
        1
        for cls in S.vertex_classes
        if not any(S.polygons[p].corner_is_ideal(c) for p, c in cls)
    )
    cusps = len(S.vertex_classes) - V
    E = len(S.pastings) + len(S._free_sides)
    faces = sum(poly.chi_contribution for poly in S.polygons)
    chi = faces - E + V
    boundaries = len(S.free_boundaries) + cusps
    report = {
        "chi": chi,
        "boundaries": boundaries,
        "cusps": cusps,
        "orientable": S.orientable,
        "genus": None,
    }
    if S.orientable:
        twice = 2 - chi - boundaries
        if twice % 2 or twice < 0:
            raise CombinatorialError(f"inconsistent topology: chi = {chi}, b = {boundaries}")
        report["genus"] = twice // 2
    else:
        logger.info("non-orientable surface: reporting chi only")
    return report


# -- clique constructions from N+1 polygons --


def canonical_pairing(N):
    """Round-robin: pasting side k of polygon i meets polygon (i + 1 + k) mod (N + 1)."""
    N = validations.validate_integer(N, "N", minimum=3)
    pairs = []
    for i in range(N + 1):
        for k in range(N):
            m = (i + 1 + k) % (N + 1)
            if i < m:
                pairs.append(((i, k), (m, N - 1 - k)))
    return pairs


def _normalize_pairing(N, pairing):
    if pairing is None:
        pairing = canonical_pairing(N)
    out = []
    for entry in pairing:
        (p, s), (q, j) = entry[0], entry[1]
        rev = bool(entry[2]) if len(entry) > 2 else False
        out.append((int(p), int(s), int(q), int(j), rev))
    return out


def check_clique_pairing(N, pairing):
    """N+1 polygons with N pasting sides each; every two polygons share exactly one side."""
    used = set()
    shared = {}
    for p, s, q, j, _ in pairing:
        for poly, side in ((p, s), (q, j)):
            if not (0 <= poly <= N and 0 <= side < N):
                raise ConstructionRuleError(f"side {side} of polygon {poly} is out of range")
            if (poly, side) in used:
                raise ConstructionRuleError(f"side {side} of polygon {poly} is pasted twice")
            used.add((poly, side))
        if p == q:
            raise ConstructionRuleError(f"polygon {p} is pasted to itself")
        pair = (min(p, q), max(p, q))
        if pair in shared:
            raise ConstructionRuleError(f"polygons {pair[0]} and {pair[1]} share two sides")
        shared[pair] = (p, s, q, j)
    missing = (N + 1) * N - len(used)
    if missing:
        raise ConstructionRuleError(f"{missing} sides are left unpasted")


def _clique_meta(kind, N, edge_length, **extra):
    meta = {
        "kind": kind,
        "N": N,
        "clique_kind": "centers",
        "clique_vertices": list(range(N + 1)),
        "edge_length": edge_length,
        "metric": True,
    }
    meta.update(extra)
    return meta


def build_ideal_surface(N, pairing=None):
    N = validations.validate_integer(N, "N", minimum=3)
    pairing = _normalize_pairing(N, pairing)
    check_clique_pairing(N, pairing)
    polygons = [PolygonSpec(PolygonKind.IDEAL_REGULAR, N=N) for _ in range(N + 1)]
    pastings = [Pasting(p, s, q, j, rev) for p, s, q, j, rev in pairing]
    S = GluedSurface(
        polygons,
        pastings,
        construction=_clique_meta("ideal", N, formulas.ideal_clique_distance(N)),
    )
    logger.debug("built ideal surface N=%d: %s", N, euler(S))
    return S


def build_truncated_surface(N, t, pairing=None):
    """Semi-regular right-angled 2N-gons pasted along their s-sides.

    Pairings name pasting sides by ordinal k, which is polygon side 2k; the
    t-sides stay free and close up into funnel-capped boundary curves.
    """
    N = validations.validate_integer(N, "N", minimum=3)
    t = validations.validate_positive(t, "t")
    pairing = _normalize_pairing(N, pairing)
    check_clique_pairing(N, pairing)
    polygons = [PolygonSpec(PolygonKind.SEMI_REGULAR, N=N, t=t) for _ in range(N + 1)]
    pastings = [Pasting(p, 2 * s, q, 2 * j, rev) for p, s, q, j, rev in pairing]
    S = GluedSurface(
        polygons,
        pastings,
        construction=_clique_meta("truncated", N, formulas.dN_of_t(N, t), t=t, funnels=True),
    )
    if not S.orientable:
        raise OrientabilityError("truncated surfaces must be orientable")
    return S


def build_truncated_for_distance(d, N=None):
    if N is None:
        choice = bounds.lower_bound_in_d(d)
        if choice.degenerate:
            raise GeometryInfeasibleError(f"d = {d} is below d_3; no construction")
        N, t = choice.N, choice.t_d
    else:
        t = formulas.solve_t(N, d)
    if t == 0:
        return build_ideal_surface(N)
    return build_truncated_surface(N, t)


# -- triangle surfaces from rotation systems --


def _regular_triangular(rs):
    faces = rotations.trace_faces(rs)
    if not rotations.is_triangular(rs, faces):
        raise BlueprintError("rotation system has non-triangular faces")
    degrees = {rs.degree(v) for v in range(rs.n)}
    if len(degrees) != 1:
        raise BlueprintError(f"rotation system is not regular (degrees {sorted(degrees)})")
    return faces, degrees.pop()


def build_triangle_surface(rs, mode="equilateral", t=None, metric=True):
    """Triangles pasted along the faces of a triangular rotation system.

    mode is "equilateral" (closed surface) or "holed" (one boundary curve of
    length t per triangle). With metric=False, degree <= 6 systems give the
    combinatorial complex only.
    """
    if mode not in ("equilateral", "holed"):
        raise InvalidInputError(f"unknown triangle mode {mode!r}")
    faces, N = _regular_triangular(rs)
    if N <= 6 and metric:
        genus = rotations.genus_of(rs, faces)
        raise GeometryInfeasibleError(
            f"degree {N} vertices force angles 2pi/{N} >= pi/3; no hyperbolic triangles "
            f"(combinatorial genus {genus})",
            details={"N": N, "genus": genus, "faces": len(faces)},
        )
    if mode == "holed":
        t = formulas.hole_length() if t is None else validations.validate_positive(t, "t")
        kind, holes = PolygonKind.HOLED_TRIANGLE, 1
        if N >= 7 and formulas.holed_triangle_metrics(N, t).margin <= 0:
            raise GeometryInfeasibleError(f"hole length t = {t} leaves a - l/2 <= 0 for N = {N}")
    else:
        t, kind, holes = 0.0, PolygonKind.EQUILATERAL, 0
    polygons = [PolygonSpec(kind, N=N, t=t, holes=holes) for _ in faces]
    where = {}
    for f, face in enumerate(faces):
        for k in range(3):
            where[(face[k], face[(k + 1) % 3])] = (f, k)
    pastings = []
    for (u, v), (f, k) in sorted(where.items()):
        g, j = where[(v, u)]
        if (f, k) < (g, j):
            pastings.append(Pasting(f, k, g, j))
    metric_ok = N >= 7
    if metric_ok:
        edge = (
            formulas.equilateral_side(N)
            if mode == "equilateral"
            else formulas.holed_triangle_metrics(N, t).side
        )
    else:
        edge = None
    construction = {
        "kind": mode,
        "N": N,
        "t": t,
        "clique_kind": "vertices",
        "clique_vertices": list(range(rs.n)),
        "edge_length": edge,
        "metric": metric_ok,
        "faces": [list(face) for face in faces],
    }
    return GluedSurface(polygons, pastings, construction=construction)


def close_surface(F, boundary_pairing=None, extra_genus=0):
    """Paste boundary curves in pairs, optionally adding a genus patch first.

    The patch has genus extra_genus and one boundary curve when the free
    boundary count is odd, two when it is even. Each patch hole is pasted to a
    curve of F before the remaining curves are paired, so the patch joins F and
    the genus grows by exactly extra_genus.
    """
    k = validations.validate_integer(extra_genus, "extra_genus", minimum=0)
    free = list(F.free_boundaries)
    polygons = list(F.polygons)
    patch_holes = []
    if k and not free:
        raise PairingError("a genus patch needs a free boundary curve to attach to")
    if k or len(free) % 2:
        if not k:
            raise PairingError(f"{len(free)} boundary curves cannot be pasted in pairs")
        lengths = {F.boundaries[b] for b in free}
        length = lengths.pop() if len(lengths) == 1 else None
        holes = 1 if len(free) % 2 else 2
        polygons.append(
            PolygonSpec(PolygonKind.GENUS_PATCH, t=length or 0.0, genus=k, holes=holes)
        )
        patch_holes = [hole_key(len(polygons) - 1, h) for h in range(holes)]
    if boundary_pairing is None:
        rest = free[len(patch_holes):]
        pairs = list(zip(patch_holes, free)) + list(zip(rest[0::2], rest[1::2]))
    else:
        pairs = [(tuple(a), tuple(b)) for a, b in boundary_pairing]
        covered = {key for pair in pairs for key in pair}
        if covered != set(free + patch_holes):
            raise PairingError("boundary pairing must paste every free boundary curve exactly once")
    construction = dict(F.construction)
    construction.update(
        {"kind": "closed", "base_kind": F.construction.get("kind"), "extra_genus": k}
    )
    return GluedSurface(
        polygons,
        F.pastings,
        boundary_pastings=list(F.boundary_pastings) + pairs,
        construction=construction,
    )


def build_infinite_chain(blocks, prefix=None, t=None):
    """Holed-triangle block surfaces joined in a row along boundary curves.

    blocks is a sequence of (label, RotationSystem or None). Block i is pasted
    to block i+1 along its last and their first hole.
    """
    blocks = list(blocks)
    if prefix is not None:
        blocks = blocks[: validations.validate_integer(prefix, "prefix", minimum=0)]
    t = formulas.hole_length() if t is None else t
    polygons, pastings, boundary_pastings = [], [], []
    summary, bounds_so_far = [], []
    best = 0
    previous_last = None
    for label, rs in blocks:
        if rs is None:
            raise BlueprintError(f"no rotation system supplied for block {label}")
        faces, N = _regular_triangular(rs)
        block = build_triangle_surface(rs, mode="holed", t=t, metric=N >= 7)
        offset = len(polygons)
        polygons.extend(block.polygons)
        pastings.extend(
            Pasting(p.p + offset, p.s, p.q + offset, p.j, p.reversed) for p in block.pastings
        )
        first, last = hole_key(offset), hole_key(offset + len(block.polygons) - 1)
        if previous_last is not None:
            boundary_pastings.append((previous_last, first))
        previous_last = last
        metric = block.construction["metric"]
        if metric:
            best = max(best, rs.n)
        bounds_so_far.append(best)
        summary.append(
            {
                "label": label,
                "N": N,
                "clique": rs.n,
                "edge_length": block.construction["edge_length"],
                "metric": metric,
                "genus": rotations.genus_of(rs, faces),
                "triangles": len(faces),
            }
        )
    construction = {
        "kind": "chain",
        "t": t,
        "blocks": summary,
        "prefix_lower_bounds": bounds_so_far,
        "lower_bound": best,
        "clique_kind": "vertices",
        "metric": bool(summary) and all(b["metric"] for b in summary),
    }
    return GluedSurface(polygons, pastings, boundary_pastings, construction=construction)


# -- certificates --


@dataclass
class CliqueCertificate:
    vertices: list
    edge_length: object
    margin: object
    depth: int
    status: str
    method: str
    alternatives: int = 0
    edge_length_error: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def certified(self):
        return self.status == "certified"

    def as_dict(self):
        return {
            "vertices": self.vertices,
            "edge_length": self.edge_length,
            "margin": self.margin,
            "depth": self.depth,
            "status": self.status,
            "method": self.method,
            "alternatives": self.alternatives,
            "edge_length_error": self.edge_length_error,
            "notes": list(self.notes),
        }


def _walks_from(S, start, max_crossings):
    """Side-crossing walks from start that never re-cross the side just entered."""
    stack = [(start, None, ())]
    while stack:
        p, entered, path = stack.pop()
        if path:
            yield path, p
        if len(path) == max_crossings:
            continue
        for s in range(S.polygons[p].side_count):
            target = S.partner(p, s)
            if target is None or s == entered:
                continue
            q, j, _ = target
            stack.append((q, j, path + ((p, s),)))


def _alternatives_from(S, start, max_crossings):
    best, count, direct = {}, 0, {}
    for path, end in _walks_from(S, start, max_crossings):
        if end == start:
            continue
        chain = kernel.develop(S, path, start=start)
        length = kernel.dist(kernel.origin(), chain.center(-1))
        if len(path) == 1:
            direct[end] = length
            continue
        count += 1
        best[end] = min(best.get(end, math.inf), length)
    return start, best, direct, count


def _certify_by_development(S, max_polygons, threads):
    meta = S.construction
    edge = meta["edge_length"]
    vertices = meta["clique_vertices"]
    max_crossings = max_polygons - 1
    with ThreadPoolExecutor(max_workers=resolve_threads(threads)) as pool:
        results = list(pool.map(lambda i: _alternatives_from(S, i, max_crossings), vertices))
    margin, total, error = math.inf, 0, 0.0
    missing = []
    for start, best, direct, count in results:
        total += count
        for end in vertices:
            if end == start:
                continue
            if end in direct:
                error = max(error, abs(direct[end] - edge))
            if end not in best:
                missing.append((start, end))
            else:
                margin = min(margin, best[end] - edge)
    cert = CliqueCertificate(
        vertices=list(vertices),
        edge_length=edge,
        margin=None if missing else margin,
        depth=max_polygons,
        status="indeterminate",
        method="development",
        alternatives=total,
        edge_length_error=error,
    )
    if missing:
        cert.notes.append(f"{len(missing)} ordered pairs have no alternative path within the budget")
    elif margin > 0 and error <= hooks.oracle_tol:
        cert.status = "certified"
    else:
        cert.status = "failed"
    return cert


def _segment_margin(kind, N, t):
    if kind == "equilateral":
        return 2 * formulas.equilateral_altitude(N) - formulas.equilateral_side(N)
    holed = formulas.holed_triangle_metrics(N, t)
    return 2 * min(holed.vertex_to_hole, holed.altitude) - holed.side


def _certify_by_segments(S):
    meta = S.construction
    kind = meta.get("base_kind") if meta["kind"] == "closed" else meta["kind"]
    cert = CliqueCertificate(
        vertices=list(meta.get("clique_vertices", [])),
        edge_length=meta.get("edge_length"),
        margin=None,
        depth=1,
        status="indeterminate",
        method="segment",
    )
    if kind == "chain":
        margins = [
            _segment_margin("holed", b["N"], meta["t"]) for b in meta["blocks"] if b["metric"]
        ]
        cert.vertices = [b["clique"] for b in meta["blocks"]]
        if not margins:
            cert.notes.append("no metric block in the chain")
            return cert
        cert.margin = min(margins)
    elif not meta.get("metric"):
        cert.notes.append("combinatorial surface: no metric to certify")
        return cert
    else:
        cert.margin = _segment_margin(kind, meta["N"], meta.get("t"))
    # any non-edge path starts and ends with a segment longer than half an edge
    cert.status = "certified" if cert.margin > 0 else "failed"
    return cert


def certify_clique(S, max_polygons=None, threads=None):
    if max_polygons is None:
        max_polygons = hooks.certify_default_depth
    max_polygons = validations.validate_integer(max_polygons, "max_polygons", minimum=1)
    if S.construction.get("clique_kind") == "centers":
        return _certify_by_development(S, max_polygons, threads)
    return _certify_by_segments(S)


# -- descriptors --


def _key_to_json(key):
    return list(key)


def surface_to_dict(S):
    derived = euler(S)
    return {
        "polygons": [poly.as_dict() for poly in S.polygons],
        "pairings": [[[p.p, p.s], [p.q, p.j]] for p in S.pastings if not p.reversed],
        "reversed_pairings": [[[p.p, p.s], [p.q, p.j]] for p in S.pastings if p.reversed],
        "boundaries": [
            {
                "key": _key_to_json(key),
                "length": _finite(length),
                "status": (
                    "pasted"
                    if key not in S.free_boundaries
                    else ("funnel" if S.construction.get("funnels") else "open")
                ),
            }
            for key, length in S.boundaries.items()
        ],
        "boundary_pairings": [[_key_to_json(a), _key_to_json(b)] for a, b in S.boundary_pastings],
        "derived": derived,
        "construction": S.construction,
    }


def surface_from_dict(data):
    """Rebuild a surface from its descriptor and re-audit the derived topology."""
    try:
        polygons = [
            PolygonSpec(
                PolygonKind(entry["kind"]),
                N=int(entry["params"]["N"]),
                t=float(entry["params"]["t"]),
                genus=int(entry["params"]["genus"]),
                holes=int(entry["params"]["holes"]),
            )
            for entry in data["polygons"]
        ]
        pastings = [Pasting(a[0], a[1], b[0], b[1]) for a, b in data["pairings"]]
        pastings += [
            Pasting(a[0], a[1], b[0], b[1], True) for a, b in data.get("reversed_pairings", [])
        ]
        boundary_pastings = [(tuple(a), tuple(b)) for a, b in data.get("boundary_pairings", [])]
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise CombinatorialError(f"malformed surface descriptor: {e}") from e
    S = GluedSurface(polygons, pastings, boundary_pastings, construction=data.get("construction"))
    for poly, entry in zip(S.polygons, data["polygons"]):
        lengths = [poly.side_length(k) for k in range(poly.side_count)]
        for a, b in zip(lengths, entry.get("sides", lengths)):
            if a is not None and b is not None and not math.isinf(a):
                if abs(a - b) > hooks.develop_tol:
                    raise CombinatorialError(f"side length {b} does not match {a}")
    derived = euler(S)
    expected = data.get("derived")
    if expected is not None and any(derived[k] != expected.get(k) for k in derived):
        raise CombinatorialError(f"derived topology {derived} does not match {expected}")
    return S
