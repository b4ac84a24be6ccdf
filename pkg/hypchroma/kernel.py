"""Hyperboloid model of the hyperbolic plane.

Points live on the upper sheet x0^2 - x1^2 - x2^2 = 1. Distances use the
chordal form 2 asinh(|p - q| / 2) for nearby points and arccosh of the
Minkowski product otherwise. The Poincare disk is only used for rendering
and as an independent distance oracle.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from hypchroma import hooks, validations
from hypchroma.exceptions import (
    CombinatorialError,
    GeometryInfeasibleError,
    InvalidInputError,
    NumericRangeError,
)
from hypchroma.utils import acosh

logger = logging.getLogger(__name__)

J = np.diag([1.0, -1.0, -1.0])


class Model(Enum):
    HYPERBOLOID = "hyperboloid"
    POINCARE = "poincare"


def minkowski(u, v):
    """Bilinear form x0*y0 - x1*y1 - x2*y2 over the last axis."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 0] - u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def _lift(x1, x2):
    return math.sqrt(1.0 + x1 * x1 + x2 * x2)


@dataclass(frozen=True)
class HPoint:
    x0: float
    x1: float
    x2: float

    def __post_init__(self):
        validations.validate_coordinates((self.x0, self.x1, self.x2))
        if self.x0 < 1.0 - hooks.hyperboloid_tol:
            raise InvalidInputError(f"x0 = {self.x0} is below the upper sheet")
        drift = abs(self.x0 * self.x0 - self.x1 * self.x1 - self.x2 * self.x2 - 1.0)
        if drift > 1e-9 * max(1.0, self.x0 * self.x0):
            raise InvalidInputError(f"point is off the hyperboloid (drift {drift:.3g})")

    @classmethod
    def from_vector(cls, v):
        """Project a near-hyperboloid vector back onto the sheet."""
        v = np.asarray(v, dtype=float)
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("non-finite coordinates")
        return cls(_lift(v[1], v[2]), float(v[1]), float(v[2]))

    @property
    def vector(self):
        return np.array([self.x0, self.x1, self.x2])

    def coords(self, model=Model.HYPERBOLOID):
        if model is Model.POINCARE:
            return to_poincare(self)
        return self.vector


def origin():
    return HPoint(1.0, 0.0, 0.0)


def _chordal_distance(dx0, dx1, dx2):
    q = dx1 * dx1 + dx2 * dx2 - dx0 * dx0
    return 2.0 * np.arcsinh(0.5 * np.sqrt(np.maximum(q, 0.0)))


def dist(p, q):
    """Hyperbolic distance between two HPoints."""
    b = float(minkowski(p.vector, q.vector))
    if b < 2.0:
        d = float(_chordal_distance(p.x0 - q.x0, p.x1 - q.x1, p.x2 - q.x2))
    else:
        d = acosh(b)
    if d > hooks.max_distance:
        raise NumericRangeError(
            f"distance {d:.3f} exceeds the supported range {hooks.max_distance}"
        )
    return d


def distances(points, q):
    """Vectorized dist from each row of an (n, 3) array to the vector q."""
    points = np.asarray(points, dtype=float)
    q = np.asarray(q, dtype=float)
    b = minkowski(points, q)
    near = _chordal_distance(
        points[..., 0] - q[0], points[..., 1] - q[1], points[..., 2] - q[2]
    )
    far = np.arccosh(np.maximum(b, 1.0))
    return np.where(b < 2.0, near, far)


class Isometry:
    """Element of O+(2,1) acting on hyperboloid coordinates."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=float)
        if matrix.shape != (3, 3) or not np.all(np.isfinite(matrix)):
            raise InvalidInputError("isometry must be a finite 3x3 matrix")
        matrix.setflags(write=False)
        self.matrix = matrix

    @classmethod
    def identity(cls):
        return cls(np.eye(3))

    @classmethod
    def rotation(cls, theta):
        c, s = math.cos(theta), math.sin(theta)
        return cls([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])

    @classmethod
    def translation(cls, t):
        """Translation by t along the geodesic through the origin at angle 0."""
        validations.validate_distance(abs(t), "translation length")
        ch, sh = math.cosh(t), math.sinh(t)
        return cls([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])

    @classmethod
    def reflection(cls):
        """Reflection across the geodesic through the origin at angle pi/2."""
        return cls(np.diag([1.0, -1.0, 1.0]))

    @classmethod
    def boost_to(cls, p):
        """Canonical transport of the origin to p.

        The image of the angle-0 direction at the origin is the angle-0
        direction at p; this fixes the frame used by point_at.
        """
        x0, x1, x2 = p.x0, p.x1, p.x2
        k = 1.0 / (1.0 + x0)
        return cls(
            [
                [x0, x1, x2],
                [x1, 1.0 + x1 * x1 * k, x1 * x2 * k],
                [x2, x1 * x2 * k, 1.0 + x2 * x2 * k],
            ]
        )

    @property
    def orientation_preserving(self):
        return np.linalg.det(self.matrix) > 0

    def inverse(self):
        return Isometry(J @ self.matrix.T @ J)

    def apply(self, p):
        return HPoint.from_vector(self.matrix @ p.vector)

    def apply_vector(self, v):
        return self.matrix @ np.asarray(v, dtype=float)

    def __matmul__(self, other):
        if isinstance(other, Isometry):
            return Isometry(self.matrix @ other.matrix)
        if isinstance(other, HPoint):
            return self.apply(other)
        return NotImplemented

    def __repr__(self):
        return f"Isometry({self.matrix.tolist()!r})"


def point_at(p, theta, r):
    """Exponential map: the point at distance r from p in direction theta."""
    theta = validations.validate_finite(theta, "theta")
    r = validations.validate_distance(r, "r")
    if r == 0:
        return p
    v = np.array([math.cosh(r), math.sinh(r) * math.cos(theta), math.sinh(r) * math.sin(theta)])
    return HPoint.from_vector(Isometry.boost_to(p).matrix @ v)


def points_at(p, thetas, rs):
    """Vectorized point_at; returns an (n, 3) array of hyperboloid vectors."""
    thetas = np.asarray(thetas, dtype=float)
    rs = np.asarray(rs, dtype=float)
    local = np.stack(
        [np.cosh(rs), np.sinh(rs) * np.cos(thetas), np.sinh(rs) * np.sin(thetas)], axis=-1
    )
    out = local @ Isometry.boost_to(p).matrix.T
    out[..., 0] = np.sqrt(1.0 + out[..., 1] ** 2 + out[..., 2] ** 2)
    return out


def from_polar(rho, theta):
    return point_at(origin(), theta, rho)


def to_polar(p):
    return dist(origin(), p), math.atan2(p.x2, p.x1) % (2 * math.pi)


def to_poincare(p):
    return np.array([p.x1, p.x2]) / (1.0 + p.x0)


def from_poincare(u):
    u = np.asarray(u, dtype=float)
    s = float(u @ u)
    if s >= 1.0:
        raise InvalidInputError("point is outside the unit disk")
    x1, x2 = 2.0 * u / (1.0 - s)
    return HPoint.from_vector([0.0, x1, x2])


def poincare_dist(u, v):
    """Disk-model distance, independent of the hyperboloid formulas."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    duv = float((u - v) @ (u - v))
    return acosh(1.0 + 2.0 * duv / ((1.0 - u @ u) * (1.0 - v @ v)))


def ball_area(rho):
    rho = validations.validate_nonnegative(rho, "rho")
    return 4.0 * math.pi * math.sinh(rho / 2.0) ** 2


def _unit_tangent(p, q):
    u = q.vector - minkowski(p.vector, q.vector) * p.vector
    norm = math.sqrt(max(-float(minkowski(u, u)), 0.0))
    if norm == 0:
        raise GeometryInfeasibleError("coincident points have no direction")
    return u / norm


def angle_at(p, q, r):
    """Interior angle at p of the geodesic triangle pqr."""
    u, v = _unit_tangent(p, q), _unit_tangent(p, r)
    c = -float(minkowski(u, v))
    return math.acos(min(1.0, max(-1.0, c)))


def angle_from_sides(opposite, b, c):
    """Hyperbolic law of cosines solved for the angle between sides b and c."""
    num = math.cosh(b) * math.cosh(c) - math.cosh(opposite)
    cos_angle = num / (math.sinh(b) * math.sinh(c))
    return math.acos(min(1.0, max(-1.0, cos_angle)))


def solve_triangle_aaa(alpha, beta, gamma):
    """Side lengths (a, b, c) opposite the angles (alpha, beta, gamma)."""
    for name, angle in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        validations.validate_positive(angle, name)
    if alpha + beta + gamma >= math.pi:
        raise GeometryInfeasibleError(
            f"angle sum {alpha + beta + gamma:.6f} >= pi has no hyperbolic triangle"
        )

    def side(x, y, z):
        return acosh((math.cos(x) + math.cos(y) * math.cos(z)) / (math.sin(y) * math.sin(z)))

    return side(alpha, beta, gamma), side(beta, gamma, alpha), side(gamma, alpha, beta)


def _normalize_spacelike(n):
    q = -float(minkowski(n, n))
    if q <= 0:
        raise GeometryInfeasibleError("degenerate geodesic")
    return n / math.sqrt(q)


def geodesic_normal(p, q):
    """Unit spacelike normal of the geodesic line through p and q."""
    return _normalize_spacelike(J @ np.cross(p.vector, q.vector))


def ideal_point(theta):
    return np.array([1.0, math.cos(theta), math.sin(theta)])


def ideal_geodesic_normal(theta1, theta2):
    return _normalize_spacelike(J @ np.cross(ideal_point(theta1), ideal_point(theta2)))


def perpendicular_normal(theta, rho):
    """Normal of the line meeting the ray at angle theta perpendicularly at distance rho."""
    return Isometry.rotation(theta).apply_vector([math.sinh(rho), math.cosh(rho), 0.0])


def distance_to_geodesic(p, normal):
    return math.asinh(abs(float(minkowski(p.vector, normal))))


def geodesic_separation(n1, n2):
    """Distance between two ultraparallel lines given by their unit normals."""
    b = abs(float(minkowski(n1, n2)))
    if b <= 1.0:
        raise GeometryInfeasibleError("lines intersect or are asymptotic")
    return acosh(b)


def ideal_polygon_inradius(N):
    """Distance from the center of the regular ideal N-gon to a side."""
    N = validations.validate_integer(N, "N", minimum=3)
    return distance_to_geodesic(origin(), ideal_geodesic_normal(-math.pi / N, math.pi / N))


def truncation_length(N, rho):
    """Length t of the common perpendicular of two consecutive lines at distance rho.

    The lines meet the rays at angles 0 and 2pi/N perpendicularly; this is the
    side of the semi-regular right-angled 2N-gon cut off between them.
    """
    N = validations.validate_integer(N, "N", minimum=3)
    n0 = perpendicular_normal(0.0, rho)
    n1 = perpendicular_normal(2 * math.pi / N, rho)
    b = abs(float(minkowski(n0, n1)))
    if b <= 1.0:
        return 0.0
    return acosh(b)


@dataclass(frozen=True)
class RightQuadrilateral:
    """Quadrilateral with two right angles at the ends of the base.

    The legs are equal and the two summit angles equal alpha; it is symmetric
    under the reflection through the common perpendicular of base and summit.
    """

    base: float
    alpha: float
    leg: float
    summit: float
    midline: float
    diagonal: float

    def as_dict(self):
        return {
            "base": self.base,
            "alpha": self.alpha,
            "leg": self.leg,
            "summit": self.summit,
            "midline": self.midline,
            "diagonal": self.diagonal,
        }


def solve_right_quadrilateral(t3, alpha):
    t3 = validations.validate_positive(t3, "t3")
    alpha = validations.validate_positive(alpha, "alpha")
    if alpha >= math.pi / 2:
        raise GeometryInfeasibleError(
            f"summit angle {alpha:.6f} >= pi/2 leaves no angle defect"
        )
    half = t3 / 2.0
    summit = 2.0 * acosh(math.cosh(half) / math.sin(alpha), "summit")
    leg = acosh(math.sinh(summit / 2.0) / math.sinh(half), "leg")
    midline = math.asinh(math.cos(alpha) / math.sinh(half))
    diagonal = acosh(math.cosh(t3) * math.cosh(leg), "diagonal")
    return RightQuadrilateral(t3, alpha, leg, summit, midline, diagonal)


def realize_right_quadrilateral(t3, alpha):
    """Vertices (A, B, C, D): base AB on the x-axis, C above B, D above A."""
    q = solve_right_quadrilateral(t3, alpha)
    o = origin()
    a = point_at(o, math.pi, q.base / 2.0)
    b = point_at(o, 0.0, q.base / 2.0)
    # boost_to of a point on the x-axis is the translation along it
    c = point_at(b, math.pi / 2.0, q.leg)
    d = point_at(a, math.pi / 2.0, q.leg)
    return a, b, c, d


@dataclass(frozen=True)
class DevelopedChain:
    """Polygon placements along a path, in the frame of the first polygon."""

    polygons: tuple
    placements: tuple
    crossings: tuple
    mismatch: float

    def center(self, index):
        return self.placements[index].apply(origin())

    def mark(self, index, local_point):
        return self.placements[index].apply(local_point)

    def distance(self, i, j):
        return dist(self.center(i), self.center(j))


def _side_reach(surface, pid, sid):
    length = surface.side_length(pid, sid)
    return 1.0 if math.isinf(length) else length / 2.0


def _side_marks(frame, reach, flip):
    """Endpoints (marks at distance 1 on ideal sides) followed by the midpoint."""
    o = origin()
    signs = (-1, 1) if flip else (1, -1)
    return [frame.apply(point_at(o, s * math.pi / 2.0, reach)) for s in signs] + [frame.apply(o)]


def develop(surface, path, start=0, base=None):
    """Unfold polygons of a glued surface along a path of side crossings.

    Each step is (polygon id, side id) and must leave the current polygon.
    The surface provides side_frame(p, s), partner(p, s) and side_length(p, s).
    """
    current = start
    placement = base if base is not None else Isometry.identity()
    polygons, placements = [current], [placement]
    mismatch = 0.0
    for step, (pid, sid) in enumerate(path):
        if pid != current:
            raise CombinatorialError(
                f"step {step} leaves polygon {pid} but the path is at polygon {current}"
            )
        partner = surface.partner(pid, sid)
        if partner is None:
            raise CombinatorialError(f"side {sid} of polygon {pid} is a boundary side")
        qid, qside, reversed_ = partner
        turn = Isometry.reflection() if reversed_ else Isometry.rotation(math.pi)
        glue = surface.side_frame(pid, sid) @ turn @ surface.side_frame(qid, qside).inverse()
        next_placement = placement @ glue

        here = _side_marks(
            placement @ surface.side_frame(pid, sid), _side_reach(surface, pid, sid), False
        )
        # orientation-preserving pastings reverse the direction along the side
        there = _side_marks(
            next_placement @ surface.side_frame(qid, qside),
            _side_reach(surface, qid, qside),
            not reversed_,
        )
        mismatch = max(mismatch, max(dist(u, v) for u, v in zip(here, there)))

        polygons.append(qid)
        placements.append(next_placement)
        current, placement = qid, next_placement
    if mismatch > hooks.develop_tol:
        raise CombinatorialError(f"developed sides disagree by {mismatch:.3g}")
    return DevelopedChain(tuple(polygons), tuple(placements), tuple(path), mismatch)


def exp_many(vectors, thetas, r):
    """point_at applied row-wise: each row of an (n, 3) array moved by r at angle thetas[i]."""
    x = np.asarray(vectors, dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    c, s = math.cosh(r), math.sinh(r)
    ct, st = s * np.cos(thetas), s * np.sin(thetas)
    x0, x1, x2 = x[:, 0], x[:, 1], x[:, 2]
    k = 1.0 / (1.0 + x0)
    y1 = x1 * c + (1.0 + x1 * x1 * k) * ct + x1 * x2 * k * st
    y2 = x2 * c + x1 * x2 * k * ct + (1.0 + x2 * x2 * k) * st
    return np.stack([np.sqrt(1.0 + y1 * y1 + y2 * y2), y1, y2], axis=-1)


def geodesic_samples(p, q, count=32):
    """Points along the segment pq, endpoints included."""
    length = dist(p, q)
    if length == 0:
        return np.tile(p.vector, (count, 1))
    s = np.linspace(0.0, 1.0, count)[:, None]
    pts = (np.sinh((1.0 - s) * length) * p.vector + np.sinh(s * length) * q.vector) / math.sinh(length)
    pts[:, 0] = np.sqrt(1.0 + pts[:, 1] ** 2 + pts[:, 2] ** 2)
    return pts
