"""SVG pictures in the Poincare disk. Presentation only; nothing here is read back."""

import colorsys
import logging
import math

import drawsvg as draw
import numpy as np

from hypchroma import kernel
from hypchroma.exceptions import CombinatorialError, InvalidInputError
from hypchroma.surfaces import PolygonKind

logger = logging.getLogger(__name__)

IDEAL_CUTOFF = 12.0
BACKGROUND = "#ffffff"
OUTLINE = "#333333"


def palette(count):
    """count well-separated fills, stable for a given count."""
    golden = 0.618033988749895
    out = []
    for i in range(max(count, 1)):
        r, g, b = colorsys.hls_to_rgb((i * golden) % 1.0, 0.55, 0.65)
        out.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    return out


def _disk(vectors):
    vectors = np.atleast_2d(vectors)
    return vectors[:, 1:] / (1.0 + vectors[:, :1])


class _Canvas:
    def __init__(self, size):
        self.size = size
        self.scale = size / 2.0 - 10.0
        self.drawing = draw.Drawing(size, size, origin="center")
        self.drawing.append(draw.Rectangle(-size / 2, -size / 2, size, size, fill=BACKGROUND))
        self.drawing.append(draw.Circle(0, 0, self.scale, fill="none", stroke=OUTLINE, stroke_width=1))

    def xy(self, u):
        # svg y grows downwards
        return float(u[0] * self.scale), float(-u[1] * self.scale)

    def polyline(self, vectors, **style):
        pts = []
        for u in _disk(vectors):
            pts.extend(self.xy(u))
        self.drawing.append(draw.Lines(*pts, **style))

    def finish(self, path=None):
        if path:
            self.drawing.save_svg(path)
            logger.debug("wrote %s", path)
        return self.drawing.as_svg()


def render_net(net, coloring, path=None, size=800, show_balls=False):
    """Net centers in the Poincare disk, one fill per color class."""
    if len(coloring.colors) != len(net):
        raise InvalidInputError("coloring does not match the net")
    canvas = _Canvas(size)
    fills = palette(coloring.count)
    dot = max(1.0, size / 400.0)
    for vec, c in zip(net.centers, coloring.colors):
        p = kernel.HPoint.from_vector(vec)
        x, y = canvas.xy(kernel.to_poincare(p))
        if show_balls:
            ring = kernel.points_at(p, np.linspace(0.0, 2 * math.pi, 33), np.full(33, net.r))
            canvas.polyline(ring, fill=fills[c], fill_opacity=0.3, stroke="none", close=True)
        canvas.drawing.append(draw.Circle(x, y, dot, fill=fills[c]))
    return canvas.finish(path)


def _corners(poly):
    if poly.kind is PolygonKind.IDEAL_REGULAR:
        return [
            kernel.point_at(kernel.origin(), 2 * math.pi * k / poly.N - math.pi / poly.N, IDEAL_CUTOFF)
            for k in range(poly.N)
        ]
    # corner k starts side k, a half side clockwise of its midpoint
    return [
        poly.side_frame(k).apply(kernel.point_at(kernel.origin(), -math.pi / 2, poly.side_length(k) / 2))
        for k in range(poly.side_count)
    ]


def _outline(poly, placement):
    corners = [placement.apply(c) for c in _corners(poly)]
    pieces = []
    for k, a in enumerate(corners):
        b = corners[(k + 1) % len(corners)]
        pieces.append(kernel.geodesic_samples(a, b))
    return np.concatenate(pieces)


def render_development(surface, path=None, size=800, start=0):
    """A polygon of the surface and the neighbors across each of its pasted sides."""
    if not surface.polygons:
        raise InvalidInputError("surface has no polygons")
    poly = surface.polygons[start]
    try:
        poly.side_frame(0)
    except CombinatorialError as e:
        raise InvalidInputError(f"cannot render this surface: {e}") from e
    canvas = _Canvas(size)
    fills = palette(len(surface.polygons))
    patch = [(start, kernel.Isometry.identity())]
    for s in range(poly.side_count):
        if surface.partner(start, s) is None:
            continue
        chain = kernel.develop(surface, [(start, s)], start=start)
        patch.append((chain.polygons[-1], chain.placements[-1]))
    for pid, placement in patch:
        canvas.polyline(
            _outline(surface.polygons[pid], placement),
            close=True,
            fill=fills[pid],
            fill_opacity=0.35,
            stroke=OUTLINE,
            stroke_width=1,
        )
        x, y = canvas.xy(kernel.to_poincare(placement.apply(kernel.origin())))
        canvas.drawing.append(draw.Text(str(pid), size / 50.0, x, y, text_anchor="middle"))
    return canvas.finish(path)
