"""Separated nets in a hyperbolic disk and the colorings they induce.

A net is a set of centers with pairwise distance > r whose r-balls cover the
disk of radius R about a base point. Two centers are joined in the distance
graph when some pair of points in their r-balls can sit at distance exactly d;
a proper coloring of that graph then colors every covered point so that no
two points at distance d share a color.
"""

import itertools
import logging
import math
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from hypchroma import formulas, hooks, kernel, validations
from hypchroma.exceptions import InvalidInputError, SizeExceededError
from hypchroma.utils import make_rng, resolve_threads, spawn_seeds

logger = logging.getLogger(__name__)

UNCOVERED = -1
TWO_PI = 2.0 * math.pi
COLOR_ORDERS = ("dsatur", "natural", "largest_first")


class BucketIndex:
    """Polar grid about a base point: bands of width w, sectors of arc length about w."""

    def __init__(self, base, width):
        self.base = base
        self.width = validations.validate_positive(width, "bucket width")
        self._to_local = kernel.Isometry.boost_to(base).inverse().matrix
        self._buckets = defaultdict(list)
        self._sector_counts = {}

    def sectors(self, band):
        m = self._sector_counts.get(band)
        if m is None:
            outer = (band + 1) * self.width
            m = max(1, math.ceil(TWO_PI * math.sinh(outer) / self.width))
            self._sector_counts[band] = m
        return m

    def polar(self, vectors):
        """Distance from the base point and angle, row-wise."""
        local = np.atleast_2d(vectors) @ self._to_local.T
        rho = kernel.distances(local, np.array([1.0, 0.0, 0.0]))
        theta = np.mod(np.arctan2(local[:, 2], local[:, 1]), TWO_PI)
        return rho, theta

    def key(self, rho, theta):
        band = int(rho // self.width)
        m = self.sectors(band)
        return band, int(theta / TWO_PI * m) % m

    def insert(self, index, vector):
        rho, theta = self.polar(vector)
        self._buckets[self.key(rho[0], theta[0])].append(index)

    def sector_bounds(self, band, sector):
        m = self.sectors(band)
        return TWO_PI * sector / m, TWO_PI * (sector + 1) / m

    def candidates(self, rho_lo, rho_hi, theta_lo, theta_hi, reach):
        """Indices of every stored center within reach of some point of the polar box."""
        out = []
        first = int(max(0.0, rho_lo - reach) // self.width)
        last = int((rho_hi + reach) // self.width)
        for band in range(first, last + 1):
            m = self.sectors(band)
            inner = band * self.width
            if inner > reach:
                # a center at radius >= inner within reach is at most this far off in angle
                spread = math.asin(min(1.0, math.sinh(reach) / math.sinh(inner)))
            else:
                spread = math.pi
            lo, hi = theta_lo - spread, theta_hi + spread
            if hi - lo >= TWO_PI:
                sectors = range(m)
            else:
                s0 = math.floor(lo / TWO_PI * m)
                s1 = math.floor(hi / TWO_PI * m)
                sectors = (s % m for s in range(s0, s1 + 1))
            for s in sectors:
                out.extend(self._buckets.get((band, s), ()))
        return out

    def near(self, vector, reach):
        rho, theta = self.polar(vector)
        return self.candidates(rho[0], rho[0], theta[0], theta[0], reach)


@dataclass
class Net:
    centers: np.ndarray
    r: float
    R: float
    base: kernel.HPoint
    seed: int
    index: BucketIndex = field(repr=False, compare=False, default=None)

    @classmethod
    def from_centers(cls, centers, r, R, base=None, seed=None):
        base = base or kernel.origin()
        centers = np.asarray(centers, dtype=float)
        index = BucketIndex(base, r)
        for i, c in enumerate(centers):
            index.insert(i, c)
        return cls(centers, r, R, base, seed, index)

    def __len__(self):
        return len(self.centers)

    def point(self, i):
        return kernel.HPoint.from_vector(self.centers[i])

    def min_separation(self):
        """Brute-force minimum pairwise distance (O(n^2))."""
        best = math.inf
        for i in range(len(self.centers) - 1):
            best = min(best, float(np.min(kernel.distances(self.centers[i + 1 :], self.centers[i]))))
        return best


class _Centers:
    """Growable (n, 3) array with the bucket index kept in step."""

    def __init__(self, index):
        self.index = index
        self.data = np.empty((64, 3))
        self.size = 0

    def add(self, vector):
        if self.size == len(self.data):
            self.data = np.concatenate([self.data, np.empty_like(self.data)])
        self.data[self.size] = vector
        self.index.insert(self.size, vector)
        self.size += 1

    def clear_of(self, vector, r):
        nbrs = self.index.near(vector, r)
        if not nbrs:
            return True
        return bool(np.all(kernel.distances(self.data[nbrs], vector) > r))


def sample_disk(rng, R, count, base=None):
    """count area-uniform points of the disk of radius R about base, as an (n, 3) array."""
    u = rng.random(count)
    theta = rng.random(count) * TWO_PI
    # inverse of the area fraction (cosh rho - 1)/(cosh R - 1)
    rho = np.arccosh(1.0 + u * (math.cosh(R) - 1.0))
    return kernel.points_at(base or kernel.origin(), theta, rho)


def build_net(R, r, seed=0, base=None):
    R = validations.validate_positive(R, "R")
    r = validations.validate_positive(r, "r")
    validations.validate_distance(R, "R")
    base = base or kernel.origin()
    index = BucketIndex(base, r)
    centers = _Centers(index)
    centers.add(base.vector)
    if 2.0 * R <= r:
        # the disk has diameter at most r, so the base point covers it
        return Net(centers.data[:1].copy(), r, R, base, seed, index)
    rng = make_rng(seed)
    streak = darts = 0
    while streak < hooks.net_dart_failure_streak:
        for dart in sample_disk(rng, R, 512, base):
            darts += 1
            if centers.clear_of(dart, r):
                centers.add(dart)
                streak = 0
            else:
                streak += 1
                if streak >= hooks.net_dart_failure_streak:
                    break
    logger.debug("net R=%g r=%g seed=%s: %d darts, %d centers", R, r, seed, darts, centers.size)
    rounds = 0
    while True:
        rounds += 1
        inserted = 0
        for sample in sample_disk(rng, R, hooks.net_coverage_samples, base):
            if centers.clear_of(sample, r):
                centers.add(sample)
                inserted += 1
        logger.debug("coverage audit round %d inserted %d centers", rounds, inserted)
        if not inserted:
            break
    return Net(centers.data[: centers.size].copy(), r, R, base, seed, index)


@dataclass
class DistanceGraph:
    graph: nx.Graph
    d: float
    r0: float

    @property
    def vertex_count(self):
        return self.graph.number_of_nodes()

    @property
    def edge_count(self):
        return self.graph.number_of_edges()

    @property
    def adjacency(self):
        return [sorted(self.graph[v]) for v in sorted(self.graph)]

    @property
    def max_degree(self):
        return max((deg for _, deg in self.graph.degree()), default=0)


def _as_graph(graph):
    return graph.graph if isinstance(graph, DistanceGraph) else graph


def build_distance_graph(net, d):
    d = validations.validate_positive(d, "d")
    r0 = net.r
    if r0 > 2.0 * d / 5.0 * (1.0 + hooks.formula_tol):
        raise InvalidInputError(f"r0 = {r0} exceeds 2d/5 = {2.0 * d / 5.0}")
    g = nx.Graph()
    g.add_nodes_from(range(len(net)))
    lo, hi = d - 2.0 * r0, d + 2.0 * r0
    for i, c in enumerate(net.centers):
        nbrs = np.array([j for j in net.index.near(c, hi) if j > i], dtype=int)
        if not len(nbrs):
            continue
        dd = kernel.distances(net.centers[nbrs], c)
        hits = np.sort(nbrs[(dd >= lo) & (dd <= hi)])
        g.add_edges_from((i, int(j)) for j in hits)
    graph = DistanceGraph(g, d, r0)
    logger.debug("distance graph d=%g: %d edges, max degree %d", d, graph.edge_count, graph.max_degree)
    return graph


@dataclass
class Coloring:
    colors: np.ndarray

    @property
    def count(self):
        return int(self.colors.max()) + 1 if len(self.colors) else 0

    def is_proper(self, graph):
        return all(self.colors[u] != self.colors[v] for u, v in _as_graph(graph).edges())

    def merged(self, a, b):
        """Coloring with class b folded into class a."""
        colors = self.colors.copy()
        colors[colors == b] = a
        return Coloring(colors)


def _natural(G, colors):
    return iter(sorted(G))


_STRATEGIES = {
    "dsatur": "saturation_largest_first",
    "natural": _natural,
    "largest_first": "largest_first",
}


def greedy_color(graph, order=None):
    order = order or hooks.default_color_order
    if order not in _STRATEGIES:
        raise InvalidInputError(f"unknown color order {order!r}; use one of {', '.join(COLOR_ORDERS)}")
    g = _as_graph(graph)
    assignment = nx.greedy_color(g, strategy=_STRATEGIES[order])
    colors = np.zeros(g.number_of_nodes(), dtype=int)
    for v, c in assignment.items():
        colors[v] = c
    coloring = Coloring(colors)
    assert coloring.is_proper(g)
    return coloring


def _k_colorable(g, k):
    order = sorted(g, key=lambda v: (-g.degree(v), v))
    colors = {}

    def extend(i, used):
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[u] for u in g[v] if u in colors}
        # a fresh color is only tried once: the lowest unused one
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colors[v] = c
            if extend(i + 1, max(used, c + 1)):
                return True
            del colors[v]
        return False

    return extend(0, 0)


def exact_chromatic(graph, limit=None):
    g = _as_graph(graph)
    limit = hooks.exact_chromatic_limit if limit is None else limit
    n = g.number_of_nodes()
    if n > limit:
        raise SizeExceededError(f"exact chromatic number limited to {limit} vertices, got {n}")
    if n == 0:
        return 0
    g = nx.convert_node_labels_to_integers(g)
    lower = max(len(c) for c in nx.find_cliques(g))
    upper = greedy_color(g, "dsatur").count
    for k in range(lower, upper):
        if _k_colorable(g, k):
            return k
    return upper


def brute_force_chromatic(graph):
    """Chromatic number by trying every assignment; tiny graphs only."""
    g = nx.convert_node_labels_to_integers(_as_graph(graph))
    n = g.number_of_nodes()
    if n == 0:
        return 0
    edges = list(g.edges())
    for k in range(1, n + 1):
        for colors in itertools.product(range(k), repeat=n):
            if all(colors[u] != colors[v] for u, v in edges):
                return k
    return n


def _lowest_cover(net, vectors, reach):
    """Lowest-index center within reach of each row, UNCOVERED if none."""
    out = np.full(len(vectors), UNCOVERED, dtype=int)
    if not len(vectors):
        return out
    rho, theta = net.index.polar(vectors)
    groups = defaultdict(list)
    for k, (a, b) in enumerate(zip(rho, theta)):
        groups[net.index.key(a, b)].append(k)
    w = net.index.width
    for (band, sector), rows in groups.items():
        t0, t1 = net.index.sector_bounds(band, sector)
        cand = np.array(sorted(net.index.candidates(band * w, (band + 1) * w, t0, t1, reach)), dtype=int)
        if not len(cand):
            continue
        rows = np.array(rows)
        pts = vectors[rows]
        dd = np.stack([kernel.distances(pts, net.centers[c]) for c in cand], axis=1)
        covered = dd <= reach
        hit = covered.any(axis=1)
        first = np.argmax(covered, axis=1)
        out[rows[hit]] = cand[first[hit]]
    return out


def point_colors(net, coloring, vectors):
    owners = _lowest_cover(net, np.asarray(vectors, dtype=float), net.r)
    return np.where(owners == UNCOVERED, UNCOVERED, coloring.colors[np.maximum(owners, 0)])


def point_color(net, coloring, p):
    return int(point_colors(net, coloring, p.vector[None, :])[0])


def _validate_shard(net, coloring, d, count, seed):
    rng = make_rng(seed)
    xs = sample_disk(rng, net.R - d, count, net.base)
    thetas = rng.random(count) * TWO_PI
    ys = kernel.exp_many(xs, thetas, d)
    cx = point_colors(net, coloring, xs)
    cy = point_colors(net, coloring, ys)
    covered = (cx != UNCOVERED) & (cy != UNCOVERED)
    return int(np.sum(covered & (cx == cy))), int(np.sum(~covered))


def validation_counts(net, coloring, d, trials, seed=0, threads=None):
    """(violations, uncovered pairs) over trials sampled pairs at distance d."""
    d = validations.validate_positive(d, "d")
    trials = validations.validate_integer(trials, "trials", minimum=0)
    if trials == 0:
        return 0, 0
    if net.R - d <= 0:
        raise InvalidInputError(f"d = {d} leaves no safe sub-disk inside R = {net.R}")
    size = hooks.validation_shard_size
    shards = [min(size, trials - k) for k in range(0, trials, size)]
    seeds = spawn_seeds(seed, len(shards))
    with ThreadPoolExecutor(max_workers=min(len(shards), resolve_threads(threads))) as pool:
        results = list(
            pool.map(lambda job: _validate_shard(net, coloring, d, *job), zip(shards, seeds))
        )
    violations = sum(v for v, _ in results)
    uncovered = sum(u for _, u in results)
    logger.debug("validated %d pairs: %d violations, %d uncovered", trials, violations, uncovered)
    return violations, uncovered


def validate_coloring(net, coloring, d, trials, seed=0, threads=None):
    return validation_counts(net, coloring, d, trials, seed, threads)[0]


def run_net_experiment(d, R, seed=0, trials=10_000, r0=None, order=None, threads=None, timing=False):
    d = validations.validate_positive(d, "d")
    r0 = formulas.consistent_r0(d) if r0 is None else validations.validate_positive(r0, "r0")
    if r0 > 2.0 * d / 5.0 * (1.0 + hooks.formula_tol):
        raise InvalidInputError(f"r0 = {r0} exceeds 2d/5 = {2.0 * d / 5.0}")
    started = time.perf_counter()
    net = build_net(R, r0, seed)
    graph = build_distance_graph(net, d)
    coloring = greedy_color(graph, order)
    violations, uncovered = validation_counts(net, coloring, d, trials, seed, threads)
    result = {
        "R": R,
        "r0": r0,
        "d": d,
        "seed": seed,
        "centers": len(net),
        "edges": graph.edge_count,
        "max_degree": graph.max_degree,
        "degree_bound": formulas.degree_bound(d, r0),
        "colors_used": coloring.count,
        "phi_plus_one": math.floor(formulas.phi(d)) + 1,
        "violations": violations,
        "uncovered": uncovered,
        "trials": trials,
    }
    if timing:
        result["wall_time"] = time.perf_counter() - started
    return result, net, coloring
