"""Rotation systems: cyclic neighbor orders describing graph embeddings.

The successor of the dart (u, v) in its face is (v, w), where w follows u in
the rotation at v. Rotation system files hold one vertex per line,
``v: a b c ...``, with ``#`` starting a comment.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import networkx as nx

from hypchroma import bounds, hooks, validations
from hypchroma.exceptions import (
    BlueprintError,
    InternalConsistencyError,
    InvalidInputError,
    RotationSystemError,
)
from hypchroma.utils import make_rng, resolve_threads, spawn_seeds

logger = logging.getLogger(__name__)

TRIANGULAR_RESIDUES = (0, 3, 4, 7)


class RotationSystem:
    def __init__(self, rotation):
        """rotation: sequence (or dict keyed 0..n-1) of neighbor lists."""
        if isinstance(rotation, dict):
            if sorted(rotation) != list(range(len(rotation))):
                raise RotationSystemError("vertices must be labelled 0..n-1")
            rotation = [rotation[v] for v in range(len(rotation))]
        self.rotation = tuple(tuple(int(u) for u in nbrs) for nbrs in rotation)
        self.n = len(self.rotation)
        self._succ = [
            {u: nbrs[(i + 1) % len(nbrs)] for i, u in enumerate(nbrs)} for nbrs in self.rotation
        ]
        self._check()

    def _check(self):
        for v, nbrs in enumerate(self.rotation):
            if len(set(nbrs)) != len(nbrs):
                raise RotationSystemError(f"vertex {v} lists a neighbor twice")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise RotationSystemError(f"vertex {v} lists unknown vertex {u}")
                if u == v:
                    raise RotationSystemError(f"vertex {v} has a loop")
                if v not in self._succ[u]:
                    raise RotationSystemError(f"edge {v}-{u} is missing at vertex {u}")

    def successor(self, v, u):
        """Neighbor following u in the rotation at v."""
        return self._succ[v][u]

    def degree(self, v):
        return len(self.rotation[v])

    def darts(self):
        for v, nbrs in enumerate(self.rotation):
            for u in nbrs:
                yield v, u

    @property
    def edge_count(self):
        return sum(len(nbrs) for nbrs in self.rotation) // 2

    def graph(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.darts())
        return g

    def relabel(self, perm):
        """System with vertex v renamed perm[v]."""
        new = [None] * self.n
        for v, nbrs in enumerate(self.rotation):
            new[perm[v]] = [perm[u] for u in nbrs]
        return RotationSystem(new)

    def __eq__(self, other):
        return isinstance(other, RotationSystem) and self.rotation == other.rotation

    def __repr__(self):
        return f"RotationSystem(n={self.n}, E={self.edge_count})"


def trace_faces(rs):
    """Face cycles as vertex tuples; every dart lies in exactly one face."""
    seen = set()
    faces = []
    for dart in rs.darts():
        if dart in seen:
            continue
        face = []
        u, v = dart
        while (u, v) not in seen:
            seen.add((u, v))
            face.append(u)
            u, v = v, rs.successor(v, u)
        if (u, v) != dart:
            raise RotationSystemError(f"face starting at dart {dart} does not close")
        faces.append(tuple(face))
    assert sum(len(f) for f in faces) == 2 * rs.edge_count
    return faces


def genus_of(rs, faces=None):
    if rs.n and not nx.is_connected(rs.graph()):
        raise RotationSystemError("genus is defined for connected systems only")
    if faces is None:
        faces = trace_faces(rs)
    chi = rs.n - rs.edge_count + len(faces)
    if chi % 2:
        raise InternalConsistencyError(f"Euler characteristic {chi} is odd")
    return (2 - chi) // 2


def is_triangular(rs, faces=None):
    if faces is None:
        faces = trace_faces(rs)
    return all(len(f) == 3 for f in faces)


def face_report(rs):
    faces = trace_faces(rs)
    return {
        "V": rs.n,
        "E": rs.edge_count,
        "F": len(faces),
        "genus": genus_of(rs, faces),
        "triangular": is_triangular(rs, faces),
    }


def is_complete(rs, n):
    return rs.n == n and all(rs.degree(v) == n - 1 for v in range(n))


def verify_ringel_youngs(rs, n):
    n = validations.validate_integer(n, "n", minimum=3)
    if not is_complete(rs, n):
        raise RotationSystemError(f"rotation system is not a system of K_{n}")
    genus = genus_of(rs)
    expected = bounds.ringel_youngs_discrepancy(n)["exact"]
    if genus != expected:
        logger.info("K_%d embedding has genus %d, minimal genus is %d", n, genus, expected)
    return genus == expected


def parse_rotation_system(text, source="<string>"):
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        try:
            if not sep:
                raise ValueError("missing ':'")
            v = int(head)
            nbrs = [int(tok) for tok in tail.split()]
        except ValueError as e:
            raise RotationSystemError(f"{source}:{lineno}: {e}") from e
        if v in rows:
            raise RotationSystemError(f"{source}:{lineno}: vertex {v} listed twice")
        rows[v] = nbrs
    return RotationSystem(rows)


def load_rotation_system(path):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise BlueprintError(f"cannot read rotation system {path}: {e}") from e
    return parse_rotation_system(text, source=str(path))


def dump_rotation_system(rs, comment=None):
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.extend(f"{v}: {' '.join(map(str, nbrs))}" for v, nbrs in enumerate(rs.rotation))
    return "\n".join(lines) + "\n"


def shipped_blueprint(name):
    if name not in hooks.shipped_blueprints:
        raise BlueprintError(
            f"no shipped blueprint {name!r}; available: {', '.join(hooks.shipped_blueprints)}"
        )
    text = resources.files("hypchroma.blueprints").joinpath(f"{name}.rot").read_text()
    return parse_rotation_system(text, source=f"{name}.rot")


def resolve_blueprint(source):
    """A shipped blueprint name, or a path to a rotation system file."""
    if source in hooks.shipped_blueprints:
        return shipped_blueprint(source)
    return load_rotation_system(source)


class _TriangularSearch:
    """Backtracking over partial rotations of K_n where every face is a triangle.

    Setting next_v(u) = w closes the face (u, v, w), which forces
    next_w(v) = u and next_u(w) = v.
    """

    def __init__(self, n, rng, budget):
        self.n = n
        self.rng = rng
        self.budget = budget
        self.nodes = 0
        self.nxt = [dict() for _ in range(n)]
        self.prv = [dict() for _ in range(n)]

    def _closes_early(self, v, a, b):
        # walking from b must not return to a before every neighbor is used
        length, x = 1, b
        while x in self.nxt[v]:
            x = self.nxt[v][x]
            length += 1
            if x == a:
                return length != self.n - 1
        return False

    def _assign(self, v, a, b, trail):
        current = self.nxt[v].get(a)
        if current is not None:
            return current == b
        if a == b or b in self.prv[v] or self._closes_early(v, a, b):
            return False
        self.nxt[v][a] = b
        self.prv[v][b] = a
        trail.append((v, a, b))
        return True

    def _undo(self, trail):
        for v, a, b in reversed(trail):
            del self.nxt[v][a]
            del self.prv[v][b]

    def _place(self, u, v, w):
        trail = []
        if (
            self._assign(v, u, w, trail)
            and self._assign(w, v, u, trail)
            and self._assign(u, w, v, trail)
        ):
            return trail
        self._undo(trail)
        return None

    def _open_dart(self):
        best = None
        for v in range(self.n):
            filled = len(self.nxt[v])
            if filled == self.n - 1:
                continue
            if best is None or filled > best[0]:
                u = next(x for x in range(self.n) if x != v and x not in self.nxt[v])
                best = (filled, v, u)
        return best

    def run(self):
        if self.n == 3:
            return RotationSystem([[1, 2], [2, 0], [0, 1]])
        trail = self._place(1, 0, 2)
        return self._extend() if trail is not None else None

    def _extend(self):
        open_dart = self._open_dart()
        if open_dart is None:
            return self._result()
        _, v, u = open_dart
        candidates = [w for w in range(self.n) if w not in (u, v) and w not in self.prv[v]]
        for w in self.rng.permutation(candidates):
            self.nodes += 1
            if self.nodes > self.budget:
                return None
            trail = self._place(u, v, int(w))
            if trail is None:
                continue
            found = self._extend()
            if found is not None:
                return found
            self._undo(trail)
        return None

    def _result(self):
        rows = []
        for v in range(self.n):
            start = 0 if v != 0 else 1
            order, x = [start], self.nxt[v][start]
            while x != start:
                order.append(x)
                x = self.nxt[v][x]
            rows.append(order)
        return RotationSystem(rows)


def _search_shard(n, seed, budget):
    search = _TriangularSearch(n, make_rng(seed), budget)
    rs = search.run()
    logger.debug("search K_%d shard explored %d nodes, found=%s", n, search.nodes, rs is not None)
    return rs


def search_triangular_embedding(n, seed=0, budget=None, shards=1, threads=None):
    """Triangular embedding of K_n, or None when the node budget runs out.

    Shards use independent child seeds; the lowest shard index with a result
    wins, so the outcome does not depend on the worker count.
    """
    n = validations.validate_integer(n, "n", minimum=3)
    if n % 12 not in TRIANGULAR_RESIDUES:
        raise InvalidInputError(f"K_{n} has no triangular embedding (n mod 12 = {n % 12})")
    budget = hooks.search_default_budget if budget is None else budget
    budget = validations.validate_integer(budget, "budget", minimum=1)
    shards = validations.validate_integer(shards, "shards", minimum=1)
    seeds = spawn_seeds(seed, shards)
    with ThreadPoolExecutor(max_workers=min(shards, resolve_threads(threads))) as pool:
        results = list(pool.map(lambda s: _search_shard(n, s, budget), seeds))
    for rs in results:
        if rs is not None:
            if not (is_triangular(rs) and verify_ringel_youngs(rs, n)):
                raise InternalConsistencyError(f"search returned an invalid system for K_{n}")
            return rs
    logger.info("no triangular embedding of K_%d within budget %d", n, budget)
    return None
