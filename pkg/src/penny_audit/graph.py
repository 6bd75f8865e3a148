"""Penny graph construction and its plane embedding.

Exact mode
    Points live in Q[√3].  Coordinates are scaled to a common integer
    denominator so that squared distances become elements ``A + B·√3`` of
    Z[√3]; every decision on those values is exact.  Floats only prune
    candidate pairs, with a margin that bounds their rounding error.

Declared mode
    Approximate float coordinates arrive with an explicit edge list (figure
    fixtures whose coordinates are not in Q[√3]).  Edges are taken as
    declared with unit length, and geometric checks use ``FLOAT_TOLERANCE``.
"""

from __future__ import annotations

import functools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .exceptions import GeometryError
from .geometry import (
    SQRT3_FLOAT,
    Point,
    Scalar,
    cross,
    dist_sq,
    orientation,
    segments_cross,
    sign_parts,
)
from .types import FLOAT_TOLERANCE, ConstructionMethod, Mode

logger = logging.getLogger(__name__)

# Above this many points construction switches to grid bucketing.
EXACT_ALL_PAIRS_LIMIT = 2000


@dataclass(frozen=True)
class GeneralPositionReport:
    """Every collinear triple of a point set, as sorted index triples."""

    collinear_triples: list[tuple[int, int, int]]

    @property
    def holds(self) -> bool:
        return not self.collinear_triples


@dataclass(frozen=True)
class Face:
    """One face of the embedding, given by its directed boundary walk.

    ``walk`` lists the vertices in traversal order; consecutive entries (and
    the last and first) are the directed edges of the boundary.  Inner faces
    are traversed counter-clockwise.
    """

    walk: tuple[int, ...]
    signed_area: float
    is_outer: bool
    component: int

    @property
    def size(self) -> int:
        return len(self.walk)

    @property
    def is_triangle(self) -> bool:
        return not self.is_outer and self.size == 3

    @property
    def is_quadrilateral(self) -> bool:
        return not self.is_outer and self.size == 4

    def directed_edges(self) -> list[tuple[int, int]]:
        w = self.walk
        return [(w[k], w[(k + 1) % len(w)]) for k in range(len(w))]


# ── Integer coordinates in Z[√3] ─────────────────────────────────


def _integerize(points: Sequence[Point]) -> tuple[list[tuple[int, int, int, int]], int]:
    """Scale all coordinates by the lcm of their denominators.

    Returns ``(xa, xb, ya, yb)`` integer quadruples with
    ``x = (xa + xb·√3) / scale`` and the scale itself.
    """
    scale = 1
    for p in points:
        for s in (p.x, p.y):
            scale = lcm(scale, s.a.denominator, s.b.denominator)
    quads = []
    for p in points:
        quads.append(
            (
                int(p.x.a * scale),
                int(p.x.b * scale),
                int(p.y.a * scale),
                int(p.y.b * scale),
            )
        )
    return quads, scale


def _zdist(p: tuple[int, int, int, int], q: tuple[int, int, int, int]) -> tuple[int, int]:
    """Scaled squared distance of two integerized points, as ``(A, B)``."""
    xa = p[0] - q[0]
    xb = p[1] - q[1]
    ya = p[2] - q[2]
    yb = p[3] - q[3]
    return (xa * xa + 3 * xb * xb + ya * ya + 3 * yb * yb, 2 * (xa * xb + ya * yb))


def _float_coords(quads: Sequence[tuple[int, int, int, int]]) -> np.ndarray:
    arr = np.empty((len(quads), 2), dtype=float)
    for i, (xa, xb, ya, yb) in enumerate(quads):
        arr[i, 0] = float(xa) + float(xb) * SQRT3_FLOAT
        arr[i, 1] = float(ya) + float(yb) * SQRT3_FLOAT
    return arr


def _float_margin(quads: Sequence[tuple[int, int, int, int]]) -> float:
    """An upper bound on the rounding error of any float squared distance."""
    size = 1.0
    for xa, xb, ya, yb in quads:
        size = max(size, abs(float(xa)) + 2 * abs(float(xb)) + abs(float(ya)) + 2 * abs(float(yb)))
    return 64.0 * size * size * 2.0 ** -49


class _ExactMinimum:
    """Running exact minimum over candidate pairs, with all attaining pairs."""

    def __init__(self, quads: Sequence[tuple[int, int, int, int]]) -> None:
        self.quads = quads
        self.best: tuple[int, int] | None = None
        self.pairs: list[tuple[int, int]] = []

    def offer(self, i: int, j: int) -> None:
        value = _zdist(self.quads[i], self.quads[j])
        if value == (0, 0):
            raise GeometryError("coincident points")
        if self.best is None:
            self.best = value
            self.pairs = [(i, j)]
            return
        s = sign_parts(value[0] - self.best[0], value[1] - self.best[1])
        if s < 0:
            self.best = value
            self.pairs = [(i, j)]
        elif s == 0:
            self.pairs.append((i, j))


def _all_pairs_minimum(quads, coords, margin) -> _ExactMinimum:
    n = len(quads)
    best_float = math.inf
    for i in range(n - 1):
        d = ((coords[i + 1:] - coords[i]) ** 2).sum(axis=1)
        best_float = min(best_float, float(d.min()))
    threshold = best_float + 2 * margin
    tracker = _ExactMinimum(quads)
    for i in range(n - 1):
        d = ((coords[i + 1:] - coords[i]) ** 2).sum(axis=1)
        for offset in np.nonzero(d <= threshold)[0]:
            tracker.offer(i, i + 1 + int(offset))
    return tracker


def _grid_minimum(quads, coords, margin) -> _ExactMinimum:
    n = len(quads)
    upper = math.inf
    for axis in (0, 1):
        order = np.argsort(coords[:, axis], kind="stable")
        steps = ((coords[order[1:]] - coords[order[:-1]]) ** 2).sum(axis=1)
        upper = min(upper, float(steps.min()))
    threshold = upper + 2 * margin
    cell = math.sqrt(threshold) * (1 + 1e-9)
    index = GridIndex(coords, cell)
    tracker = _ExactMinimum(quads)
    for i in range(n):
        for j in index.near(coords[i], cell):
            if j <= i:
                continue
            dx = coords[j] - coords[i]
            if float(dx @ dx) <= threshold:
                tracker.offer(i, j)
    return tracker


class GridIndex:
    """Uniform grid over float coordinates for neighbourhood queries."""

    def __init__(self, coords: np.ndarray, cell: float) -> None:
        self.coords = coords
        self.cell = cell
        self.buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
        for i, (x, y) in enumerate(coords):
            self.buckets[self._key(x, y)].append(i)

    def _key(self, x: float, y: float) -> tuple[int, int]:
        return (math.floor(x / self.cell), math.floor(y / self.cell))

    def near(self, point: Sequence[float], radius: float) -> list[int]:
        """Indices whose cell lies within ``radius`` of ``point``'s cell (a superset)."""
        reach = int(math.ceil(radius / self.cell))
        cx, cy = self._key(point[0], point[1])
        found: list[int] = []
        for gx in range(cx - reach, cx + reach + 1):
            for gy in range(cy - reach, cy + reach + 1):
                found.extend(self.buckets.get((gx, gy), ()))
        return found


# ── Brute force oracle ───────────────────────────────────────────


def brute_force_edges(points: Sequence[Point]) -> tuple[Scalar, frozenset[tuple[int, int]]]:
    """Minimum squared distance and attaining pairs by plain all-pairs comparison.

    Works directly on :class:`Scalar` values with no scaling and no floats,
    as an independent check of :func:`build_penny_graph`.
    """
    best: Scalar | None = None
    pairs: list[tuple[int, int]] = []
    for i, j in combinations(range(len(points)), 2):
        d = dist_sq(points[i], points[j])
        if best is None or d < best:
            best = d
            pairs = [(i, j)]
        elif d == best:
            pairs.append((i, j))
    if best is None:
        raise GeometryError("degenerate input")
    return best, frozenset(pairs)


# ── General position ─────────────────────────────────────────────


def _slope_key(dx: tuple[int, int], dy: tuple[int, int]) -> tuple[int, ...]:
    """Exact canonical key of the direction (dx, dy), identifying parallel vectors."""
    if dx == (0, 0):
        return (0,)
    norm = dx[0] * dx[0] - 3 * dx[1] * dx[1]
    p = dy[0] * dx[0] - 3 * dy[1] * dx[1]
    q = dy[1] * dx[0] - dy[0] * dx[1]
    g = gcd(gcd(p, q), norm)
    if norm < 0:
        g = -g
    return (1, p // g, q // g, norm // g)


def check_general_position(points: Sequence[Point]) -> GeneralPositionReport:
    """All collinear triples of ``points``, found exactly.

    For each point, the later points are grouped by the exact slope of the
    direction towards them; any two in one group complete a collinear triple.
    """
    quads, _ = _integerize(points)
    triples: set[tuple[int, int, int]] = set()
    n = len(quads)
    for i in range(n):
        xa, xb, ya, yb = quads[i]
        groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for j in range(i + 1, n):
            q = quads[j]
            groups[_slope_key((q[0] - xa, q[1] - xb), (q[2] - ya, q[3] - yb))].append(j)
        for members in groups.values():
            for j, k in combinations(members, 2):
                triples.add((i, j, k))
    return GeneralPositionReport(sorted(triples))


def check_general_position_float(
    coords: Sequence[Sequence[float]], tolerance: float = FLOAT_TOLERANCE
) -> GeneralPositionReport:
    """Collinear triples of float coordinates, up to ``tolerance``."""
    pts = np.asarray(coords, dtype=float)
    triples = []
    for i, j, k in combinations(range(len(pts)), 3):
        u = pts[j] - pts[i]
        v = pts[k] - pts[i]
        if abs(u[0] * v[1] - u[1] * v[0]) <= tolerance:
            triples.append((i, j, k))
    return GeneralPositionReport(triples)


# ── Rotation system ──────────────────────────────────────────────


def _zmul(a1: int, b1: int, a2: int, b2: int) -> tuple[int, int]:
    return (a1 * a2 + 3 * b1 * b2, a1 * b2 + a2 * b1)


def _half(direction: tuple[int, int, int, int]) -> int:
    """0 for angles in [0, π), 1 for [π, 2π)."""
    sy = sign_parts(direction[2], direction[3])
    if sy > 0:
        return 0
    if sy == 0 and sign_parts(direction[0], direction[1]) > 0:
        return 0
    return 1


def _ccw_compare(u: tuple[int, int, int, int], v: tuple[int, int, int, int]) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    a = _zmul(u[0], u[1], v[2], v[3])
    b = _zmul(u[2], u[3], v[0], v[1])
    c = sign_parts(a[0] - b[0], a[1] - b[1])
    return -c


def _exact_rotation(quads, adjacency: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    rotation = []
    for v, nbrs in enumerate(adjacency):
        base = quads[v]
        dirs = {
            u: tuple(quads[u][k] - base[k] for k in range(4)) for u in nbrs
        }
        ccw = sorted(
            nbrs,
            key=functools.cmp_to_key(lambda s, t: _ccw_compare(dirs[s], dirs[t])),
        )
        rotation.append(tuple(reversed(ccw)))
    return tuple(rotation)


def _float_rotation(coords: np.ndarray, adjacency: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    rotation = []
    for v, nbrs in enumerate(adjacency):
        x, y = coords[v]
        rotation.append(
            tuple(sorted(nbrs, key=lambda u: -math.atan2(coords[u][1] - y, coords[u][0] - x)))
        )
    return tuple(rotation)


# ── The graph ────────────────────────────────────────────────────


@dataclass
class PennyGraph:
    """A penny graph with its clockwise rotation system and face list.

    Immutable after construction; build with :func:`build_penny_graph` or
    :func:`build_declared_graph`.
    """

    mode: Mode
    coords: np.ndarray
    d_min_sq: Scalar
    edges: frozenset[tuple[int, int]]
    rotation: tuple[tuple[int, ...], ...]
    points: list[Point] | None = None
    faces: list[Face] = field(default_factory=list)
    graph: nx.Graph = field(default_factory=nx.Graph)
    _face_of: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)
    _cw_position: list[dict[int, int]] = field(default_factory=list, repr=False)
    _general_position: GeneralPositionReport | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(len(self.coords)))
        self.graph.add_edges_from(self.edges)
        self._cw_position = [
            {u: k for k, u in enumerate(nbrs)} for nbrs in self.rotation
        ]
        self._trace_faces()

    # ── Basic queries ───────────────────────────────────────────

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> Fraction:
        return Fraction(self.e, self.n)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in clockwise order."""
        return self.rotation[v]

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def common_neighbors(self, u: int, v: int) -> set[int]:
        return set(nx.common_neighbors(self.graph, u, v))

    def cw_next(self, v: int, u: int) -> int:
        """The neighbour of ``v`` that follows ``u`` clockwise."""
        nbrs = self.rotation[v]
        return nbrs[(self._cw_position[v][u] + 1) % len(nbrs)]

    def cw_prev(self, v: int, u: int) -> int:
        nbrs = self.rotation[v]
        return nbrs[(self._cw_position[v][u] - 1) % len(nbrs)]

    def cw_between(self, v: int, after: int, until: int) -> list[int]:
        """Neighbours of ``v`` strictly clockwise after ``after`` and before ``until``."""
        found = []
        u = self.cw_next(v, after)
        while u != until and u != after:
            found.append(u)
            u = self.cw_next(v, u)
        return found

    def face_of(self, u: int, v: int) -> Face:
        """The face whose boundary walk contains the directed edge ``u → v``."""
        return self.faces[self._face_of[(u, v)]]

    def sector_faces(self, v: int) -> list[Face]:
        """Faces around ``v``: entry ``k`` lies between neighbours ``k`` and ``k+1`` clockwise."""
        return [self.face_of(u, v) for u in self.rotation[v]]

    def components(self) -> list[set[int]]:
        return [set(c) for c in nx.connected_components(self.graph)]

    # ── Geometry on vertex indices ──────────────────────────────

    def orientation(self, i: int, j: int, k: int) -> int:
        if self.points is not None:
            return orientation(self.points[i], self.points[j], self.points[k])
        u = self.coords[j] - self.coords[i]
        v = self.coords[k] - self.coords[i]
        c = float(u[0] * v[1] - u[1] * v[0])
        if abs(c) <= FLOAT_TOLERANCE:
            return 0
        return 1 if c > 0 else -1

    def compare_to_unit(self, i: int, j: int) -> int:
        """Sign of ``dist_sq(i, j) − d_min_sq`` (exact, or within tolerance when declared)."""
        if self.points is not None:
            return (dist_sq(self.points[i], self.points[j]) - self.d_min_sq).sign()
        d = self.coords[i] - self.coords[j]
        diff = float(d @ d) - 1.0
        if abs(diff) <= FLOAT_TOLERANCE:
            return 0
        return 1 if diff > 0 else -1

    def float_dist(self, i: int, j: int) -> float:
        d = self.coords[i] - self.coords[j]
        return math.sqrt(float(d @ d)) / math.sqrt(self.unit_float)

    @property
    def unit_float(self) -> float:
        return float(self.d_min_sq)

    def general_position(self) -> GeneralPositionReport:
        if self._general_position is None:
            if self.points is not None:
                self._general_position = check_general_position(self.points)
            else:
                self._general_position = check_general_position_float(self.coords)
        return self._general_position

    # ── Faces ───────────────────────────────────────────────────

    def _exact_area_sign(self, walk: tuple[int, ...]) -> int:
        assert self.points is not None
        total = Scalar(0)
        for k in range(len(walk)):
            total = total + cross(self.points[walk[k]], self.points[walk[(k + 1) % len(walk)]])
        return total.sign()

    def _float_area(self, walk: tuple[int, ...]) -> float:
        xs = self.coords[list(walk), 0]
        ys = self.coords[list(walk), 1]
        return 0.5 * float(np.dot(xs, np.roll(ys, -1)) - np.dot(np.roll(xs, -1), ys))

    def _trace_faces(self) -> None:
        component_of: dict[int, int] = {}
        for index, comp in enumerate(nx.connected_components(self.graph)):
            for v in comp:
                component_of[v] = index
        faces: list[Face] = []
        face_of: dict[tuple[int, int], int] = {}
        for u, v in sorted(self.edges):
            for start in ((u, v), (v, u)):
                if start in face_of:
                    continue
                walk = []
                current = start
                while current not in face_of:
                    face_of[current] = len(faces)
                    walk.append(current[0])
                    a, b = current
                    current = (b, self.cw_next(b, a))
                area = self._float_area(tuple(walk))
                if self.points is not None:
                    outer = self._exact_area_sign(tuple(walk)) <= 0
                else:
                    outer = area <= FLOAT_TOLERANCE
                faces.append(Face(tuple(walk), area, outer, component_of[start[0]]))
        self.faces = faces
        self._face_of = face_of

    def face_counts(self) -> dict[int, int]:
        """Number of faces per connected component, isolated vertices included."""
        counts: dict[int, int] = defaultdict(int)
        for face in self.faces:
            counts[face.component] += 1
        for index, comp in enumerate(nx.connected_components(self.graph)):
            if len(comp) == 1:
                counts[index] = 1
        return dict(counts)

    def euler_holds(self) -> bool:
        """Whether v − e + f = 2 for every connected component."""
        faces = self.face_counts()
        for index, comp in enumerate(nx.connected_components(self.graph)):
            e = self.graph.subgraph(comp).number_of_edges()
            if len(comp) - e + faces.get(index, 0) != 2:
                return False
        return True

    def summary(self) -> dict[str, object]:
        degrees: dict[int, int] = defaultdict(int)
        for v in range(self.n):
            degrees[self.degree(v)] += 1
        return {
            "mode": self.mode,
            "n": self.n,
            "e": self.e,
            "d_min_sq": self.d_min_sq,
            "density": self.density,
            "degree_histogram": dict(sorted(degrees.items())),
            "faces": len(self.faces),
            "triangular_faces": sum(f.is_triangle for f in self.faces),
            "euler_holds": self.euler_holds(),
            "general_position": self.general_position().holds,
        }


# ── Construction ─────────────────────────────────────────────────


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    return adjacency


def build_penny_graph(
    points: Sequence[Point], *, method: ConstructionMethod = "auto"
) -> PennyGraph:
    """Build the penny graph of an exact point set.

    ``method`` selects all-pairs comparison, grid bucketing, or (``"auto"``)
    all-pairs up to ``EXACT_ALL_PAIRS_LIMIT`` points and the grid above.

    Raises ``GeometryError`` for fewer than two points or coincident points.
    """
    points = list(points)
    if len(points) < 2:
        raise GeometryError("degenerate input")
    if len(set(points)) != len(points):
        raise GeometryError("coincident points")

    quads, scale = _integerize(points)
    coords = _float_coords(quads)
    margin = _float_margin(quads)
    if method == "auto":
        method = "all_pairs" if len(points) <= EXACT_ALL_PAIRS_LIMIT else "grid"
    if method == "grid":
        tracker = _grid_minimum(quads, coords, margin)
    else:
        tracker = _all_pairs_minimum(quads, coords, margin)
    assert tracker.best is not None
    d_min_sq = Scalar(Fraction(tracker.best[0], scale * scale), Fraction(tracker.best[1], scale * scale))
    edges = frozenset(tracker.pairs)
    rotation = _exact_rotation(quads, _adjacency(len(points), edges))
    graph = PennyGraph(
        mode="exact",
        coords=coords / scale,
        d_min_sq=d_min_sq,
        edges=edges,
        rotation=rotation,
        points=points,
    )
    logger.info(
        "built penny graph: n=%d e=%d d_min_sq=%s method=%s", graph.n, graph.e, d_min_sq, method
    )
    return graph


def build_declared_graph(
    coords: Sequence[Sequence[float]], edges: Iterable[Sequence[int]]
) -> PennyGraph:
    """Build a declared-mode graph from float coordinates and an asserted edge list."""
    arr = np.asarray(coords, dtype=float).reshape(-1, 2)
    if len(arr) < 2:
        raise GeometryError("degenerate input")
    normalized = set()
    for pair in edges:
        i, j = int(pair[0]), int(pair[1])
        if i == j or not (0 <= i < len(arr) and 0 <= j < len(arr)):
            raise GeometryError(f"declared edge {pair!r} is not a pair of distinct vertices")
        normalized.add((min(i, j), max(i, j)))
    for i, j in combinations(range(len(arr)), 2):
        if np.allclose(arr[i], arr[j], atol=FLOAT_TOLERANCE, rtol=0.0):
            raise GeometryError("coincident points")
    edge_set = frozenset(normalized)
    rotation = _float_rotation(arr, _adjacency(len(arr), edge_set))
    graph = PennyGraph(
        mode="declared",
        coords=arr,
        d_min_sq=Scalar(1),
        edges=edge_set,
        rotation=rotation,
    )
    logger.info("built declared graph: n=%d e=%d", graph.n, graph.e)
    return graph


def enumerate_faces(g: PennyGraph) -> list[dict[str, object]]:
    """Faces of ``g`` with their vertex counts and triangle / quadrilateral flags."""
    return [
        {
            "walk": list(face.walk),
            "size": face.size,
            "outer": face.is_outer,
            "triangle": face.is_triangle,
            "quadrilateral": face.is_quadrilateral,
            "component": face.component,
        }
        for face in g.faces
    ]


def edge_crossings(g: PennyGraph) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of edges whose open segments intersect.

    Candidate pairs come from a grid over edge midpoints; exact mode confirms
    each candidate with exact predicates.
    """
    edges = sorted(g.edges)
    if not edges:
        return []
    unit = math.sqrt(g.unit_float)
    mids = np.array([(g.coords[i] + g.coords[j]) / 2 for i, j in edges])
    index = GridIndex(mids, unit)
    crossings = []
    for a, (i, j) in enumerate(edges):
        for b in index.near(mids[a], unit):
            if b <= a:
                continue
            k, l = edges[b]
            if g.points is not None:
                hit = segments_cross(g.points[i], g.points[j], g.points[k], g.points[l])
            else:
                hit = _float_segments_cross(g.coords, (i, j), (k, l))
            if hit:
                crossings.append(((i, j), (k, l)))
    return crossings


def _float_segments_cross(coords: np.ndarray, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    if set(e1) & set(e2):
        return False

    def orient(p, q, r) -> float:
        u = coords[q] - coords[p]
        v = coords[r] - coords[p]
        return float(u[0] * v[1] - u[1] * v[0])

    d1 = orient(e2[0], e2[1], e1[0])
    d2 = orient(e2[0], e2[1], e1[1])
    d3 = orient(e1[0], e1[1], e2[0])
    d4 = orient(e1[0], e1[1], e2[1])
    tol = FLOAT_TOLERANCE
    return (d1 > tol and d2 < -tol or d1 < -tol and d2 > tol) and (
        d3 > tol and d4 < -tol or d3 < -tol and d4 > tol
    )
