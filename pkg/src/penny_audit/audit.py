"""Structural audit of penny graphs.

Every check is a function of an immutable :class:`PennyGraph` and returns an
:class:`AuditReport` section.  Findings are never raised: each one is a
:class:`Violation` carrying a witness that :func:`confirm_violation` can
re-check against the graph.

Clockwise conventions follow the rotation system: ``g.neighbors(v)`` lists
neighbours clockwise, and a kernel ``L, U, R, D`` is labelled so that the
cycle ``L → U → R → D`` runs clockwise with ``LR`` as its diagonal.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any

import numpy as np

from .exceptions import ClassificationError
from .geometry import dist_sq, in_convex_hull, segments_cross, unsigned_angle
from .graph import GridIndex, PennyGraph
from .types import FLOAT_TOLERANCE, EdgeType, PatternKind, Popularity, Status

logger = logging.getLogger(__name__)

APRICOT_ROLES = ("L1", "L2", "U1", "U2", "U3", "R1", "R2", "D1", "D2", "D3")
KERNEL_ROLES = ("L", "U", "R", "D")

# Consecutive apricot vertices that hang off different kernel vertices.
NON_SHARING_PAIRS = (("L2", "U1"), ("U3", "R1"), ("R2", "D1"), ("D3", "L1"))

# Apricot vertices that may also sit in another kernel.
SHAREABLE_ROLES = frozenset({"U2", "D2"})

# For a degree-4 vertex in the given apricot role, the neighbour that is
# unpopular and outside every kernel.
NEAR_KERNEL_WITNESS = {
    "L1": "L2",
    "L2": "L1",
    "U1": "L2",
    "U2": "U1",
    "U3": "R1",
    "R1": "R2",
    "R2": "R1",
    "D1": "R2",
    "D2": "D3",
    "D3": "L1",
}

SPECIAL_NEIGHBOUR_TRIPLES = (("L1", "L2", "L"), ("R1", "R2", "R"))


# ── Report types ─────────────────────────────────────────────────


@dataclass(frozen=True)
class Violation:
    check: str
    witness: tuple[Any, ...]
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "witness": _plain(self.witness), "detail": self.detail}


@dataclass
class CheckResult:
    """Outcome of one named check: status, violations, and free-form notes."""

    name: str
    status: Status = "pass"
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, witness: tuple[Any, ...], detail: str = "") -> None:
        self.violations.append(Violation(self.name, witness, detail))
        self.status = "violation"

    def note(self, message: str) -> None:
        self.notes.append(message)

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class KernelRecord:
    """A kernel ``L, U, R, D`` with the apricot cycle around it, clockwise."""

    L: int
    U: int
    R: int
    D: int
    apricot_cycle: tuple[int, ...]

    @property
    def kernel(self) -> tuple[int, int, int, int]:
        return (self.L, self.U, self.R, self.D)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.kernel)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.kernel) | frozenset(self.apricot_cycle)

    @property
    def complete(self) -> bool:
        return len(self.apricot_cycle) == len(APRICOT_ROLES)

    def role(self, name: str) -> int:
        if name in KERNEL_ROLES:
            return getattr(self, name)
        return self.apricot_cycle[APRICOT_ROLES.index(name)]

    def role_of(self, v: int) -> str | None:
        for name in KERNEL_ROLES:
            if getattr(self, name) == v:
                return name
        if self.complete and v in self.apricot_cycle:
            return APRICOT_ROLES[self.apricot_cycle.index(v)]
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "kernel": dict(zip(KERNEL_ROLES, self.kernel)),
            "apricot_cycle": list(self.apricot_cycle),
        }


@dataclass(frozen=True)
class EdgeClassification:
    """Type label of edge ``AB`` and the labels of ``B``'s neighbours."""

    label: EdgeType
    a: int
    b: int
    roles: dict[str, int]


@dataclass(frozen=True)
class PatternOccurrence:
    kind: PatternKind
    center: int
    neighbours: tuple[int, ...]
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "center": self.center,
            "neighbours": list(self.neighbours),
            "detail": self.detail,
        }


@dataclass
class AuditReport:
    """Check results keyed by name, with the inventories gathered on the way."""

    hypotheses: str = "met"
    checks: dict[str, CheckResult] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    kernels: list[KernelRecord] = field(default_factory=list)
    edge_types: dict[str, int] = field(default_factory=dict)
    occurrences: list[PatternOccurrence] = field(default_factory=list)
    tn2_witnesses: dict[int, int] = field(default_factory=dict)

    def add_check(self, result: CheckResult) -> CheckResult:
        self.checks[result.name] = result
        return result

    @property
    def violations(self) -> list[Violation]:
        return [v for check in self.checks.values() for v in check.violations]

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: AuditReport) -> AuditReport:
        """Fold ``other`` into this report and return ``self``."""
        self.checks.update(other.checks)
        self.counts.update(other.counts)
        if other.kernels:
            self.kernels = list(other.kernels)
        if other.edge_types:
            self.edge_types = dict(other.edge_types)
        self.occurrences.extend(other.occurrences)
        self.tn2_witnesses.update(other.tn2_witnesses)
        if other.hypotheses != "met":
            self.hypotheses = other.hypotheses
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "hypotheses": self.hypotheses,
            "passed": self.passed,
            "checks": {name: check.to_dict() for name, check in sorted(self.checks.items())},
            "counts": dict(sorted(self.counts.items())),
            "kernels": [k.to_dict() for k in self.kernels],
            "edge_type_histogram": dict(sorted(self.edge_types.items())),
            "occurrences": [o.to_dict() for o in self.occurrences],
            "tn2_witnesses": {str(a): w for a, w in sorted(self.tn2_witnesses.items())},
        }


def _plain(value: Any) -> Any:
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def hypotheses_label(g: PennyGraph) -> str:
    if g.mode == "declared":
        return "declared mode"
    if g.general_position().holds:
        return "met"
    return "unmet: general position fails"


# ── Shared context ───────────────────────────────────────────────


class AuditContext:
    """Per-graph caches shared between checks (kernels, popularity)."""

    def __init__(self, g: PennyGraph) -> None:
        self.g = g
        self._popularity: dict[int, Popularity] = {}

    @cached_property
    def kernels(self) -> list[KernelRecord]:
        return enumerate_kernels(self.g)

    @cached_property
    def kernel_vertices(self) -> frozenset[int]:
        return frozenset(v for k in self.kernels for v in k.vertices)

    @cached_property
    def apricot_members(self) -> frozenset[int]:
        return frozenset(v for k in self.kernels for v in k.members)

    def popularity(self, v: int) -> Popularity:
        if v not in self._popularity:
            self._popularity[v] = classify_popularity(self.g, v)
        return self._popularity[v]


def _context(g: PennyGraph, context: AuditContext | None) -> AuditContext:
    if context is not None and context.g is g:
        return context
    return AuditContext(g)


# ── Small geometric helpers ──────────────────────────────────────


def _is_unit(g: PennyGraph, u: int, v: int) -> bool:
    if g.mode == "declared" and g.has_edge(u, v):
        return True
    return g.compare_to_unit(u, v) == 0


def _translates(g: PennyGraph, a: int, b: int, d: int, c: int) -> bool:
    """Whether ``a − b == d − c``."""
    if g.points is not None:
        return g.points[a] - g.points[b] == g.points[d] - g.points[c]
    diff = (g.coords[a] - g.coords[b]) - (g.coords[d] - g.coords[c])
    return bool(np.all(np.abs(diff) <= FLOAT_TOLERANCE))


def _cross2(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _maybe_in_hull(pts: np.ndarray, quad: np.ndarray, slack: float) -> np.ndarray:
    """Float test of membership in the hull of four points, widened by ``slack``.

    A positive ``slack`` gives a superset of the exact answer; a negative one
    keeps only points clearly inside.
    """
    inside = np.zeros(len(pts), dtype=bool)
    for i, j, k in combinations(range(4), 3):
        a, b, c = quad[i], quad[j], quad[k]
        d1 = _cross2(b - a, pts - a)
        d2 = _cross2(c - b, pts - b)
        d3 = _cross2(a - c, pts - c)
        neg = (d1 < -slack) | (d2 < -slack) | (d3 < -slack)
        pos = (d1 > slack) | (d2 > slack) | (d3 > slack)
        inside |= ~(neg & pos)
    return inside


def _crossing_or_short(g: PennyGraph, a: int, b: int, c: int, d: int) -> bool:
    """Exact consequence of an angle sum below π on the path ``a b c d``."""
    if g.points is not None:
        p = g.points
        return dist_sq(p[a], p[d]) < g.d_min_sq or segments_cross(p[a], p[b], p[c], p[d])
    return g.compare_to_unit(a, d) < 0 and not g.has_edge(a, d)


# ── Basic checks ─────────────────────────────────────────────────


def _check_unit_faces(g: PennyGraph) -> CheckResult:
    result = CheckResult("unit_faces")
    for index, face in enumerate(g.faces):
        if face.is_outer or face.size not in (3, 4):
            continue
        w = face.walk
        if len(set(w)) != face.size:
            continue
        if face.size == 3:
            for u, v in combinations(w, 2):
                if not _is_unit(g, u, v):
                    result.add((index, u, v), "triangular face is not equilateral")
        else:
            for u, v in face.directed_edges():
                if not _is_unit(g, u, v):
                    result.add((index, u, v), "quadrilateral side is not unit")
            if not _translates(g, w[0], w[1], w[3], w[2]):
                result.add((index,) + w, "quadrilateral face is not a rhombus")
    return result


def _check_path_angles(g: PennyGraph) -> CheckResult:
    result = CheckResult("path_angles")
    for b in range(g.n):
        for a, c in combinations(g.neighbors(b), 2):
            if g.has_edge(a, c):
                continue
            s = g.compare_to_unit(a, c)
            if s < 0:
                result.add((a, b, c), "angle below π/3: |AC| shorter than the unit")
            elif s == 0:
                result.add((a, b, c), "|AC| equals the unit but AC is not an edge")
    return result


def _check_path_angle_sums(g: PennyGraph) -> CheckResult:
    result = CheckResult("path_angle_sums")
    coords = g.coords
    for b, c in sorted(g.edges):
        for a in g.neighbors(b):
            if a == c:
                continue
            side = g.orientation(b, c, a)
            if side == 0:
                continue
            for d in g.neighbors(c):
                if d in (a, b) or g.orientation(b, c, d) != side:
                    continue
                if _translates(g, a, b, d, c):
                    if not g.has_edge(a, d):
                        result.add((a, b, c, d), "rhombus path without the closing edge AD")
                    continue
                total = unsigned_angle(coords[a], coords[b], coords[c]) + unsigned_angle(
                    coords[b], coords[c], coords[d]
                )
                if total >= math.pi - FLOAT_TOLERANCE:
                    continue
                if _crossing_or_short(g, a, b, c, d):
                    result.add((a, b, c, d), f"angle sum {total:.12f} below π")
                else:
                    result.note(
                        f"path {a}-{b}-{c}-{d}: float angle sum {total:.12f} below π, "
                        "not confirmed exactly"
                    )
    return result


def _check_max_degree(g: PennyGraph) -> CheckResult:
    result = CheckResult("max_degree")
    for v in range(g.n):
        if g.degree(v) > 5:
            result.add((v,), f"degree {g.degree(v)}")
    return result


def _check_no_three_triangles(g: PennyGraph) -> CheckResult:
    result = CheckResult("no_three_triangles")
    for v in range(g.n):
        k = g.degree(v)
        if k < 3:
            continue
        triangles = [f.is_triangle for f in g.sector_faces(v)]
        for start in range(k):
            if all(triangles[(start + step) % k] for step in range(3)):
                result.add((v, start), "three consecutive triangular faces")
                break
    return result


def _check_path_hulls(g: PennyGraph) -> CheckResult:
    result = CheckResult("path_hulls")
    coords = g.coords
    reach = 2.0 * math.sqrt(g.unit_float)
    index = GridIndex(coords, reach)
    scale = max(1.0, float(np.abs(coords).max())) ** 2
    slack = FLOAT_TOLERANCE * scale
    found: set[tuple[int, ...]] = set()
    for b, c in sorted(g.edges):
        nearby = np.array(index.near(coords[b], reach), dtype=int)
        for a in g.neighbors(b):
            if a == c:
                continue
            for d in g.neighbors(c):
                if d in (a, b):
                    continue
                quad = (a, b, c, d)
                candidates = nearby[~np.isin(nearby, quad)]
                if not len(candidates):
                    continue
                mask = _maybe_in_hull(coords[candidates], coords[list(quad)], slack)
                for p in candidates[mask]:
                    p = int(p)
                    if g.points is not None:
                        inside = in_convex_hull(g.points[p], tuple(g.points[q] for q in quad))
                    else:
                        inside = bool(
                            _maybe_in_hull(coords[[p]], coords[list(quad)], -slack)[0]
                        )
                    key = (min(quad, quad[::-1]), p)
                    if inside and key not in found:
                        found.add(key)
                        result.add(quad + (p,), "vertex inside the hull of a 3-edge path")
    return result


def audit_basic(g: PennyGraph) -> AuditReport:
    """Face shapes, path angles, degree bound, triangle runs and path hulls."""
    report = AuditReport(hypotheses=hypotheses_label(g))
    for check in (
        _check_unit_faces,
        _check_path_angles,
        _check_path_angle_sums,
        _check_max_degree,
        _check_no_three_triangles,
        _check_path_hulls,
    ):
        report.add_check(check(g))
    return report


# ── Degree-5 checks ──────────────────────────────────────────────


def _outer_neighbours(g: PennyGraph, cycle: tuple[int, ...]) -> list[list[int]]:
    """For each vertex of a clockwise cycle, its neighbours strictly outside it."""
    k = len(cycle)
    return [g.cw_between(cycle[i], cycle[i - 1], cycle[(i + 1) % k]) for i in range(k)]


def _check_adjacent_deg5(g: PennyGraph) -> CheckResult:
    result = CheckResult("adjacent_deg5_common_neighbor")
    for u, v in sorted(g.edges):
        if g.degree(u) == 5 and g.degree(v) == 5 and not g.common_neighbors(u, v):
            result.add((u, v), "adjacent degree-5 vertices share no neighbour")
    return result


def _check_mobius_loops(g: PennyGraph) -> CheckResult:
    result = CheckResult("mobius_loops")
    for u, v in sorted(g.edges):
        if g.degree(u) != 5 or g.degree(v) != 5:
            continue
        for w in sorted(g.common_neighbors(u, v)):
            if w <= v or g.degree(w) != 5:
                continue
            if (
                g.common_neighbors(u, v) != {w}
                or g.common_neighbors(v, w) != {u}
                or g.common_neighbors(w, u) != {v}
            ):
                continue
            tri = (u, v, w) if g.orientation(u, v, w) < 0 else (u, w, v)
            outer = [x for group in _outer_neighbours(g, tri) for x in group]
            if len(outer) != 9:
                result.add(tri, f"expected 9 outer neighbours, found {len(outer)}")
                continue
            for i in range(9):
                x, y = outer[i], outer[(i + 1) % 9]
                if not g.has_edge(x, y):
                    result.add(tri + (x, y), "outer neighbours not adjacent")
    return result


def _check_five_in_core(g: PennyGraph, ctx: AuditContext) -> CheckResult:
    result = CheckResult("five_in_core")
    for v in range(g.n):
        if g.degree(v) != 5:
            continue
        if all(g.degree(u) == 5 for u in g.neighbors(v)) and v not in ctx.kernel_vertices:
            result.add((v,), "degree-5 vertex with degree-5 neighbourhood outside every kernel")
    return result


def audit_deg5(g: PennyGraph, *, context: AuditContext | None = None) -> AuditReport:
    """Adjacent degree-5 pairs, Möbius loops and degree-5 cores."""
    ctx = _context(g, context)
    report = AuditReport(hypotheses=hypotheses_label(g))
    report.add_check(_check_adjacent_deg5(g))
    report.add_check(_check_mobius_loops(g))
    report.add_check(_check_five_in_core(g, ctx))
    return report


# ── Kernels and apricots ─────────────────────────────────────────


def enumerate_kernels(g: PennyGraph) -> list[KernelRecord]:
    """Every kernel of ``g``, one record per vertex set.

    The diagonal ``LR`` has ``L < R``; ``U`` turns clockwise from ``L`` to ``R``.
    """
    seen: set[frozenset[int]] = set()
    records: list[KernelRecord] = []
    for left, right in sorted(g.edges):
        if g.degree(left) != 5 or g.degree(right) != 5:
            continue
        ups: list[int] = []
        downs: list[int] = []
        for w in sorted(g.common_neighbors(left, right)):
            if g.degree(w) != 5:
                continue
            side = g.orientation(left, w, right)
            if side < 0:
                ups.append(w)
            elif side > 0:
                downs.append(w)
        for up in ups:
            for down in downs:
                key = frozenset((left, up, right, down))
                if key in seen:
                    continue
                seen.add(key)
                cycle = (left, up, right, down)
                outer = _outer_neighbours(g, cycle)
                records.append(
                    KernelRecord(left, up, right, down, tuple(x for group in outer for x in group))
                )
    return records


def find_kernels_and_apricots(
    g: PennyGraph, *, context: AuditContext | None = None
) -> tuple[list[KernelRecord], AuditReport]:
    """Enumerate kernels and check the apricot around each of them."""
    ctx = _context(g, context)
    kernels = ctx.kernels
    report = AuditReport(hypotheses=hypotheses_label(g), kernels=list(kernels))
    cycles = report.add_check(CheckResult("apricot_cycles"))
    sharing = report.add_check(CheckResult("no_triangle_pairs"))
    disjoint = report.add_check(CheckResult("kernel_disjointness"))
    strong = report.add_check(CheckResult("kernel_disjointness_strong"))
    faces = report.add_check(CheckResult("kernel_face_property"))
    special = report.add_check(CheckResult("special_second_neighbour"))

    for k in kernels:
        if not k.complete:
            cycles.add(k.kernel, f"apricot has {len(k.apricot_cycle)} vertices, expected 10")
            continue
        ring = k.apricot_cycle
        for i in range(10):
            x, y = ring[i], ring[(i + 1) % 10]
            if not g.has_edge(x, y):
                cycles.add(k.kernel + (x, y), "consecutive apricot vertices not adjacent")
        for first, second in NON_SHARING_PAIRS:
            x, y = k.role(first), k.role(second)
            if g.common_neighbors(x, y):
                sharing.add((x, y), f"{first} and {second} share a neighbour")
            if g.degree(x) >= 5 and g.degree(y) >= 5:
                sharing.add((x, y), f"{first} and {second} both have degree 5")
        for first, second, anchor in SPECIAL_NEIGHBOUR_TRIPLES:
            x, y, z = k.role(first), k.role(second), k.role(anchor)
            if g.degree(x) != 5 or g.degree(y) != 5:
                continue
            for w in sorted(g.common_neighbors(x, y) - {z}):
                if g.degree(w) > 4:
                    special.add((x, y, w), f"common neighbour of {first}, {second} has degree 5")
        for v in k.kernel:
            sectors = [f.is_triangle for f in g.sector_faces(v)]
            for i in range(len(sectors)):
                if not sectors[i] and not sectors[(i + 1) % len(sectors)]:
                    faces.add((v, i), "two consecutive non-triangular faces at a kernel vertex")
                    break

    for first, second in combinations(kernels, 2):
        if first.vertices & second.vertices:
            disjoint.add((first.kernel, second.kernel), "kernels share a vertex")
    for k in kernels:
        if not k.complete:
            continue
        for other in kernels:
            if other is k:
                continue
            for role, v in zip(APRICOT_ROLES, k.apricot_cycle):
                if role not in SHAREABLE_ROLES and v in other.vertices:
                    strong.add((k.kernel, other.kernel, v), f"apricot vertex {role} lies in another kernel")

    report.counts["kernels"] = len(kernels)
    report.counts["apricots"] = sum(k.complete for k in kernels)
    logger.debug("found %d kernels", len(kernels))
    return kernels, report


# ── Popularity and edge types ────────────────────────────────────


def classify_popularity(g: PennyGraph, v: int) -> Popularity:
    """Popular: degree 5, no neighbour of degree ≤ 3, at most one of degree 4."""
    if g.degree(v) != 5:
        return "unpopular"
    low = [g.degree(u) for u in g.neighbors(v) if g.degree(u) <= 4]
    if any(d <= 3 for d in low) or len(low) > 1:
        return "unpopular"
    return "popular"


def classify_edge_type(
    g: PennyGraph, a: int, b: int, *, context: AuditContext | None = None
) -> EdgeClassification:
    """Type label of the edge ``AB`` for a degree-4 ``A`` and a popular ``B``.

    Raises ``ClassificationError`` if a precondition fails or if not exactly
    one label applies.
    """
    ctx = _context(g, context)
    if not g.has_edge(a, b):
        raise ClassificationError(f"{a}-{b} is not an edge")
    if g.degree(a) != 4:
        raise ClassificationError(f"vertex {a} has degree {g.degree(a)}, expected 4")
    if a in ctx.apricot_members:
        raise ClassificationError(f"vertex {a} belongs to an apricot")
    if ctx.popularity(b) != "popular":
        raise ClassificationError(f"vertex {b} is not popular")

    nbrs = g.neighbors(b)
    start = nbrs.index(a)
    ring = [nbrs[(start + k) % 5] for k in range(5)]
    adj = g.has_edge
    labels: list[EdgeClassification] = []

    m = ring[1:]
    lonely = not any(adj(a, x) for x in m)
    if lonely and adj(m[0], m[1]) and not adj(m[1], m[2]) and adj(m[2], m[3]):
        roles = {"A": a, "B": b, "C1": m[0], "C2": m[1], "C3": m[2], "C4": m[3]}
        labels.append(EdgeClassification("TypeI", a, b, roles))

    for shift in range(5):
        p1, p2, t1, t2, t3 = (ring[(shift + k) % 5] for k in range(5))
        if not (adj(p1, p2) and not adj(p2, t1) and adj(t1, t2) and adj(t2, t3) and not adj(t3, p1)):
            continue
        if a == t2:
            roles = {"A": a, "B": b, "C1": p1, "C2": p2, "C3": t1, "C4": t2, "C5": t3}
            labels.append(EdgeClassification("TypeIII", a, b, roles))
        elif a in (t1, t3):
            other = t3 if a == t1 else t1
            roles = {"A": a, "B": b, "C1": p1, "C2": p2, "C3": other, "C4": t2, "C5": a}
            labels.append(EdgeClassification("TypeII", a, b, roles))
        else:
            raise ClassificationError(f"vertex {a} lies in the adjacent pair around {b}")

    if len(labels) != 1:
        raise ClassificationError(
            f"{len(labels)} edge types match {a}-{b}" if labels else f"no edge type matches {a}-{b}"
        )
    return labels[0]


def edge_type_histogram(g: PennyGraph, *, context: AuditContext | None = None) -> dict[str, int]:
    """Counts of edge types over all eligible (degree-4, popular) edges."""
    ctx = _context(g, context)
    counts: Counter[str] = Counter()
    for a in range(g.n):
        if g.degree(a) != 4 or a in ctx.apricot_members:
            continue
        for b in g.neighbors(a):
            if ctx.popularity(b) != "popular":
                continue
            try:
                counts[classify_edge_type(g, a, b, context=ctx).label] += 1
            except ClassificationError:
                counts["undefined"] += 1
    return dict(counts)


# ── Forbidden patterns ───────────────────────────────────────────


def _edge_types_at(ctx: AuditContext, a: int) -> dict[int, EdgeClassification]:
    types: dict[int, EdgeClassification] = {}
    for b in ctx.g.neighbors(a):
        if ctx.popularity(b) != "popular":
            continue
        try:
            types[b] = classify_edge_type(ctx.g, a, b, context=ctx)
        except ClassificationError as e:
            logger.debug("edge %d-%d: %s", a, b, e.message)
    return types


def find_forbidden_patterns(
    g: PennyGraph, *, context: AuditContext | None = None
) -> tuple[list[PatternOccurrence], AuditReport]:
    """Kifli and clover preconditions around degree-4 vertices outside apricots.

    Also checks that the shared neighbour ``C4`` of a Type II edge ``AB``
    never makes ``AC4`` a Type I edge.
    """
    ctx = _context(g, context)
    report = AuditReport(hypotheses=hypotheses_label(g))
    kifli = report.add_check(CheckResult("kifli"))
    clover = report.add_check(CheckResult("clover"))
    pairing = report.add_check(CheckResult("type_pairing"))
    occurrences: list[PatternOccurrence] = []

    for a in range(g.n):
        if g.degree(a) != 4 or a in ctx.apricot_members:
            continue
        types = _edge_types_at(ctx, a)
        ring = g.neighbors(a)

        for i in range(4):
            b1, b2 = ring[i], ring[(i + 1) % 4]
            if not (b1 in types and b2 in types):
                continue
            if types[b1].label == "TypeI" and types[b2].label == "TypeI":
                if g.common_neighbors(b1, b2) - {a}:
                    continue
                occ = PatternOccurrence("kifli", a, (b1, b2), "consecutive Type I edges")
                occurrences.append(occ)
                kifli.add((a, b1, b2), occ.detail)

        if len(types) == 4 and all(t.label == "TypeII" for t in types.values()):
            for shift in (0, 1):
                b1, b2, b3, b4 = (ring[(shift + k) % 4] for k in range(4))
                if g.has_edge(b1, b2) and g.has_edge(b3, b4):
                    break
            else:
                b1 = None
            if b1 is not None and not (g.common_neighbors(b2, b3) - {a}) and not (
                g.common_neighbors(b4, b1) - {a}
            ):
                occ = PatternOccurrence("clover", a, (b1, b2, b3, b4), "four Type II edges")
                occurrences.append(occ)
                clover.add((a, b1, b2, b3, b4), occ.detail)

        for b, t in types.items():
            if t.label != "TypeII":
                continue
            c4 = t.roles["C4"]
            if ctx.popularity(c4) != "popular":
                continue
            try:
                paired = classify_edge_type(g, a, c4, context=ctx)
            except ClassificationError:
                continue
            if paired.label == "TypeI":
                pairing.add((a, b, c4), "Type II edge paired with a Type I edge")

    report.occurrences = occurrences
    report.counts["forbidden_patterns"] = len(occurrences)
    return occurrences, report


# ── Unpopular neighbours of degree-4 vertices ────────────────────


def _tn2_witness(ctx: AuditContext, a: int) -> int | None:
    g = ctx.g

    def usable(v: int) -> bool:
        return ctx.popularity(v) == "unpopular" and v not in ctx.kernel_vertices

    for k in ctx.kernels:
        role = k.role_of(a)
        if role in NEAR_KERNEL_WITNESS:
            candidate = k.role(NEAR_KERNEL_WITNESS[role])
            if g.has_edge(a, candidate) and usable(candidate):
                return candidate
    for v in g.neighbors(a):
        if usable(v):
            return v
    return None


def check_theorem_tn2(g: PennyGraph, *, context: AuditContext | None = None) -> AuditReport:
    """Find an unpopular neighbour outside every kernel for each degree-4 vertex."""
    ctx = _context(g, context)
    report = AuditReport(hypotheses=hypotheses_label(g))
    witness = report.add_check(CheckResult("tn2_witness"))
    type3 = report.add_check(CheckResult("type3_unpopular"))

    for a in range(g.n):
        if g.degree(a) != 4:
            continue
        found = _tn2_witness(ctx, a)
        if found is None:
            witness.add((a,), "no unpopular neighbour outside every kernel")
        else:
            report.tn2_witnesses[a] = found
        if a in ctx.apricot_members:
            continue
        for b, t in _edge_types_at(ctx, a).items():
            if t.label != "TypeIII":
                continue
            for role in ("C3", "C5"):
                v = t.roles[role]
                if ctx.popularity(v) == "popular":
                    type3.add((a, b, v), f"{role} of a Type III edge is popular")

    report.counts["degree4"] = sum(1 for v in range(g.n) if g.degree(v) == 4)
    return report


# ── Everything ───────────────────────────────────────────────────


def run_full_audit(g: PennyGraph) -> AuditReport:
    """Every structural check on ``g``, assembled into one report."""
    ctx = AuditContext(g)
    report = AuditReport(hypotheses=hypotheses_label(g))
    gp = report.add_check(CheckResult("general_position"))
    for triple in g.general_position().collinear_triples:
        gp.add(triple, "collinear triple")
    if report.hypotheses.startswith("unmet"):
        logger.warning("general position fails: %d collinear triples", len(gp.violations))

    report.merge(audit_basic(g))
    report.merge(audit_deg5(g, context=ctx))
    _, kernel_report = find_kernels_and_apricots(g, context=ctx)
    report.merge(kernel_report)
    _, pattern_report = find_forbidden_patterns(g, context=ctx)
    report.merge(pattern_report)
    report.merge(check_theorem_tn2(g, context=ctx))

    report.edge_types = edge_type_histogram(g, context=ctx)
    report.counts["vertices"] = g.n
    report.counts["edges"] = g.e
    report.counts["popular"] = sum(ctx.popularity(v) == "popular" for v in range(g.n))
    logger.info(
        "audit finished: %d checks, %d violations", len(report.checks), len(report.violations)
    )
    return report


# ── Witness re-checks ────────────────────────────────────────────


def confirm_violation(g: PennyGraph, violation: Violation) -> bool:
    """Re-run the predicate behind ``violation`` on its witness.

    Returns True when the witness still shows the violation.  Checks without
    a registered predicate return True only if a fresh audit reports the same
    witness.
    """
    w = violation.witness
    check = violation.check
    if check == "max_degree":
        return g.degree(w[0]) > 5
    if check == "path_angles":
        a, _, c = w
        return not g.has_edge(a, c) and g.compare_to_unit(a, c) <= 0
    if check == "no_three_triangles":
        v, start = w
        triangles = [f.is_triangle for f in g.sector_faces(v)]
        return all(triangles[(start + s) % len(triangles)] for s in range(3))
    if check == "adjacent_deg5_common_neighbor":
        u, v = w
        return g.degree(u) == g.degree(v) == 5 and not g.common_neighbors(u, v)
    if check == "kernel_disjointness":
        return bool(set(w[0]) & set(w[1]))
    if check == "general_position":
        return g.orientation(*w) == 0
    if check == "kifli":
        a, b1, b2 = w
        ctx = AuditContext(g)
        return (
            classify_edge_type(g, a, b1, context=ctx).label == "TypeI"
            and classify_edge_type(g, a, b2, context=ctx).label == "TypeI"
            and not (g.common_neighbors(b1, b2) - {a})
        )
    if check == "clover":
        a, b1, b2, b3, b4 = w
        ctx = AuditContext(g)
        return (
            all(classify_edge_type(g, a, b, context=ctx).label == "TypeII" for b in (b1, b2, b3, b4))
            and not (g.common_neighbors(b2, b3) - {a})
            and not (g.common_neighbors(b4, b1) - {a})
        )
    if check == "tn2_witness":
        ctx = AuditContext(g)
        return _tn2_witness(ctx, w[0]) is None
    fresh = run_full_audit(g)
    return any(v.witness == w for v in fresh.checks.get(check, CheckResult(check)).violations)
