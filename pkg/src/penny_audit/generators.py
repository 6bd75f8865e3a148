"""Instance generators: lattice pieces, perturbations, random sets and local search.

Every generator is a pure function of its parameters and seed, and records
them in an :class:`InstanceSpec` so :func:`regenerate` reproduces the points
bit for bit.  Random draws come from ``numpy.random.default_rng``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import numpy as np

from .exceptions import GenerationError
from .fixtures import Fixture, load_fixture
from .geometry import Point, Scalar, dist_sq, orientation, rotate, unit_vector
from .graph import PennyGraph, build_penny_graph, check_general_position
from .types import DENSITY_TARGETS, REFERENCE_DENSITIES

logger = logging.getLogger(__name__)

InstanceKind = Literal["hex_lattice", "perturbed", "random", "fixture", "densified"]

# Perturbation offsets are multiples of magnitude / PERTURBATION_STEPS.
PERTURBATION_STEPS = 1000
RANDOM_DENOMINATOR = 10**6
MAX_MAGNITUDE = Fraction(1, 100)


@dataclass(frozen=True)
class InstanceSpec:
    kind: InstanceKind
    params: dict[str, Any] = field(default_factory=dict)
    provenance: str = ""

    def to_dict(self) -> dict[str, Any]:
        params = {
            k: (f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v)
            for k, v in sorted(self.params.items())
        }
        return {"kind": self.kind, "params": params, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> InstanceSpec:
        params = dict(data.get("params", {}))
        if "magnitude" in params:
            params["magnitude"] = Fraction(params["magnitude"])
        return cls(data["kind"], params, data.get("provenance", ""))


@dataclass
class Instance:
    """A generated exact point set and the spec that reproduces it."""

    spec: InstanceSpec
    points: list[Point]

    @property
    def n(self) -> int:
        return len(self.points)

    def graph(self) -> PennyGraph:
        return build_penny_graph(self.points)


# ── Lattice pieces ───────────────────────────────────────────────


def _lattice_point(i: int, j: int) -> Point:
    return Point(Scalar(Fraction(2 * i + j, 2)), Scalar(0, Fraction(j, 2)))


def gen_hex_lattice(k: int) -> Instance:
    """The centred hexagonal piece with ``3k² + 3k + 1`` triangular-lattice points."""
    if k < 0:
        raise GenerationError("ring count must be non-negative")
    points = [
        _lattice_point(i, j)
        for j in range(-k, k + 1)
        for i in range(-k, k + 1)
        if abs(i + j) <= k
    ]
    return Instance(InstanceSpec("hex_lattice", {"k": k}, "hexagonal lattice piece"), points)


def hex_lattice_edges(k: int) -> int:
    return 9 * k * k + 3 * k


def max_penny_edges(n: int) -> int:
    """``⌊3n − √(12n − 3)⌋``, the most edges a penny graph on ``n`` points can have."""
    m = 12 * n - 3
    root = math.isqrt(m)
    ceil_root = root if root * root == m else root + 1
    return 3 * n - ceil_root


# ── Perturbed and random sets ────────────────────────────────────


def gen_perturbed(
    k: int, magnitude: Fraction | str, seed: int, *, retries: int = 20
) -> Instance:
    """A lattice piece with independent rational offsets in ``[−magnitude, magnitude]``.

    Re-draws until the result is in general position; raises
    ``GenerationError`` after ``retries`` attempts.
    """
    magnitude = Fraction(magnitude)
    if not 0 < magnitude < MAX_MAGNITUDE:
        raise GenerationError(f"magnitude must satisfy 0 < magnitude < 1/100 (got {magnitude})")
    base = gen_hex_lattice(k).points
    rng = np.random.default_rng(seed)

    def offset() -> Fraction:
        step = int(rng.integers(-PERTURBATION_STEPS, PERTURBATION_STEPS + 1))
        return magnitude * Fraction(step, PERTURBATION_STEPS)

    spec = InstanceSpec(
        "perturbed",
        {"k": k, "magnitude": magnitude, "seed": seed},
        "perturbed hexagonal lattice piece",
    )
    for attempt in range(1, retries + 1):
        points = [Point(p.x + offset(), p.y + offset()) for p in base]
        if len(set(points)) == len(points) and check_general_position(points).holds:
            logger.debug("perturbed lattice k=%d accepted on attempt %d", k, attempt)
            return Instance(spec, points)
    raise GenerationError(f"no general-position perturbation after {retries} attempts")


def gen_random(n: int, seed: int, scale: int | None = None, *, retries: int = 20) -> Instance:
    """``n`` rational points drawn uniformly from ``[0, scale)²`` in general position."""
    if n < 2:
        raise GenerationError("a random instance needs at least two points")
    if scale is None:
        scale = math.isqrt(n) + 1
    rng = np.random.default_rng(seed)
    spec = InstanceSpec("random", {"n": n, "seed": seed, "scale": scale}, "uniform random points")
    for _ in range(retries):
        raw = rng.integers(0, scale * RANDOM_DENOMINATOR, size=(n, 2))
        points = [
            Point(Fraction(int(x), RANDOM_DENOMINATOR), Fraction(int(y), RANDOM_DENOMINATOR))
            for x, y in raw
        ]
        if len(set(points)) == n and check_general_position(points).holds:
            return Instance(spec, points)
    raise GenerationError(f"no general-position random set after {retries} attempts")


# ── Local search ─────────────────────────────────────────────────


def _directions() -> tuple[Point, ...]:
    """48 exact unit vectors: the twelve multiples of π/6 and three rational rotations of them."""
    base = [unit_vector(Fraction(k, 6)) for k in range(12)]
    turns = (
        (Fraction(3, 5), Fraction(4, 5)),
        (Fraction(3, 5), Fraction(-4, 5)),
        (Fraction(-7, 25), Fraction(24, 25)),
    )
    return tuple(base) + tuple(rotate(v, c, s) for c, s in turns for v in base)


DIRECTIONS = _directions()
DIRECTIONS_FLOAT = np.array([v.to_float() for v in DIRECTIONS])

DISTANCE_TOLERANCE = 1e-9
ANGLE_TOLERANCE = 1e-9


@dataclass
class DensifyResult:
    instance: Instance
    graph: PennyGraph
    density: Fraction
    trace: list[dict[str, Any]]
    iterations: int

    def references(self) -> dict[str, dict[str, Any]]:
        n = self.graph.n
        return {
            name: {
                "density": float(value),
                "edges": float(value * n),
                "gap": float(value - self.density),
            }
            for name, value in REFERENCE_DENSITIES.items()
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "spec": self.instance.spec.to_dict(),
            "n": self.graph.n,
            "edges": self.graph.e,
            "density": {"num": self.density.numerator, "den": self.density.denominator},
            "references": self.references(),
            "iterations": self.iterations,
            "trace": list(self.trace),
        }


class Annealer:
    """Simulated annealing over unit-distance placements in general position.

    A state is a set of points with pairwise distances at least 1 and no
    three collinear; its energy is minus the number of unit pairs.  A move
    re-places one point at unit distance from another along one of
    :data:`DIRECTIONS`.  The start is a greedy build that adds each point
    where it touches the most others.
    """

    iterations: int = 2000
    start_temperature: float = 1.0
    end_temperature: float = 0.02
    candidate_budget: int = 768
    trace_every: int = 100

    def __init__(self, **overrides: Any) -> None:
        for name, value in overrides.items():
            if value is None:
                continue
            if not hasattr(type(self), name):
                raise TypeError(f"unknown annealer setting {name!r}")
            setattr(self, name, value)
        self.points: list[Point] = []
        self.coords = np.zeros((0, 2))

    # ── State queries ───────────────────────────────────────────

    def _others(self, skip: int | None) -> np.ndarray:
        idx = np.arange(len(self.points))
        return idx if skip is None else idx[idx != skip]

    def _collinear(self, q: Point, qf: np.ndarray, others: np.ndarray) -> bool:
        if len(others) < 2:
            return False
        delta = self.coords[others] - qf
        angles = np.mod(np.arctan2(delta[:, 1], delta[:, 0]), np.pi)
        order = np.argsort(angles)
        sorted_angles = angles[order]
        clusters: list[list[int]] = [[int(order[0])]]
        for k in range(1, len(order)):
            if sorted_angles[k] - sorted_angles[k - 1] <= ANGLE_TOLERANCE:
                clusters[-1].append(int(order[k]))
            else:
                clusters.append([int(order[k])])
        if len(clusters) > 1 and np.pi - sorted_angles[-1] + sorted_angles[0] <= ANGLE_TOLERANCE:
            clusters[0].extend(clusters.pop())
        for cluster in clusters:
            for a in range(len(cluster)):
                for b in range(a + 1, len(cluster)):
                    p, r = self.points[others[cluster[a]]], self.points[others[cluster[b]]]
                    if orientation(q, p, r) == 0:
                        return True
        return False

    def _contacts(self, q: Point, qf: np.ndarray, skip: int | None) -> int | None:
        """Unit contacts of ``q``, or None if ``q`` is too close or collinear with two points."""
        others = self._others(skip)
        if not len(others):
            return 0
        d2 = np.sum((self.coords[others] - qf) ** 2, axis=1)
        if np.any(d2 < 1 - DISTANCE_TOLERANCE):
            return None
        count = 0
        for k in others[np.abs(d2 - 1) <= DISTANCE_TOLERANCE]:
            s = (dist_sq(q, self.points[k]) - 1).sign()
            if s < 0:
                return None
            count += s == 0
        if self._collinear(q, qf, others):
            return None
        return int(count)

    # ── Construction ────────────────────────────────────────────

    def _place(self, rng: np.random.Generator) -> None:
        k = len(self.points)
        if k == 0:
            self.points.append(Point(0, 0))
            self.coords = np.zeros((1, 2))
            return
        total = k * len(DIRECTIONS)
        if total > self.candidate_budget:
            chosen = rng.choice(total, size=self.candidate_budget, replace=False)
        else:
            chosen = np.arange(total)
        anchors, dirs = np.divmod(chosen, len(DIRECTIONS))
        cand = self.coords[anchors] + DIRECTIONS_FLOAT[dirs]
        d2 = np.sum((cand[:, None, :] - self.coords[None, :, :]) ** 2, axis=2)
        legal = np.all(d2 >= 1 - DISTANCE_TOLERANCE, axis=1)
        score = np.sum(np.abs(d2 - 1) <= DISTANCE_TOLERANCE, axis=1)
        tiebreak = rng.permutation(len(chosen))
        for c in np.lexsort((tiebreak, -score)):
            if not legal[c]:
                continue
            q = self.points[anchors[c]] + DIRECTIONS[dirs[c]]
            if self._contacts(q, cand[c], None) is not None:
                self.points.append(q)
                self.coords = np.vstack([self.coords, cand[c]])
                return
        raise GenerationError(f"no legal placement for point {k}")

    def _edge_count(self) -> int:
        total = 0
        for i in range(len(self.points)):
            total += self._contacts(self.points[i], self.coords[i], i) or 0
        return total // 2

    # ── Search ──────────────────────────────────────────────────

    def run(self, n: int, seed: int) -> DensifyResult:
        if n < 3:
            raise GenerationError("densify search needs at least three points")
        rng = np.random.default_rng(seed)
        self.points = []
        self.coords = np.zeros((0, 2))
        for _ in range(n):
            self._place(rng)

        edges = self._edge_count()
        best_edges, best_points = edges, list(self.points)
        trace: list[dict[str, Any]] = [{"iteration": 0, "edges": edges, "best": best_edges}]
        ratio = self.end_temperature / self.start_temperature

        for step in range(1, self.iterations + 1):
            temperature = self.start_temperature * ratio ** (step / self.iterations)
            i = int(rng.integers(n))
            j = int(rng.integers(n - 1))
            j += j >= i
            d = int(rng.integers(len(DIRECTIONS)))
            qf = self.coords[j] + DIRECTIONS_FLOAT[d]
            q = self.points[j] + DIRECTIONS[d]
            new = self._contacts(q, qf, i)
            if new is not None:
                old = self._contacts(self.points[i], self.coords[i], i) or 0
                delta = new - old
                if delta >= 0 or rng.random() < math.exp(delta / temperature):
                    self.points[i] = q
                    self.coords[i] = qf
                    edges += delta
                    if edges > best_edges:
                        best_edges, best_points = edges, list(self.points)
            if step % self.trace_every == 0:
                trace.append({"iteration": step, "edges": edges, "best": best_edges})
                logger.debug("annealing step %d: edges=%d best=%d T=%.4f", step, edges, best_edges, temperature)

        spec = InstanceSpec(
            "densified",
            {"n": n, "iterations": self.iterations, "seed": seed},
            "simulated annealing over unit placements",
        )
        instance = Instance(spec, best_points)
        graph = instance.graph()
        if graph.e != best_edges or not graph.general_position().holds:
            raise GenerationError("annealer state disagrees with the rebuilt penny graph")
        density = Fraction(graph.e, graph.n)
        if density > DENSITY_TARGETS["main"]:
            raise GenerationError(f"density {density} exceeds 43/18")
        logger.info("densify n=%d: %d edges, density %s", n, graph.e, density)
        return DensifyResult(instance, graph, density, trace, self.iterations)


def densify_search(
    n: int, iterations: int | None = None, seed: int = 0, **overrides: Any
) -> DensifyResult:
    return Annealer(iterations=iterations, **overrides).run(n, seed)


# ── Registry ─────────────────────────────────────────────────────


def fixture_instance(name: str) -> tuple[InstanceSpec, Fixture]:
    return InstanceSpec("fixture", {"name": name}, "declared-mode figure fixture"), load_fixture(name)


def regenerate(spec: InstanceSpec) -> Instance:
    """Rebuild the exact-mode instance described by ``spec``."""
    p = spec.params
    if spec.kind == "hex_lattice":
        return gen_hex_lattice(p["k"])
    if spec.kind == "perturbed":
        return gen_perturbed(p["k"], p["magnitude"], p["seed"])
    if spec.kind == "random":
        return gen_random(p["n"], p["seed"], p.get("scale"))
    if spec.kind == "densified":
        return densify_search(p["n"], p["iterations"], p["seed"]).instance
    raise GenerationError(f"cannot regenerate an instance of kind {spec.kind!r}")


__all__ = [
    "Annealer",
    "DensifyResult",
    "Instance",
    "InstanceSpec",
    "densify_search",
    "fixture_instance",
    "gen_hex_lattice",
    "gen_perturbed",
    "gen_random",
    "hex_lattice_edges",
    "load_fixture",
    "max_penny_edges",
    "regenerate",
]
