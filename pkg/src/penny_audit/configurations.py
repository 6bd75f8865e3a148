"""Coordinates of the two forbidden configurations after their normalising rotations.

The 13-point configuration is fixed by two rotation angles ``x, y`` and the
19-point one by a single angle ``x``; both lie in ``[π/3, 2π/3]``.  The
float builders take radians.  :func:`kifli_configuration_exact` takes the
angles in turns of π and returns points of Q[√3], so it accepts only
multiples of π/6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .certificates import clover_phi
from .geometry import Point, Scalar, dist_sq, unit_vector, unsigned_angle
from .graph import PennyGraph, build_declared_graph

KIFLI_EDGES: tuple[tuple[str, str], ...] = (
    ("A", "B1"), ("A", "B2"), ("A", "B3"), ("A", "B4"),
    ("B3", "B4"),
    ("B1", "C1"), ("B1", "C2"), ("B1", "C3"), ("B1", "C4"),
    ("C1", "C2"), ("C2", "C3"), ("C3", "C4"),
    ("B2", "C5"), ("B2", "C6"), ("B2", "C7"), ("B2", "C8"),
    ("C5", "C6"), ("C6", "C7"), ("C7", "C8"),
    ("C1", "B4"), ("C8", "B3"),
)  # fmt: skip

_CLOVER_LEFT_EDGES: tuple[tuple[str, str], ...] = (
    ("B1", "C1"), ("B1", "C2"), ("C1", "C2"),
    ("C1", "D1"), ("C1", "D2"), ("C1", "D3"), ("D1", "D2"), ("D2", "D3"),
    ("D3", "C2"), ("C2", "D4"), ("D4", "C3"), ("D4", "D5"),
    ("D1", "B4"),
)  # fmt: skip

# Mirror image labels across the vertical axis.
_CLOVER_MIRROR = {
    "A": "A", "B1": "B2", "B4": "B3", "C1": "C5", "C2": "C4", "C3": "C3",
    "D1": "D9", "D2": "D8", "D3": "D7", "D4": "D6", "D5": "D5",
}  # fmt: skip

CLOVER_EDGES: tuple[tuple[str, str], ...] = (
    ("A", "B1"), ("A", "B2"), ("A", "B3"), ("A", "B4"),
    ("B1", "B2"), ("B1", "C3"), ("B2", "C3"), ("C3", "D5"),
) + _CLOVER_LEFT_EDGES + tuple(
    (_CLOVER_MIRROR[u], _CLOVER_MIRROR[v]) for u, v in _CLOVER_LEFT_EDGES
)  # fmt: skip


@dataclass
class Configuration:
    """Labelled float points with the unit edges the configuration asserts."""

    points: dict[str, np.ndarray]
    edges: tuple[tuple[str, str], ...]
    labels: list[str] = field(init=False)

    def __post_init__(self) -> None:
        self.labels = list(self.points)

    def __getitem__(self, label: str) -> np.ndarray:
        return self.points[label]

    def dist(self, u: str, v: str) -> float:
        return float(np.linalg.norm(self.points[u] - self.points[v]))

    def dist_sq(self, u: str, v: str) -> float:
        d = self.points[u] - self.points[v]
        return float(d @ d)

    def angle(self, u: str, centre: str, v: str) -> float:
        """Unsigned angle at ``centre`` between the rays towards ``u`` and ``v``."""
        return unsigned_angle(
            tuple(self.points[u]), tuple(self.points[centre]), tuple(self.points[v])
        )

    def edge_lengths(self) -> dict[tuple[str, str], float]:
        return {(u, v): self.dist(u, v) for u, v in self.edges}

    def graph(self) -> PennyGraph:
        index = {label: k for k, label in enumerate(self.labels)}
        coords = [self.points[label] for label in self.labels]
        return build_declared_graph(coords, [(index[u], index[v]) for u, v in self.edges])


@dataclass
class ExactConfiguration:
    points: dict[str, Point]
    edges: tuple[tuple[str, str], ...]

    def __getitem__(self, label: str) -> Point:
        return self.points[label]

    def dist_sq(self, u: str, v: str) -> Scalar:
        return dist_sq(self.points[u], self.points[v])

    def unit_edges_hold(self) -> bool:
        return all(self.dist_sq(u, v) == 1 for u, v in self.edges)


def _e(theta: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta)])


def _kifli_layout(e, x, y, third) -> dict:
    """Shared construction; ``e`` maps an angle to a unit vector."""
    b1 = e(-x)
    b2 = e(third + y)
    pts = {
        "A": e(0) - e(0),
        "B1": b1,
        "B2": b2,
        "B3": e(third),
        "B4": e(0),
        "C1": b1 + e(0),
        "C2": b1 + e(-third),
        "C3": b1 + e(-2 * third),
        "C4": b1 + e(3 * third),
        "C5": b2 + e(4 * third),
        "C6": b2 + e(3 * third),
        "C7": b2 + e(2 * third),
        "C8": b2 + e(third),
    }
    return pts


def kifli_configuration(x: float, y: float) -> Configuration:
    """The 13-point configuration with ``B4`` on the positive x-axis."""
    return Configuration(_kifli_layout(_e, x, y, math.pi / 3), KIFLI_EDGES)


def kifli_configuration_exact(x_turns: Fraction, y_turns: Fraction) -> ExactConfiguration:
    """Exact counterpart of :func:`kifli_configuration` for angles ``x_turns·π``, ``y_turns·π``."""
    pts = _kifli_layout(unit_vector, Fraction(x_turns), Fraction(y_turns), Fraction(1, 3))
    return ExactConfiguration(pts, KIFLI_EDGES)


def _clover_left(x: float) -> dict[str, np.ndarray]:
    third = math.pi / 3
    b1 = np.array([-0.5, math.sqrt(3) / 2])
    c3 = np.array([0.0, math.sqrt(3)])
    c1 = b1 + _e(2 * third + x)
    c2 = b1 + _e(third + x)
    phi = clover_phi(x)
    return {
        "B1": b1,
        "C1": c1,
        "C2": c2,
        "C3": c3,
        "D1": c1 + _e(x + math.pi),
        "D2": c1 + _e(x + 2 * third),
        "D3": c1 + _e(x + third),
        "D4": c2 + c3 - b1,
        "D5": c3 + _e(x),
        "B4": np.array([-math.cos(phi), -math.sin(phi)]),
    }


def clover_configuration(x: float) -> Configuration:
    """The 19-point configuration, symmetric halves built at ``x`` and ``π − x``."""
    left = _clover_left(x)
    right = _clover_left(math.pi - x)
    pts: dict[str, np.ndarray] = {"A": np.zeros(2)}
    pts.update(left)
    for label, p in right.items():
        mirrored = _CLOVER_MIRROR[label]
        if mirrored != label:
            pts[mirrored] = np.array([-p[0], p[1]])
    order = ["A", "B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4", "C5"]
    order += [f"D{k}" for k in range(1, 10)]
    return Configuration({label: pts[label] for label in order}, CLOVER_EDGES)


def configuration_summary(config: Configuration | ExactConfiguration) -> Mapping[str, object]:
    if isinstance(config, ExactConfiguration):
        return {label: [str(c) for c in p] for label, p in config.points.items()}
    return {label: [float(c) for c in p] for label, p in config.points.items()}
