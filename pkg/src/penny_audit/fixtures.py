"""Declared-mode fixtures for the figure configurations and planted violations.

Coordinates are approximate and the edge list is asserted.  Vertices whose
degree matters but whose neighbourhood is otherwise irrelevant are padded
with short pendant edges; pendants only make their owner unpopular, so they
are never attached to a vertex whose popularity a fixture relies on.

Fixtures exercise detector code paths.  They are not claimed to be
realisable penny graphs, and checks such as ``path_angles`` may flag the
pendants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import GenerationError
from .graph import PennyGraph, build_declared_graph

PENDANT_LENGTH = 0.25
PENDANT_OFFSETS = (5.0, -30.0, 35.0)


@dataclass(frozen=True)
class Fixture:
    name: str
    labels: tuple[str, ...]
    coords: np.ndarray
    edges: tuple[tuple[int, int], ...]
    description: str = ""

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def point(self, label: str) -> tuple[float, float]:
        x, y = self.coords[self.index(label)]
        return float(x), float(y)

    def graph(self) -> PennyGraph:
        return build_declared_graph(self.coords, self.edges)


class _Sketch:
    """Incremental builder: named points, edges, polar placement and pendants."""

    def __init__(self) -> None:
        self.labels: list[str] = []
        self.coords: list[tuple[float, float]] = []
        self.edges: set[tuple[int, int]] = set()
        self._pendants = 0

    def at(self, label: str, x: float, y: float) -> str:
        if label in self.labels:
            raise GenerationError(f"duplicate fixture label {label!r}")
        self.labels.append(label)
        self.coords.append((x, y))
        return label

    def polar(self, label: str, origin: str, degrees: float, length: float = 1.0) -> str:
        ox, oy = self.coords[self.labels.index(origin)]
        theta = math.radians(degrees)
        self.at(label, ox + length * math.cos(theta), oy + length * math.sin(theta))
        self.join(origin, label)
        return label

    def join(self, *path: str) -> None:
        for u, v in zip(path, path[1:]):
            i, j = self.labels.index(u), self.labels.index(v)
            self.edges.add((min(i, j), max(i, j)))

    def cycle(self, *ring: str) -> None:
        self.join(*ring, ring[0])

    def neighbours(self, label: str) -> list[int]:
        k = self.labels.index(label)
        return [j if i == k else i for i, j in self.edges if k in (i, j)]

    def pad(self, owner: str, count: int) -> None:
        """Attach ``count`` pendants pointing away from the owner's current neighbours."""
        k = self.labels.index(owner)
        centre = np.mean([self.coords[j] for j in self.neighbours(owner)], axis=0)
        ox, oy = self.coords[k]
        heading = math.degrees(math.atan2(oy - centre[1], ox - centre[0]))
        for offset in PENDANT_OFFSETS[:count]:
            self._pendants += 1
            self.polar(f"p{self._pendants}", owner, heading + offset, PENDANT_LENGTH)

    def build(self, name: str, description: str) -> Fixture:
        return Fixture(
            name=name,
            labels=tuple(self.labels),
            coords=np.array(self.coords, dtype=float),
            edges=tuple(sorted(self.edges)),
            description=description,
        )


S3 = math.sqrt(3) / 2


def _apricot_sketch() -> _Sketch:
    s = _Sketch()
    s.at("L", 0.0, 0.0)
    s.at("R", 1.0, 0.0)
    s.at("U", 0.5, S3)
    s.at("D", 0.5, -S3)
    s.join("L", "U", "R", "D", "L")
    s.join("L", "R")
    s.polar("L1", "L", 210)
    s.polar("L2", "L", 150)
    s.polar("U1", "U", 150)
    s.polar("U2", "U", 90)
    s.polar("U3", "U", 30)
    s.polar("R1", "R", 30)
    s.polar("R2", "R", -30)
    s.polar("D1", "D", -30)
    s.polar("D2", "D", -90)
    s.polar("D3", "D", -150)
    s.cycle("L1", "L2", "U1", "U2", "U3", "R1", "R2", "D1", "D2", "D3")
    return s


def _apricot() -> Fixture:
    return _apricot_sketch().build("apricot", "kernel L, U, R, D with its 10-vertex apricot")


def _apricot_pendant() -> Fixture:
    s = _apricot_sketch()
    s.polar("X", "U2", 90)
    return s.build("apricot_pendant", "apricot whose U2 has degree 4")


def _mobius_loop() -> Fixture:
    s = _Sketch()
    s.at("X", 0.0, 0.0)
    s.at("Y", 0.5, S3)
    s.at("Z", 1.0, 0.0)
    s.cycle("X", "Y", "Z")
    s.polar("X1", "X", 270)
    s.polar("X2", "X", 210)
    s.polar("X3", "X", 150)
    s.polar("Y1", "Y", 150)
    s.polar("Y2", "Y", 90)
    s.polar("Y3", "Y", 30)
    s.polar("Z1", "Z", 30)
    s.polar("Z2", "Z", -30)
    s.polar("Z3", "Z", -90)
    s.cycle("X1", "X2", "X3", "Y1", "Y2", "Y3", "Z1", "Z2", "Z3")
    return s.build("mobius_loop", "triangle of degree-5 vertices with its 9-cycle of outer neighbours")


def _adjacent_deg5_no_common() -> Fixture:
    s = _Sketch()
    s.at("A", 0.0, 0.0)
    s.polar("B", "A", 0)
    for k, degrees in enumerate((72, 144, 216, 288), start=1):
        s.polar(f"A{k}", "A", degrees)
    for k, degrees in enumerate((108, 36, -36, -108), start=1):
        s.polar(f"B{k}", "B", degrees)
    return s.build("adjacent_deg5_no_common", "adjacent degree-5 vertices without a common neighbour")


def _overlapping_kernels() -> Fixture:
    s = _apricot_sketch()
    s.at("B", -2 * S3, 0.0)
    s.join("L1", "B", "L2")
    s.polar("B1", "B", 180)
    s.polar("B2", "B", 120)
    s.polar("B3", "B", 240)
    s.polar("L2x", "L2", 135)
    s.polar("L1x", "L1", 225)
    return s.build("overlapping_kernels", "second kernel L1, L, L2, B sharing L with the first")


def _popular_centre(s: _Sketch, a_degrees: float, others: dict[str, float]) -> None:
    s.at("B", 0.0, 0.0)
    s.polar("A", "B", a_degrees)
    for label, degrees in others.items():
        s.polar(label, "B", degrees)


def _type1() -> Fixture:
    s = _Sketch()
    _popular_centre(s, 90, {"C1": 20, "C2": -40, "C3": -140, "C4": 160})
    s.join("C1", "C2")
    s.join("C3", "C4")
    s.pad("A", 3)
    for c in ("C1", "C2", "C3", "C4"):
        s.pad(c, 3)
    return s.build("type1", "degree-4 A with no neighbour among the other four around popular B")


def _type2() -> Fixture:
    s = _Sketch()
    _popular_centre(s, -30, {"C1": -120, "C2": 180, "C3": 90, "C4": 30})
    s.join("C1", "C2")
    s.join("C3", "C4", "A")
    s.pad("A", 2)
    s.pad("C4", 2)
    for c in ("C1", "C2", "C3"):
        s.pad(c, 3)
    return s.build("type2", "A at the end of the three-vertex chain around popular B")


def _type3() -> Fixture:
    s = _Sketch()
    _popular_centre(s, 90, {"C5": 30, "C1": -50, "C2": -110, "C3": 150})
    s.join("C1", "C2")
    s.join("C3", "A", "C5")
    s.pad("A", 1)
    for c in ("C1", "C2", "C3", "C5"):
        s.pad(c, 3)
    return s.build("type3", "A in the middle of the three-vertex chain around popular B")


def _kifli() -> Fixture:
    """The 13 core points ``A``, ``B1``-``B4`` and ``C1``-``C8``, plus 24 pendants.

    Each ``C`` vertex carries three pendants so that it reaches degree 5
    without drawing the rest of the graph.
    """
    s = _Sketch()
    s.at("A", 0.0, 0.0)
    for label, degrees in (("B1", 150), ("B2", 30), ("B3", -45), ("B4", -135)):
        s.polar(label, "A", degrees)
    for label, degrees in (("C1", -110), ("C2", -170), ("C3", 110), ("C4", 50)):
        s.polar(label, "B1", degrees)
    for label, degrees in (("C5", 130), ("C6", 70), ("C7", -10), ("C8", -70)):
        s.polar(label, "B2", degrees)
    for u, v in (("C1", "C2"), ("C3", "C4"), ("C5", "C6"), ("C7", "C8")):
        s.join(u, v)
    for k in range(1, 9):
        s.pad(f"C{k}", 3)
    return s.build(
        "kifli", "two consecutive Type I edges at a degree-4 vertex (13 core points, 24 pendants)"
    )


def _clover() -> Fixture:
    s = _Sketch()
    s.at("A", 0.0, 0.0)
    s.at("B1", -S3, 0.5)
    s.at("B2", 0.0, 1.0)
    s.at("B3", S3, -0.5)
    s.at("B4", 0.0, -1.0)
    for b in ("B1", "B2", "B3", "B4"):
        s.join("A", b)
    s.join("B1", "B2")
    s.join("B3", "B4")
    s.at("X12", -S3, 1.5)
    s.join("B1", "X12", "B2")
    s.at("X34", S3, -1.5)
    s.join("B3", "X34", "B4")
    pairs = {"B1": (-100, -160), "B2": (70, 10), "B3": (80, 20), "B4": (-110, -170)}
    for b, (first, second) in pairs.items():
        p, q = s.polar(f"{b}p", b, first), s.polar(f"{b}q", b, second)
        s.join(p, q)
    for label in ("X12", "X34") + tuple(f"{b}{t}" for b in pairs for t in "pq"):
        s.pad(label, 3)
    return s.build("clover", "four Type II edges at a degree-4 vertex")


FIXTURES: dict[str, Callable[[], Fixture]] = {
    "apricot": _apricot,
    "apricot_pendant": _apricot_pendant,
    "mobius_loop": _mobius_loop,
    "adjacent_deg5_no_common": _adjacent_deg5_no_common,
    "overlapping_kernels": _overlapping_kernels,
    "type1": _type1,
    "type2": _type2,
    "type3": _type3,
    "kifli": _kifli,
    "clover": _clover,
}


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def load_fixture(name: str) -> Fixture:
    """Build the named fixture; raises ``GenerationError`` for unknown names."""
    try:
        factory = FIXTURES[name]
    except KeyError:
        raise GenerationError(
            f"unknown fixture {name!r} (known: {', '.join(fixture_names())})"
        ) from None
    return factory()
