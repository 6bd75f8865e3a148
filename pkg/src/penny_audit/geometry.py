"""Exact arithmetic in Q[√3] and the geometric predicates built on it.

Every coordinate of an exact-mode point set is a :class:`Scalar`
``a + b·√3`` with rational ``a`` and ``b``.  Signs are decided exactly;
square roots are never taken.  Floats appear only in :func:`to_float` and
the reporting helpers, never in a decision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Union

from .exceptions import DomainError

Rational = Union[int, Fraction]

SQRT3_FLOAT = math.sqrt(3.0)


def sign_parts(a: Rational, b: Rational) -> int:
    """Exact sign of ``a + b·√3`` for rationals (or integers) ``a`` and ``b``."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: whichever of a² and 3b² is larger wins
    lhs = a * a
    rhs = 3 * b * b
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


class Scalar:
    """An element ``a + b·√3`` of Q[√3].

    Components are :class:`fractions.Fraction`, so they are always in lowest
    terms with a positive denominator and ``(a, b)`` is a unique
    representation.  Instances are immutable and hashable.
    """

    __slots__ = ("a", "b")

    a: Fraction
    b: Fraction

    def __init__(self, a: Rational | str = 0, b: Rational | str = 0) -> None:
        object.__setattr__(self, "a", a if type(a) is Fraction else Fraction(a))
        object.__setattr__(self, "b", b if type(b) is Fraction else Fraction(b))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    @classmethod
    def sqrt3(cls) -> Scalar:
        return cls(0, 1)

    @classmethod
    def coerce(cls, value: Scalar | Rational) -> Scalar:
        return value if isinstance(value, Scalar) else cls(value)

    # ── Arithmetic ───────────────────────────────────────────────

    def __add__(self, other: Scalar | Rational) -> Scalar:
        if not isinstance(other, Scalar):
            return Scalar(self.a + other, self.b)
        return Scalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: Scalar | Rational) -> Scalar:
        if not isinstance(other, Scalar):
            return Scalar(self.a - other, self.b)
        return Scalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: Rational) -> Scalar:
        return Scalar(other - self.a, -self.b)

    def __neg__(self) -> Scalar:
        return Scalar(-self.a, -self.b)

    def __mul__(self, other: Scalar | Rational) -> Scalar:
        if not isinstance(other, Scalar):
            return Scalar(self.a * other, self.b * other)
        return Scalar(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm ``a² − 3b²`` (non-zero unless the scalar is zero)."""
        return self.a * self.a - 3 * self.b * self.b

    def __truediv__(self, other: Scalar | Rational) -> Scalar:
        if not isinstance(other, Scalar):
            if other == 0:
                raise ZeroDivisionError("division of Scalar by zero")
            return Scalar(self.a / other, self.b / other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division of Scalar by zero")
        return (self * other.conjugate()) / n

    # ── Comparison ───────────────────────────────────────────────

    def sign(self) -> int:
        return sign_parts(self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other: Scalar | Rational) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Scalar | Rational) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Scalar | Rational) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Scalar | Rational) -> bool:
        return (self - other).sign() >= 0

    # ── Conversion ───────────────────────────────────────────────

    def __float__(self) -> float:
        return to_float(self)

    def __repr__(self) -> str:
        return f"Scalar({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}√3"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}√3"


def scalar_sign(s: Scalar) -> int:
    """Exact sign of ``s`` in {-1, 0, +1}."""
    return sign_parts(s.a, s.b)


def to_float(s: Scalar) -> float:
    """Nearest-float rendering of ``s``, for reporting only.

    Each component converts with correct rounding; the sum adds at most one
    more rounding step.
    """
    return float(s.a) + float(s.b) * SQRT3_FLOAT


class Point:
    """A point of the plane with coordinates in Q[√3]."""

    __slots__ = ("x", "y")

    x: Scalar
    y: Scalar

    def __init__(self, x: Scalar | Rational, y: Scalar | Rational) -> None:
        object.__setattr__(self, "x", Scalar.coerce(x))
        object.__setattr__(self, "y", Scalar.coerce(y))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Point is immutable")

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def scale(self, factor: Scalar | Rational) -> Point:
        return Point(self.x * factor, self.y * factor)

    def mirror(self) -> Point:
        """Reflection across the vertical axis."""
        return Point(-self.x, self.y)

    def __iter__(self) -> Iterator[Scalar]:
        yield self.x
        yield self.y

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def to_float(self) -> tuple[float, float]:
        return (to_float(self.x), to_float(self.y))

    def __repr__(self) -> str:
        return f"Point({self.x!s}, {self.y!s})"


ORIGIN = Point(0, 0)


def cross(u: Point, v: Point) -> Scalar:
    """The exact cross product ``u × v`` of two vectors."""
    return u.x * v.y - u.y * v.x


def orientation(p: Point, q: Point, r: Point) -> int:
    """Exact sign of ``(q−p) × (r−p)``: +1 counter-clockwise, −1 clockwise, 0 collinear."""
    return scalar_sign(cross(q - p, r - p))


def dist_sq(p: Point, q: Point) -> Scalar:
    """Exact squared distance between ``p`` and ``q``."""
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Whether ``p`` lies in the closed convex hull of ``a``, ``b``, ``c``."""
    if orientation(a, b, c) == 0:
        return _on_collinear_hull(p, (a, b, c))
    o1 = orientation(a, b, p)
    o2 = orientation(b, c, p)
    o3 = orientation(c, a, p)
    has_neg = o1 < 0 or o2 < 0 or o3 < 0
    has_pos = o1 > 0 or o2 > 0 or o3 > 0
    return not (has_neg and has_pos)


def dot(u: Point, v: Point) -> Scalar:
    return u.x * v.x + u.y * v.y


def _on_collinear_hull(p: Point, pts: tuple[Point, ...]) -> bool:
    base = pts[0]
    direction = next((q - base for q in pts if q != base), None)
    if direction is None:
        return p == base
    if cross(direction, p - base).sign() != 0:
        return False
    projections = [dot(q - base, direction) for q in pts]
    t = dot(p - base, direction)
    return min(projections) <= t <= max(projections)


def _between(p: Point, a: Point, b: Point) -> bool:
    """For collinear ``p``, ``a``, ``b``: whether ``p`` lies on segment ``ab``."""
    d = b - a
    t = dot(p - a, d)
    return t.sign() >= 0 and (t - dot(d, d)).sign() <= 0


def in_convex_hull(p: Point, hull_points: tuple[Point, ...]) -> bool:
    """Whether ``p`` lies in the closed convex hull of up to four points.

    The hull of four points is the union of the triangles on its triples.
    """
    pts = tuple(hull_points)
    if len(pts) == 3:
        return in_closed_triangle(p, *pts)
    for skip in range(len(pts)):
        tri = pts[:skip] + pts[skip + 1:]
        if in_closed_triangle(p, *tri):
            return True
    return False


def segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Whether the open segments ``p1p2`` and ``q1q2`` intersect.

    Segments that only share an endpoint do not count.
    """
    if {p1, p2} & {q1, q2}:
        return False
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _between(p1, q1, q2):
        return True
    if d2 == 0 and _between(p2, q1, q2):
        return True
    if d3 == 0 and _between(q1, p1, p2):
        return True
    if d4 == 0 and _between(q2, p1, p2):
        return True
    return False


# ── Float helpers (reporting and declared mode) ──────────────────


def clockwise_angle(a: tuple[float, float], b: tuple[float, float], c: tuple[float, float]) -> float:
    """The angle ∠ABC measured clockwise from ray BA to ray BC, in ``[0, 2π)``.

    Accepts float pairs or :class:`Point` instances.
    """
    ax, ay = _as_float_pair(a)
    bx, by = _as_float_pair(b)
    cx, cy = _as_float_pair(c)
    start = math.atan2(ay - by, ax - bx)
    end = math.atan2(cy - by, cx - bx)
    angle = (start - end) % (2 * math.pi)
    return angle


def unsigned_angle(a: tuple[float, float], b: tuple[float, float], c: tuple[float, float]) -> float:
    """The (non-oriented) angle at ``b`` between rays BA and BC, in ``[0, π]``."""
    angle = clockwise_angle(a, b, c)
    return min(angle, 2 * math.pi - angle)


def _as_float_pair(p: tuple[float, float] | Point) -> tuple[float, float]:
    if isinstance(p, Point):
        return p.to_float()
    return (float(p[0]), float(p[1]))


# ── Exact unit vectors ───────────────────────────────────────────

_HALF = Fraction(1, 2)

# cos and sin of k·π/6 for k = 0..11, as (rational, √3-coefficient) pairs.
_TWELFTHS: tuple[tuple[Scalar, Scalar], ...] = (
    (Scalar(1), Scalar(0)),
    (Scalar(0, _HALF), Scalar(_HALF)),
    (Scalar(_HALF), Scalar(0, _HALF)),
    (Scalar(0), Scalar(1)),
    (Scalar(-_HALF), Scalar(0, _HALF)),
    (Scalar(0, -_HALF), Scalar(_HALF)),
    (Scalar(-1), Scalar(0)),
    (Scalar(0, -_HALF), Scalar(-_HALF)),
    (Scalar(-_HALF), Scalar(0, -_HALF)),
    (Scalar(0), Scalar(-1)),
    (Scalar(_HALF), Scalar(0, -_HALF)),
    (Scalar(0, _HALF), Scalar(-_HALF)),
)


def unit_vector(turns: Fraction | int) -> Point:
    """The exact unit vector at angle ``turns·π``.

    ``turns`` must be a multiple of 1/6; other angles are not in Q[√3]
    by this construction.
    """
    k = Fraction(turns) * 6
    if k.denominator != 1:
        raise DomainError(f"angle {turns}·π is not a multiple of π/6")
    cos, sin = _TWELFTHS[int(k) % 12]
    return Point(cos, sin)


def rotate(v: Point, cos: Scalar | Rational, sin: Scalar | Rational) -> Point:
    """Rotate ``v`` counter-clockwise by the angle with the given exact cosine and sine."""
    return Point(v.x * cos - v.y * sin, v.x * sin + v.y * cos)
