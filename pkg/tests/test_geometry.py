"""Tests for penny_audit.geometry — Q[√3] arithmetic and exact predicates."""

import math
from fractions import Fraction

import gmpy2
import numpy as np
import pytest

from penny_audit.exceptions import DomainError
from penny_audit.geometry import (
    Point,
    Scalar,
    clockwise_angle,
    cross,
    dist_sq,
    in_convex_hull,
    orientation,
    rotate,
    scalar_sign,
    segments_cross,
    sign_parts,
    to_float,
    unit_vector,
    unsigned_angle,
)

SQRT3 = Scalar.sqrt3()


class TestScalar:
    def test_components_are_fractions(self):
        s = Scalar(1, "1/2")
        assert s.a == Fraction(1)
        assert s.b == Fraction(1, 2)

    def test_sqrt3_squared_is_three(self):
        assert SQRT3 * SQRT3 == 3

    def test_mixed_arithmetic(self):
        s = Scalar(1, 1)
        assert s + 1 == Scalar(2, 1)
        assert 1 - s == Scalar(0, -1)
        assert 2 * s == Scalar(2, 2)

    def test_division_by_conjugate(self):
        s = Scalar(2, 1)
        assert s / s == 1
        assert Scalar(1) / s == Scalar(2, -1)

    def test_division_by_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            Scalar(1) / Scalar(0)

    def test_norm(self):
        assert Scalar(2, 1).norm() == 1

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Scalar(1).a = Fraction(2)

    def test_hash_matches_equality(self):
        assert len({Scalar(1, 0), Scalar(Fraction(2, 2))}) == 1

    def test_str(self):
        assert str(Scalar(1, -2)) == "1 - 2√3"
        assert str(Scalar(0, 1)) == "1√3"

    def test_float(self):
        assert float(Scalar(1, 1)) == pytest.approx(1 + math.sqrt(3))


class TestSign:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (0, 0, 0),
            (1, 0, 1),
            (0, -1, -1),
            (2, -1, 1),  # 2 > √3
            (-2, 1, -1),
            (7, -4, 1),  # 49 > 48
            (-7, 4, -1),
            (Fraction(1, 2), Fraction(-1, 2), -1),
        ],
    )
    def test_sign_parts(self, a, b, expected):
        assert sign_parts(Fraction(a), Fraction(b)) == expected

    def test_scalar_sign_opposite_parts(self):
        assert scalar_sign(Scalar(2, -1)) == 1
        assert scalar_sign(Scalar(-2, "7/6")) == 1
        assert scalar_sign(Scalar(-2, "8/7")) == -1
        assert scalar_sign(Scalar(0, 0)) == 0

    def test_ordering_close_values(self):
        # 97/56 is a convergent of √3 from above.
        assert SQRT3 < Fraction(97, 56)
        assert SQRT3 > Fraction(1351, 780) - Fraction(1, 10**6)

    def test_to_float_is_close(self):
        assert to_float(Scalar(Fraction(1, 3), 2)) == pytest.approx(1 / 3 + 2 * math.sqrt(3))


class TestPredicates:
    def test_orientation_signs(self):
        p, q = Point(0, 0), Point(1, 0)
        assert orientation(p, q, Point(0, 1)) == 1
        assert orientation(p, q, Point(0, -1)) == -1
        assert orientation(p, q, Point(5, 0)) == 0

    def test_orientation_exact_with_sqrt3(self):
        p = Point(0, 0)
        q = Point(1, SQRT3)
        assert orientation(p, q, Point(2, 2 * SQRT3)) == 0
        assert orientation(p, q, Point(2, Fraction(3466, 1000))) == 1
        assert orientation(p, q, Point(2, Fraction(3464, 1000))) == -1

    def test_dist_sq_of_triangle_side(self, triangle_points):
        a, b, c = triangle_points
        assert dist_sq(a, b) == dist_sq(b, c) == dist_sq(a, c) == 1

    def test_cross(self):
        assert cross(Point(1, 0), Point(0, 1)) == 1

    def test_convex_hull(self, rhombus_points):
        hull = tuple(rhombus_points)
        assert in_convex_hull(Point(Fraction(1, 2), 0), hull)
        assert in_convex_hull(Point(0, 0), hull)
        assert not in_convex_hull(Point(2, 0), hull)

    def test_segments_cross(self):
        assert segments_cross(Point(0, 0), Point(2, 2), Point(0, 2), Point(2, 0))
        assert not segments_cross(Point(0, 0), Point(1, 0), Point(1, 0), Point(2, 1))
        assert not segments_cross(Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1))

    def test_touching_interior_counts(self):
        assert segments_cross(Point(0, 0), Point(2, 0), Point(1, 0), Point(1, 1))


class TestAngles:
    def test_clockwise_quarter(self):
        assert clockwise_angle((0, 1), (0, 0), (1, 0)) == pytest.approx(math.pi / 2)
        assert clockwise_angle((1, 0), (0, 0), (0, 1)) == pytest.approx(3 * math.pi / 2)

    @pytest.mark.parametrize(
        "a, c", [((1, 0), (0, 1)), ((1, 2), (-3, 1)), ((0.3, -0.7), (-1, -1))]
    )
    def test_reversed_angles_sum_to_full_turn(self, a, c):
        b = (0.1, 0.2)
        assert clockwise_angle(a, b, c) + clockwise_angle(c, b, a) == pytest.approx(2 * math.pi)

    def test_unsigned(self):
        assert unsigned_angle((1, 0), (0, 0), (0, -1)) == pytest.approx(math.pi / 2)

    def test_accepts_points(self, triangle_points):
        a, b, c = triangle_points
        assert unsigned_angle(b, a, c) == pytest.approx(math.pi / 3)


class TestUnitVectors:
    @pytest.mark.parametrize("k", range(12))
    def test_unit_length(self, k):
        v = unit_vector(Fraction(k, 6))
        assert dist_sq(Point(0, 0), v) == 1

    def test_direction(self):
        v = unit_vector(Fraction(1, 3))
        assert v == Point(Fraction(1, 2), Scalar(0, Fraction(1, 2)))

    def test_non_twelfth_raises(self):
        with pytest.raises(DomainError, match="multiple of π/6"):
            unit_vector(Fraction(1, 5))

    def test_rotate_by_sixty_degrees(self):
        c = unit_vector(Fraction(1, 3))
        assert rotate(Point(1, 0), c.x, c.y) == c

    def test_mirror(self):
        assert Point(1, 2).mirror() == Point(-1, 2)


def _random_fraction(rng, bound=1000):
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def _random_scalar(rng):
    return Scalar(_random_fraction(rng), _random_fraction(rng))


def _random_point(rng):
    return Point(_random_scalar(rng), _random_scalar(rng))


def _reference_sign(s):
    """Sign of a + b·√3 evaluated with 256-bit MPFR."""
    with gmpy2.context(precision=256):
        a = gmpy2.mpq(s.a.numerator, s.a.denominator)
        b = gmpy2.mpq(s.b.numerator, s.b.denominator)
        value = gmpy2.mpfr(a) + gmpy2.mpfr(b) * gmpy2.sqrt(gmpy2.mpfr(3))
    return int(value > 0) - int(value < 0)


class TestRandomSign:
    def test_agrees_with_high_precision(self):
        rng = np.random.default_rng(20261018)
        for _ in range(10_000):
            s = _random_scalar(rng)
            assert scalar_sign(s) == _reference_sign(s), s

    @pytest.mark.parametrize(
        "p, q", [(2, 1), (7, 4), (26, 15), (97, 56), (1351, 780), (18817, 10864)]
    )
    def test_agrees_near_cancellation(self, p, q):
        # p/q are convergents of √3, so p - q·√3 is tiny but non-zero.
        for s in (Scalar(p, -q), Scalar(-p, q), Scalar(Fraction(p, 3), Fraction(-q, 3))):
            assert scalar_sign(s) == _reference_sign(s) != 0

    def test_zero_parts(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            f = _random_fraction(rng)
            assert scalar_sign(Scalar(f, 0)) == (f > 0) - (f < 0)
            assert scalar_sign(Scalar(0, f)) == (f > 0) - (f < 0)


class TestRandomPredicates:
    @pytest.fixture
    def triples(self):
        rng = np.random.default_rng(7)
        return [tuple(_random_point(rng) for _ in range(3)) for _ in range(500)]

    def test_orientation_antisymmetric(self, triples):
        for p, q, r in triples:
            assert orientation(p, q, r) == -orientation(q, p, r)
            assert orientation(p, q, r) == -orientation(p, r, q)

    def test_orientation_cyclic(self, triples):
        for p, q, r in triples:
            assert orientation(p, q, r) == orientation(q, r, p) == orientation(r, p, q)

    def test_orientation_of_repeated_point_is_zero(self, triples):
        for p, q, _ in triples:
            assert orientation(p, q, p) == 0
            assert orientation(p, p, q) == 0

    def test_orientation_of_collinear_points_is_zero(self, triples):
        for p, q, _ in triples:
            midpoint = (p + q).scale(Fraction(1, 2))
            assert orientation(p, midpoint, q) == 0

    def test_dist_sq_symmetric(self, triples):
        for p, q, _ in triples:
            assert dist_sq(p, q) == dist_sq(q, p)

    def test_dist_sq_zero_only_for_equal_points(self, triples):
        for p, q, _ in triples:
            assert dist_sq(p, p) == 0
            assert (dist_sq(p, q) == 0) == (p == q)
            if p != q:
                assert scalar_sign(dist_sq(p, q)) == 1

    def test_dist_sq_zero_for_rebuilt_point(self, triples):
        for p, _, _ in triples[:50]:
            copy = Point(Scalar(p.x.a, p.x.b), Scalar(p.y.a, p.y.b))
            assert dist_sq(p, copy) == 0
