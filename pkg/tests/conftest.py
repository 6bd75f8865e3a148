"""Shared fixtures for penny-audit tests."""

from fractions import Fraction

import pytest

from penny_audit.fixtures import load_fixture
from penny_audit.generators import gen_hex_lattice
from penny_audit.geometry import Point, Scalar
from penny_audit.graph import build_penny_graph

HALF = Fraction(1, 2)
HALF_SQRT3 = Scalar(0, HALF)


@pytest.fixture
def triangle_points():
    return [Point(0, 0), Point(1, 0), Point(HALF, HALF_SQRT3)]


@pytest.fixture
def triangle(triangle_points):
    return build_penny_graph(triangle_points)


@pytest.fixture
def rhombus_points():
    """Two unit triangles sharing the edge from (0, 0) to (1, 0)."""
    return [Point(0, 0), Point(1, 0), Point(HALF, HALF_SQRT3), Point(HALF, -HALF_SQRT3)]


@pytest.fixture(scope="session")
def hex2():
    return gen_hex_lattice(2).graph()


@pytest.fixture
def fixture_graph():
    """Factory: the declared-mode graph of a named figure fixture, with its labels."""

    def build(name):
        fx = load_fixture(name)
        return fx, fx.graph()

    return build


@pytest.fixture
def triangle_document():
    def coord(num, den=1, rnum=0, rden=1):
        return {"num": num, "den": den, "rnum": rnum, "rden": rden}

    return {
        "mode": "exact",
        "points": [
            [coord(0), coord(0)],
            [coord(1), coord(0)],
            [coord(1, 2), coord(0, 1, 1, 2)],
        ],
    }
