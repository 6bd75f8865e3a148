"""Tests for penny_audit.graph — construction, general position, rotation system, faces."""

from fractions import Fraction

import numpy as np
import pytest

from penny_audit.audit import audit_basic
from penny_audit.exceptions import GeometryError
from penny_audit.generators import gen_hex_lattice, gen_random, max_penny_edges
from penny_audit.geometry import Point, Scalar
from penny_audit.graph import (
    GridIndex,
    brute_force_edges,
    build_declared_graph,
    build_penny_graph,
    check_general_position,
    check_general_position_float,
    edge_crossings,
    enumerate_faces,
)


class TestBuildPennyGraph:
    def test_triangle(self, triangle):
        assert triangle.n == 3
        assert triangle.e == 3
        assert triangle.d_min_sq == 1
        assert triangle.mode == "exact"
        assert sum(f.size for f in triangle.faces) == 2 * triangle.e

    def test_scaled_input_keeps_edges(self, triangle_points):
        scaled = [p.scale(Fraction(7, 3)) for p in triangle_points]
        g = build_penny_graph(scaled)
        assert g.e == 3
        assert g.d_min_sq == Fraction(49, 9)

    def test_sqrt3_distance(self):
        g = build_penny_graph([Point(0, 0), Point(0, Scalar.sqrt3()), Point(3, 0)])
        assert g.d_min_sq == 3
        assert g.edges == frozenset({(0, 1)})

    def test_too_few_points(self):
        with pytest.raises(GeometryError, match="degenerate input"):
            build_penny_graph([Point(0, 0)])

    def test_coincident_points(self):
        with pytest.raises(GeometryError, match="coincident points"):
            build_penny_graph([Point(0, 0), Point(1, 0), Point(0, 0)])

    @pytest.mark.parametrize("k, n, e", [(1, 7, 12), (2, 19, 42), (3, 37, 90)])
    def test_hex_lattice_edge_counts(self, k, n, e):
        g = gen_hex_lattice(k).graph()
        assert (g.n, g.e) == (n, e)
        assert g.e == max_penny_edges(n)

    def test_methods_agree_on_lattice(self):
        points = gen_hex_lattice(3).points
        a = build_penny_graph(points, method="all_pairs")
        b = build_penny_graph(points, method="grid")
        assert a.edges == b.edges
        assert a.d_min_sq == b.d_min_sq

    def test_random_sets_match_brute_force(self):
        for seed in range(200):
            n = 3 + seed % 10
            points = gen_random(n, seed).points
            d_min_sq, pairs = brute_force_edges(points)
            for method in ("all_pairs", "grid"):
                g = build_penny_graph(points, method=method)
                assert g.d_min_sq == d_min_sq, (seed, method)
                assert g.edges == pairs, (seed, method)
                assert sum(f.size for f in g.faces) == 2 * g.e, (seed, method)

    def test_no_crossings(self, hex2):
        assert edge_crossings(hex2) == []


class TestGeneralPosition:
    def test_triangle_holds(self, triangle):
        assert triangle.general_position().holds

    def test_lattice_fails(self, hex2):
        report = hex2.general_position()
        assert not report.holds
        assert all(hex2.orientation(*t) == 0 for t in report.collinear_triples)

    def test_collinear_triple_found_exactly(self):
        s = Scalar.sqrt3()
        points = [Point(0, 0), Point(1, s), Point(2, 2 * s), Point(5, 1)]
        assert check_general_position(points).collinear_triples == [(0, 1, 2)]

    def test_float_check(self):
        coords = [(0.0, 0.0), (1.0, 0.0), (2.0, 1e-12), (0.0, 1.0)]
        assert check_general_position_float(coords).collinear_triples == [(0, 1, 2)]

    def test_hex1_collinear_triples(self):
        # Points run row by row: 0, 1 below; 2, 3 (centre), 4 across; 5, 6 above.
        g = gen_hex_lattice(1).graph()
        report = g.general_position()
        assert len(report.collinear_triples) == 3
        assert report.collinear_triples == [(0, 3, 6), (1, 3, 5), (2, 3, 4)]

    def test_hex1_audit_witnesses(self):
        report = audit_basic(gen_hex_lattice(1).graph())
        assert report.hypotheses == "unmet: general position fails"
        degree = report.checks["max_degree"].violations
        assert [(v.witness, v.detail) for v in degree] == [((3,), "degree 6")]
        runs = report.checks["no_three_triangles"].violations
        assert [v.witness for v in runs] == [(3, 0)]


class TestRotationAndFaces:
    def test_clockwise_rotation(self, rhombus_points):
        g = build_penny_graph(rhombus_points)
        # Around the origin: east, then the lower vertex, then the upper one.
        assert g.cw_next(0, 1) == 3
        assert g.cw_next(0, 3) == 2
        assert g.cw_prev(0, 1) == 2

    def test_rhombus_faces(self, rhombus_points):
        g = build_penny_graph(rhombus_points)
        assert g.e == 5
        assert len(g.faces) == 3
        assert sum(f.is_triangle for f in g.faces) == 2
        assert sum(f.is_outer for f in g.faces) == 1
        assert g.euler_holds()
        assert sum(f.size for f in g.faces) == 2 * g.e

    def test_face_of_directed_edge(self, triangle):
        inner = triangle.face_of(0, 1)
        outer = triangle.face_of(1, 0)
        assert inner is not outer
        assert {inner.is_outer, outer.is_outer} == {True, False}

    def test_sector_faces_per_neighbour(self, hex2):
        centre = next(v for v in range(hex2.n) if hex2.degree(v) == 6)
        assert all(f.is_triangle for f in hex2.sector_faces(centre))

    def test_lattice_euler(self, hex2):
        assert hex2.euler_holds()
        assert sum(f.size for f in hex2.faces) == 2 * hex2.e
        # Every inner face of a lattice piece is a unit triangle.
        assert all(f.is_triangle for f in hex2.faces if not f.is_outer)

    def test_enumerate_faces(self, triangle):
        faces = enumerate_faces(triangle)
        assert len(faces) == 2
        assert sorted(f["outer"] for f in faces) == [False, True]
        assert all(f["size"] == 3 for f in faces)

    def test_disconnected_components(self):
        g = build_penny_graph([Point(0, 0), Point(1, 0), Point(5, 0), Point(6, 0)])
        assert len(g.components()) == 2
        assert g.euler_holds()

    def test_summary(self, triangle):
        summary = triangle.summary()
        assert summary["n"] == 3
        assert summary["e"] == 3
        assert summary["density"] == Fraction(1)
        assert summary["degree_histogram"] == {2: 3}
        assert summary["triangular_faces"] == 1
        assert summary["euler_holds"] is True
        assert summary["general_position"] is True


class TestDeclaredGraph:
    def test_edges_taken_from_declaration(self):
        g = build_declared_graph([(0, 0), (1, 0), (0.5, 0.8)], [(0, 1), (1, 2), (2, 0)])
        assert g.mode == "declared"
        assert g.e == 3
        assert g.points is None
        assert g.d_min_sq == 1

    def test_bad_edge_raises(self):
        with pytest.raises(GeometryError, match="not a pair of distinct vertices"):
            build_declared_graph([(0, 0), (1, 0)], [(0, 2)])

    def test_self_loop_raises(self):
        with pytest.raises(GeometryError):
            build_declared_graph([(0, 0), (1, 0)], [(1, 1)])

    def test_coincident_raises(self):
        with pytest.raises(GeometryError, match="coincident points"):
            build_declared_graph([(0, 0), (0, 0)], [])

    def test_compare_to_unit_uses_tolerance(self):
        g = build_declared_graph([(0, 0), (1 + 1e-12, 0), (3, 0)], [(0, 1)])
        assert g.compare_to_unit(0, 1) == 0
        assert g.compare_to_unit(0, 2) == 1


class TestGridIndex:
    def test_near_is_superset(self):
        coords = np.array([[0.0, 0.0], [0.9, 0.0], [5.0, 5.0]])
        index = GridIndex(coords, 1.0)
        near = index.near(coords[0], 1.0)
        assert 0 in near and 1 in near
        assert 2 not in near
