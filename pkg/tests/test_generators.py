"""Tests for penny_audit.generators — lattice pieces, random sets and the densify search."""

from fractions import Fraction

import pytest

from penny_audit.exceptions import GenerationError
from penny_audit.generators import (
    DIRECTIONS,
    MAX_MAGNITUDE,
    Annealer,
    InstanceSpec,
    densify_search,
    fixture_instance,
    gen_hex_lattice,
    gen_perturbed,
    gen_random,
    hex_lattice_edges,
    max_penny_edges,
    regenerate,
)
from penny_audit.geometry import Point, dist_sq
from penny_audit.types import DENSITY_TARGETS, REFERENCE_DENSITIES


class TestHexLattice:
    @pytest.mark.parametrize("k", range(5))
    def test_point_count(self, k):
        assert gen_hex_lattice(k).n == 3 * k * k + 3 * k + 1

    @pytest.mark.parametrize("k", range(1, 6))
    def test_edges_meet_the_maximum(self, k):
        n = 3 * k * k + 3 * k + 1
        assert hex_lattice_edges(k) == max_penny_edges(n)

    def test_negative_rings(self):
        with pytest.raises(GenerationError, match="non-negative"):
            gen_hex_lattice(-1)

    def test_spec(self):
        assert gen_hex_lattice(2).spec.to_dict() == {
            "kind": "hex_lattice",
            "params": {"k": 2},
            "provenance": "hexagonal lattice piece",
        }


class TestMaxPennyEdges:
    @pytest.mark.parametrize("n, e", [(2, 1), (3, 3), (4, 5), (7, 12), (19, 42)])
    def test_small_values(self, n, e):
        assert max_penny_edges(n) == e


class TestPerturbed:
    def test_reproducible(self):
        a = gen_perturbed(2, "1/1000", seed=5)
        b = gen_perturbed(2, Fraction(1, 1000), seed=5)
        assert a.points == b.points

    def test_seed_changes_points(self):
        assert gen_perturbed(1, "1/1000", seed=1).points != gen_perturbed(1, "1/1000", seed=2).points

    def test_offsets_are_bounded_and_rational(self):
        magnitude = Fraction(1, 500)
        base = gen_hex_lattice(2).points
        moved = gen_perturbed(2, magnitude, seed=0).points
        for p, q in zip(base, moved):
            for before, after in ((p.x, q.x), (p.y, q.y)):
                shift = after - before
                assert shift.b == 0
                assert abs(shift.a) <= magnitude

    def test_general_position(self):
        assert gen_perturbed(2, "1/1000", seed=7).graph().general_position().holds

    @pytest.mark.parametrize("magnitude", [Fraction(0), MAX_MAGNITUDE, Fraction(1, 10)])
    def test_magnitude_bounds(self, magnitude):
        with pytest.raises(GenerationError, match="magnitude"):
            gen_perturbed(1, magnitude, seed=0)


class TestRandom:
    def test_points_inside_square(self):
        inst = gen_random(20, seed=4)
        scale = inst.spec.params["scale"]
        assert inst.n == 20
        assert scale == 5
        for p in inst.points:
            assert 0 <= p.x < scale and 0 <= p.y < scale

    def test_explicit_scale(self):
        inst = gen_random(5, seed=1, scale=2)
        assert all(p.x < 2 and p.y < 2 for p in inst.points)

    def test_reproducible(self):
        assert gen_random(10, seed=3).points == gen_random(10, seed=3).points

    def test_needs_two_points(self):
        with pytest.raises(GenerationError, match="at least two"):
            gen_random(1, seed=0)


class TestSpecs:
    def test_from_dict_restores_fraction(self):
        spec = gen_perturbed(1, "1/1000", seed=2).spec
        data = spec.to_dict()
        assert data["params"]["magnitude"] == "1/1000"
        assert InstanceSpec.from_dict(data) == spec

    @pytest.mark.parametrize(
        "instance",
        [gen_hex_lattice(1), gen_perturbed(1, "1/1000", seed=9), gen_random(6, seed=2)],
        ids=["hex", "perturbed", "random"],
    )
    def test_regenerate(self, instance):
        assert regenerate(instance.spec).points == instance.points

    def test_fixture_specs_do_not_regenerate(self):
        spec, fx = fixture_instance("apricot")
        assert spec.params == {"name": "apricot"}
        assert fx.name == "apricot"
        with pytest.raises(GenerationError, match="cannot regenerate"):
            regenerate(spec)


class TestDensify:
    def test_directions_are_unit(self):
        assert len(DIRECTIONS) == 48
        origin = Point(0, 0)
        assert all(dist_sq(origin, v) == 1 for v in DIRECTIONS)

    def test_result_is_a_general_position_penny_graph(self):
        result = densify_search(12, iterations=200, seed=1)
        g = result.graph
        assert g.n == 12
        assert g.e >= 11
        assert g.general_position().holds
        assert result.density == Fraction(g.e, g.n)
        assert result.density <= DENSITY_TARGETS["main"]

    def test_trace_and_summary(self):
        result = densify_search(10, iterations=300, seed=2)
        assert result.trace[0]["iteration"] == 0
        bests = [row["best"] for row in result.trace]
        assert bests == sorted(bests)
        assert bests[-1] == result.graph.e
        data = result.to_dict()
        assert data["spec"]["kind"] == "densified"
        assert set(data["references"]) == set(REFERENCE_DENSITIES)

    def test_reproducible(self):
        a = densify_search(9, iterations=100, seed=3)
        b = densify_search(9, iterations=100, seed=3)
        assert a.instance.points == b.instance.points

    def test_too_few_points(self):
        with pytest.raises(GenerationError, match="at least three"):
            densify_search(2)

    def test_unknown_setting(self):
        with pytest.raises(TypeError, match="unknown annealer setting"):
            Annealer(temperature=3)

    @pytest.mark.slow
    def test_default_run(self):
        result = densify_search(30, seed=0)
        assert result.graph.e >= 29
        assert result.density <= DENSITY_TARGETS["main"]
