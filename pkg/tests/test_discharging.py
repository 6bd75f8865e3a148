"""Tests for penny_audit.discharging — exact charges, transfers and the density verdict."""

import math
from fractions import Fraction

import numpy as np
import pytest

from penny_audit.audit import enumerate_kernels
from penny_audit.discharging import (
    NOT_APPLICABLE,
    balanced_q,
    density_target,
    initial_charges,
    run_discharging,
    verify_density_bound,
)
from penny_audit.exceptions import HypothesesUnmet
from penny_audit.fixtures import load_fixture
from penny_audit.generators import gen_perturbed
from penny_audit.graph import build_declared_graph


@pytest.fixture
def star():
    """A degree-5 centre with five leaves on a regular pentagon."""
    coords = [(0.0, 0.0)] + [
        (math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)) for k in range(5)
    ]
    return build_declared_graph(coords, [(0, k) for k in range(1, 6)])


def lifted(name, seed=0):
    """A figure fixture with its lattice collinearities broken by a tiny seeded jitter."""
    fx = load_fixture(name)
    rng = np.random.default_rng(seed)
    coords = fx.coords + rng.uniform(-1e-4, 1e-4, fx.coords.shape)
    return fx, build_declared_graph(coords, fx.edges)


class TestBalancing:
    def test_weak(self):
        assert balanced_q(4) == Fraction(1, 5)
        assert density_target(Fraction(1, 5)) == Fraction(12, 5)

    def test_main(self):
        assert balanced_q(Fraction(7, 2)) == Fraction(2, 9)
        assert density_target(Fraction(2, 9)) == Fraction(43, 18)


class TestLedger:
    def test_initial_charges(self, triangle):
        ledger = initial_charges(triangle)
        assert ledger.initial == {0: 3, 1: 3, 2: 3}
        assert ledger.totals[0] == 5 * triangle.n - 2 * triangle.e

    def test_triangle_has_no_transfers(self, triangle):
        ledger = run_discharging(triangle)
        assert ledger.transfers == []
        assert ledger.min_final == 3
        assert ledger.conserved

    def test_weak_star(self, star):
        ledger = run_discharging(star, "weak")
        assert ledger.q == Fraction(1, 5)
        assert len(ledger.transfers) == 5
        assert all(t.stage == 1 and t.target == 0 for t in ledger.transfers)
        assert ledger.final[0] == 1
        assert ledger.final[1] == Fraction(19, 5)
        assert ledger.conserved

    def test_main_star_halves_shared_gifts(self, star):
        ledger = run_discharging(star, "main")
        assert ledger.q == Fraction(2, 9)
        assert ledger.final[0] == Fraction(5, 9)

    def test_custom_q(self, star):
        ledger = run_discharging(star, "weak", q=Fraction(1, 10))
        assert ledger.final[0] == Fraction(1, 2)

    def test_summary_is_exact(self, star):
        summary = run_discharging(star, "weak").summary()
        assert summary["min_final"] == {"num": 1, "den": 1}
        assert summary["total_final"] == {"num": 20, "den": 1}
        assert summary["negative_vertices"] == []

    def test_refuses_without_general_position(self, hex2):
        with pytest.raises(HypothesesUnmet, match="general position"):
            run_discharging(hex2)


class TestStageTwo:
    @pytest.fixture(params=[("apricot", 0), ("apricot", 11), ("apricot_pendant", 5)])
    def kernel_graph(self, request):
        name, seed = request.param
        fx, g = lifted(name, seed)
        assert not fx.graph().general_position().holds
        assert g.general_position().holds
        return fx, g

    @pytest.mark.parametrize("variant", ["main", "weak"])
    def test_outside_kernels_untouched(self, kernel_graph, variant):
        _, g = kernel_graph
        ledger = run_discharging(g, variant)
        inside = {v for k in enumerate_kernels(g) for v in k.vertices}
        assert inside
        for v in range(g.n):
            if v not in inside:
                assert ledger.final[v] == ledger.after_stage1[v], v
        stage2 = [t for t in ledger.transfers if t.stage == 2]
        assert stage2
        assert all(t.source in inside and t.target in inside for t in stage2)
        assert ledger.conserved

    @pytest.mark.parametrize("variant", ["main", "weak"])
    def test_kernel_total_split_evenly(self, kernel_graph, variant):
        _, g = kernel_graph
        ledger = run_discharging(g, variant)
        kernels = enumerate_kernels(g)
        assert len(kernels) == 1
        members = kernels[0].vertices
        total = sum(ledger.after_stage1[v] for v in members)
        assert {ledger.final[v] for v in members} == {total / 4}

    def test_apricot_charges(self, kernel_graph):
        fx, g = kernel_graph
        ledger = run_discharging(g, "main")
        for label in ("L", "U", "R", "D"):
            assert ledger.final[fx.index(label)] == Fraction(5, 9)
        # Each ring vertex sends 2/9 to its kernel neighbour and keeps the rest.
        assert ledger.final[fx.index("L1")] == Fraction(16, 9)
        assert ledger.final[fx.index("U1")] == Fraction(16, 9)
        assert ledger.min_final == Fraction(5, 9)

    def test_weak_apricot_charges(self, kernel_graph):
        fx, g = kernel_graph
        ledger = run_discharging(g, "weak")
        assert ledger.final[fx.index("L")] == ledger.final[fx.index("U")] == Fraction(1, 2)

    def test_overlapping_kernels_leave_outside_untouched(self):
        _, g = lifted("overlapping_kernels", seed=3)
        ledger = run_discharging(g, "main")
        kernels = enumerate_kernels(g)
        assert len(kernels) == 2
        inside = set().union(*(k.vertices for k in kernels))
        for v in set(range(g.n)) - inside:
            assert ledger.final[v] == ledger.after_stage1[v], v
        before = sum(ledger.after_stage1[v] for v in inside)
        assert sum(ledger.final[v] for v in inside) == before


class TestDensityVerdict:
    def test_star_passes(self, star):
        verdict = verify_density_bound(star, run_discharging(star, "weak"))
        assert verdict.passed
        assert verdict.density == Fraction(5, 6)
        assert verdict.target == Fraction(12, 5)
        assert verdict.implied_bound == 2

    def test_ledger_computed_when_missing(self, triangle):
        verdict = verify_density_bound(triangle)
        assert verdict.variant == "main"
        assert verdict.passed

    def test_lattice_not_applicable(self, hex2):
        verdict = verify_density_bound(hex2, variant="main")
        assert verdict.verdict == NOT_APPLICABLE
        assert not verdict.applicable
        assert verdict.density == Fraction(42, 19)
        assert verdict.to_dict()["density"] == {"num": 42, "den": 19}

    @pytest.mark.parametrize("variant", ["weak", "main"])
    def test_perturbed_lattice(self, variant):
        g = gen_perturbed(2, Fraction(1, 1000), seed=3).graph()
        verdict = verify_density_bound(g, run_discharging(g, variant))
        assert verdict.passed
        assert verdict.min_final >= verdict.q
