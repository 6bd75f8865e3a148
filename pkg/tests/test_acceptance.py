"""Acceptance sweeps over generated general-position instances.

Every instance must satisfy both density bounds with exact charges and
pass every structural check.  The sweeps take minutes; run them with
``pytest -m slow``.
"""

from fractions import Fraction

import numpy as np
import pytest

from penny_audit.audit import run_full_audit
from penny_audit.certificates import kifli_dist_sq, kifli_dist_sq_dy
from penny_audit.discharging import run_discharging, verify_density_bound
from penny_audit.generators import densify_search, gen_perturbed, gen_random

PERTURBED = [("perturbed", k, seed) for k in range(1, 9) for seed in range(6)]
RANDOM = [("random", n, seed) for seed, n in enumerate(range(10, 500, 12))]
DENSIFIED = [("densify", n, seed) for seed, n in enumerate(range(12, 72, 5))]
INSTANCES = PERTURBED + RANDOM + DENSIFIED


def _graph(kind, size, seed):
    if kind == "perturbed":
        return gen_perturbed(size, Fraction(1, 1000), seed).graph()
    if kind == "random":
        return gen_random(size, seed).graph()
    return densify_search(size, iterations=400, seed=seed).graph


def test_sweep_is_large_enough():
    assert len(INSTANCES) >= 100


@pytest.mark.slow
@pytest.mark.parametrize("kind, size, seed", INSTANCES)
def test_instance(kind, size, seed):
    g = _graph(kind, size, seed)
    assert g.general_position().holds
    assert Fraction(g.e, g.n) <= Fraction(43, 18)

    for variant, q in (("main", Fraction(2, 9)), ("weak", Fraction(1, 5))):
        ledger = run_discharging(g, variant)
        assert ledger.conserved
        assert ledger.min_final >= q, (variant, ledger.negative_vertices())
        assert verify_density_bound(g, ledger).passed

    report = run_full_audit(g)
    failing = {name: c.violations[:3] for name, c in report.checks.items() if c.violations}
    assert report.passed, failing


def test_kifli_derivative_at_random_points():
    rng = np.random.default_rng(0)
    lo, hi = np.pi / 3, 2 * np.pi / 3
    x = rng.uniform(lo, hi, 1000)
    y = rng.uniform(lo + 1e-5, hi - 1e-5, 1000)
    h = 1e-6
    numeric = (kifli_dist_sq(x, y + h) - kifli_dist_sq(x, y - h)) / (2 * h)
    assert np.max(np.abs(kifli_dist_sq_dy(x, y) - numeric)) <= 1e-6
