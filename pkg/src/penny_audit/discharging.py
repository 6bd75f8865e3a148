"""Discharging with exact rational charges.

Each vertex starts with charge ``5 − deg``.  Stage 1 moves charge from
low-degree vertices to their degree-5 neighbours; stage 2 evens out the
charge inside each kernel.  The sum of charges is ``5n − 2e`` throughout, so
a lower bound ``m`` on every final charge gives ``e/n ≤ (5 − m)/2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .audit import KernelRecord, enumerate_kernels
from .exceptions import HypothesesUnmet
from .graph import PennyGraph
from .types import Q_PRESETS, Variant

logger = logging.getLogger(__name__)

NOT_APPLICABLE = "not applicable: general position fails"


def _fraction_json(value: Fraction) -> dict[str, int]:
    return {"num": value.numerator, "den": value.denominator}


@dataclass(frozen=True)
class Transfer:
    source: int
    target: int
    amount: Fraction
    stage: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "from": self.source,
            "to": self.target,
            "amount": _fraction_json(self.amount),
            "stage": self.stage,
        }


@dataclass
class ChargeLedger:
    """Per-vertex charges after each stage, with every transfer in order."""

    initial: dict[int, Fraction]
    after_stage1: dict[int, Fraction] = field(default_factory=dict)
    final: dict[int, Fraction] = field(default_factory=dict)
    transfers: list[Transfer] = field(default_factory=list)
    variant: Variant | None = None
    q: Fraction | None = None

    @property
    def totals(self) -> tuple[Fraction, Fraction, Fraction]:
        return (
            sum(self.initial.values(), Fraction(0)),
            sum(self.after_stage1.values(), Fraction(0)),
            sum(self.final.values(), Fraction(0)),
        )

    @property
    def conserved(self) -> bool:
        first, second, third = self.totals
        return first == second == third

    @property
    def min_final(self) -> Fraction | None:
        return min(self.final.values()) if self.final else None

    def negative_vertices(self) -> list[int]:
        return sorted(v for v, ch in self.final.items() if ch < 0)

    def summary(self) -> dict[str, Any]:
        first, second, third = self.totals
        lowest = self.min_final
        return {
            "variant": self.variant,
            "q": _fraction_json(self.q) if self.q is not None else None,
            "total_initial": _fraction_json(first),
            "total_after_stage1": _fraction_json(second),
            "total_final": _fraction_json(third),
            "conserved": self.conserved,
            "min_final": _fraction_json(lowest) if lowest is not None else None,
            "negative_vertices": self.negative_vertices(),
            "transfers": len(self.transfers),
        }

    def to_dict(self) -> dict[str, Any]:
        data = self.summary()
        data["final"] = {str(v): _fraction_json(ch) for v, ch in sorted(self.final.items())}
        data["transfer_log"] = [t.to_dict() for t in self.transfers]
        return data


def initial_charges(g: PennyGraph) -> ChargeLedger:
    charges = {v: Fraction(5 - g.degree(v)) for v in range(g.n)}
    return ChargeLedger(initial=charges, after_stage1=dict(charges), final=dict(charges))


def balanced_q(max_gift: Fraction | int) -> Fraction:
    """The gift ``q`` solving ``1 − max_gift·q = q``.

    ``max_gift = 4`` gives ``1/5``; ``max_gift = 7/2`` gives ``2/9``.
    """
    return 1 / (1 + Fraction(max_gift))


def density_target(q: Fraction) -> Fraction:
    return (5 - q) / 2


def _stage1_amount(
    g: PennyGraph, variant: Variant, q: Fraction, a: int, b: int, kernel_vertices: frozenset[int]
) -> Fraction:
    if variant == "weak":
        return q
    if b in kernel_vertices:
        return q
    others = [u for u in g.neighbors(b) if u != a and g.degree(u) <= 4]
    return q if not others else q / 2


def run_discharging(
    g: PennyGraph,
    variant: Variant = "main",
    *,
    q: Fraction | None = None,
    kernels: list[KernelRecord] | None = None,
) -> ChargeLedger:
    """Run both stages of the chosen procedure and return the ledger.

    Raises ``HypothesesUnmet`` when the points are not in general position.
    """
    if not g.general_position().holds:
        logger.warning("discharging refused: general position fails")
        raise HypothesesUnmet()
    if q is None:
        q = Q_PRESETS[variant]
    q = Fraction(q)
    if kernels is None:
        kernels = enumerate_kernels(g)
    kernel_vertices = frozenset(v for k in kernels for v in k.vertices)

    ledger = initial_charges(g)
    ledger.variant = variant
    ledger.q = q
    charge = dict(ledger.initial)

    for a in range(g.n):
        if g.degree(a) > 4:
            continue
        for b in g.neighbors(a):
            if g.degree(b) != 5:
                continue
            amount = _stage1_amount(g, variant, q, a, b, kernel_vertices)
            charge[a] -= amount
            charge[b] += amount
            ledger.transfers.append(Transfer(a, b, amount, 1))
    ledger.after_stage1 = dict(charge)

    for k in sorted(kernels, key=lambda rec: sorted(rec.vertices)):
        members = sorted(k.vertices)
        snapshot = {v: charge[v] for v in members}
        for v in members:
            share = snapshot[v] / 4
            if share == 0:
                continue
            for u in members:
                if u == v:
                    continue
                charge[v] -= share
                charge[u] += share
                ledger.transfers.append(Transfer(v, u, share, 2))
    ledger.final = dict(charge)

    logger.info(
        "discharging %s (q=%s): min final charge %s over %d vertices",
        variant,
        q,
        ledger.min_final,
        g.n,
    )
    if ledger.negative_vertices():
        logger.warning("negative final charge at %d vertices", len(ledger.negative_vertices()))
    return ledger


@dataclass(frozen=True)
class DensityVerdict:
    variant: Variant
    q: Fraction
    density: Fraction
    target: Fraction
    min_final: Fraction | None
    conserved: bool
    total_matches: bool
    implied_bound: Fraction | None
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def applicable(self) -> bool:
        return self.verdict != NOT_APPLICABLE

    def to_dict(self) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "q": _fraction_json(self.q),
            "density": _fraction_json(self.density),
            "target": _fraction_json(self.target),
            "min_final": _fraction_json(self.min_final) if self.min_final is not None else None,
            "conserved": self.conserved,
            "total_matches": self.total_matches,
            "implied_bound": (
                _fraction_json(self.implied_bound) if self.implied_bound is not None else None
            ),
            "verdict": self.verdict,
        }


def verify_density_bound(
    g: PennyGraph,
    ledger: ChargeLedger | None = None,
    variant: Variant | None = None,
) -> DensityVerdict:
    """Check the final charges of ``ledger`` and the density bound they imply.

    Without general position the verdict is ``"not applicable"`` and no
    ledger is needed.  A missing ledger is otherwise computed here.
    """
    if variant is None:
        variant = ledger.variant if ledger is not None and ledger.variant else "main"
    q = ledger.q if ledger is not None and ledger.q is not None else Q_PRESETS[variant]
    target = density_target(q)
    density = g.density

    if not g.general_position().holds:
        return DensityVerdict(
            variant, q, density, target, None, False, False, None, NOT_APPLICABLE
        )
    if ledger is None:
        ledger = run_discharging(g, variant, q=q)

    lowest = ledger.min_final
    total_matches = ledger.totals[0] == 5 * g.n - 2 * g.e
    implied = density_target(lowest) if lowest is not None else None
    ok = (
        lowest is not None
        and lowest >= q
        and ledger.conserved
        and total_matches
        and density <= target
        and implied is not None
        and density <= implied
    )
    verdict = "pass" if ok else "fail"
    if not ok:
        logger.warning("density verdict fail: e/n=%s target=%s min=%s", density, target, lowest)
    return DensityVerdict(
        variant, q, density, target, lowest, ledger.conserved, total_matches, implied, verdict
    )
