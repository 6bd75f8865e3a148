"""Analytic inequalities behind the two forbidden configurations.

Both closed forms are written once over a small arithmetic backend and
evaluated with floats, numpy arrays or rigorous intervals:

* the squared distance ``|C4C5|²`` of the 13-point configuration as a
  function of two rotation angles ``x, y ∈ [π/3, 2π/3]``, and
* the angle ``∠B3AB4`` of the 19-point configuration as a function of one
  angle ``x ∈ [π/3, 2π/3]``.

The certifiers prove, with outward-rounded intervals, that the first never
exceeds 1 and the second stays below π/3 strictly inside the domain.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import gmpy2
import numpy as np

from .exceptions import DomainError
from .interval import Interval
from .types import INTERVAL_PRECISION, Verdict

logger = logging.getLogger(__name__)

PI = math.pi
PI_3 = math.pi / 3
FLOAT_DOMAIN_SLACK = 1e-12
INTERVAL_DOMAIN_SLACK = 1e-9


# ── Arithmetic backends ──────────────────────────────────────────


@dataclass(frozen=True)
class Backend:
    name: str
    pi: Any
    sqrt3: Any
    sin: Callable[[Any], Any]
    cos: Callable[[Any], Any]
    atan: Callable[[Any], Any]
    sqrt: Callable[[Any], Any]
    clip: Callable[[Any, float, float], Any]
    # arccos(r/2) for r = √(4 − w), written to stay accurate as w → 0.
    half_angle: Callable[[Any, Any], Any]


FLOAT_OPS = Backend(
    name="float",
    pi=math.pi,
    sqrt3=math.sqrt(3),
    sin=math.sin,
    cos=math.cos,
    atan=math.atan,
    sqrt=math.sqrt,
    clip=lambda v, lo, hi: min(max(v, lo), hi),
    half_angle=lambda w, r: math.atan2(math.sqrt(w), r),
)

NUMPY_OPS = Backend(
    name="numpy",
    pi=np.pi,
    sqrt3=np.sqrt(3.0),
    sin=np.sin,
    cos=np.cos,
    atan=np.arctan,
    sqrt=np.sqrt,
    clip=np.clip,
    half_angle=lambda w, r: np.arctan2(np.sqrt(w), r),
)

INTERVAL_OPS = Backend(
    name="interval",
    pi=Interval.pi(),
    sqrt3=Interval(3).sqrt(),
    sin=lambda v: v.sin(),
    cos=lambda v: v.cos(),
    atan=lambda v: v.atan(),
    sqrt=lambda v: v.sqrt(),
    clip=lambda v, lo, hi: v.clip(lo, hi),
    half_angle=lambda w, r: (r / 2).clip(0, 1).acos(),
)


def _backend(value: Any) -> Backend:
    if isinstance(value, Interval):
        return INTERVAL_OPS
    if isinstance(value, np.ndarray):
        return NUMPY_OPS
    return FLOAT_OPS


def _third() -> Interval:
    return Interval.pi() / 3


def _two_thirds() -> Interval:
    return Interval.pi() * 2 / 3


def _corner_limit() -> gmpy2.mpfr:
    """Largest upper end of ``y + x/2`` on a grid box: π rounded outward."""
    corner = Interval.pi() * Fraction(2, 3)
    return (corner + corner / 2).hi


def _check_domain(value: Any, name: str) -> Any:
    """Return ``value`` in the backend's number type, or raise ``DomainError``."""
    if isinstance(value, Interval):
        lo, hi = float(value.lo), float(value.hi)
        slack = INTERVAL_DOMAIN_SLACK
    elif isinstance(value, np.ndarray):
        value = value.astype(float)
        lo, hi = float(value.min()), float(value.max())
        slack = FLOAT_DOMAIN_SLACK
    else:
        value = float(value)
        lo = hi = value
        slack = FLOAT_DOMAIN_SLACK
    if lo < PI_3 - slack or hi > 2 * PI_3 + slack:
        raise DomainError(f"{name} must lie in [π/3, 2π/3] (got [{lo}, {hi}])")
    return value


# ── 13-point configuration ───────────────────────────────────────


def _kifli(x: Any, y: Any, o: Backend) -> Any:
    p = o.pi
    return 3 - 2 * o.sin(x + p / 6) - 2 * o.sin(y + p / 6) - 2 * o.cos(x + y + p / 3)


def _kifli_dy(x: Any, y: Any, o: Backend) -> Any:
    return -4 * o.sin(x / 2 - o.pi / 6) * o.sin(y + x / 2)


def kifli_dist_sq(x: Any, y: Any) -> Any:
    """``|C4C5|²`` at rotation angles ``x, y``; float, numpy or interval."""
    x = _check_domain(x, "x")
    y = _check_domain(y, "y")
    return _kifli(x, y, _backend(x))


def kifli_dist_sq_dy(x: Any, y: Any) -> Any:
    """Partial derivative of :func:`kifli_dist_sq` in ``y``."""
    x = _check_domain(x, "x")
    y = _check_domain(y, "y")
    return _kifli_dy(x, y, _backend(x))


# ── 19-point configuration ───────────────────────────────────────


def _clover_ab(t: Any, o: Backend) -> tuple[Any, Any]:
    s = t + o.pi / 3
    a = -0.5 - o.sqrt3 * o.sin(s)
    b = o.sqrt3 / 2 + o.sqrt3 * o.cos(s)
    return a, b


def _clover_w(offset: Any, o: Backend) -> Any:
    # a² + b² = 4 − w with w = 2√3·sin(t − π/3), taken from the offset directly.
    return o.clip(2 * o.sqrt3 * o.sin(offset), 0, 3)


def _clover_phi(t: Any, offset: Any, o: Backend) -> Any:
    a, b = _clover_ab(t, o)
    w = _clover_w(offset, o)
    r = o.sqrt(4 - w)
    return o.atan(b / a) + o.half_angle(w, r)


def _clover_phi_prime(t: Any, offset: Any, o: Backend) -> Any:
    s = t + o.pi / 3
    a, b = _clover_ab(t, o)
    da = -o.sqrt3 * o.cos(s)
    db = -o.sqrt3 * o.sin(s)
    w = _clover_w(offset, o)
    r = o.sqrt(4 - w)
    dr2 = -2 * o.sqrt3 * o.cos(offset)
    return (a * db - b * da) / (4 - w) - dr2 / (2 * r * o.sqrt(w))


def _clover_angle(x: Any, left: Any, right: Any, o: Backend) -> Any:
    """``π − φ(π − x) − φ(x)`` with ``left = x − π/3`` and ``right = 2π/3 − x``."""
    return o.pi - _clover_phi(o.pi - x, right, o) - _clover_phi(x, left, o)


def _clover_angle_prime(x: Any, left: Any, right: Any, o: Backend) -> Any:
    return _clover_phi_prime(o.pi - x, right, o) - _clover_phi_prime(x, left, o)


def _offsets(x: Any, o: Backend) -> tuple[Any, Any]:
    if o is INTERVAL_OPS:
        return x - _third(), _two_thirds() - x
    return x - PI_3, 2 * PI_3 - x


@dataclass(frozen=True)
class CloverValues:
    a: Any
    b: Any
    phi: Any
    angle: Any


def clover_functions(x: Any) -> CloverValues:
    """Coordinates ``(a, b)`` of ``D1``, the angle ``φ`` and ``∠B3AB4`` at ``x``."""
    x = _check_domain(x, "x")
    o = _backend(x)
    left, right = _offsets(x, o)
    a, b = _clover_ab(x, o)
    return CloverValues(a, b, _clover_phi(x, left, o), _clover_angle(x, left, right, o))


def clover_phi(t: Any) -> Any:
    """Direction angle of ``B4`` below the negative x-axis at parameter ``t``."""
    t = _check_domain(t, "t")
    o = _backend(t)
    left, _ = _offsets(t, o)
    return _clover_phi(t, left, o)


def clover_angle(x: Any) -> Any:
    x = _check_domain(x, "x")
    o = _backend(x)
    left, right = _offsets(x, o)
    return _clover_angle(x, left, right, o)


def clover_angle_prime(x: Any) -> Any:
    """Derivative of :func:`clover_angle`; unbounded at both ends of the domain."""
    x = _check_domain(x, "x")
    o = _backend(x)
    left, right = _offsets(x, o)
    return _clover_angle_prime(x, left, right, o)


def emit_angle_plot(samples: int) -> np.ndarray:
    """``samples`` evenly spaced rows ``(x, angle(x))`` over ``[π/3, 2π/3]``."""
    if samples < 2:
        raise DomainError("at least two samples are needed")
    f = np.linspace(0.0, 1.0, samples)
    left = PI_3 * f
    right = PI_3 * (1.0 - f)
    x = PI_3 + left
    return np.column_stack([x, _clover_angle(x, left, right, NUMPY_OPS)])


# ── Certificates ─────────────────────────────────────────────────


def _fraction_json(value: Fraction) -> dict[str, int]:
    return {"num": value.numerator, "den": value.denominator}


@dataclass
class KifliCertificate:
    grid: int
    max_depth: int
    verdict: Verdict = "inconclusive"
    boxes_checked: int = 0
    interior_max: Interval | None = None
    boundary: list[Interval] = field(default_factory=list)
    failed_box: tuple[Interval, Interval] | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        lowest = min(self.boundary, key=lambda e: e.lo) if self.boundary else None
        highest = max(self.boundary, key=lambda e: e.hi) if self.boundary else None
        return {
            "kind": "kifli",
            "grid": self.grid,
            "max_depth": self.max_depth,
            "verdict": self.verdict,
            "boxes_checked": self.boxes_checked,
            "interior_max": self.interior_max.to_json() if self.interior_max else None,
            "boundary_samples": len(self.boundary),
            "boundary_lowest": lowest.to_json() if lowest else None,
            "boundary_highest": highest.to_json() if highest else None,
            "failed_box": (
                [self.failed_box[0].to_json(), self.failed_box[1].to_json()]
                if self.failed_box
                else None
            ),
            "reason": self.reason,
        }


class KifliCertifier:
    """Prove ``|C4C5|² ≤ 1`` on the domain with equality only where ``y = π/3``.

    The derivative in ``y`` is shown negative on every grid box; boxes on the
    edge ``x = π/3`` and at the corner ``(2π/3, 2π/3)``, where it vanishes,
    are settled by the signs of its two sine factors.
    """

    grid: int = 64
    max_depth: int = 6
    boundary_samples: int = 33
    boundary_width: float = 1e-10

    def __init__(
        self,
        *,
        grid: int | None = None,
        max_depth: int | None = None,
        boundary_samples: int | None = None,
    ) -> None:
        if grid is not None:
            self.grid = grid
        if max_depth is not None:
            self.max_depth = max_depth
        if boundary_samples is not None:
            self.boundary_samples = boundary_samples
        if self.grid < 8:
            raise DomainError("grid must be at least 8")

    def _decide(self, x: Interval, y: Interval, depth: int) -> tuple[str, int, tuple | None]:
        o = INTERVAL_OPS
        third, two_thirds = _third(), _two_thirds()
        half_pi = o.pi / 2
        arg1 = x / 2 - o.pi / 6
        arg2 = y + x / 2
        f1 = arg1.sin()
        f2 = arg2.sin()
        dy = -4 * f1 * f2
        if dy.is_negative():
            return "pass", 1, None
        on_edge = x.lo <= third.hi
        if on_edge and f2.is_positive() and arg1.lo > (-half_pi).hi and arg1.hi < half_pi.lo:
            return "pass", 1, None
        at_corner = x.hi >= two_thirds.lo and y.hi >= two_thirds.lo
        # sin is non-negative on [π/2, π]; past π the box has left the domain.
        below_pi = arg2.lo > half_pi.hi and arg2.hi <= _corner_limit()
        if at_corner and f1.is_positive() and below_pi:
            return "pass", 1, None
        if dy.is_positive():
            return "fail", 1, (x, y)
        if depth >= self.max_depth:
            return "inconclusive", 1, (x, y)
        if on_edge:
            parts = [(xs, y) for xs in x.split()]
        else:
            parts = [(xs, ys) for xs in x.split() for ys in y.split()]
        count = 1
        for xs, ys in parts:
            status, n, box = self._decide(xs, ys, depth + 1)
            count += n
            if status != "pass":
                return status, count, box
        return "pass", count, None

    def certify(self) -> KifliCertificate:
        cert = KifliCertificate(grid=self.grid, max_depth=self.max_depth)
        pi = Interval.pi()
        n = self.grid
        nodes = [pi * Fraction(n + i, 3 * n) for i in range(n + 1)]

        for i in range(n):
            x = Interval.between(nodes[i], nodes[i + 1])
            for j in range(n):
                y = Interval.between(nodes[j], nodes[j + 1])
                status, count, box = self._decide(x, y, 0)
                cert.boxes_checked += count
                if status != "pass":
                    cert.verdict = "fail" if status == "fail" else "inconclusive"
                    cert.failed_box = box
                    cert.reason = f"derivative sign undecided on box ({i}, {j})"
                    logger.warning("kifli certificate %s: %s", cert.verdict, cert.reason)
                    return cert
        logger.debug("kifli derivative sign settled on %d boxes", cert.boxes_checked)

        third = pi / 3
        m = self.boundary_samples
        for k in range(m):
            t = pi * Fraction(m - 1 + k, 3 * (m - 1))
            for value in (_kifli(third, t, INTERVAL_OPS), _kifli(t, third, INTERVAL_OPS)):
                cert.boundary.append(value)
                if not value.contains(1) or float(value.width()) > self.boundary_width:
                    cert.reason = f"boundary enclosure {value!r} does not pin the value 1"
                    logger.warning("kifli certificate inconclusive: %s", cert.reason)
                    return cert

        highest: Interval | None = None
        for i in range(1, n):
            for j in range(1, n):
                value = _kifli(nodes[i], nodes[j], INTERVAL_OPS)
                highest = value if highest is None or value.hi > highest.hi else highest
        cert.interior_max = highest
        if highest is not None and not highest.hi < 1:
            cert.verdict = "fail" if highest.lo > 1 else "inconclusive"
            cert.reason = "interior sample reaches 1"
            return cert

        cert.verdict = "pass"
        logger.info("kifli certificate: pass (grid=%d, boxes=%d)", n, cert.boxes_checked)
        return cert


def certify_kifli(grid: int = KifliCertifier.grid, **overrides: Any) -> KifliCertificate:
    return KifliCertifier(grid=grid, **overrides).certify()


@dataclass
class CloverCertificate:
    eps: Fraction
    delta: Fraction
    grid: int | None = None
    min_grid: int | None = None
    derivative_bound: Interval | None = None
    verdict: Verdict = "inconclusive"
    failed_step: str | None = None
    steps: dict[str, str] = field(default_factory=dict)
    endpoints: dict[str, Interval] = field(default_factory=dict)
    margins: dict[str, Interval] = field(default_factory=dict)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "clover",
            "eps": _fraction_json(self.eps),
            "delta": _fraction_json(self.delta),
            "grid": self.grid,
            "min_grid": self.min_grid,
            "derivative_bound": (
                self.derivative_bound.to_json() if self.derivative_bound else None
            ),
            "verdict": self.verdict,
            "failed_step": self.failed_step,
            "steps": dict(self.steps),
            "endpoints": {k: v.to_json() for k, v in self.endpoints.items()},
            "margins": {k: v.to_json() for k, v in self.margins.items()},
            "reason": self.reason,
        }


EPS_CANDIDATES = (0.25, 0.2, 0.15, 0.1, 0.05, 0.02)


def tune_clover(
    candidates: tuple[float, ...] = EPS_CANDIDATES,
    *,
    samples: int = 2001,
    margin: float = 1e-6,
) -> tuple[Fraction, Fraction]:
    """Propose ``(ε, δ)`` from a float sweep; the certificate re-checks them.

    ``ε`` is the first candidate on which the derivative is clearly negative
    over ``(π/3, π/3 + ε]``; ``δ`` is half the gap between ``π/3`` and the
    angle at ``π/3 + ε``.
    """
    for eps in candidates:
        f = np.linspace(0.0, 1.0, samples)[1:]
        left = eps * f
        x = PI_3 + left
        slope = _clover_angle_prime(x, left, PI_3 - left, NUMPY_OPS)
        if not np.all(slope < -margin):
            continue
        gap = PI_3 - _clover_angle(PI_3 + eps, eps, PI_3 - eps, FLOAT_OPS)
        if gap <= 0:
            continue
        chosen = (Fraction(eps).limit_denominator(1000), Fraction(gap / 2).limit_denominator(10**6))
        logger.info("tuned clover parameters: eps=%s delta=%s", *chosen)
        return chosen
    raise DomainError("no candidate ε passes the float sweep")


class CloverCertifier:
    """Prove ``angle(x) < π/3`` for ``x`` strictly between ``π/3`` and ``2π/3``.

    Near each endpoint the derivative has a fixed sign, so the angle moves
    away from its endpoint value π/3.  The middle segment is covered by a
    grid whose spacing is small against ``δ/M`` for a derivative bound ``M``.
    """

    eps: Fraction | None = None
    delta: Fraction | None = None
    grid: int | None = None
    max_depth: int = 12
    derivative_boxes: int = 64
    endpoint_width: float = 1e-10

    def __init__(
        self,
        *,
        eps: Fraction | None = None,
        delta: Fraction | None = None,
        grid: int | None = None,
        max_depth: int | None = None,
        derivative_boxes: int | None = None,
    ) -> None:
        if eps is not None:
            self.eps = Fraction(eps)
        if delta is not None:
            self.delta = Fraction(delta)
        if grid is not None:
            self.grid = grid
        if max_depth is not None:
            self.max_depth = max_depth
        if derivative_boxes is not None:
            self.derivative_boxes = derivative_boxes
        if self.eps is None or self.delta is None:
            tuned_eps, tuned_delta = tune_clover()
            self.eps = self.eps if self.eps is not None else tuned_eps
            self.delta = self.delta if self.delta is not None else tuned_delta
        if not 0 < self.eps < Fraction(1, 6) * Fraction(math.pi):
            raise DomainError("eps must lie strictly between 0 and π/6")
        if self.delta <= 0:
            raise DomainError("delta must be positive")

    @staticmethod
    def _angle(x: Interval) -> Interval:
        left, right = _offsets(x, INTERVAL_OPS)
        return _clover_angle(x, left, right, INTERVAL_OPS)

    @staticmethod
    def _slope(x: Interval) -> Interval:
        left, right = _offsets(x, INTERVAL_OPS)
        return _clover_angle_prime(x, left, right, INTERVAL_OPS)

    def _sign(self, box: Interval, negative: bool, depth: int) -> str:
        slope = self._slope(box)
        if (slope.is_negative() if negative else slope.is_positive()):
            return "pass"
        if (slope.is_positive() if negative else slope.is_negative()):
            return "fail"
        if depth >= self.max_depth:
            return "inconclusive"
        for part in box.split():
            status = self._sign(part, negative, depth + 1)
            if status != "pass":
                return status
        return "pass"

    def _stop(self, cert: CloverCertificate, step: str, status: str, reason: str) -> CloverCertificate:
        cert.steps[step] = status
        cert.failed_step = step
        cert.verdict = "fail" if status == "fail" else "inconclusive"
        cert.reason = reason
        logger.warning("clover certificate %s at step %s: %s", cert.verdict, step, reason)
        return cert

    def certify(self) -> CloverCertificate:
        assert self.eps is not None and self.delta is not None
        cert = CloverCertificate(eps=self.eps, delta=self.delta, grid=self.grid)
        third, two_thirds = _third(), _two_thirds()
        eps = Interval(self.eps)
        delta = Interval(self.delta)

        # Endpoint values.
        for name, x in (("pi/3", third), ("2pi/3", two_thirds)):
            value = self._angle(x)
            cert.endpoints[name] = value
            if not value.overlaps(third):
                return self._stop(cert, "endpoints", "fail", f"angle({name}) misses π/3")
            if float(value.width()) > self.endpoint_width:
                return self._stop(cert, "endpoints", "inconclusive", f"angle({name}) too wide")
        cert.steps["endpoints"] = "pass"

        # (i) Derivative signs next to the endpoints.
        left_box = Interval.between(third, third + eps)
        right_box = Interval.between(two_thirds - eps, two_thirds)
        for box, negative, side in ((left_box, True, "left"), (right_box, False, "right")):
            status = self._sign(box, negative, 0)
            if status != "pass":
                return self._stop(cert, "i", status, f"derivative sign not shown on the {side} end")
        cert.steps["i"] = "pass"

        # (ii) Margin δ at the inner ends of those segments.
        bound = third - delta
        for name, x in (("pi/3+eps", third + eps), ("2pi/3-eps", two_thirds - eps)):
            value = self._angle(x)
            cert.margins[name] = value
            if value.lo > bound.hi:
                return self._stop(cert, "ii", "fail", f"angle({name}) exceeds π/3 − δ")
            if not value.hi <= bound.lo:
                return self._stop(cert, "ii", "inconclusive", f"angle({name}) straddles π/3 − δ")
        cert.steps["ii"] = "pass"

        # (iii) Derivative bound and grid over the middle segment.
        middle = Interval.between(third + eps, two_thirds - eps)
        pieces = self.derivative_boxes
        slope_bound = gmpy2.mpfr(0)
        for box in _subdivide(middle, pieces):
            slope_bound = max(slope_bound, self._slope(box).magnitude())
        if gmpy2.is_infinite(slope_bound):
            return self._stop(cert, "iii", "inconclusive", "derivative bound is infinite")
        m = Interval.from_endpoints(gmpy2.mpfr(0), slope_bound)
        cert.derivative_bound = m
        length = middle.width()
        cert.min_grid = max(1, math.ceil(float((m * Interval(0, length) / delta).hi)))
        grid = self.grid if self.grid is not None else cert.min_grid
        cert.grid = grid
        if grid < cert.min_grid:
            return self._stop(
                cert, "iii", "inconclusive", f"grid {grid} below the required {cert.min_grid}"
            )
        for box in _subdivide(middle, grid):
            centre = box.mid()
            radius = max((Interval(centre) - box.lo).hi, (Interval(box.hi) - centre).hi)
            value = self._angle(Interval(centre))
            drift = m * Interval(radius)
            if not (value.hi <= bound.lo and drift.hi < delta.lo):
                return self._stop(cert, "iii", "inconclusive", f"grid box {box!r} not below π/3 − δ")
        cert.steps["iii"] = "pass"

        cert.verdict = "pass"
        logger.info(
            "clover certificate: pass (eps=%s, delta=%s, grid=%d, M=%s)",
            self.eps,
            self.delta,
            grid,
            float(slope_bound),
        )
        return cert


def _subdivide(span: Interval, pieces: int) -> list[Interval]:
    """``pieces`` boxes covering ``span`` with shared endpoints."""
    with gmpy2.context(precision=INTERVAL_PRECISION, round=gmpy2.RoundToNearest):
        step = (span.hi - span.lo) / pieces
        points = [span.lo] + [span.lo + step * k for k in range(1, pieces)] + [span.hi]
    return [Interval.from_endpoints(points[k], points[k + 1]) for k in range(pieces)]


def certify_clover(
    eps: Fraction | None = None,
    delta: Fraction | None = None,
    grid: int | None = None,
    **overrides: Any,
) -> CloverCertificate:
    return CloverCertifier(eps=eps, delta=delta, grid=grid, **overrides).certify()
