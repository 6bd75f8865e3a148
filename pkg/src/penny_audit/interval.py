"""Outward-rounded interval arithmetic on MPFR endpoints.

Every endpoint is computed under an explicit directed rounding mode: lower
endpoints round down and upper endpoints round up, so each result encloses
the true image of its arguments.  MPFR evaluates the elementary functions
with correct rounding, which makes the per-endpoint enclosures tight.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Union

import gmpy2

from .exceptions import DomainError
from .types import INTERVAL_PRECISION

Number = Union[int, float, Fraction, gmpy2.mpfr, gmpy2.mpq]


def _rounding(mode: int) -> gmpy2.context:
    return gmpy2.context(precision=INTERVAL_PRECISION, round=mode)


def _down() -> gmpy2.context:
    return _rounding(gmpy2.RoundDown)


def _up() -> gmpy2.context:
    return _rounding(gmpy2.RoundUp)


def _to_mpfr(value: Any, mode: int) -> gmpy2.mpfr:
    with _rounding(mode):
        if isinstance(value, Fraction):
            return gmpy2.mpfr(gmpy2.mpq(value.numerator, value.denominator))
        if isinstance(value, bool):
            raise TypeError("booleans are not interval endpoints")
        if isinstance(value, (int, float, gmpy2.mpz, gmpy2.mpq, gmpy2.mpfr)):
            return gmpy2.mpfr(value)
        if isinstance(value, str):
            exact = Fraction(value)
            return gmpy2.mpfr(gmpy2.mpq(exact.numerator, exact.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an interval endpoint")


def _is_zero(x: gmpy2.mpfr) -> bool:
    return gmpy2.is_zero(x)


def _product(x: gmpy2.mpfr, y: gmpy2.mpfr) -> gmpy2.mpfr:
    # 0·∞ is 0 for endpoint products.
    if _is_zero(x) or _is_zero(y):
        return gmpy2.mpfr(0)
    return x * y


def _exact_string(x: gmpy2.mpfr) -> str:
    if gmpy2.is_infinite(x):
        return "inf" if x > 0 else "-inf"
    num, den = x.as_integer_ratio()
    return str(Fraction(int(num), int(den)))


class Interval:
    """A closed interval ``[lo, hi]`` of reals.

    Endpoints may be infinite.  Binary operators accept plain numbers, which
    are converted to the tightest enclosing interval.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Number, hi: Number | None = None) -> None:
        if hi is None:
            hi = lo
        self.lo = _to_mpfr(lo, gmpy2.RoundDown)
        self.hi = _to_mpfr(hi, gmpy2.RoundUp)
        if gmpy2.is_nan(self.lo) or gmpy2.is_nan(self.hi):
            raise DomainError("interval endpoint is not a number")
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def _raw(cls, lo: gmpy2.mpfr, hi: gmpy2.mpfr) -> Interval:
        obj = cls.__new__(cls)
        obj.lo = lo
        obj.hi = hi
        return obj

    @classmethod
    def point(cls, value: Number) -> Interval:
        return cls(value, value)

    @classmethod
    def pi(cls) -> Interval:
        with _down():
            lo = gmpy2.const_pi()
        with _up():
            hi = gmpy2.const_pi()
        return cls._raw(lo, hi)

    @classmethod
    def entire(cls) -> Interval:
        return cls._raw(gmpy2.inf(-1), gmpy2.inf(1))

    @classmethod
    def coerce(cls, value: Interval | Number) -> Interval:
        return value if isinstance(value, Interval) else cls.point(value)

    @classmethod
    def between(cls, start: Interval, end: Interval) -> Interval:
        """The smallest interval covering both enclosures, from ``start.lo`` to ``end.hi``."""
        return cls._raw(start.lo, end.hi)

    @classmethod
    def from_endpoints(cls, lo: gmpy2.mpfr, hi: gmpy2.mpfr) -> Interval:
        """Wrap two MPFR values that are already valid lower and upper bounds."""
        if lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        return cls._raw(lo, hi)

    def split(self) -> tuple[Interval, Interval]:
        m = self.mid()
        return Interval._raw(self.lo, m), Interval._raw(m, self.hi)

    # ── Arithmetic ──────────────────────────────────────────────

    def __add__(self, other: Interval | Number) -> Interval:
        other = Interval.coerce(other)
        with _down():
            lo = self.lo + other.lo
        with _up():
            hi = self.hi + other.hi
        return Interval._raw(lo, hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval._raw(-self.hi, -self.lo)

    def __sub__(self, other: Interval | Number) -> Interval:
        return self + (-Interval.coerce(other))

    def __rsub__(self, other: Number) -> Interval:
        return Interval.coerce(other) - self

    def __mul__(self, other: Interval | Number) -> Interval:
        other = Interval.coerce(other)
        pairs = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        with _down():
            lo = min(_product(x, y) for x, y in pairs)
        with _up():
            hi = max(_product(x, y) for x, y in pairs)
        return Interval._raw(lo, hi)

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        lo, hi = self.lo, self.hi
        if lo > 0 or hi < 0:
            with _down():
                new_lo = 1 / hi
            with _up():
                new_hi = 1 / lo
            return Interval._raw(new_lo, new_hi)
        if _is_zero(lo) and hi > 0:
            with _down():
                new_lo = 1 / hi
            return Interval._raw(new_lo, gmpy2.inf(1))
        if _is_zero(hi) and lo < 0:
            with _up():
                new_hi = 1 / lo
            return Interval._raw(gmpy2.inf(-1), new_hi)
        return Interval.entire()

    def __truediv__(self, other: Interval | Number) -> Interval:
        return self * Interval.coerce(other).reciprocal()

    def __rtruediv__(self, other: Number) -> Interval:
        return Interval.coerce(other) * self.reciprocal()

    def sqr(self) -> Interval:
        if self.lo >= 0:
            a, b = self.lo, self.hi
        elif self.hi <= 0:
            a, b = -self.hi, -self.lo
        else:
            with _up():
                top = max(self.lo * self.lo, self.hi * self.hi)
            return Interval._raw(gmpy2.mpfr(0), top)
        with _down():
            lo = a * a
        with _up():
            hi = b * b
        return Interval._raw(lo, hi)

    def sqrt(self) -> Interval:
        if self.lo < 0:
            raise DomainError(f"square root of an interval reaching below 0 ({self.lo})")
        with _down():
            lo = gmpy2.sqrt(self.lo)
        with _up():
            hi = gmpy2.sqrt(self.hi)
        return Interval._raw(lo, hi)

    # ── Elementary functions ────────────────────────────────────

    def _monotone(self, fn: Callable[[gmpy2.mpfr], gmpy2.mpfr], increasing: bool) -> Interval:
        first, second = (self.lo, self.hi) if increasing else (self.hi, self.lo)
        with _down():
            lo = fn(first)
        with _up():
            hi = fn(second)
        return Interval._raw(lo, hi)

    def _periodic(
        self, fn: Callable[[gmpy2.mpfr], gmpy2.mpfr], peak: Fraction, trough: Fraction
    ) -> Interval:
        """Enclosure of a 2π-periodic function with extrema at ``(2k + peak)·π`` and ``(2k + trough)·π``."""
        if gmpy2.is_infinite(self.lo) or gmpy2.is_infinite(self.hi):
            return Interval(-1, 1)
        if float(self.hi) - float(self.lo) >= 2 * math.pi:
            return Interval(-1, 1)
        with _down():
            lo = min(fn(self.lo), fn(self.hi))
        with _up():
            hi = max(fn(self.lo), fn(self.hi))
        pi = Interval.pi()
        first = math.floor(float(self.lo) / (2 * math.pi)) - 1
        last = math.ceil(float(self.hi) / (2 * math.pi)) + 1
        for k in range(first, last + 1):
            if (pi * (2 * k + peak)).overlaps(self):
                hi = gmpy2.mpfr(1)
            if (pi * (2 * k + trough)).overlaps(self):
                lo = gmpy2.mpfr(-1)
        return Interval._raw(max(lo, gmpy2.mpfr(-1)), min(hi, gmpy2.mpfr(1)))

    def sin(self) -> Interval:
        return self._periodic(gmpy2.sin, Fraction(1, 2), Fraction(3, 2))

    def cos(self) -> Interval:
        return self._periodic(gmpy2.cos, Fraction(0), Fraction(1))

    def atan(self) -> Interval:
        return self._monotone(gmpy2.atan, increasing=True)

    def acos(self) -> Interval:
        if self.lo < -1 or self.hi > 1:
            raise DomainError(f"arccosine outside [-1, 1]: [{self.lo}, {self.hi}]")
        return self._monotone(gmpy2.acos, increasing=False)

    # ── Set operations and predicates ───────────────────────────

    def intersect(self, other: Interval) -> Interval:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise DomainError("intervals do not intersect")
        return Interval._raw(lo, hi)

    def clip(self, low: Number, high: Number) -> Interval:
        """Intersection with ``[low, high]``, used where the true value is known to lie inside."""
        return self.intersect(Interval(low, high))

    def hull(self, other: Interval) -> Interval:
        return Interval._raw(min(self.lo, other.lo), max(self.hi, other.hi))

    def overlaps(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains(self, value: Interval | Number) -> bool:
        other = Interval.coerce(value)
        return self.lo <= other.lo and other.hi <= self.hi

    def width(self) -> gmpy2.mpfr:
        with _up():
            return self.hi - self.lo

    def mid(self) -> gmpy2.mpfr:
        with _rounding(gmpy2.RoundToNearest):
            return (self.lo + self.hi) / 2

    def magnitude(self) -> gmpy2.mpfr:
        return max(abs(self.lo), abs(self.hi))

    def is_negative(self) -> bool:
        return self.hi < 0

    def is_positive(self) -> bool:
        return self.lo > 0

    # ── Conversion ──────────────────────────────────────────────

    def to_json(self) -> dict[str, Any]:
        return {
            "lo": _exact_string(self.lo),
            "hi": _exact_string(self.hi),
            "lo_float": float(self.lo),
            "hi_float": float(self.hi),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"
