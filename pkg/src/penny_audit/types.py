"""Constants and type aliases for penny-audit."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

Mode = Literal["exact", "declared"]
Variant = Literal["weak", "main"]
Status = Literal["pass", "violation"]
Verdict = Literal["pass", "fail", "inconclusive"]
Popularity = Literal["popular", "unpopular"]
ConstructionMethod = Literal["auto", "all_pairs", "grid"]
EdgeType = Literal["TypeI", "TypeII", "TypeIII"]
PatternKind = Literal["kifli", "clover"]

# Geometric checks in declared mode compare floats with this tolerance.
FLOAT_TOLERANCE = 1e-9

# Bits of precision for interval endpoints.
INTERVAL_PRECISION = 128

Q_PRESETS: dict[str, Fraction] = {
    "weak": Fraction(1, 5),
    "main": Fraction(2, 9),
}

DENSITY_TARGETS: dict[str, Fraction] = {
    "weak": Fraction(12, 5),
    "main": Fraction(43, 18),
}

# Slopes quoted next to achieved densities: the two discharging bounds, the
# earlier 17/7 upper bound and the 37/16 slope of the best known construction.
REFERENCE_DENSITIES: dict[str, Fraction] = {
    "12/5": Fraction(12, 5),
    "43/18": Fraction(43, 18),
    "17/7": Fraction(17, 7),
    "37/16": Fraction(37, 16),
}
