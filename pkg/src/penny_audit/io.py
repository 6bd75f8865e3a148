"""Point-set documents, report serialization and atomic file output.

A point-set document is a JSON object::

    {"mode": "exact", "points": [[x, y], ...], "edges": [[i, j], ...], "spec": {...}}

Exact coordinates are ``{"num", "den", "rnum", "rden"}`` objects standing for
``num/den + (rnum/rden)·√3``.  Declared mode takes decimal strings or numbers
and requires ``edges``.  The path ``"-"`` means stdin or stdout.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from io import StringIO
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .exceptions import InputError, ValidationError
from .fields import ChoiceField, ListField, MappingField
from .forms import Form
from .generators import Instance, InstanceSpec
from .geometry import Point, Scalar, to_float
from .graph import PennyGraph, build_declared_graph, build_penny_graph
from .interval import Interval
from .types import ConstructionMethod, Mode

logger = logging.getLogger(__name__)

STDIO = "-"


# ── Coordinates ──────────────────────────────────────────────────


def scalar_to_json(value: Scalar) -> dict[str, int]:
    return {
        "num": value.a.numerator,
        "den": value.a.denominator,
        "rnum": value.b.numerator,
        "rden": value.b.denominator,
    }


def scalar_from_json(data: dict[str, Any]) -> Scalar:
    try:
        num, den = data["num"], data["den"]
    except KeyError as e:
        raise ValidationError(f"exact coordinate is missing {e.args[0]!r}")
    rnum, rden = data.get("rnum", 0), data.get("rden", 1)
    for key, part in (("num", num), ("den", den), ("rnum", rnum), ("rden", rden)):
        if not isinstance(part, int) or isinstance(part, bool):
            raise ValidationError(f"{key} must be an integer (got {part!r})")
    if den == 0 or rden == 0:
        raise ValidationError("denominators must be non-zero")
    return Scalar(Fraction(num, den), Fraction(rnum, rden))


def _coordinate(raw: Any) -> Scalar | float:
    """An exact :class:`Scalar` for an object or integer, a float for a decimal."""
    if isinstance(raw, Scalar):
        return raw
    if isinstance(raw, dict):
        return scalar_from_json(raw)
    if isinstance(raw, bool):
        raise ValidationError(f"not a coordinate: {raw!r}")
    if isinstance(raw, int):
        return Scalar(raw)
    if isinstance(raw, (float, str)):
        try:
            return float(raw)
        except ValueError:
            raise ValidationError(f"not a decimal coordinate: {raw!r}")
    raise ValidationError(f"not a coordinate: {raw!r}")


def _point_entry(raw: Any) -> tuple[Scalar | float, Scalar | float]:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ValidationError(f"a point is a pair [x, y] (got {raw!r})")
    return _coordinate(raw[0]), _coordinate(raw[1])


def _edge_entry(raw: Any) -> tuple[int, int]:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)
    ):
        raise ValidationError(f"an edge is a pair of vertex indices (got {raw!r})")
    return raw[0], raw[1]


class PointSetForm(Form):
    title = "point set"

    mode = ChoiceField("Mode", choices=["exact", "declared"], required=True)
    points = ListField("Points", item=_point_entry, required=True)
    edges = ListField("Edges", item=_edge_entry)
    spec = MappingField("Instance spec")

    def clean_form(self) -> bool:
        mode = self.mode.value
        points = self.points.value
        if mode == "exact":
            if any(isinstance(c, float) for p in points for c in p):
                self.add_error("points", "exact mode forbids decimal coordinates")
        elif self.edges.value is None:
            self.add_error("edges", "declared mode requires an edge list")
        if self.edges.value:
            n = len(points)
            for i, j in self.edges.value:
                if not (0 <= i < n and 0 <= j < n) or i == j:
                    self.add_error("edges", f"edge [{i}, {j}] does not join two of the {n} points")
                    break
        return True


@dataclass
class PointSet:
    mode: Mode
    points: list[Point] | None = None
    coords: np.ndarray | None = None
    edges: list[tuple[int, int]] | None = None
    spec: InstanceSpec | None = None

    @property
    def n(self) -> int:
        return len(self.points) if self.points is not None else len(self.coords)

    def graph(self, method: ConstructionMethod = "auto") -> PennyGraph:
        if self.mode == "exact":
            return build_penny_graph(self.points, method=method)
        return build_declared_graph(self.coords, self.edges or [])


def parse_point_set(data: Any) -> PointSet:
    """Validate a decoded point-set document; raises ``InputError`` naming the bad field."""
    form = PointSetForm(data)
    cleaned = form.cleaned()
    spec = None
    if cleaned["spec"]:
        try:
            spec = InstanceSpec.from_dict(cleaned["spec"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError("spec", f"malformed instance spec ({e!r})") from None
    edges = [tuple(e) for e in cleaned["edges"]] if cleaned["edges"] is not None else None
    if cleaned["mode"] == "exact":
        points = [Point(x, y) for x, y in cleaned["points"]]
        return PointSet("exact", points=points, edges=edges, spec=spec)
    coords = np.array(
        [[c if isinstance(c, float) else to_float(c) for c in p] for p in cleaned["points"]],
        dtype=float,
    ).reshape(-1, 2)
    return PointSet("declared", coords=coords, edges=edges, spec=spec)


def read_point_set(path: str | Path) -> PointSet:
    return parse_point_set(read_json(path))


def exact_document(points: Sequence[Point], spec: InstanceSpec | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "mode": "exact",
        "points": [[scalar_to_json(p.x), scalar_to_json(p.y)] for p in points],
    }
    if spec is not None:
        doc["spec"] = spec.to_dict()
    return doc


def declared_document(
    coords: np.ndarray | Sequence[Sequence[float]],
    edges: Iterable[Sequence[int]],
    spec: InstanceSpec | None = None,
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "mode": "declared",
        "points": [[repr(float(x)), repr(float(y))] for x, y in np.asarray(coords, dtype=float)],
        "edges": [[int(i), int(j)] for i, j in edges],
    }
    if spec is not None:
        doc["spec"] = spec.to_dict()
    return doc


def instance_document(instance: Instance) -> dict[str, Any]:
    return exact_document(instance.points, instance.spec)


# ── JSON / CSV output ────────────────────────────────────────────


def to_jsonable(value: Any) -> Any:
    """Convert report values (rationals, Q[√3] scalars, intervals, numpy types) to JSON."""
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, Scalar):
        return scalar_to_json(value)
    if isinstance(value, Interval):
        return value.to_json()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=to_jsonable) + "\n"


def _write_text(path: str | Path, text: str) -> None:
    if str(path) == STDIO:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.debug("wrote %s", target)


def write_json(path: str | Path, data: Any) -> None:
    """Write ``data`` as sorted, indented JSON; atomic for real paths."""
    _write_text(path, dumps(data))


def read_json(path: str | Path) -> Any:
    try:
        if str(path) == STDIO:
            text = sys.stdin.read()
        else:
            text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError("path", f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("document", f"invalid JSON at line {e.lineno}: {e.msg}") from None


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(path, buffer.getvalue())
