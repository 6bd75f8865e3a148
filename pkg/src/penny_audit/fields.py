"""Field classes — immutable declarative configuration for schema fields."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, TYPE_CHECKING

from .exceptions import FieldError, ValidationError
from .validators import (
    FunctionValidator,
    MaxValue,
    MinLength,
    MinValue,
    OneOf,
    Required,
    Validator,
)

if TYPE_CHECKING:
    from .bound import BoundField
    from .forms import BaseForm


def _is_empty(value: Any) -> bool:
    return value is None or (isinstance(value, str) and value.strip() == "")


class Field:
    """Immutable declarative configuration for a single schema field.

    Defined at class level on a Form subclass and shared across all
    instances of that form. Never holds runtime state.
    """

    def __init__(
        self,
        label: str,
        *,
        initial: Any = None,
        required: bool = False,
        validators: list[Validator | Callable[..., Any]] | tuple[()] = (),
    ) -> None:
        self.label = label
        self.initial = initial
        self.required = bool(required)
        self.validators = [
            v if isinstance(v, Validator) else FunctionValidator(v)
            for v in validators
        ]
        # required=True is the first validator so the pipeline has no
        # special case for it.
        if self.required:
            self.validators.insert(0, Required())

    def bind(
        self,
        form: BaseForm,
        name: str,
        data: dict[str, Any] | None = None,
    ) -> BoundField:
        """Create a BoundField for this Field within a specific form instance."""
        from .bound import BoundField

        return BoundField(field=self, form=form, name=name, data=data or {})

    def _add_range_validators(self, minimum: Any, maximum: Any) -> None:
        if minimum is not None:
            self.validators.append(MinValue(minimum))
        if maximum is not None:
            self.validators.append(MaxValue(maximum))

    def to_python(self, value: Any) -> Any:
        """Convert a raw document value to the appropriate Python type.

        Base implementation is a passthrough. Subclasses override
        where type coercion is needed (e.g. IntegerField).
        """
        return value


class StringField(Field):
    """Free text."""

    def __init__(self, label: str, *, min_length: int | None = None, **kwargs: Any) -> None:
        super().__init__(label, **kwargs)
        if min_length is not None:
            self.validators.append(MinLength(min_length))

    def to_python(self, value: Any) -> Any:
        if value is None:
            return None
        if not isinstance(value, str):
            raise ValidationError(f"Enter text (got {type(value).__name__}).")
        return value


class IntegerField(Field):
    """Whole numbers, from ints or decimal strings."""

    def __init__(
        self,
        label: str,
        *,
        minimum: int | None = None,
        maximum: int | None = None,
        **kwargs: Any,
    ) -> None:
        super().__init__(label, **kwargs)
        self.minimum = minimum
        self.maximum = maximum
        self._add_range_validators(minimum, maximum)

    def to_python(self, value: Any) -> Any:
        """Coerce to int. Returns None for empty/None values."""
        if _is_empty(value):
            return None
        if isinstance(value, bool) or isinstance(value, float):
            raise ValidationError(f"Enter a whole number (got {value!r}).")
        try:
            return int(value)
        except (ValueError, TypeError):
            raise ValidationError(f"Enter a whole number (got {value!r}).")


class FractionField(Field):
    """Exact rationals.

    Accepts ints, ``Fraction`` objects, strings such as ``"2/9"`` or
    ``"0.001"``, and ``{"num": p, "den": q}`` mappings.
    """

    def __init__(
        self,
        label: str,
        *,
        minimum: Fraction | int | None = None,
        maximum: Fraction | int | None = None,
        **kwargs: Any,
    ) -> None:
        super().__init__(label, **kwargs)
        self._add_range_validators(minimum, maximum)

    def to_python(self, value: Any) -> Any:
        if _is_empty(value):
            return None
        if isinstance(value, bool):
            raise ValidationError(f"Enter a rational number (got {value!r}).")
        if isinstance(value, dict):
            try:
                num, den = value["num"], value["den"]
            except KeyError as e:
                raise ValidationError(f"Rational is missing key {e.args[0]!r}.")
            if not isinstance(num, int) or not isinstance(den, int) or den == 0:
                raise ValidationError(f"Enter integer num and non-zero den (got {value!r}).")
            return Fraction(num, den)
        try:
            return Fraction(str(value).strip()) if not isinstance(value, Fraction) else value
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"Enter a rational number such as 2/9 (got {value!r}).")


class FloatField(Field):
    """Finite floating-point numbers."""

    def __init__(
        self,
        label: str,
        *,
        minimum: float | None = None,
        maximum: float | None = None,
        **kwargs: Any,
    ) -> None:
        super().__init__(label, **kwargs)
        self._add_range_validators(minimum, maximum)

    def to_python(self, value: Any) -> Any:
        if _is_empty(value):
            return None
        if isinstance(value, bool):
            raise ValidationError(f"Enter a number (got {value!r}).")
        try:
            result = float(value)
        except (ValueError, TypeError):
            raise ValidationError(f"Enter a number (got {value!r}).")
        if not math.isfinite(result):
            raise ValidationError(f"Enter a finite number (got {value!r}).")
        return result


class ChoiceField(Field):
    """Selection from a fixed list of values."""

    def __init__(self, label: str, *, choices: list[Any], **kwargs: Any) -> None:
        if not choices:
            raise FieldError("ChoiceField requires a non-empty choices list.")
        super().__init__(label, **kwargs)
        self.choices = list(choices)
        self.validators.append(OneOf(self.choices))


class ListField(Field):
    """A JSON array whose items pass through ``item`` for coercion.

    ``item`` may raise ``ValidationError``; the message is prefixed with
    the offending index.
    """

    def __init__(
        self,
        label: str,
        *,
        item: Callable[[Any], Any] | None = None,
        min_length: int | None = None,
        **kwargs: Any,
    ) -> None:
        super().__init__(label, **kwargs)
        self.item = item
        if min_length is not None:
            self.validators.append(MinLength(min_length))

    def to_python(self, value: Any) -> Any:
        if value is None:
            return None
        if not isinstance(value, (list, tuple)):
            raise ValidationError(f"Expected a list (got {type(value).__name__}).")
        if self.item is None:
            return list(value)
        items = []
        for index, raw in enumerate(value):
            try:
                items.append(self.item(raw))
            except ValidationError as e:
                raise ValidationError(f"item {index}: {e.message}")
        return items


class MappingField(Field):
    """A JSON object, kept as a plain dict."""

    def to_python(self, value: Any) -> Any:
        if value is None:
            return None
        if not isinstance(value, dict):
            raise ValidationError(f"Expected an object (got {type(value).__name__}).")
        return dict(value)
