"""Tests for penny_audit.exceptions."""

import pytest

from penny_audit.exceptions import (
    ClassificationError,
    DomainError,
    FieldError,
    FormError,
    GenerationError,
    GeometryError,
    HypothesesUnmet,
    InputError,
    PennyError,
    ValidationError,
)


class TestValidationError:
    def test_message_attribute(self):
        assert ValidationError("bad value").message == "bad value"

    def test_is_exception(self):
        with pytest.raises(ValidationError, match="bad value"):
            raise ValidationError("bad value")


class TestCommonBase:
    @pytest.mark.parametrize(
        "cls",
        [ValidationError, FieldError, FormError, GeometryError, DomainError, GenerationError],
    )
    def test_subclasses(self, cls):
        err = cls("boom")
        assert isinstance(err, PennyError)
        assert err.message == "boom"


class TestInputError:
    def test_field_named_in_message(self):
        err = InputError("points", "item 2: a point is a pair [x, y]")
        assert err.field == "points"
        assert str(err) == "points: item 2: a point is a pair [x, y]"


class TestHypothesesUnmet:
    def test_default_message(self):
        assert HypothesesUnmet().message == "hypotheses unmet: general position fails"


class TestClassificationError:
    def test_reason(self):
        err = ClassificationError("B has degree 4, expected 5")
        assert err.reason == "B has degree 4, expected 5"
        assert str(err) == "classification undefined: B has degree 4, expected 5"
