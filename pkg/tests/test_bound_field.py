"""Tests for penny_audit.bound — BoundField properties and validation."""

from fractions import Fraction

from penny_audit.exceptions import ValidationError
from penny_audit.fields import ChoiceField, FractionField, IntegerField, ListField
from penny_audit.forms import Form
from penny_audit.validators import FunctionValidator, OpenInterval


def _even(value):
    if value % 2:
        raise ValidationError("Grid must be even.")


class CertifyForm(Form):
    target = ChoiceField("Target", choices=["kifli", "clover"], required=True)
    eps = FractionField("eps", validators=[OpenInterval(0, None)])
    grid = IntegerField("Grid", minimum=8, validators=[_even])
    samples = IntegerField("Samples", initial=1001)
    points = ListField("Points", item=tuple)


# ── Property delegation ────────────────────────────────────────


class TestBoundFieldProperties:
    def test_label(self):
        assert CertifyForm().target.label == "Target"

    def test_default(self):
        form = CertifyForm()
        assert form.target.default is None
        assert form.samples.default == 1001

    def test_required(self):
        form = CertifyForm()
        assert form.target.required is True
        assert form.eps.required is False

    def test_field_reference(self):
        form = CertifyForm()
        assert form.grid.field is CertifyForm._field_definitions["grid"]

    def test_form_reference(self):
        form = CertifyForm()
        assert form.grid.form is form
        assert form.grid.name == "grid"

    def test_validators_delegated(self):
        form = CertifyForm()
        assert any(isinstance(v, FunctionValidator) for v in form.grid.validators)


# ── Initial values ──────────────────────────────────────────────


class TestBoundFieldInitialValues:
    def test_value_from_data(self):
        assert CertifyForm({"target": "kifli"}).target.value == "kifli"

    def test_value_from_field_default(self):
        assert CertifyForm().samples.value == 1001

    def test_value_none_when_no_default_or_data(self):
        assert CertifyForm().grid.value is None


# ── Validation ──────────────────────────────────────────────────


class TestBoundFieldValidation:
    def test_required_empty_fails(self):
        form = CertifyForm()
        assert form.target.validate() is False
        assert form.target.has_error is True

    def test_range_and_callable_validators(self):
        form = CertifyForm({"grid": 5})
        assert form.grid.validate() is False
        assert len(form.grid.errors) == 2
        assert "Grid must be even." in form.grid.errors

    def test_fraction_open_interval(self):
        form = CertifyForm({"eps": "0"})
        assert form.eps.value == Fraction(0)
        assert form.eps.validate() is False

    def test_clears_previous_errors(self):
        form = CertifyForm({"grid": 16})
        form.grid.add_error("stale")
        assert form.grid.has_error
        assert form.grid.validate() is True
        assert form.grid.errors == []

    def test_revalidation_is_stable(self):
        form = CertifyForm({"eps": "1/10", "points": [[0, 1]]})
        assert form.eps.validate() and form.eps.validate()
        assert form.points.validate() and form.points.validate()
        assert form.eps.value == Fraction(1, 10)
        assert form.points.value == [(0, 1)]

    def test_optional_empty_passes(self):
        assert CertifyForm().eps.validate() is True

    def test_coercion_error_reported(self):
        form = CertifyForm({"grid": "many"})
        assert form.grid.validate() is False
        assert "whole number" in form.grid.errors[0]

    def test_add_error(self):
        form = CertifyForm({"target": "kifli"})
        form.target.add_error("not today")
        assert form.target.errors == ["not today"]
