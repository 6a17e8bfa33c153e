from rest_framework import serializers

from exact.matrices import ExactMatrix
from exact.numbers import GaussianRational
from utils.helpers import format_rational, parse_rational


class RationalField(serializers.Field):
    """A rational serialized as the string "p/q" (or "p"); JSON integers are accepted on input."""
    default_error_messages = {
        'invalid': 'Expected a rational literal "p/q" or "p", got {value!r}.',
    }

    def to_internal_value(self, data):
        try:
            return parse_rational(data)
        except ValueError:
            self.fail('invalid', value=data)

    def to_representation(self, value):
        return format_rational(value)


class GaussianRationalField(serializers.Field):
    """A Gaussian rational serialized as {"re": "3/5", "im": "0"}."""
    default_error_messages = {
        'invalid': 'Expected {{"re": "p/q", "im": "p/q"}} or a rational literal, got {value!r}.',
    }

    def to_internal_value(self, data):
        try:
            return GaussianRational.parse(data)
        except (ValueError, TypeError):
            self.fail('invalid', value=data)

    def to_representation(self, value):
        return value.as_dict()


class ExactMatrixField(serializers.Field):
    """A matrix serialized row-major as a grid of Gaussian-rational values."""
    default_error_messages = {
        'not_a_grid': 'Expected a list of equally long rows.',
    }

    def __init__(self, **kwargs):
        self.entry_field = GaussianRationalField()
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
            self.fail('not_a_grid')
        if data and len({len(row) for row in data}) != 1:
            self.fail('not_a_grid')
        rows = [[self.entry_field.to_internal_value(value) for value in row] for row in data]
        return ExactMatrix(len(rows), len(rows[0]) if rows else 0, rows)

    def to_representation(self, value):
        return [[self.entry_field.to_representation(entry) for entry in row] for row in value.entries]
