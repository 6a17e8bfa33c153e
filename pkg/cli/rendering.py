"""Human tables and JSON for the command reports.

Tables print exact values verbatim; with an approximation digit count, non-integral rationals
also get a decimal hint.
"""
from rest_framework.renderers import JSONRenderer

from exact.matrices import ExactMatrix
from exact.numbers import GaussianRational
from polys.polynomials import MultiPoly


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')


def format_value(value, approx_digits=None):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, (GaussianRational, MultiPoly)):
        return value.format(approx_digits)
    if isinstance(value, ExactMatrix):
        if not value.rows:
            return '(empty)'
        return '\n'.join('[' + ', '.join(entry.format(approx_digits) for entry in row) + ']'
                         for row in value.entries)
    if isinstance(value, (list, tuple)):
        return '(' + ', '.join(format_value(item, approx_digits) for item in value) + ')'
    return str(value)


def render_table(title, rows, approx_digits=None):
    """Two aligned columns; multi-line values continue under the value column."""
    width = max((len(label) for label, _ in rows), default=0)
    lines = [title, '=' * len(title)]
    for label, value in rows:
        text = format_value(value, approx_digits).split('\n')
        lines.append(f"{label.ljust(width)}  {text[0]}")
        lines.extend(f"{' ' * width}  {line}" for line in text[1:])
    return '\n'.join(lines)


def render_tables(sections, approx_digits=None):
    return '\n\n'.join(render_table(title, rows, approx_digits) for title, rows in sections)
