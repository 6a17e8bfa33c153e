from fractions import Fraction


def parse_rational(value):
    """Parse a rational literal of the form "p/q" or "p" (ints and Fractions pass through).

    Raises ValueError on anything else, including floats: exactness is not negotiable here.
    """
    if isinstance(value, bool):
        raise ValueError(f"Not a rational literal: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"Not a rational literal: {value!r}")
    text = value.strip()
    numerator, _, denominator = text.partition('/')
    try:
        if not denominator:
            return Fraction(int(numerator))
        return Fraction(int(numerator), int(denominator))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational literal: {value!r}") from exc


def format_rational(value, approx_digits=None):
    """Render a Fraction as "p/q" or "p", optionally followed by a decimal hint."""
    text = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if approx_digits is not None and value.denominator != 1:
        text += f" (~{float(value):.{approx_digits}g})"
    return text
