"""Exact scalars: Gaussian rationals a + b*i with a, b in Q, and rational points on the unit circle."""
from fractions import Fraction

import attrs

from utils.helpers import format_rational, parse_rational


@attrs.frozen(repr=False)
class GaussianRational:
    """An element of Q(i).

    Both parts are Fractions, so the value is canonical on construction (reduced, positive
    denominators) and equality/hashing are plain field comparisons.
    """
    re: Fraction = attrs.field(default=Fraction(0), converter=parse_rational)
    im: Fraction = attrs.field(default=Fraction(0), converter=parse_rational)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(value)
        raise TypeError(f"Cannot use {type(value).__name__} as an exact scalar")

    @classmethod
    def parse(cls, value):
        """Parse "p/q", "p", an int/Fraction, or a {"re": ..., "im": ...} mapping."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, dict):
            unknown = set(value) - {'re', 'im'}
            if unknown:
                raise ValueError(f"Unexpected keys in Gaussian rational: {sorted(unknown)}")
            return cls(parse_rational(value.get('re', 0)), parse_rational(value.get('im', 0)))
        return cls(parse_rational(value))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_zero(self):
        return not self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """|a + bi|^2 = a^2 + b^2, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        norm = self.norm()
        if not norm:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def numerator_magnitude(self):
        return max(abs(self.re.numerator), abs(self.im.numerator))

    def as_dict(self):
        return {'re': format_rational(self.re), 'im': format_rational(self.im)}

    def format(self, approx_digits=None):
        if not self.im:
            return format_rational(self.re, approx_digits)
        imag = 'i' if abs(self.im) == 1 else f"{format_rational(abs(self.im))}i"
        if not self.re:
            text = f"-{imag}" if self.im < 0 else imag
        else:
            text = f"{format_rational(self.re)}{'-' if self.im < 0 else '+'}{imag}"
        if approx_digits is not None and (self.re.denominator != 1 or self.im.denominator != 1):
            text += f" (~{complex(float(self.re), float(self.im)):.{approx_digits}g})"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"GaussianRational({self})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


@attrs.frozen
class CirclePoint:
    """A rational point (c, s) with c^2 + s^2 = 1, standing in for (cos t, sin t)."""
    c: Fraction = attrs.field(converter=Fraction)
    s: Fraction = attrs.field(converter=Fraction)

    def __attrs_post_init__(self):
        if self.c * self.c + self.s * self.s != 1:
            raise ValueError(f"({self.c}, {self.s}) is not on the unit circle")


def circle_point(u):
    """Rational parametrization of the circle: u -> ((1-u^2)/(1+u^2), 2u/(1+u^2))."""
    u = parse_rational(u)
    denominator = 1 + u * u
    return CirclePoint((1 - u * u) / denominator, 2 * u / denominator)
