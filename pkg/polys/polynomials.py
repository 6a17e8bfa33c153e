"""Sparse polynomials over Q(i) in holomorphic variables z_1..z_m and formal conjugates zeta_1..zeta_m.

The conjugate variables are independent symbols; they are tied to the conjugates of z only when a
polynomial is evaluated at a point. Terms are kept sorted by the graded-lexicographic order with every
z variable ahead of every zeta variable, largest monomial first.
"""
import enum
import logging
from itertools import combinations_with_replacement

import attrs
from django.core.exceptions import ValidationError

from exact.matrices import ExactMatrix
from exact.numbers import ONE, ZERO, GaussianRational

logger = logging.getLogger(__name__)


class Kind(enum.Enum):
    Z = 'z'
    ZETA = 'zeta'


def _exponents(values):
    values = tuple(values)
    if any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in values):
        raise ValueError(f"Exponents must be nonnegative integers, got {values}")
    return values


@attrs.frozen(order=False)
class Monomial:
    z: tuple = attrs.field(converter=_exponents)
    zeta: tuple = attrs.field(converter=_exponents)

    def __attrs_post_init__(self):
        if len(self.z) != len(self.zeta):
            raise ValueError(f"z and zeta exponent vectors differ in length: {self.z} / {self.zeta}")

    @classmethod
    def one(cls, nvars):
        return cls((0,) * nvars, (0,) * nvars)

    @property
    def nvars(self):
        return len(self.z)

    @property
    def degree(self):
        return sum(self.z) + sum(self.zeta)

    @property
    def is_holomorphic(self):
        return not any(self.zeta)

    def sort_key(self):
        return (self.degree, self.z, self.zeta)

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.z, other.z)),
                        tuple(a + b for a, b in zip(self.zeta, other.zeta)))

    def divides(self, other):
        return (all(a <= b for a, b in zip(self.z, other.z))
                and all(a <= b for a, b in zip(self.zeta, other.zeta)))

    def quotient(self, divisor):
        """self / divisor, assuming divisor divides self."""
        return Monomial(tuple(a - b for a, b in zip(self.z, divisor.z)),
                        tuple(a - b for a, b in zip(self.zeta, divisor.zeta)))

    def conjugate(self):
        return Monomial(self.zeta, self.z)

    def __str__(self):
        factors = []
        for name, exponents in (('z', self.z), ('ζ', self.zeta)):
            for index, exponent in enumerate(exponents, start=1):
                if exponent == 1:
                    factors.append(f"{name}{index}")
                elif exponent:
                    factors.append(f"{name}{index}^{exponent}")
        return '*'.join(factors) or '1'


def _canonical_terms(terms):
    """Merge duplicate monomials, drop zero coefficients and sort by decreasing monomial."""
    if isinstance(terms, dict):
        terms = terms.items()
    merged = {}
    for monomial, coeff in terms:
        merged[monomial] = merged.get(monomial, ZERO) + GaussianRational.parse(coeff)
    return tuple(sorted(((m, c) for m, c in merged.items() if c),
                        key=lambda item: item[0].sort_key(), reverse=True))


@attrs.frozen(repr=False)
class MultiPoly:
    nvars: int
    terms: tuple = attrs.field(default=(), converter=_canonical_terms)

    def __attrs_post_init__(self):
        if self.nvars < 0:
            raise ValueError(f"Negative variable count {self.nvars}")
        for monomial, _ in self.terms:
            if monomial.nvars != self.nvars:
                raise ValueError(f"Monomial {monomial} does not have {self.nvars} variables")

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, [(Monomial.one(nvars), value)])

    @classmethod
    def monomial(cls, nvars, z=None, zeta=None, coeff=ONE):
        z = tuple(z) if z is not None else (0,) * nvars
        zeta = tuple(zeta) if zeta is not None else (0,) * nvars
        return cls(nvars, [(Monomial(z, zeta), coeff)])

    @classmethod
    def z_var(cls, nvars, index):
        if not 0 <= index < nvars:
            raise IndexError(f"Variable index {index} out of range for {nvars} variables")
        return cls.monomial(nvars, z=[1 if j == index else 0 for j in range(nvars)])

    @classmethod
    def zeta_var(cls, nvars, index):
        return cls.z_var(nvars, index).conjugate()

    def as_dict(self):
        return dict(self.terms)

    def coefficient(self, monomial):
        for candidate, coeff in self.terms:
            if candidate == monomial:
                return coeff
        return ZERO

    @property
    def support(self):
        return tuple(monomial for monomial, _ in self.terms)

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((monomial.degree for monomial, _ in self.terms), default=-1)

    @property
    def is_holomorphic(self):
        return all(monomial.is_holomorphic for monomial, _ in self.terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def leading_term(self):
        """(monomial, coefficient) of the largest monomial in the graded-lexicographic order."""
        if not self.terms:
            raise ValueError("The zero polynomial has no leading term")
        return self.terms[0]

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, GaussianRational.coerce(other))
        if other.nvars != self.nvars:
            raise ValueError(f"Variable count mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return MultiPoly(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, [(m, -c) for m, c in self.terms])

    def __sub__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._check(other)
        products = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                monomial = m1 * m2
                products[monomial] = products.get(monomial, ZERO) + c1 * c2
        return MultiPoly(self.nvars, products)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(self.nvars, ONE)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, value):
        value = GaussianRational.coerce(value)
        return MultiPoly(self.nvars, [(m, c * value) for m, c in self.terms])

    def conjugate(self):
        """Conjugate the coefficients and swap each z with its zeta."""
        return MultiPoly(self.nvars, [(m.conjugate(), c.conjugate()) for m, c in self.terms])

    def partial_derivative(self, variable, kind=Kind.Z):
        if not 0 <= variable < self.nvars:
            raise IndexError(f"Variable index {variable} out of range for {self.nvars} variables")
        kind = Kind(kind)
        result = []
        for monomial, coeff in self.terms:
            exponents = list(monomial.z if kind is Kind.Z else monomial.zeta)
            power = exponents[variable]
            if not power:
                continue
            exponents[variable] = power - 1
            if kind is Kind.Z:
                derived = Monomial(exponents, monomial.zeta)
            else:
                derived = Monomial(monomial.z, exponents)
            result.append((derived, coeff * power))
        return MultiPoly(self.nvars, result)

    def evaluate(self, point):
        """Value at z = point, zeta = conjugate(point)."""
        point = [GaussianRational.parse(value) for value in point]
        if len(point) != self.nvars:
            raise ValueError(f"Point of length {len(point)} for a polynomial in {self.nvars} variables")
        conjugates = [value.conjugate() for value in point]
        powers = {}

        def power(values, index, exponent):
            key = (values is point, index, exponent)
            if key not in powers:
                powers[key] = values[index] ** exponent
            return powers[key]

        total = ZERO
        for monomial, coeff in self.terms:
            value = coeff
            for index, exponent in enumerate(monomial.z):
                if exponent:
                    value = value * power(point, index, exponent)
            for index, exponent in enumerate(monomial.zeta):
                if exponent:
                    value = value * power(conjugates, index, exponent)
            total = total + value
        return total

    def reduce_mod(self, divisor):
        """Divide by a single polynomial: returns (quotient, remainder) with self = quotient*divisor + remainder.

        No monomial of the remainder is divisible by the leading monomial of the divisor.
        """
        divisor = self._check(divisor)
        if not divisor:
            raise ValueError("Cannot reduce modulo the zero polynomial")
        lead_monomial, lead_coeff = divisor.leading_term()
        lead_inverse = lead_coeff.inverse()
        pending = self.as_dict()
        quotient, remainder = {}, {}
        while pending:
            monomial = max(pending, key=Monomial.sort_key)
            coeff = pending.pop(monomial)
            if not lead_monomial.divides(monomial):
                remainder[monomial] = coeff
                continue
            shift = monomial.quotient(lead_monomial)
            factor = coeff * lead_inverse
            quotient[shift] = quotient.get(shift, ZERO) + factor
            for divisor_monomial, divisor_coeff in divisor.terms[1:]:
                target = shift * divisor_monomial
                updated = pending.get(target, ZERO) - factor * divisor_coeff
                if updated:
                    pending[target] = updated
                else:
                    pending.pop(target, None)
        return MultiPoly(self.nvars, quotient), MultiPoly(self.nvars, remainder)

    def homogeneous_component(self, degree):
        return MultiPoly(self.nvars, [(m, c) for m, c in self.terms if m.degree == degree])

    def homogeneous_components(self):
        """Map degree -> nonzero homogeneous component."""
        components = {}
        for monomial, coeff in self.terms:
            components.setdefault(monomial.degree, []).append((monomial, coeff))
        return {degree: MultiPoly(self.nvars, terms) for degree, terms in sorted(components.items())}

    def is_homogeneous(self, degree):
        return all(m.degree == degree for m, _ in self.terms)

    def compose(self, substitutions):
        """Substitute z_j -> g_j and zeta_j -> conjugate(g_j) for the polynomials g_j."""
        substitutions = list(substitutions)
        if len(substitutions) != self.nvars:
            raise ValueError(f"Need {self.nvars} substitutions, got {len(substitutions)}")
        if not substitutions:
            return self
        target_nvars = substitutions[0].nvars
        conjugates = [g.conjugate() for g in substitutions]
        cache = {}

        def power(kind, index, exponent):
            key = (kind, index, exponent)
            if key not in cache:
                base = substitutions[index] if kind is Kind.Z else conjugates[index]
                cache[key] = base ** exponent
            return cache[key]

        result = MultiPoly.zero(target_nvars)
        for monomial, coeff in self.terms:
            term = MultiPoly.constant(target_nvars, coeff)
            for index, exponent in enumerate(monomial.z):
                if exponent:
                    term = term * power(Kind.Z, index, exponent)
            for index, exponent in enumerate(monomial.zeta):
                if exponent:
                    term = term * power(Kind.ZETA, index, exponent)
            result = result + term
        return result

    def format(self, approx_digits=None):
        if not self.terms:
            return '0'
        pieces = []
        for monomial, coeff in self.terms:
            is_one = monomial.degree == 0
            if coeff == ONE and not is_one:
                text = str(monomial)
            elif coeff == -ONE and not is_one:
                text = f"-{monomial}"
            else:
                scalar = coeff.format(approx_digits)
                if coeff.re and coeff.im:
                    scalar = f"({scalar})"
                text = scalar if is_one else f"{scalar}*{monomial}"
            pieces.append(text)
        return ' + '.join(pieces).replace('+ -', '- ')

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self})"


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def scale(a, value):
    return a.scale(value)


def conjugate(a):
    return a.conjugate()


def partial_derivative(a, variable, kind=Kind.Z):
    return a.partial_derivative(variable, kind)


def evaluate(a, point):
    return a.evaluate(point)


def reduce_mod(a, h):
    return a.reduce_mod(h)


def homogeneous_component(a, degree):
    return a.homogeneous_component(degree)


def is_homogeneous(a, degree):
    return a.is_homogeneous(degree)


def monomial_basis(polys):
    """Union of the supports, largest monomial first."""
    support = {monomial for poly in polys for monomial in poly.support}
    return sorted(support, key=Monomial.sort_key, reverse=True)


def coefficient_matrix(polys, basis=None):
    """Rows are the polynomials, columns the monomials of `basis` (default: union of supports)."""
    polys = list(polys)
    if not polys:
        raise ValidationError("Cannot build a coefficient matrix of an empty polynomial list.", code='empty')
    nvars = polys[0].nvars
    if any(poly.nvars != nvars for poly in polys):
        raise ValueError("Polynomials have different variable counts")
    basis = monomial_basis(polys) if basis is None else list(basis)
    column = {monomial: j for j, monomial in enumerate(basis)}
    rows = []
    for poly in polys:
        row = [ZERO] * len(basis)
        for monomial, coeff in poly.terms:
            if monomial not in column:
                raise ValueError(f"Monomial {monomial} is missing from the column basis")
            row[column[monomial]] = coeff
        rows.append(row)
    return ExactMatrix(len(rows), len(basis), rows)


def monomials_of_degree(nvars, degree):
    """Holomorphic monomials of the given degree, ordered lexicographically by sorted index tuples.

    For degree 2 this is z1^2, z1*z2, ..., z1*zn, z2^2, z2*z3, ..., zn^2.
    """
    result = []
    for indices in combinations_with_replacement(range(nvars), degree):
        exponents = [0] * nvars
        for index in indices:
            exponents[index] += 1
        result.append(Monomial(exponents, (0,) * nvars))
    return result


def vector_matmul(polys, matrix):
    """Row vector of polynomials times a constant matrix."""
    polys = list(polys)
    if len(polys) != matrix.rows:
        raise ValueError(f"Vector of length {len(polys)} does not fit a {matrix.rows}x{matrix.cols} matrix")
    if not polys:
        raise ValueError("Cannot multiply an empty polynomial vector")
    nvars = polys[0].nvars
    result = []
    for c in range(matrix.cols):
        total = MultiPoly.zero(nvars)
        for j, poly in enumerate(polys):
            entry = matrix[j, c]
            if entry:
                total = total + poly.scale(entry)
        result.append(total)
    return tuple(result)
