"""CR vector fields on the sphere and the jet spans of a map at a point.

At a point p of S^n the span E_l(p) is generated by the vectors (L^J f)(p) for all multi-indices
|J| <= l (J = 0 included), where L_1..L_n are the tangential (1,0) fields
L_a = zeta_{n+1} d/dz_a - zeta_a d/dz_{n+1}. Their coefficients only involve zeta, so they commute
and L^J can be built one field at a time.
"""
import logging
import random
from fractions import Fraction

import attrs
from django.conf import settings

from crmaps.maps import on_sphere
from exact.matrices import ExactMatrix, rank
from exact.numbers import GaussianRational
from polys.polynomials import MultiPoly
from utils.exceptions import DegenerateBasePointError, InvariantViolation, NotTransversalError, OffSphereError

logger = logging.getLogger(__name__)


@attrs.frozen
class CRVectorField:
    """sum_j coefficients[j] * d/dz_j with polynomial coefficients in z and zeta."""
    coefficients: tuple = attrs.field(converter=tuple)

    @property
    def nvars(self):
        return len(self.coefficients)

    def apply(self, poly):
        if poly.nvars != self.nvars:
            raise ValueError(f"Field in {self.nvars} variables applied to a polynomial in {poly.nvars}")
        total = MultiPoly.zero(self.nvars)
        for j, coeff in enumerate(self.coefficients):
            if coeff:
                total = total + coeff * poly.partial_derivative(j)
        return total


def standard_cr_fields(n):
    if n < 1:
        raise ValueError(f"Need n >= 1, got {n}")
    nvars = n + 1
    last = MultiPoly.zeta_var(nvars, n)
    fields = []
    for alpha in range(n):
        coefficients = [MultiPoly.zero(nvars)] * nvars
        coefficients[alpha] = last
        coefficients[n] = -MultiPoly.zeta_var(nvars, alpha)
        fields.append(CRVectorField(coefficients))
    return fields


def apply_field(field, vector):
    return tuple(field.apply(component) for component in vector)


def multi_indices(n, level):
    """All J in Z_+^n with |J| = level, in lexicographic order."""
    if n == 1:
        return [(level,)]
    return [(first,) + rest for first in range(level, -1, -1) for rest in multi_indices(n - 1, level - first)]


class JetTower:
    """The symbolic jets L^J f, built lazily level by level and reused for every base point."""

    def __init__(self, f):
        self.f = f
        self.fields = standard_cr_fields(f.n)
        self._jets = {(0,) * f.n: tuple(f.components)}
        self._built = 0

    def jet(self, index):
        self.build(sum(index))
        return self._jets[index]

    def build(self, level):
        while self._built < level:
            self._built += 1
            for index in multi_indices(self.f.n, self._built):
                alpha = next(a for a, count in enumerate(index) if count)
                previous = index[:alpha] + (index[alpha] - 1,) + index[alpha + 1:]
                self._jets[index] = apply_field(self.fields[alpha], self._jets[previous])
            logger.debug(f"Built jets of order {self._built} for n={self.f.n}, N={self.f.N}")

    def level(self, level):
        self.build(level)
        return [self._jets[index] for index in multi_indices(self.f.n, level)]


def check_base_point(f, point):
    point = tuple(GaussianRational.parse(value) for value in point)
    if len(point) != f.nvars:
        raise ValueError(f"Base point has {len(point)} coordinates, expected {f.nvars}")
    if not on_sphere(point):
        raise OffSphereError(f"Point {[str(value) for value in point]} is not on the unit sphere")
    if not point[-1]:
        raise DegenerateBasePointError("The last coordinate of the base point vanishes")
    return point


class _JetRows:
    """Evaluated jet vectors at one base point, grown one level at a time."""

    def __init__(self, tower, point):
        self.tower = tower
        self.point = point
        self.rows = []
        self.level = -1

    def span_dim(self, level):
        while self.level < level:
            self.level += 1
            for vector in self.tower.level(self.level):
                self.rows.append([component.evaluate(self.point) for component in vector])
        return rank(ExactMatrix(len(self.rows), self.tower.f.N + 1, self.rows))


def jet_span_dim(f, point, level, tower=None):
    """dim E_l(p): rank of the vectors (L^J f)(p), |J| <= level."""
    point = check_base_point(f, point)
    tower = tower or JetTower(f)
    return _JetRows(tower, point).span_dim(level)


@attrs.frozen
class DegeneracyProfile:
    point: tuple = attrs.field(converter=tuple)
    dims: tuple = attrs.field(converter=tuple)
    l0: int
    transversal: bool = True
    warnings: tuple = attrs.field(default=(), converter=tuple)

    @property
    def d(self):
        return self.dims[-1]

    @property
    def strictly_increasing(self):
        tail = self.dims[1:]
        return all(a < b for a, b in zip(tail, tail[1:]))


def degeneracy_profile(f, point, tower=None):
    """d_l = dim E_l(p) - (n+1) for l = 1, 2, ... until the first level with d_{l+1} = d_l."""
    point = check_base_point(f, point)
    rows = _JetRows(tower or JetTower(f), point)
    first = rows.span_dim(1)
    if first != f.n + 1:
        raise NotTransversalError(f"dim E_1 = {first} at the base point, expected {f.n + 1}")
    dims = [0]
    while True:
        following = rows.span_dim(len(dims) + 1) - (f.n + 1)
        if following < dims[-1]:
            raise InvariantViolation(f"Jet span shrank from d={dims[-1]} to d={following}")
        if following == dims[-1]:
            break
        dims.append(following)
    if dims[-1] > f.N - f.n:
        raise InvariantViolation(f"d={dims[-1]} exceeds the codimension {f.N - f.n}")
    logger.debug(f"Profile {dims} at {[str(value) for value in point]}")
    return DegeneracyProfile(point, dims, len(dims))


def _nonzero_rational(rng, height):
    numerator = rng.choice([k for k in range(-height, height + 1) if k])
    return Fraction(numerator, rng.randint(1, height))


def sample_sphere_point(n, seed):
    """Deterministic rational point of S^n with nonzero last coordinate.

    A direction x in Q^{2n+1} is sent through inverse stereographic projection to the real
    (2n+1)-sphere in R^{2n+2}, whose coordinates are then paired into n+1 complex numbers.
    """
    config = settings.RIGIDITY_TOOLKIT
    rng = random.Random(seed)
    for _ in range(config['MAX_SAMPLE_ATTEMPTS']):
        x = [_nonzero_rational(rng, config['SAMPLE_HEIGHT']) for _ in range(2 * n + 1)]
        squared = sum(value * value for value in x)
        real = [2 * value / (1 + squared) for value in x] + [(squared - 1) / (1 + squared)]
        point = tuple(GaussianRational(real[2 * j], real[2 * j + 1]) for j in range(n + 1))
        if point[-1]:
            logger.info(f"Sampled base point {[str(value) for value in point]} (seed {seed})")
            return point
    raise DegenerateBasePointError(f"No usable base point after {config['MAX_SAMPLE_ATTEMPTS']} attempts")


def generic_profile(f, trials=None, seed=None, tower=None):
    """Profile at several sampled points; the lexicographic maximum of (d_2, d_3, ...) wins."""
    config = settings.RIGIDITY_TOOLKIT
    trials = config['DEFAULT_TRIALS'] if trials is None else trials
    seed = config['DEFAULT_SEED'] if seed is None else seed
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    tower = tower or JetTower(f)
    rng = random.Random(seed)
    profiles = []
    for _ in range(trials):
        point = sample_sphere_point(f.n, rng.randrange(2 ** 32))
        try:
            profiles.append(degeneracy_profile(f, point, tower))
        except NotTransversalError as exc:
            logger.warning(f"Skipping non-transversal sample: {exc}")
    if not profiles:
        raise NotTransversalError(f"All {trials} sampled points are non-transversal")
    best = max(profiles, key=lambda profile: profile.dims[1:])
    warnings = []
    if len(profiles) < trials:
        warnings.append(f"{trials - len(profiles)} of {trials} samples were non-transversal")
    if len({profile.dims for profile in profiles}) > 1:
        message = f"Sampled profiles disagree: {sorted({profile.dims for profile in profiles})}; using {best.dims}"
        logger.warning(message)
        warnings.append(message)
    logger.info(f"Generic profile {best.dims} (l0={best.l0}) from {len(profiles)} samples")
    return attrs.evolve(best, warnings=warnings)
