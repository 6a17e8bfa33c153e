"""Defect integers, plane bound and image span for sphere maps.

For a profile d_1 = 0 < d_2 < ... < d_{l0}, each level gets the least k_l in 0..n-1 with
d_l - d_{l-1} < sum_{j=0}^{k_l} (n - j). With k = sum k_l < n the image lies in an affine
plane of dimension n + d + k + 1, d = d_{l0}; conversely it never fits in one of dimension
below n + d + 1.
"""
import logging
from typing import Optional

import attrs
from django.core.exceptions import ValidationError

from crmaps.jets import DegeneracyProfile, generic_profile
from crmaps.maps import verify_sphere_map
from polys.polynomials import coefficient_matrix, monomial_basis
from utils.exceptions import NotASphereMapError

logger = logging.getLogger(__name__)


def partial_sum(n, k):
    """sum_{j=0}^{k} (n - j)."""
    return (k + 1) * n - k * (k + 1) // 2


def minimal_k(n, increment):
    """Least k in 0..n-1 with increment < partial_sum(n, k); None when increment >= n(n+1)/2."""
    for k in range(n):
        if increment < partial_sum(n, k):
            return k
    return None


def _check_profile(n, dims):
    if n < 1:
        raise ValidationError('n must be at least 1, got %(n)s.', code='n_out_of_range', params={'n': n})
    dims = tuple(dims)
    if not dims or dims[0] != 0:
        raise ValidationError('A profile starts with d_1 = 0.', code='malformed_profile', params={'dims': dims})
    if any(not isinstance(value, int) or value < 0 for value in dims):
        raise ValidationError('Profile entries must be nonnegative integers.', code='malformed_profile',
                              params={'dims': dims})
    if any(a > b for a, b in zip(dims, dims[1:])):
        raise ValidationError('Profile %(dims)s is not nondecreasing.', code='malformed_profile',
                              params={'dims': dims})
    return dims


def codim_criterion(n, N):
    """N - n < n(n+1)/2, which guarantees admissible k_l for every profile of a map into S^N."""
    if N < n:
        raise ValidationError('Need N >= n, got n=%(n)s, N=%(N)s.', code='n_out_of_range',
                              params={'n': n, 'N': N})
    return 2 * (N - n) < n * (n + 1)


@attrs.frozen
class DefectReport:
    n: int
    dims: tuple = attrs.field(converter=tuple)
    k_per_level: tuple = attrs.field(converter=tuple)
    k: object
    plane_bound: object
    reasons: tuple = attrs.field(default=(), converter=tuple)
    N: object = None

    @property
    def d(self):
        return self.dims[-1]

    @property
    def increments(self):
        return tuple(b - a for a, b in zip(self.dims, self.dims[1:]))

    @property
    def hypothesis_ok(self):
        return not self.reasons

    @property
    def codim_criterion_ok(self):
        return None if self.N is None else codim_criterion(self.n, self.N)


def defect(n, dims, N=None):
    dims = _check_profile(n, dims)
    k_per_level = []
    reasons = []
    for level, (previous, current) in enumerate(zip(dims, dims[1:]), start=2):
        increment = current - previous
        k_level = minimal_k(n, increment)
        if k_level is None:
            reasons.append(f"increment d_{level} - d_{level - 1} = {increment} is not below n(n+1)/2 = {n * (n + 1) // 2}")
        k_per_level.append(k_level)
    if None in k_per_level:
        k, plane_bound = None, None
    else:
        k = sum(k_per_level)
        plane_bound = n + dims[-1] + k + 1
        if k >= n:
            reasons.append(f"k = {k} is not below n = {n}")
    return DefectReport(n, dims, k_per_level, k, plane_bound, reasons, N)


def image_span_dim(f):
    """Dimension of the affine hull of f(S^n): rank of the coefficients of the nonconstant monomials."""
    nonconstant = [component - component.homogeneous_component(0) for component in f.components]
    basis = monomial_basis(nonconstant)
    if not basis:
        return 0
    return coefficient_matrix(nonconstant, basis).rank()


@attrs.frozen
class RigidityVerdict:
    defect: DefectReport
    image_span: int
    profile: Optional[DegeneracyProfile] = None

    @property
    def warnings(self):
        return self.profile.warnings if self.profile is not None else ()

    @property
    def lower_bound_ok(self):
        return self.image_span >= self.defect.n + self.defect.d + 1

    @property
    def upper_bound_ok(self):
        if self.defect.plane_bound is None:
            return None
        return self.image_span <= self.defect.plane_bound

    @property
    def sharp(self):
        return self.image_span == self.defect.plane_bound

    @property
    def bound_breached(self):
        return not self.lower_bound_ok or (self.defect.hypothesis_ok and not self.upper_bound_ok)


def analyze(f, trials=None, seed=None):
    if not verify_sphere_map(f):
        raise NotASphereMapError(f"The map does not send S^{f.n} into S^{f.N}")
    profile = generic_profile(f, trials=trials, seed=seed)
    report = defect(f.n, profile.dims, f.N)
    verdict = RigidityVerdict(report, image_span_dim(f), profile)
    for reason in report.reasons:
        logger.warning(f"Hypothesis not satisfied: {reason}")
    if verdict.bound_breached:
        logger.error(f"Bound breached: image span {verdict.image_span}, profile {report.dims}, "
                     f"plane bound {report.plane_bound}")
    logger.info(f"Verdict for n={f.n}, N={f.N}: d={report.d}, k={report.k}, "
                f"plane bound {report.plane_bound}, image span {verdict.image_span}")
    return verdict
