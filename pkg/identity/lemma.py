"""Exact solution spaces of the identity p(z) Q = r(z) z.

p = (p_1, ..., p_m) are linearly independent homogeneous polynomials of degree d in z_1..z_n,
Q is a constant m x n matrix and r a homogeneous polynomial of degree d - 1. Contracting with
zeta gives the equivalent form sum_j p_j(z) q_j(zeta) = r(z) * sum_c z_c zeta_c with
q_j(zeta) = sum_c Q_jc zeta_c; both forms are solved here by coefficient matching.
"""
import logging
from multiprocessing.pool import ThreadPool

import attrs
from django.conf import settings
from django.core.exceptions import ValidationError

from exact.matrices import ExactMatrix, nullspace
from exact.numbers import ZERO
from polys.polynomials import Monomial, MultiPoly, coefficient_matrix, monomials_of_degree, vector_matmul
from rigidity.defect import minimal_k

logger = logging.getLogger(__name__)


@attrs.frozen
class IdentityProblem:
    n: int
    degree: int
    p: tuple = attrs.field(converter=tuple)

    def __attrs_post_init__(self):
        if self.n < 1:
            raise ValidationError('n must be at least 1, got %(n)s.', code='n_out_of_range', params={'n': self.n})
        if self.degree < 1:
            raise ValidationError('The degree must be at least 1, got %(degree)s.', code='bad_shape',
                                  params={'degree': self.degree})
        if not self.p:
            raise ValidationError('At least one polynomial is required.', code='empty')
        for index, poly in enumerate(self.p):
            if poly.nvars != self.n:
                raise ValidationError('p_%(index)s uses %(actual)s variables instead of %(n)s.', code='bad_shape',
                                      params={'index': index + 1, 'actual': poly.nvars, 'n': self.n})
            if not poly.is_holomorphic:
                raise ValidationError('p_%(index)s depends on conjugate variables.', code='not_holomorphic',
                                      params={'index': index + 1})
            if not poly or not poly.is_homogeneous(self.degree):
                raise ValidationError('p_%(index)s is not homogeneous of degree %(degree)s.', code='inhomogeneous',
                                      params={'index': index + 1, 'degree': self.degree})
        found = coefficient_matrix(self.p).rank()
        if found != self.m:
            raise ValidationError('The %(m)s polynomials are dependent: their span has dimension %(rank)s.',
                                  code='dependent', params={'m': self.m, 'rank': found})

    @property
    def m(self):
        return len(self.p)

    def z(self):
        return [MultiPoly.z_var(self.n, c) for c in range(self.n)]


@attrs.frozen
class SolutionPair:
    Q: ExactMatrix
    r: MultiPoly

    def conjugate_form(self):
        """q_j(zeta) = sum_c Q_jc zeta_c."""
        n = self.Q.cols
        zeta = [MultiPoly.zeta_var(n, c) for c in range(n)]
        return tuple(
            sum((zeta[c].scale(self.Q[j, c]) for c in range(n) if self.Q[j, c]), MultiPoly.zero(n))
            for j in range(self.Q.rows)
        )


@attrs.frozen
class SolutionSpace:
    form: str
    basis: tuple = attrs.field(converter=tuple)

    @property
    def dim(self):
        return len(self.basis)


def lemma_bound(n, m):
    """Least k in 0..n-1 with m < sum_{j=0}^{k} (n - j); None when m >= n(n+1)/2."""
    if n < 2:
        raise ValidationError('The bound needs n >= 2, got %(n)s.', code='n_out_of_range', params={'n': n})
    if m < 1:
        raise ValidationError('Need at least one polynomial, got m=%(m)s.', code='empty', params={'m': m})
    return minimal_k(n, m)


def _r_basis(problem):
    return monomials_of_degree(problem.n, problem.degree - 1)


def _pairs_from_kernel(problem, kernel, form):
    m, n = problem.m, problem.n
    r_basis = _r_basis(problem)
    basis = []
    for vector in kernel:
        Q = ExactMatrix(m, n, [[vector[j * n + c] for c in range(n)] for j in range(m)])
        r = MultiPoly(n, [(monomial, vector[m * n + index]) for index, monomial in enumerate(r_basis)])
        basis.append(SolutionPair(Q, r))
    space = SolutionSpace(form, basis)
    logger.info(f"Solved the {form} form for n={n}, m={m}, d={problem.degree}: dim {space.dim}")
    return space


def solve_matrix_form(problem):
    """Kernel of the coefficient equations of p(z) Q - r(z) z = 0 in the unknowns (Q, r)."""
    m, n, d = problem.m, problem.n, problem.degree
    r_basis = _r_basis(problem)
    r_column = {monomial: m * n + index for index, monomial in enumerate(r_basis)}
    unknowns = m * n + len(r_basis)
    rows = []
    for c in range(n):
        for mu in monomials_of_degree(n, d):
            row = [ZERO] * unknowns
            for j, poly in enumerate(problem.p):
                row[j * n + c] = poly.coefficient(mu)
            if mu.z[c]:
                shifted = list(mu.z)
                shifted[c] -= 1
                row[r_column[Monomial(shifted, mu.zeta)]] = -1
            rows.append(row)
    system = ExactMatrix(len(rows), unknowns, rows)
    return _pairs_from_kernel(problem, nullspace(system), 'matrix')


def solve_conjugate_form(problem):
    """Kernel of sum_j p_j q_j(zeta) - r(z) sum_c z_c zeta_c = 0 in the unknowns (q, r)."""
    m, n = problem.m, problem.n
    z = problem.z()
    zeta = [MultiPoly.zeta_var(n, c) for c in range(n)]
    hermitian = sum((z[c] * zeta[c] for c in range(n)), MultiPoly.zero(n))
    contributions = [problem.p[j] * zeta[c] for j in range(m) for c in range(n)]
    contributions += [-MultiPoly(n, [(monomial, 1)]) * hermitian for monomial in _r_basis(problem)]
    system = coefficient_matrix(contributions).transpose()
    return _pairs_from_kernel(problem, nullspace(system), 'conjugate')


def verify_solution(problem, pair):
    """True iff p(z) Q = r(z) z holds identically."""
    if (pair.Q.rows, pair.Q.cols) != (problem.m, problem.n):
        raise ValidationError('Q must be %(m)sx%(n)s, got %(rows)sx%(cols)s.', code='bad_shape',
                              params={'m': problem.m, 'n': problem.n, 'rows': pair.Q.rows, 'cols': pair.Q.cols})
    if pair.r.nvars != problem.n:
        raise ValidationError('r must be a polynomial in %(n)s variables.', code='bad_shape',
                              params={'n': problem.n})
    lhs = vector_matmul(problem.p, pair.Q)
    return all(lhs[c] == pair.r * z_c for c, z_c in enumerate(problem.z()))


@attrs.frozen
class BoundReport:
    n: int
    m: int
    degree: int
    bound: object
    dim: int

    @property
    def violated(self):
        return self.bound is not None and self.dim > self.bound

    @property
    def tight(self):
        return self.bound is not None and self.dim == self.bound


def check_bound(problem):
    bound = lemma_bound(problem.n, problem.m)
    report = BoundReport(problem.n, problem.m, problem.degree, bound, solve_matrix_form(problem).dim)
    if report.violated:
        logger.error(f"Solution space of dimension {report.dim} exceeds the bound {bound} (n={problem.n}, m={problem.m})")
    return report


def bound_campaign(problems, workers=None):
    """check_bound over a stream of problems on a worker pool; reports keep the input order."""
    problems = list(problems)
    workers = workers or settings.RIGIDITY_TOOLKIT['CAMPAIGN_WORKERS']
    with ThreadPool(processes=workers) as pool:
        reports = pool.map(check_bound, problems)
    violations = sum(report.violated for report in reports)
    logger.info(f"Bound campaign: {len(reports)} problems on {workers} workers, {violations} violations")
    return reports
