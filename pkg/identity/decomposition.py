"""Structure of p given k independent solutions of p(z) Q = r(z) z.

p = sum_j h_j v_j + sum_i r_i s_i, where the constant vectors v_j span the common left kernel of
the Q_i, the h_j are homogeneous of degree d and the s_i are linear vectors. Built one solution
at a time: a left inverse handles the first, and each further solution splits the current
kernel coordinates into the part Q_{i+1} annihilates and a part absorbed into the s vectors.
"""
import logging

import attrs
from django.core.exceptions import ValidationError

from exact.matrices import ExactMatrix
from identity.lemma import verify_solution
from polys.polynomials import MultiPoly, vector_matmul
from utils.exceptions import InvariantViolation

logger = logging.getLogger(__name__)


@attrs.frozen
class Decomposition:
    problem: object
    solutions: tuple = attrs.field(converter=tuple)
    v: ExactMatrix
    h: tuple = attrs.field(converter=tuple)
    s: tuple = attrs.field(converter=tuple)

    @property
    def kappa(self):
        return self.v.rows

    @property
    def r(self):
        return tuple(pair.r for pair in self.solutions)

    def reconstruct(self):
        total = _times(self.h, self.v, self.problem.n)
        for pair, s_i in zip(self.solutions, self.s):
            total = tuple(a + pair.r * b for a, b in zip(total, s_i))
        return total

    def verify(self):
        if self.reconstruct() != tuple(self.problem.p):
            return False
        if any(not self.v.matmul(pair.Q).is_zero() for pair in self.solutions):
            return False
        return all(poly.is_homogeneous(self.problem.degree) for poly in self.h if poly) and all(
            poly.is_homogeneous(1) for s_i in self.s for poly in s_i if poly
        )


def _times(vector, matrix, nvars):
    if not vector:
        return tuple(MultiPoly.zero(nvars) for _ in range(matrix.cols))
    return vector_matmul(vector, matrix)


def _left_kernel(matrix):
    """Rows spanning {a : a @ matrix = 0}."""
    basis = matrix.transpose().nullspace()
    return ExactMatrix(len(basis), matrix.rows, basis)


def _complement(kernel, size):
    """Standard basis rows that extend `kernel` to a basis of the whole row space."""
    rows = [list(row) for row in kernel.entries]
    extra = []
    for i in range(size):
        candidate = [1 if j == i else 0 for j in range(size)]
        if ExactMatrix(len(rows) + 1, size, rows + [candidate]).rank() > len(rows):
            rows.append(candidate)
            extra.append(candidate)
    return ExactMatrix(len(extra), size, extra)


def _check_inputs(problem, solutions):
    if not solutions:
        raise ValidationError('At least one solution is required.', code='empty')
    for index, pair in enumerate(solutions):
        if not verify_solution(problem, pair):
            raise ValidationError('Solution %(index)s does not satisfy p(z) Q = r(z) z.', code='not_a_solution',
                                  params={'index': index + 1})
    stacked = ExactMatrix(len(solutions), problem.m * problem.n, [pair.Q.flatten() for pair in solutions])
    if stacked.rank() != len(solutions):
        raise ValidationError('The %(k)s solutions are linearly dependent.', code='dependent_solutions',
                              params={'k': len(solutions)})


def decompose(problem, solutions):
    solutions = list(solutions)
    _check_inputs(problem, solutions)
    n, m = problem.n, problem.m
    z = problem.z()

    first = solutions[0].Q
    left = first.left_inverse()
    v = _left_kernel(first)
    h = ()
    if v.rows:
        projected = first.matmul(left)
        residual_map = ExactMatrix(m, m, [
            [(1 if i == j else 0) - projected[i, j] for j in range(m)] for i in range(m)
        ])
        h = vector_matmul(vector_matmul(problem.p, residual_map), v.right_inverse())
    s = [vector_matmul(z, left)]

    for pair in solutions[1:]:
        if not v.rows:
            s.append(tuple(MultiPoly.zero(n) for _ in range(m)))
            continue
        A = v.matmul(pair.Q)
        kept = _left_kernel(A)
        rest = _complement(kept, v.rows)
        change = ExactMatrix(v.rows, v.rows, list(kept.entries) + list(rest.entries))
        h = _times(h, change.inverse(), n)[:kept.rows]
        if rest.rows:
            correction = rest.matmul(A).right_inverse().matmul(rest.matmul(v))
            s = [tuple(a - b for a, b in zip(s_i, vector_matmul(vector_matmul(s_i, pair.Q), correction)))
                 for s_i in s]
            s.append(vector_matmul(z, correction))
        else:
            s.append(tuple(MultiPoly.zero(n) for _ in range(m)))
        v = kept.matmul(v)

    result = Decomposition(problem, solutions, v, h, s)
    if not result.verify():
        raise InvariantViolation("Decomposition does not reconstruct p")
    logger.info(f"Decomposed n={n}, m={m} with {len(solutions)} solutions: kappa={result.kappa}")
    return result
