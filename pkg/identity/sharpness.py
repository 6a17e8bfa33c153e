import logging

import attrs
from django.core.exceptions import ValidationError

from exact.matrices import ExactMatrix
from identity.lemma import IdentityProblem, SolutionPair, lemma_bound, solve_matrix_form, verify_solution
from polys.polynomials import MultiPoly, monomials_of_degree
from rigidity.defect import partial_sum
from utils.exceptions import InvariantViolation

logger = logging.getLogger(__name__)

READINGS = {
    False: 'm = sum_{j=0}^{k-1} (n - j): p runs through z_k z_n, giving dim = k = bound',
    True: 'm = sum_{j=0}^{k} (n - j): p runs through z_{k+1} z_n',
}


@attrs.frozen
class SharpExample:
    n: int
    k: int
    literal: bool
    problem: IdentityProblem
    solutions: tuple = attrs.field(converter=tuple)
    dim: int
    bound: object

    @property
    def m(self):
        return self.problem.m

    @property
    def reading(self):
        return READINGS[self.literal]

    @property
    def tight(self):
        return self.dim == self.bound


def _pair_index(n):
    """Position of z_a z_b (a <= b) in the degree-2 ordering."""
    return {tuple(sorted(i for i, e in enumerate(mono.z) for _ in range(e))): position
            for position, mono in enumerate(monomials_of_degree(n, 2))}


def sharp_example(n, k, literal=False):
    """The first m quadratic monomials together with k explicit solutions (r = z_i)."""
    if n < 2:
        raise ValidationError('Sharp examples need n >= 2, got %(n)s.', code='n_out_of_range', params={'n': n})
    if not 1 <= k <= n - 1:
        raise ValidationError('k must lie in 1..%(top)s, got %(k)s.', code='k_out_of_range',
                              params={'k': k, 'top': n - 1})
    m = partial_sum(n, k if literal else k - 1)
    p = [MultiPoly(n, [(monomial, 1)]) for monomial in monomials_of_degree(n, 2)[:m]]
    problem = IdentityProblem(n, 2, p)
    index = _pair_index(n)
    solutions = []
    for i in range(k):
        rows = [[0] * n for _ in range(m)]
        for c in range(n):
            rows[index[tuple(sorted((i, c)))]][c] = 1
        pair = SolutionPair(ExactMatrix(m, n, rows), MultiPoly.z_var(n, i))
        if not verify_solution(problem, pair):
            raise InvariantViolation(f"Constructed solution r = z{i + 1} does not solve the identity")
        solutions.append(pair)
    example = SharpExample(n, k, literal, problem, solutions, solve_matrix_form(problem).dim, lemma_bound(n, m))
    if example.bound is not None and example.dim > example.bound:
        raise InvariantViolation(f"Solution space of dimension {example.dim} exceeds the bound {example.bound}")
    logger.info(f"Sharp example n={n}, k={k}, literal={literal}: m={m}, dim={example.dim}, bound={example.bound}")
    return example
