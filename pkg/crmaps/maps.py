import logging

import attrs
from django.core.exceptions import ValidationError

from exact.matrices import ExactMatrix
from exact.numbers import ONE, GaussianRational
from polys.polynomials import MultiPoly

logger = logging.getLogger(__name__)


def sphere_relation(nvars):
    """sum_j z_j*zeta_j - 1, the defining polynomial of the unit sphere."""
    total = MultiPoly.constant(nvars, -ONE)
    for j in range(nvars):
        total = total + MultiPoly.z_var(nvars, j) * MultiPoly.zeta_var(nvars, j)
    return total


def on_sphere(point):
    return sum((GaussianRational.parse(value).norm() for value in point), 0) == 1


@attrs.frozen
class CRMap:
    """A polynomial map f: C^{n+1} -> C^{N+1} meant to send the unit sphere S^n into S^N."""
    n: int
    N: int
    components: tuple = attrs.field(converter=tuple)

    def __attrs_post_init__(self):
        if self.n < 1 or self.N < self.n:
            raise ValidationError(
                'Dimensions must satisfy N >= n >= 1, got n=%(n)s, N=%(N)s.',
                code='n_out_of_range', params={'n': self.n, 'N': self.N},
            )
        if len(self.components) != self.N + 1:
            raise ValidationError(
                'Expected %(expected)s components, got %(actual)s.',
                code='wrong_component_count', params={'expected': self.N + 1, 'actual': len(self.components)},
            )
        for index, component in enumerate(self.components):
            if component.nvars != self.n + 1:
                raise ValidationError(
                    'Component %(index)s uses %(actual)s variables instead of %(expected)s.',
                    code='bad_shape', params={'index': index, 'actual': component.nvars, 'expected': self.n + 1},
                )
            if not component.is_holomorphic:
                raise ValidationError(
                    'Component %(index)s depends on conjugate variables.',
                    code='not_holomorphic', params={'index': index},
                )

    @property
    def nvars(self):
        return self.n + 1

    def evaluate(self, point):
        return tuple(component.evaluate(point) for component in self.components)

    def compose_target(self, unitary):
        """U o f for a constant (N+1)x(N+1) matrix U."""
        if (unitary.rows, unitary.cols) != (self.N + 1, self.N + 1):
            raise ValueError(f"Target transformation must be {self.N + 1}x{self.N + 1}")
        components = []
        for i in range(self.N + 1):
            total = MultiPoly.zero(self.nvars)
            for k, component in enumerate(self.components):
                if unitary[i, k]:
                    total = total + component.scale(unitary[i, k])
            components.append(total)
        return CRMap(self.n, self.N, components)

    def precompose(self, unitary):
        """f o V for a constant (n+1)x(n+1) matrix V acting on the source."""
        if (unitary.rows, unitary.cols) != (self.nvars, self.nvars):
            raise ValueError(f"Source transformation must be {self.nvars}x{self.nvars}")
        substitution = []
        for j in range(self.nvars):
            total = MultiPoly.zero(self.nvars)
            for c in range(self.nvars):
                if unitary[j, c]:
                    total = total + MultiPoly.z_var(self.nvars, c).scale(unitary[j, c])
            substitution.append(total)
        return CRMap(self.n, self.N, [component.compose(substitution) for component in self.components])


def is_unitary(matrix):
    """U* U = I, with U* the conjugate transpose."""
    if matrix.rows != matrix.cols:
        return False
    adjoint = ExactMatrix(matrix.cols, matrix.rows, [
        [value.conjugate() for value in matrix.column(j)] for j in range(matrix.cols)
    ])
    return adjoint.matmul(matrix) == ExactMatrix.identity(matrix.rows)


def sphere_residual(f):
    """Remainder of sum_k f_k*conj(f_k) - 1 modulo the source sphere relation; zero iff f(S^n) lies in S^N."""
    squared_norm = MultiPoly.constant(f.nvars, -ONE)
    for component in f.components:
        squared_norm = squared_norm + component * component.conjugate()
    _, remainder = squared_norm.reduce_mod(sphere_relation(f.nvars))
    return remainder


def verify_sphere_map(f):
    remainder = sphere_residual(f)
    if remainder:
        logger.info(f"Sphere identity fails for n={f.n}, N={f.N}: remainder has {len(remainder.terms)} terms")
        return False
    return True


_ROTATIONS = (
    (('3/5', '4/5'), ('-4/5', '3/5')),
    (('5/13', '-12/13'), ('12/13', '5/13')),
    (({'re': '3/5'}, {'im': '4/5'}), ({'im': '4/5'}, {'re': '3/5'})),
)
_PHASES = (ONE, -ONE, GaussianRational(0, 1), GaussianRational(0, -1))


def random_unitary(size, rng, steps=3):
    """A seeded exact unitary: a product of coordinate swaps, rational plane rotations and unit phases."""
    result = ExactMatrix.identity(size)
    for _ in range(steps):
        factor = [[ONE if i == j else GaussianRational() for j in range(size)] for i in range(size)]
        if size == 1:
            factor[0][0] = rng.choice(_PHASES)
        else:
            i, j = rng.sample(range(size), 2)
            kind = rng.randrange(3)
            if kind == 0:
                factor[i][i] = factor[j][j] = GaussianRational()
                factor[i][j] = factor[j][i] = ONE
            elif kind == 1:
                block = rng.choice(_ROTATIONS)
                factor[i][i], factor[i][j] = block[0]
                factor[j][i], factor[j][j] = block[1]
            else:
                factor[i][i] = rng.choice(_PHASES)
        result = result.matmul(ExactMatrix(size, size, factor))
    return result
