import random
from fractions import Fraction

import sympy
from django.test import SimpleTestCase

from exact.matrices import ExactMatrix, _eliminate, nullspace, rank
from exact.numbers import I, ONE, ZERO, CirclePoint, GaussianRational, circle_point
from exact.serializers import ExactMatrixField, GaussianRationalField, RationalField


def random_rational(rng, height=9):
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_gaussian(rng, height=9):
    return GaussianRational(random_rational(rng, height), random_rational(rng, height))


def random_matrix(rng, rows, cols, inner=None):
    """Random matrix; when `inner` is given it is a product through an inner dimension, so rank <= inner."""
    if inner is None:
        return ExactMatrix(rows, cols, [[random_gaussian(rng, 4) for _ in range(cols)] for _ in range(rows)])
    return random_matrix(rng, rows, inner).matmul(random_matrix(rng, inner, cols))


def to_sympy(matrix):
    return sympy.Matrix([
        [sympy.Rational(v.re.numerator, v.re.denominator) + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator)
         for v in row]
        for row in matrix.entries
    ])


class GaussianRationalTests(SimpleTestCase):
    def test_canonical_form(self):
        value = GaussianRational(Fraction(6, -8), Fraction(10, 4))
        self.assertEqual(value.re, Fraction(-3, 4))
        self.assertEqual(value.re.denominator, 4)
        self.assertEqual(value, GaussianRational('-3/4', '5/2'))
        self.assertEqual(hash(value), hash(GaussianRational(Fraction(-3, 4), Fraction(5, 2))))

    def test_rejects_floats(self):
        with self.assertRaises(ValueError):
            GaussianRational(0.1)
        with self.assertRaises(ValueError):
            GaussianRational(1, 0.5)
        with self.assertRaises(ValueError):
            GaussianRational(True)
        self.assertEqual(GaussianRational('1/10') * 10, ONE)

    def test_imaginary_unit(self):
        self.assertEqual(I * I, -ONE)
        self.assertEqual((GaussianRational(3, 4) * GaussianRational(3, -4)), GaussianRational(25))
        self.assertEqual(GaussianRational(3, 4).norm(), 25)

    def test_field_axioms_on_random_triples(self):
        rng = random.Random(7)
        for _ in range(300):
            a, b, c = (random_gaussian(rng) for _ in range(3))
            self.assertEqual((a + b) + c, a + (b + c))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual(a * b, b * a)
            self.assertEqual(a - a, ZERO)
            if a:
                self.assertEqual(a * a.inverse(), ONE)
                self.assertEqual((b / a) * a, b)

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            ONE / ZERO

    def test_powers(self):
        self.assertEqual(I ** 4, ONE)
        self.assertEqual(GaussianRational(1, 1) ** 2, GaussianRational(0, 2))
        self.assertEqual(GaussianRational(2) ** -2, GaussianRational(Fraction(1, 4)))

    def test_parse_and_format(self):
        self.assertEqual(GaussianRational.parse({'re': '3/5', 'im': '-4/5'}), GaussianRational('3/5', '-4/5'))
        self.assertEqual(GaussianRational.parse('7'), GaussianRational(7))
        self.assertEqual(str(GaussianRational('3/5', '-4/5')), '3/5-4/5i')
        self.assertEqual(str(-I), '-i')
        self.assertEqual(str(GaussianRational(2, 1)), '2+i')
        with self.assertRaises(ValueError):
            GaussianRational.parse('0.6')
        with self.assertRaises(ValueError):
            GaussianRational.parse({'re': '1', 'imag': '2'})


class CirclePointTests(SimpleTestCase):
    def test_worked_values(self):
        self.assertEqual(circle_point(0), CirclePoint(1, 0))
        self.assertEqual(circle_point('1/2'), CirclePoint('3/5', '4/5'))
        self.assertEqual(circle_point(1), CirclePoint(0, 1))

    def test_random_parameters_stay_on_the_circle(self):
        rng = random.Random(11)
        for _ in range(1000):
            point = circle_point(random_rational(rng, 1000))
            self.assertEqual(point.c ** 2 + point.s ** 2, 1)

    def test_rejects_points_off_the_circle(self):
        with self.assertRaises(ValueError):
            CirclePoint('3/5', '3/5')


class RankAndNullspaceTests(SimpleTestCase):
    def test_worked_ranks(self):
        self.assertEqual(rank(ExactMatrix.identity(3)), 3)
        self.assertEqual(rank(ExactMatrix.from_rows([[ONE, I], [I, -ONE]])), 1)
        self.assertEqual(rank(ExactMatrix.zeros(3, 4)), 0)

    def test_worked_nullspaces(self):
        self.assertEqual(nullspace(ExactMatrix.identity(2)), [])

        (vector,) = nullspace(ExactMatrix.from_rows([[1, 1]]))
        self.assertEqual(vector[0], -vector[1])
        self.assertTrue(vector[0])

        (vector,) = nullspace(ExactMatrix.from_rows([[ONE, I], [I, -ONE]]))
        self.assertEqual(vector[0] + I * vector[1], ZERO)
        self.assertTrue(any(vector))

    def test_rank_nullity_and_kernel_on_random_matrices(self):
        rng = random.Random(3)
        for trial in range(60):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            inner = rng.choice([None, 1, 2, 3])
            matrix = random_matrix(rng, rows, cols, inner)
            with self.subTest(trial=trial):
                basis = nullspace(matrix)
                self.assertEqual(rank(matrix) + len(basis), cols)
                self.assertEqual(rank(matrix), rank(matrix.transpose()))
                for vector in basis:
                    self.assertTrue(all(value == ZERO for value in matrix.apply(vector)))

    def test_rank_agrees_with_sympy(self):
        rng = random.Random(5)
        for trial in range(15):
            matrix = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), rng.choice([None, 1, 2]))
            with self.subTest(trial=trial):
                self.assertEqual(rank(matrix), to_sympy(matrix).rank())

    def test_rref_is_idempotent(self):
        rng = random.Random(9)
        for _ in range(20):
            matrix = random_matrix(rng, 4, 5, rng.choice([None, 2]))
            reduced, pivots = matrix.rref()
            again, again_pivots = reduced.rref()
            self.assertEqual(reduced, again)
            self.assertEqual(pivots, again_pivots)

    def test_pivot_has_the_largest_numerator(self):
        reduced, pivots = _eliminate([[1, 1], [3, 0]], 2, back_substitute=False)
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(reduced, [{0: ONE}, {1: ONE}])

        reduced, _ = _eliminate([[I, 1], [GaussianRational(1, -5), 0], [2, 2]], 2, back_substitute=False)
        self.assertEqual(reduced[0], {0: ONE})

    def test_rank_is_deterministic(self):
        matrix = random_matrix(random.Random(1), 5, 5, 3)
        self.assertEqual(matrix.rref(), matrix.rref())
        self.assertEqual(nullspace(matrix), nullspace(matrix))


class InverseTests(SimpleTestCase):
    def test_inverse(self):
        rotation = ExactMatrix.from_rows([['3/5', '4/5'], ['-4/5', '3/5']])
        self.assertEqual(rotation.matmul(rotation.inverse()), ExactMatrix.identity(2))
        self.assertEqual(rotation.inverse(), rotation.transpose())
        with self.assertRaises(ValueError):
            ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_one_sided_inverses(self):
        rng = random.Random(13)
        for _ in range(20):
            tall = random_matrix(rng, 5, 3)
            if rank(tall) < 3:
                continue
            self.assertEqual(tall.left_inverse().matmul(tall), ExactMatrix.identity(3))
            wide = tall.transpose()
            self.assertEqual(wide.matmul(wide.right_inverse()), ExactMatrix.identity(3))

    def test_left_inverse_requires_full_column_rank(self):
        with self.assertRaises(ValueError):
            ExactMatrix.from_rows([[1, 1], [2, 2], [3, 3]]).left_inverse()


class SerializerFieldTests(SimpleTestCase):
    def test_rational_field(self):
        field = RationalField()
        self.assertEqual(field.to_internal_value('3/5'), Fraction(3, 5))
        self.assertEqual(field.to_internal_value(4), Fraction(4))
        self.assertEqual(field.to_representation(Fraction(-3, 5)), '-3/5')

    def test_gaussian_field_round_trip(self):
        field = GaussianRationalField()
        value = GaussianRational('3/5', '-4/5')
        self.assertEqual(field.to_representation(value), {'re': '3/5', 'im': '-4/5'})
        self.assertEqual(field.to_internal_value(field.to_representation(value)), value)

    def test_matrix_field_round_trip(self):
        field = ExactMatrixField()
        matrix = ExactMatrix.from_rows([[ONE, I], ['1/2', 0]])
        self.assertEqual(field.to_internal_value(field.to_representation(matrix)), matrix)
