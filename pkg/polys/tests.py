import random
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from exact.matrices import ExactMatrix
from exact.numbers import I, ONE, ZERO, GaussianRational
from polys.polynomials import (
    Kind, Monomial, MultiPoly, coefficient_matrix, evaluate, monomials_of_degree, reduce_mod, vector_matmul,
)
from polys.serializers import PolynomialField


def z(nvars, index):
    return MultiPoly.z_var(nvars, index)


def zeta(nvars, index):
    return MultiPoly.zeta_var(nvars, index)


def random_poly(rng, nvars=2, max_terms=4, max_exponent=2):
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        monomial = Monomial([rng.randint(0, max_exponent) for _ in range(nvars)],
                            [rng.randint(0, max_exponent) for _ in range(nvars)])
        coeff = GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), rng.randint(-3, 3))
        terms.append((monomial, coeff))
    return MultiPoly(nvars, terms)


def random_point(rng, nvars=2):
    return [GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 5)), Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
            for _ in range(nvars)]


class ArithmeticTests(SimpleTestCase):
    def test_worked_products(self):
        z1, zeta1 = z(1, 0), zeta(1, 0)
        self.assertEqual((z1 + zeta1) * (z1 - zeta1), z1 ** 2 - zeta1 ** 2)

        z1, z2 = z(2, 0), z(2, 1)
        self.assertEqual(z1 * z2 * z2, MultiPoly.monomial(2, z=[1, 2]))

    def test_adding_zero(self):
        p = random_poly(random.Random(1))
        self.assertEqual(p + MultiPoly.zero(2), p)

    def test_canonical_form(self):
        z1 = z(2, 0)
        self.assertEqual(z1 - z1, MultiPoly.zero(2))
        self.assertEqual((z1 - z1).terms, ())
        self.assertEqual(MultiPoly(2, [(Monomial([1, 0], [0, 0]), 2), (Monomial([1, 0], [0, 0]), -1)]), z1)

    def test_variable_count_mismatch(self):
        with self.assertRaises(ValueError):
            z(2, 0) + z(3, 0)

    def test_ring_axioms_on_random_triples(self):
        rng = random.Random(21)
        for _ in range(100):
            a, b, c = (random_poly(rng) for _ in range(3))
            self.assertEqual((a + b) + c, a + (b + c))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual(a * b, b * a)

    def test_leading_term_orders_z_before_zeta(self):
        sphere = sum((z(2, j) * zeta(2, j) for j in range(2)), MultiPoly.zero(2)) - 1
        monomial, coeff = sphere.leading_term()
        self.assertEqual(monomial, Monomial([1, 0], [1, 0]))
        self.assertEqual(coeff, ONE)


class ConjugateTests(SimpleTestCase):
    def test_worked_conjugates(self):
        self.assertEqual((z(1, 0) ** 2).scale(I).conjugate(), (zeta(1, 0) ** 2).scale(-I))
        term = (z(2, 0) * zeta(2, 1)).scale(Fraction(3, 5))
        self.assertEqual(term.conjugate(), (zeta(2, 0) * z(2, 1)).scale(Fraction(3, 5)))

    def test_involution_and_multiplicativity(self):
        rng = random.Random(4)
        for _ in range(100):
            a, b = random_poly(rng), random_poly(rng)
            self.assertEqual(a.conjugate().conjugate(), a)
            self.assertEqual((a * b).conjugate(), a.conjugate() * b.conjugate())


class DerivativeTests(SimpleTestCase):
    def test_worked_derivatives(self):
        z1 = z(1, 0)
        self.assertEqual((z1 ** 2).partial_derivative(0), z1.scale(2))
        self.assertEqual((z1 ** 2).partial_derivative(0, Kind.ZETA), MultiPoly.zero(1))

        z1, z2 = z(2, 0), z(2, 1)
        p = z1 * z2 ** 2 + zeta(2, 1)
        self.assertEqual(p.partial_derivative(1), (z1 * z2).scale(2))

    def test_index_out_of_range(self):
        with self.assertRaises(IndexError):
            z(2, 0).partial_derivative(2)

    def test_leibniz_rule(self):
        rng = random.Random(8)
        for _ in range(50):
            a, b = random_poly(rng), random_poly(rng)
            for kind in Kind:
                lhs = (a * b).partial_derivative(1, kind)
                rhs = a.partial_derivative(1, kind) * b + a * b.partial_derivative(1, kind)
                self.assertEqual(lhs, rhs)


class EvaluateTests(SimpleTestCase):
    def test_worked_values(self):
        self.assertEqual((z(1, 0) * zeta(1, 0)).evaluate([GaussianRational('3/5', '4/5')]), ONE)
        self.assertEqual(MultiPoly.constant(3, 7).evaluate([I, ONE, ZERO]), GaussianRational(7))
        self.assertEqual(evaluate(z(2, 0) + zeta(2, 1), [I, I]), ZERO)

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            z(2, 0).evaluate([ONE])

    def test_ring_homomorphism(self):
        rng = random.Random(17)
        for _ in range(100):
            a, b = random_poly(rng), random_poly(rng)
            point = random_point(rng)
            self.assertEqual((a + b).evaluate(point), a.evaluate(point) + b.evaluate(point))
            self.assertEqual((a * b).evaluate(point), a.evaluate(point) * b.evaluate(point))
            self.assertEqual(a.conjugate().evaluate(point), a.evaluate(point).conjugate())


class ReduceModTests(SimpleTestCase):
    def setUp(self):
        self.sphere = z(2, 0) * zeta(2, 0) + z(2, 1) * zeta(2, 1) - 1

    def test_single_division_step(self):
        quotient, remainder = reduce_mod(z(2, 0) * zeta(2, 0), self.sphere)
        self.assertEqual(quotient, MultiPoly.constant(2, 1))
        self.assertEqual(remainder, 1 - z(2, 1) * zeta(2, 1))

    def test_reduce_divisor_by_itself(self):
        quotient, remainder = self.sphere.reduce_mod(self.sphere)
        self.assertEqual(quotient, MultiPoly.constant(2, 1))
        self.assertFalse(remainder)

    def test_no_divisible_monomial(self):
        quotient, remainder = z(2, 0).reduce_mod(z(2, 1) * zeta(2, 1) - 1)
        self.assertFalse(quotient)
        self.assertEqual(remainder, z(2, 0))

    def test_zero_divisor(self):
        with self.assertRaises(ValueError):
            z(2, 0).reduce_mod(MultiPoly.zero(2))

    def test_reconstruction_on_random_inputs(self):
        rng = random.Random(31)
        for trial in range(100):
            a = random_poly(rng, max_terms=6, max_exponent=3)
            h = random_poly(rng, max_terms=3)
            if not h:
                continue
            with self.subTest(trial=trial):
                quotient, remainder = a.reduce_mod(h)
                self.assertEqual(quotient * h + remainder, a)
                lead, _ = h.leading_term()
                self.assertFalse(any(lead.divides(monomial) for monomial in remainder.support))


class HomogeneousTests(SimpleTestCase):
    def test_worked_components(self):
        z1, z2 = z(2, 0), z(2, 1)
        self.assertEqual((z1 ** 2 + z1).homogeneous_component(2), z1 ** 2)
        self.assertEqual((z1 ** 2 + z1).homogeneous_component(5), MultiPoly.zero(2))
        self.assertTrue((z1 * z2).is_homogeneous(2))
        self.assertFalse((z1 ** 2 + z1).is_homogeneous(2))

    def test_components_sum_back(self):
        rng = random.Random(2)
        for _ in range(50):
            a = random_poly(rng, max_terms=6)
            total = MultiPoly.zero(2)
            for degree in range(0, 9):
                total = total + a.homogeneous_component(degree)
            self.assertEqual(total, a)
            self.assertEqual(sum(a.homogeneous_components().values(), MultiPoly.zero(2)), a)


class CoefficientMatrixTests(SimpleTestCase):
    def test_worked_ranks(self):
        z1, z2 = z(2, 0), z(2, 1)
        self.assertEqual(coefficient_matrix([z1, z2, z1]).rank(), 2)
        self.assertEqual(coefficient_matrix([z1 ** 2, z1 * z2, z2 ** 2]).rank(), 3)
        p = z1 ** 2 + z2.scale(I)
        self.assertEqual(coefficient_matrix([p, -p]).rank(), 1)

    def test_empty_input(self):
        with self.assertRaises(ValidationError) as ctx:
            coefficient_matrix([])
        self.assertEqual(ctx.exception.code, 'empty')

    def test_monomials_of_degree_order(self):
        names = [str(m) for m in monomials_of_degree(3, 2)]
        self.assertEqual(names, ['z1^2', 'z1*z2', 'z1*z3', 'z2^2', 'z2*z3', 'z3^2'])
        self.assertEqual(len(monomials_of_degree(4, 3)), 20)

    def test_vector_matmul(self):
        z1, z2 = z(2, 0), z(2, 1)
        matrix = ExactMatrix.from_rows([[1, 0], [0, I]])
        self.assertEqual(vector_matmul([z1, z2], matrix), (z1, z2.scale(I)))


class CompositionTests(SimpleTestCase):
    def test_compose_agrees_with_evaluation(self):
        rng = random.Random(12)
        for _ in range(30):
            a = random_poly(rng)
            g = [random_poly(rng, max_terms=2, max_exponent=1) + z(2, j) for j in range(2)]
            point = random_point(rng)
            inner = [poly.evaluate(point) for poly in g]
            self.assertEqual(a.compose(g).evaluate(point), a.evaluate(inner))


class PolynomialFieldTests(SimpleTestCase):
    def test_round_trip(self):
        field = PolynomialField()
        p = (z(2, 0) * zeta(2, 1)).scale(GaussianRational('3/5', '1')) + z(2, 1)
        data = field.to_representation(p)
        self.assertEqual(field.to_internal_value(data), p)

    def test_zeta_may_be_omitted(self):
        field = PolynomialField()
        p = field.to_internal_value([{'coeff': {'re': '4/5', 'im': '0'}, 'z': [1, 1]}])
        self.assertEqual(p, (z(2, 0) * z(2, 1)).scale(Fraction(4, 5)))
        self.assertEqual(field.to_representation(p), [{'coeff': {'re': '4/5', 'im': '0'}, 'z': [1, 1]}])

    def test_zero_polynomial_takes_declared_variable_count(self):
        self.assertEqual(PolynomialField(nvars=3).to_internal_value([]), MultiPoly.zero(3))
