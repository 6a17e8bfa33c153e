import random

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from exact.matrices import ExactMatrix
from identity.decomposition import decompose
from identity.lemma import (
    IdentityProblem, SolutionPair, bound_campaign, check_bound, lemma_bound, solve_conjugate_form, solve_matrix_form,
    verify_solution,
)
from identity.serializers import (
    BoundReportSerializer, DecompositionSerializer, IdentityProblemSerializer, SharpExampleSerializer,
    SolutionSpaceSerializer,
)
from identity.sharpness import sharp_example
from polys.polynomials import MultiPoly, coefficient_matrix, monomials_of_degree


def z(nvars, *indices):
    result = MultiPoly.constant(nvars, 1)
    for index in indices:
        result = result * MultiPoly.z_var(nvars, index)
    return result


def random_problem(rng, n, degree, m):
    monomials = monomials_of_degree(n, degree)
    while True:
        p = [
            MultiPoly(n, [(monomial, rng.choice((-2, -1, 1, 2, 3)))
                          for monomial in rng.sample(monomials, rng.randint(1, min(3, len(monomials))))])
            for _ in range(m)
        ]
        if coefficient_matrix(p).rank() == m:
            return IdentityProblem(n, degree, p)


def random_problems(seed, count):
    rng = random.Random(seed)
    for n in (2, 3, 4):
        for degree in (2, 3):
            top = min(len(monomials_of_degree(n, degree)), n * (n + 1) // 2 - 1)
            for _ in range(count):
                yield random_problem(rng, n, degree, rng.randint(1, top))


class IdentityProblemTests(SimpleTestCase):
    def test_validation_codes(self):
        cases = [
            (IdentityProblem, (2, 2, [z(2, 0, 0), z(2, 1)]), 'inhomogeneous'),
            (IdentityProblem, (2, 2, [z(2, 0, 0), z(2, 0, 0).scale(2)]), 'dependent'),
            (IdentityProblem, (2, 2, []), 'empty'),
            (IdentityProblem, (2, 2, [z(3, 0, 0)]), 'bad_shape'),
            (IdentityProblem, (0, 2, [z(2, 0, 0)]), 'n_out_of_range'),
            (IdentityProblem, (2, 2, [z(2, 0) * MultiPoly.zeta_var(2, 1)]), 'not_holomorphic'),
        ]
        for factory, args, code in cases:
            with self.subTest(code=code):
                with self.assertRaises(ValidationError) as ctx:
                    factory(*args)
                self.assertEqual(ctx.exception.code, code)

    def test_zero_polynomial_is_not_homogeneous(self):
        with self.assertRaises(ValidationError) as ctx:
            IdentityProblem(2, 2, [MultiPoly.zero(2)])
        self.assertEqual(ctx.exception.code, 'inhomogeneous')


class LemmaBoundTests(SimpleTestCase):
    def test_worked_values(self):
        self.assertEqual(lemma_bound(2, 1), 0)
        self.assertEqual(lemma_bound(2, 2), 1)
        self.assertIsNone(lemma_bound(2, 3))
        self.assertEqual(lemma_bound(3, 5), 2)
        self.assertIsNone(lemma_bound(3, 6))
        self.assertEqual(lemma_bound(4, 4), 1)

    def test_requires_two_variables(self):
        with self.assertRaises(ValidationError) as ctx:
            lemma_bound(1, 1)
        self.assertEqual(ctx.exception.code, 'n_out_of_range')


class SolveTests(SimpleTestCase):
    def test_one_solution(self):
        problem = IdentityProblem(2, 2, [z(2, 0, 0), z(2, 0, 1)])
        space = solve_matrix_form(problem)
        self.assertEqual(space.dim, 1)
        pair = space.basis[0]
        self.assertTrue(verify_solution(problem, pair))
        # Q is a multiple of the identity and r the same multiple of z1
        self.assertEqual(pair.r, z(2, 0).scale(pair.Q[0, 0]))
        self.assertEqual(pair.Q, ExactMatrix(2, 2, [[pair.Q[0, 0], 0], [0, pair.Q[0, 0]]]))

    def test_worked_examples(self):
        self.assertEqual(solve_matrix_form(IdentityProblem(2, 2, [z(2, 0, 0)])).dim, 0)
        report = check_bound(IdentityProblem(3, 2, [z(3, 0, 0), z(3, 0, 1), z(3, 0, 2), z(3, 1, 1), z(3, 1, 2)]))
        self.assertEqual((report.bound, report.dim), (2, 2))
        self.assertTrue(report.tight)
        problem = IdentityProblem(3, 2, [z(3, 0, 0), z(3, 0, 1), z(3, 0, 2)])
        self.assertTrue(verify_solution(problem, SolutionPair(ExactMatrix.identity(3), z(3, 0))))
        self.assertEqual(SolutionPair(ExactMatrix.identity(3), z(3, 0)).conjugate_form(),
                         tuple(MultiPoly.zeta_var(3, c) for c in range(3)))

    def test_no_solution(self):
        problem = IdentityProblem(2, 2, [z(2, 0, 0), z(2, 1, 1)])
        self.assertEqual(solve_matrix_form(problem).dim, 0)
        self.assertEqual(solve_conjugate_form(problem).dim, 0)

    def test_all_quadratics(self):
        problem = IdentityProblem(2, 2, [z(2, 0, 0), z(2, 0, 1), z(2, 1, 1)])
        self.assertEqual(solve_matrix_form(problem).dim, 2)

    def test_linear_polynomials(self):
        self.assertEqual(solve_matrix_form(IdentityProblem(2, 1, [z(2, 0), z(2, 1)])).dim, 1)
        self.assertEqual(solve_matrix_form(IdentityProblem(2, 1, [z(2, 0)])).dim, 0)

    def test_verify_rejects_wrong_shapes(self):
        problem = IdentityProblem(2, 2, [z(2, 0, 0), z(2, 0, 1)])
        with self.assertRaises(ValidationError):
            verify_solution(problem, SolutionPair(ExactMatrix.zeros(3, 2), MultiPoly.zero(2)))
        self.assertFalse(verify_solution(problem, SolutionPair(ExactMatrix.identity(2), z(2, 1))))

    def test_conjugate_form_agrees(self):
        for problem in random_problems(seed=3, count=8):
            matrix_space = solve_matrix_form(problem)
            conjugate_space = solve_conjugate_form(problem)
            with self.subTest(n=problem.n, degree=problem.degree, m=problem.m):
                self.assertEqual(conjugate_space.dim, matrix_space.dim)
                for pair in conjugate_space.basis:
                    self.assertTrue(verify_solution(problem, pair))

    def test_conjugate_polynomials(self):
        pair = solve_matrix_form(IdentityProblem(2, 2, [z(2, 0, 0), z(2, 0, 1)])).basis[0]
        q = pair.conjugate_form()
        scale = pair.Q[0, 0]
        self.assertEqual(q, (MultiPoly.zeta_var(2, 0).scale(scale), MultiPoly.zeta_var(2, 1).scale(scale)))

    def test_dimension_never_exceeds_the_bound(self):
        problems = list(random_problems(seed=11, count=100))
        reports = bound_campaign(problems)
        self.assertEqual(len(reports), len(problems))
        for problem, report in zip(problems, reports):
            conjugate_dim = solve_conjugate_form(problem).dim
            with self.subTest(n=problem.n, degree=problem.degree, m=problem.m):
                self.assertEqual((report.n, report.m, report.degree), (problem.n, problem.m, problem.degree))
                self.assertIsNotNone(report.bound)
                self.assertLessEqual(report.dim, report.bound)
                self.assertFalse(report.violated)
                self.assertEqual(conjugate_dim, report.dim)

    def test_campaign_keeps_the_serial_order(self):
        problems = list(random_problems(seed=17, count=5))
        self.assertEqual(bound_campaign(problems, workers=3), [check_bound(problem) for problem in problems])
        self.assertEqual(bound_campaign([]), [])

    def test_solution_bases_are_independent(self):
        problems = list(random_problems(seed=23, count=15))
        problems += [sharp_example(n, k).problem for n in (2, 3, 4) for k in range(1, n)]
        nontrivial = 0
        for problem in problems:
            m, n = problem.m, problem.n
            self.assertTrue(verify_solution(problem, SolutionPair(ExactMatrix.zeros(m, n), MultiPoly.zero(n))))
            for space in (solve_matrix_form(problem), solve_conjugate_form(problem)):
                if not space.dim:
                    continue
                nontrivial += 1
                with self.subTest(n=n, degree=problem.degree, m=m, form=space.form):
                    stacked = ExactMatrix(space.dim, m * n, [pair.Q.flatten() for pair in space.basis])
                    self.assertEqual(stacked.rank(), space.dim)
                    self.assertEqual(coefficient_matrix([pair.r for pair in space.basis]).rank(), space.dim)
                    for pair in space.basis:
                        self.assertFalse(pair.Q.is_zero())
                        self.assertTrue(pair.r)
                        self.assertFalse(verify_solution(problem, SolutionPair(pair.Q, MultiPoly.zero(n))))
                        self.assertFalse(verify_solution(problem, SolutionPair(ExactMatrix.zeros(m, n), pair.r)))
        self.assertGreater(nontrivial, 0)


class SharpExampleTests(SimpleTestCase):
    def test_bound_is_attained(self):
        for n in (2, 3, 4, 5):
            for k in range(1, n):
                with self.subTest(n=n, k=k):
                    example = sharp_example(n, k)
                    self.assertEqual(example.m, sum(n - j for j in range(k)))
                    self.assertEqual((example.dim, example.bound), (k, k))
                    self.assertTrue(example.tight)
                    self.assertEqual(len(example.solutions), k)
                    stacked = ExactMatrix(k, example.m * n, [pair.Q.flatten() for pair in example.solutions])
                    self.assertEqual(stacked.rank(), k)

    def test_last_polynomial(self):
        example = sharp_example(4, 2)
        self.assertEqual(example.problem.p[-1], z(4, 1, 3))
        self.assertEqual(example.solutions[1].r, z(4, 1))

    def test_literal_reading(self):
        example = sharp_example(3, 1, literal=True)
        self.assertEqual(example.m, 5)
        self.assertEqual((example.dim, example.bound), (2, 2))
        self.assertEqual(len(example.solutions), 1)
        self.assertIn('z_{k+1}', example.reading)
        full = sharp_example(3, 2, literal=True)
        self.assertEqual(full.m, 6)
        self.assertIsNone(full.bound)
        self.assertEqual(full.dim, 3)

    def test_out_of_range(self):
        for n, k, code in ((3, 0, 'k_out_of_range'), (3, 3, 'k_out_of_range'), (1, 1, 'n_out_of_range')):
            with self.subTest(n=n, k=k):
                with self.assertRaises(ValidationError) as ctx:
                    sharp_example(n, k)
                self.assertEqual(ctx.exception.code, code)


class DecompositionTests(SimpleTestCase):
    def test_single_solution_without_kernel(self):
        example = sharp_example(3, 1)
        result = decompose(example.problem, example.solutions)
        self.assertEqual(result.kappa, 0)
        self.assertEqual(result.s, ((z(3, 0), z(3, 1), z(3, 2)),))
        self.assertEqual(result.reconstruct(), example.problem.p)

    def test_sharp_examples(self):
        for n in (2, 3, 4):
            for k in range(1, n):
                example = sharp_example(n, k)
                with self.subTest(n=n, k=k):
                    result = decompose(example.problem, example.solutions)
                    self.assertTrue(result.verify())
                    self.assertEqual(len(result.s), k)
                    self.assertEqual(result.r, tuple(pair.r for pair in example.solutions))

    def test_kernel_part(self):
        example = sharp_example(4, 1)
        problem = IdentityProblem(4, 2, list(example.problem.p) + [z(4, 1, 1)])
        pair = SolutionPair(ExactMatrix(5, 4, list(example.solutions[0].Q.entries) + [[0] * 4]), z(4, 0))
        result = decompose(problem, [pair])
        self.assertEqual(result.kappa, 1)
        self.assertTrue(result.verify())

    def test_solver_bases(self):
        for problem in random_problems(seed=21, count=6):
            basis = solve_matrix_form(problem).basis
            if basis:
                with self.subTest(n=problem.n, degree=problem.degree, m=problem.m):
                    self.assertTrue(decompose(problem, basis).verify())

    def test_rejects_bad_solutions(self):
        example = sharp_example(3, 2)
        first, second = example.solutions
        with self.assertRaises(ValidationError) as ctx:
            decompose(example.problem, [first, SolutionPair(first.Q, z(3, 1))])
        self.assertEqual(ctx.exception.code, 'not_a_solution')
        doubled = SolutionPair(ExactMatrix(5, 3, [[2 * value for value in row] for row in first.Q.entries]),
                               first.r.scale(2))
        with self.assertRaises(ValidationError) as ctx:
            decompose(example.problem, [first, doubled])
        self.assertEqual(ctx.exception.code, 'dependent_solutions')
        with self.assertRaises(ValidationError) as ctx:
            decompose(example.problem, [])
        self.assertEqual(ctx.exception.code, 'empty')
        self.assertTrue(decompose(example.problem, [second, first]).verify())


class SerializerTests(SimpleTestCase):
    def test_problem_round_trip(self):
        problem = sharp_example(3, 2).problem
        serializer = IdentityProblemSerializer(data=IdentityProblemSerializer(problem).data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), problem)

    def test_problem_error_codes(self):
        dependent = {'n': 2, 'degree': 2, 'p': [[{'coeff': '1', 'z': [2, 0]}], [{'coeff': '2', 'z': [2, 0]}]]}
        inhomogeneous = {'n': 2, 'degree': 2, 'p': [[{'coeff': '1', 'z': [2, 0]}], [{'coeff': '1', 'z': [0, 1]}]]}
        for data, code in ((dependent, 'dependent'), (inhomogeneous, 'inhomogeneous')):
            serializer = IdentityProblemSerializer(data=data)
            self.assertFalse(serializer.is_valid())
            self.assertEqual(serializer.errors['non_field_errors'][0].code, code)

    def test_solution_space_round_trip(self):
        space = solve_matrix_form(sharp_example(3, 2).problem)
        data = SolutionSpaceSerializer(space).data
        self.assertEqual(data['dim'], 2)
        self.assertEqual(len(data['basis'][0]['q']), 5)
        serializer = SolutionSpaceSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), space)

    def test_sharp_example_round_trip(self):
        example = sharp_example(4, 3)
        data = SharpExampleSerializer(example).data
        self.assertEqual((data['m'], data['dim'], data['bound']), (9, 3, 3))
        serializer = SharpExampleSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), example)

    def test_sharp_example_rejects_k(self):
        serializer = SharpExampleSerializer(data={'n': 3, 'k': 3})
        self.assertFalse(serializer.is_valid())

    def test_decomposition_round_trip(self):
        example = sharp_example(3, 2)
        result = decompose(example.problem, example.solutions)
        data = DecompositionSerializer(result).data
        self.assertEqual(data['kappa'], result.kappa)
        serializer = DecompositionSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), result)

    def test_bound_report_round_trip(self):
        report = check_bound(sharp_example(3, 1).problem)
        serializer = BoundReportSerializer(data=BoundReportSerializer(report).data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), report)
        tampered = dict(BoundReportSerializer(report).data, bound=2)
        self.assertFalse(BoundReportSerializer(data=tampered).is_valid())
