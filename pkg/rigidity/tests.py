import random

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from crmaps.families import builtin_dt, builtin_hst, linear_embedding, whitney
from crmaps.maps import CRMap, random_unitary
from exact.numbers import GaussianRational
from polys.polynomials import MultiPoly
from rigidity.defect import analyze, codim_criterion, defect, image_span_dim, minimal_k, partial_sum
from rigidity.serializers import DefectReportSerializer, RigidityVerdictSerializer
from utils.exceptions import NotASphereMapError


class PartialSumTests(SimpleTestCase):
    def test_closed_form(self):
        for n in range(1, 8):
            for k in range(n):
                self.assertEqual(partial_sum(n, k), sum(n - j for j in range(k + 1)))
        self.assertEqual(partial_sum(4, 3), 10)

    def test_minimal_k(self):
        self.assertEqual(minimal_k(2, 2), 1)
        self.assertEqual(minimal_k(2, 1), 0)
        self.assertIsNone(minimal_k(2, 3))
        self.assertEqual(minimal_k(3, 5), 2)


class DefectTests(SimpleTestCase):
    def test_single_level(self):
        report = defect(2, (0, 2))
        self.assertEqual(report.k_per_level, (1,))
        self.assertEqual(report.k, 1)
        self.assertEqual(report.plane_bound, 6)
        self.assertTrue(report.hypothesis_ok)

    def test_two_levels_with_equal_increments(self):
        report = defect(2, (0, 2, 4))
        self.assertEqual(report.k_per_level, (1, 1))
        self.assertEqual(report.k, 2)
        self.assertEqual(report.plane_bound, 9)
        self.assertEqual(report.increments, (2, 2))
        # k = 2 is not below n = 2
        self.assertFalse(report.hypothesis_ok)
        self.assertEqual(len(report.reasons), 1)

    def test_small_increment(self):
        report = defect(5, (0, 3))
        self.assertEqual((report.k, report.plane_bound), (0, 9))

    def test_missing_level(self):
        report = defect(2, (0, 3, 4))
        self.assertEqual(report.k_per_level, (None, 0))
        self.assertIsNone(report.k)
        self.assertIsNone(report.plane_bound)
        self.assertFalse(report.hypothesis_ok)

    def test_totally_geodesic(self):
        report = defect(3, (0,))
        self.assertEqual((report.k, report.d, report.plane_bound), (0, 0, 4))

    def test_malformed_profiles(self):
        for dims in ((), (1, 2), (0, 3, 2), (0, -1)):
            with self.subTest(dims=dims):
                with self.assertRaises(ValidationError) as ctx:
                    defect(2, dims)
                self.assertEqual(ctx.exception.code, 'malformed_profile')

    def test_plane_bound_identity(self):
        rng = random.Random(6)
        for _ in range(200):
            n = rng.randint(1, 6)
            dims = [0]
            for _ in range(rng.randint(0, 4)):
                dims.append(dims[-1] + rng.randint(1, n * (n + 1) // 2 - 1 or 1))
            report = defect(n, dims)
            if report.k is not None:
                self.assertEqual(report.plane_bound, n + report.d + report.k + 1)

    def test_monotone_in_each_increment(self):
        rng = random.Random(15)
        for _ in range(200):
            n = rng.randint(2, 6)
            increments = [rng.randint(1, n * (n + 1) // 2 - 1) for _ in range(rng.randint(1, 4))]
            position = rng.randrange(len(increments))
            bumped = list(increments)
            bumped[position] += 1
            base, grown = defect(n, _dims(increments)), defect(n, _dims(bumped))
            if grown.k is not None:
                self.assertGreaterEqual(grown.k, base.k)

    def test_codimension_guarantees_admissible_levels(self):
        rng = random.Random(14)
        for trial in range(500):
            n = rng.randint(1, 7)
            N = n + rng.randint(0, n * (n + 1) // 2 - 1)
            self.assertTrue(codim_criterion(n, N))
            budget = rng.randint(0, N - n)
            increments = []
            while budget:
                step = rng.randint(1, budget)
                increments.append(step)
                budget -= step
            with self.subTest(trial=trial, n=n, N=N, increments=increments):
                report = defect(n, _dims(increments), N)
                self.assertNotIn(None, report.k_per_level)
                self.assertTrue(report.hypothesis_ok)
                self.assertTrue(report.codim_criterion_ok)


def _dims(increments):
    dims = [0]
    for increment in increments:
        dims.append(dims[-1] + increment)
    return dims


class CodimCriterionTests(SimpleTestCase):
    def test_worked_values(self):
        self.assertFalse(codim_criterion(2, 5))
        self.assertTrue(codim_criterion(3, 5))
        self.assertTrue(codim_criterion(2, 4))

    def test_requires_target_at_least_source(self):
        with self.assertRaises(ValidationError):
            codim_criterion(3, 2)


class ImageSpanTests(SimpleTestCase):
    def test_worked_values(self):
        for n in (1, 2, 3):
            self.assertEqual(image_span_dim(linear_embedding(n, n + 2)), n + 1)
            self.assertEqual(image_span_dim(whitney(n)), 2 * n + 1)
        self.assertEqual(image_span_dim(builtin_dt(2, '1/2')), 6)
        self.assertEqual(image_span_dim(builtin_dt(2, 0)), 3)
        self.assertEqual(image_span_dim(builtin_hst(2, '1/2', '1/2')), 9)
        self.assertEqual(image_span_dim(builtin_hst(3, '1/2', '1/2')), 12)

    def test_ignores_constant_terms(self):
        shifted = CRMap(1, 2, [MultiPoly.z_var(2, 0) + 1, MultiPoly.z_var(2, 1), MultiPoly.constant(2, 5)])
        self.assertEqual(image_span_dim(shifted), 2)

    def test_invariant_under_unitaries(self):
        rng = random.Random(99)
        for f in (builtin_dt(2, '1/2'), builtin_hst(2, '1/2', '1/2'), whitney(2), linear_embedding(2, 4)):
            reference = image_span_dim(f)
            for trial in range(10):
                with self.subTest(N=f.N, trial=trial):
                    self.assertEqual(image_span_dim(f.compose_target(random_unitary(f.N + 1, rng))), reference)
                    self.assertEqual(image_span_dim(f.precompose(random_unitary(f.nvars, rng))), reference)


class AnalyzeTests(SimpleTestCase):
    def test_totally_geodesic(self):
        for n in (1, 2, 3):
            with self.subTest(n=n):
                verdict = analyze(linear_embedding(n, n + 1), trials=2, seed=0)
                self.assertEqual((verdict.defect.d, verdict.defect.k), (0, 0))
                self.assertEqual(verdict.image_span, n + 1)
                self.assertEqual(verdict.defect.plane_bound, n + 1)
                self.assertTrue(verdict.sharp)

    def test_dt_is_sharp(self):
        verdict = analyze(builtin_dt(2, '1/2'), trials=3, seed=0)
        self.assertEqual(verdict.defect.dims, (0, 2))
        self.assertEqual(verdict.defect.k_per_level, (1,))
        self.assertEqual(verdict.defect.plane_bound, 6)
        self.assertEqual(verdict.image_span, 6)
        self.assertTrue(verdict.sharp)
        self.assertTrue(verdict.upper_bound_ok)
        self.assertTrue(verdict.lower_bound_ok)
        self.assertFalse(verdict.bound_breached)

    def test_hst_in_two_variables_fails_the_hypothesis(self):
        verdict = analyze(builtin_hst(2, '1/2', '1/2'), trials=3, seed=0)
        self.assertEqual(verdict.defect.dims, (0, 3, 4))
        self.assertEqual(verdict.defect.d, 4)
        self.assertFalse(verdict.defect.hypothesis_ok)
        self.assertEqual(verdict.image_span, 9)
        self.assertTrue(verdict.lower_bound_ok)
        self.assertIsNone(verdict.upper_bound_ok)
        self.assertFalse(verdict.bound_breached)

    def test_hst_in_three_variables_is_sharp(self):
        verdict = analyze(builtin_hst(3, '1/2', '1/2'), trials=2, seed=0)
        self.assertEqual(verdict.defect.dims, (0, 5, 6))
        self.assertEqual(verdict.defect.k_per_level, (2, 0))
        self.assertEqual(verdict.defect.plane_bound, 12)
        self.assertEqual(verdict.image_span, 12)
        self.assertTrue(verdict.sharp)

    def test_whitney_boundary_map(self):
        for n in (2, 3):
            with self.subTest(n=n):
                verdict = analyze(whitney(n), trials=2, seed=1)
                self.assertEqual(verdict.image_span, 2 * n + 1)
                self.assertEqual(verdict.defect.plane_bound, 2 * n + 2)
                self.assertTrue(verdict.lower_bound_ok)
                self.assertTrue(verdict.upper_bound_ok)
                self.assertFalse(verdict.sharp)

    def test_sandwich_for_builtin_maps(self):
        maps = [builtin_dt(n, u) for n in (2, 3) for u in ('1/2', '1/3')] + [builtin_hst(2, '1/3', '2')]
        for f in maps:
            verdict = analyze(f, trials=2, seed=3)
            with self.subTest(n=f.n, N=f.N):
                self.assertLessEqual(f.n + verdict.defect.d + 1, verdict.image_span)
                if verdict.defect.hypothesis_ok:
                    self.assertLessEqual(verdict.image_span, verdict.defect.plane_bound)

    def test_rejects_non_sphere_maps(self):
        f = CRMap(1, 2, [MultiPoly.z_var(2, 0), MultiPoly.z_var(2, 1).scale(GaussianRational(2)), MultiPoly.zero(2)])
        with self.assertRaises(NotASphereMapError):
            analyze(f)


class SerializerTests(SimpleTestCase):
    def test_verdict_round_trip(self):
        for f in (builtin_dt(2, '1/2'), builtin_hst(2, '1/2', '1/2')):
            verdict = analyze(f, trials=1, seed=0)
            data = RigidityVerdictSerializer(verdict).data
            serializer = RigidityVerdictSerializer(data=data)
            serializer.is_valid(raise_exception=True)
            self.assertEqual(serializer.save(), verdict)

    def test_verdict_keys(self):
        data = RigidityVerdictSerializer(analyze(builtin_dt(2, '1/2'), trials=1)).data
        for key in ('n', 'N', 'dims', 'k_per_level', 'k', 'd', 'plane_bound', 'image_span', 'hypothesis_ok',
                    'lower_bound_ok', 'upper_bound_ok', 'sharp', 'profile', 'warnings'):
            self.assertIn(key, data)
        self.assertEqual((data['d'], data['k'], data['plane_bound'], data['image_span']), (2, 1, 6, 6))
        self.assertEqual(data['profile']['dims'], [0, 2])
        self.assertTrue(data['profile']['transversal'])
        point = [GaussianRational.parse(value) for value in data['profile']['point']]
        self.assertEqual(len(point), 3)
        self.assertEqual(sum(value.norm() for value in point), 1)
        self.assertTrue(point[-1])

    def test_profile_must_match_the_dims(self):
        data = RigidityVerdictSerializer(analyze(builtin_dt(2, '1/2'), trials=1)).data
        data = {**data, 'profile': {**data['profile'], 'dims': [0, 3], 'l0': 2}}
        serializer = RigidityVerdictSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('profile', serializer.errors)

    def test_inconsistent_bound_is_rejected(self):
        serializer = RigidityVerdictSerializer(data={
            'n': 2, 'N': 5, 'dims': [0, 2], 'k': 0, 'plane_bound': 5, 'image_span': 6,
        })
        self.assertFalse(serializer.is_valid())
        self.assertIn('k', serializer.errors)

    def test_defect_report_round_trip(self):
        report = defect(3, (0, 5, 6), 8)
        serializer = DefectReportSerializer(data=DefectReportSerializer(report).data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), report)
