import random

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from crmaps.families import builtin_dt, builtin_hst, linear_embedding, whitney
from crmaps.jets import (
    DegeneracyProfile, JetTower, apply_field, degeneracy_profile, generic_profile, jet_span_dim,
    sample_sphere_point, standard_cr_fields,
)
from crmaps.maps import CRMap, is_unitary, random_unitary, sphere_relation, sphere_residual, verify_sphere_map
from crmaps.serializers import CRMapSerializer, DegeneracyProfileSerializer
from exact.numbers import ONE, ZERO, GaussianRational
from polys.polynomials import MultiPoly
from utils.exceptions import DegenerateBasePointError, NotTransversalError, OffSphereError


def z(nvars, *indices):
    result = MultiPoly.constant(nvars, 1)
    for index in indices:
        result = result * MultiPoly.z_var(nvars, index)
    return result


def zeta(nvars, index):
    return MultiPoly.zeta_var(nvars, index)


def perturbed_dt():
    """D_t for n = 2 with (cos t, sin t) replaced by (3/5, 3/5), which is off the circle."""
    return CRMap(2, 5, [z(3, 0), z(3, 1), z(3, 2).scale(GaussianRational('3/5'))]
                 + [z(3, j, 2).scale(GaussianRational('3/5')) for j in range(3)])


def split_dt():
    """A sphere map of n = 2 into S^6 whose image has a repeated direction (z1*z3 is split in two)."""
    return CRMap(2, 6, [
        z(3, 0), z(3, 1), z(3, 2).scale(GaussianRational('3/5')),
        z(3, 0, 2).scale(GaussianRational('12/25')), z(3, 0, 2).scale(GaussianRational('16/25')),
        z(3, 1, 2).scale(GaussianRational('4/5')), z(3, 2, 2).scale(GaussianRational('4/5')),
    ])


BASE_POINT = (ZERO, ZERO, ONE)


class CRMapTests(SimpleTestCase):
    def test_shape_validation(self):
        with self.assertRaises(ValidationError) as ctx:
            CRMap(2, 3, [z(3, 0)] * 3)
        self.assertEqual(ctx.exception.code, 'wrong_component_count')
        with self.assertRaises(ValidationError) as ctx:
            CRMap(2, 1, [z(3, 0)] * 2)
        self.assertEqual(ctx.exception.code, 'n_out_of_range')
        with self.assertRaises(ValidationError) as ctx:
            CRMap(1, 1, [z(3, 0), z(3, 1)])
        self.assertEqual(ctx.exception.code, 'bad_shape')
        with self.assertRaises(ValidationError) as ctx:
            CRMap(1, 1, [z(2, 0), zeta(2, 1)])
        self.assertEqual(ctx.exception.code, 'not_holomorphic')

    def test_builtin_dt_components(self):
        f = builtin_dt(2, '1/2')
        self.assertEqual(f.N, 5)
        expected = [z(3, 0), z(3, 1), z(3, 2).scale(GaussianRational('3/5'))]
        expected += [z(3, j, 2).scale(GaussianRational('4/5')) for j in range(3)]
        self.assertEqual(list(f.components), expected)

    def test_degenerate_parameters_give_padded_linear_embedding(self):
        self.assertEqual(builtin_dt(2, 0), linear_embedding(2, 5))
        self.assertEqual(builtin_hst(2, 0, '1/2'), linear_embedding(2, 8))

    def test_builtin_hst_components(self):
        f = builtin_hst(2, '1/2', '1/2')
        self.assertEqual(f.N, 8)
        coefficients = {component.terms[0][1] for component in f.components}
        allowed = {GaussianRational(value) for value in ('1', '3/5', '4/5', '12/25', '16/25')}
        self.assertTrue(coefficients <= allowed)


class SphereVerificationTests(SimpleTestCase):
    def test_builtin_maps_pass(self):
        maps = [linear_embedding(n, n + k) for n in (1, 2, 3) for k in (0, 2)]
        maps += [builtin_dt(n, u) for n in (1, 2, 3) for u in ('1/2', '2/3', '-3')]
        maps += [builtin_hst(n, u, v) for n in (2, 3) for u, v in (('1/2', '1/2'), ('1/3', '2'))]
        maps += [whitney(n) for n in (1, 2, 3)]
        maps.append(split_dt())
        for f in maps:
            with self.subTest(n=f.n, N=f.N, components=[str(c) for c in f.components]):
                self.assertTrue(verify_sphere_map(f))
                self.assertFalse(sphere_residual(f))

    def test_perturbed_map_fails_with_witness(self):
        f = perturbed_dt()
        self.assertFalse(verify_sphere_map(f))
        self.assertTrue(sphere_residual(f))

    def test_stable_under_target_and_source_unitaries(self):
        rng = random.Random(2024)
        for f in (builtin_dt(2, '1/2'), perturbed_dt()):
            for _ in range(10):
                target = random_unitary(f.N + 1, rng)
                source = random_unitary(f.nvars, rng)
                self.assertTrue(is_unitary(target))
                self.assertEqual(verify_sphere_map(f.compose_target(target)), verify_sphere_map(f))
                self.assertEqual(verify_sphere_map(f.precompose(source)), verify_sphere_map(f))


class CRFieldTests(SimpleTestCase):
    def test_single_field_for_n_equal_one(self):
        (field,) = standard_cr_fields(1)
        self.assertEqual(field.coefficients, (zeta(2, 1), -zeta(2, 0)))

    def test_fields_are_tangent(self):
        for n in (1, 2, 3):
            relation = sphere_relation(n + 1)
            for field in standard_cr_fields(n):
                self.assertFalse(field.apply(relation))

    def test_worked_applications(self):
        L1, _ = standard_cr_fields(2)
        self.assertEqual(L1.apply(z(3, 0)), zeta(3, 2))
        self.assertEqual(apply_field(L1, [z(3, 0), z(3, 1), z(3, 2)]), (zeta(3, 2), MultiPoly.zero(3), -zeta(3, 0)))
        self.assertEqual(apply_field(L1, [MultiPoly.constant(3, 7)]), (MultiPoly.zero(3),))
        self.assertEqual(L1.apply(L1.apply(z(3, 0, 0))), (zeta(3, 2) ** 2).scale(2))

    def test_fields_commute(self):
        L1, L2 = standard_cr_fields(2)
        poly = z(3, 0, 1, 2) + z(3, 2, 2) + z(3, 0, 0)
        self.assertEqual(L1.apply(L2.apply(poly)), L2.apply(L1.apply(poly)))


class JetSpanTests(SimpleTestCase):
    def test_linear_embedding_spans(self):
        for n in (1, 2, 3):
            f = linear_embedding(n, n + 2)
            point = sample_sphere_point(n, seed=n)
            self.assertEqual(jet_span_dim(f, point, 1), n + 1)
            self.assertEqual(jet_span_dim(f, point, 5), n + 1)

    def test_dt_at_the_pole(self):
        # At (0, 0, 1) all second derivatives along the tangent directions vanish.
        f = builtin_dt(2, '1/2')
        self.assertEqual(jet_span_dim(f, BASE_POINT, 1), 3)
        self.assertEqual(jet_span_dim(f, BASE_POINT, 2), 3)

    def test_dt_at_a_generic_point(self):
        f = builtin_dt(2, '1/2')
        self.assertEqual(jet_span_dim(f, sample_sphere_point(2, seed=5), 2), 5)

    def test_monotone_in_the_order(self):
        f = builtin_hst(2, '1/2', '1/2')
        tower = JetTower(f)
        point = sample_sphere_point(2, seed=9)
        dims = [jet_span_dim(f, point, level, tower) for level in range(0, 5)]
        self.assertEqual(dims, sorted(dims))

    def test_base_point_checks(self):
        f = linear_embedding(1)
        with self.assertRaises(OffSphereError):
            jet_span_dim(f, (ONE, ONE), 1)
        with self.assertRaises(DegenerateBasePointError):
            jet_span_dim(f, (ONE, ZERO), 1)


class DegeneracyProfileTests(SimpleTestCase):
    def test_linear_embedding(self):
        profile = degeneracy_profile(linear_embedding(2, 4), sample_sphere_point(2, seed=1))
        self.assertEqual(profile.dims, (0,))
        self.assertEqual(profile.l0, 1)
        self.assertEqual(profile.d, 0)

    def test_dt_profile(self):
        profile = degeneracy_profile(builtin_dt(2, '1/2'), sample_sphere_point(2, seed=3))
        self.assertEqual(profile.dims, (0, 2))
        self.assertEqual(profile.l0, 2)
        self.assertTrue(profile.strictly_increasing)

    def test_hst_profiles(self):
        profile = degeneracy_profile(builtin_hst(2, '1/2', '1/2'), sample_sphere_point(2, seed=3))
        self.assertEqual(profile.dims, (0, 3, 4))
        self.assertEqual(profile.l0, 3)
        profile = degeneracy_profile(builtin_hst(3, '1/2', '1/2'), sample_sphere_point(3, seed=3))
        self.assertEqual(profile.dims, (0, 5, 6))

    def test_stabilizes_one_level_past_l0(self):
        for f in (builtin_dt(2, '1/2'), builtin_hst(2, '1/2', '1/2'), whitney(2)):
            point = sample_sphere_point(f.n, seed=4)
            profile = degeneracy_profile(f, point)
            tower = JetTower(f)
            past = jet_span_dim(f, point, profile.l0 + 1, tower) - (f.n + 1)
            self.assertEqual(past, profile.d)
            self.assertLessEqual(profile.d, f.N - f.n)

    def test_pole_is_not_generic(self):
        profile = degeneracy_profile(builtin_dt(2, '1/2'), BASE_POINT)
        self.assertEqual(profile.dims, (0,))

    def test_not_transversal(self):
        squashed = CRMap(1, 2, [z(2, 0), z(2, 0), MultiPoly.zero(2)])
        with self.assertRaises(NotTransversalError):
            degeneracy_profile(squashed, (GaussianRational('3/5'), GaussianRational('4/5')))

    def test_invariant_under_target_unitaries(self):
        rng = random.Random(77)
        for f in (builtin_dt(2, '1/2'), builtin_hst(2, '1/2', '1/2'), whitney(2), linear_embedding(2, 4)):
            point = sample_sphere_point(f.n, seed=12)
            reference = degeneracy_profile(f, point)
            for trial in range(10):
                with self.subTest(N=f.N, trial=trial):
                    moved = f.compose_target(random_unitary(f.N + 1, rng))
                    self.assertEqual(degeneracy_profile(moved, point).dims, reference.dims)


class SamplingTests(SimpleTestCase):
    def test_points_lie_on_the_sphere(self):
        for n in (1, 2, 3, 4):
            for seed in range(20):
                point = sample_sphere_point(n, seed)
                self.assertEqual(len(point), n + 1)
                self.assertEqual(sum((value * value.conjugate() for value in point), ZERO), ONE)
                self.assertTrue(point[-1])

    def test_deterministic(self):
        self.assertEqual(sample_sphere_point(3, 42), sample_sphere_point(3, 42))
        self.assertNotEqual(sample_sphere_point(3, 42), sample_sphere_point(3, 43))


class GenericProfileTests(SimpleTestCase):
    def test_linear_embedding(self):
        self.assertEqual(generic_profile(linear_embedding(2, 3), trials=3).dims, (0,))

    def test_agrees_with_single_generic_points(self):
        f = builtin_dt(2, '1/2')
        profile = generic_profile(f, trials=3, seed=0)
        for seed in (101, 202, 303):
            self.assertEqual(degeneracy_profile(f, sample_sphere_point(2, seed)).dims, profile.dims)
        self.assertEqual(profile.warnings, ())

    def test_deficient_map(self):
        f = split_dt()
        profile = generic_profile(f, trials=3, seed=1)
        self.assertEqual(profile.dims, (0, 2))
        self.assertLess(profile.d, f.N - f.n)

    def test_deterministic_for_a_seed(self):
        f = builtin_hst(2, '1/2', '1/2')
        self.assertEqual(generic_profile(f, trials=2, seed=7), generic_profile(f, trials=2, seed=7))

    def test_uses_configured_defaults(self):
        with self.settings(RIGIDITY_TOOLKIT={
            'DEFAULT_TRIALS': 1, 'DEFAULT_SEED': 5, 'SAMPLE_HEIGHT': 3, 'MAX_SAMPLE_ATTEMPTS': 4, 'APPROX_DIGITS': 6,
        }):
            profile = generic_profile(builtin_dt(2, '1/2'))
        self.assertEqual(profile.dims, (0, 2))

    def test_rejects_zero_trials(self):
        with self.assertRaises(ValueError):
            generic_profile(linear_embedding(1), trials=0)


class SerializerTests(SimpleTestCase):
    def test_map_round_trip(self):
        f = whitney(2)
        data = CRMapSerializer(f).data
        serializer = CRMapSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), f)

    def test_map_rejects_wrong_component_count(self):
        serializer = CRMapSerializer(data={'n': 1, 'N': 2, 'components': [[{'coeff': '1', 'z': [1, 0]}]]})
        self.assertFalse(serializer.is_valid())

    def test_profile_round_trip(self):
        profile = DegeneracyProfile(sample_sphere_point(2, 0), (0, 2), 2)
        data = DegeneracyProfileSerializer(profile).data
        self.assertTrue(data['strictly_increasing'])
        serializer = DegeneracyProfileSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.assertEqual(serializer.save(), profile)
