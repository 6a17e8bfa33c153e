import json
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cli.config import CommandName, ExitCode, OutputFormat, RunConfig
from cli.runner import run
from crmaps.families import builtin_dt
from crmaps.serializers import CRMapSerializer
from identity.decomposition import decompose
from identity.serializers import DecompositionSerializer, IdentityProblemSerializer
from identity.sharpness import sharp_example


def call(*args):
    """Run a command; returns (exit code, stdout)."""
    out = StringIO()
    try:
        call_command(*args, stdout=out)
    except CommandError as exc:
        return exc.returncode, out.getvalue()
    return 0, out.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write_json(self, name, data):
        path = Path(self.tmp.name) / name
        path.write_text(json.dumps(data))
        return str(path)

    def perturbed_dt_file(self):
        data = json.loads(json.dumps(CRMapSerializer(builtin_dt(2, '1/2')).data))
        for component in data['components'][3:]:
            component[0]['coeff'] = {'re': '3/5', 'im': '0'}
        return self.write_json('perturbed.json', data)


class AnalyzeCommandTests(CommandTestCase):
    def test_dt_reproduction(self):
        code, out = call('analyze', '--builtin', 'dt', '--n', '2', '--u', '1/2', '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        report = json.loads(out)
        self.assertEqual(report['dims'], [0, 2])
        self.assertEqual((report['d'], report['k'], report['plane_bound'], report['image_span']), (2, 1, 6, 6))
        self.assertTrue(report['sharp'])
        self.assertEqual(len(report['profile']['point']), 3)
        self.assertEqual((report['profile']['dims'], report['profile']['l0']), ([0, 2], 2))
        self.assertTrue(report['profile']['transversal'])

    def test_hst_fails_the_hypothesis_but_reports(self):
        code, out = call('analyze', '--builtin', 'hst', '--n', '2', '--u-s', '1/2', '--u-t', '1/2', '--format', 'json')
        self.assertEqual(code, ExitCode.HYPOTHESIS_FAILED)
        report = json.loads(out)
        self.assertFalse(report['hypothesis_ok'])
        self.assertEqual((report['d'], report['image_span']), (4, 9))

    def test_linear_embedding(self):
        code, out = call('analyze', '--builtin', 'linear', '--n', '2', '--N', '4', '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        report = json.loads(out)
        self.assertEqual((report['d'], report['k'], report['plane_bound'], report['image_span']), (0, 0, 3, 3))

    def test_output_is_deterministic(self):
        args = ('analyze', '--builtin', 'dt', '--n', '3', '--u', '1/3', '--format', 'json', '--seed', '5')
        self.assertEqual(call(*args), call(*args))

    def test_table_output(self):
        code, out = call('analyze', '--builtin', 'dt', '--n', '2')
        self.assertEqual(code, ExitCode.OK)
        self.assertIn('Rigidity verdict', out)
        self.assertRegex(out, r'plane bound\s+6')
        self.assertRegex(out, r'sharp\s+yes')
        self.assertRegex(out, r'base point\s+\(')

    def test_non_sphere_map_exits_one(self):
        code, out = call('analyze', '--input', self.perturbed_dt_file())
        self.assertEqual(code, ExitCode.SPHERE_FAILED)
        self.assertEqual(out, '')


class VerifyCommandTests(CommandTestCase):
    def test_perturbed_map_fails_with_witness(self):
        code, out = call('verify', '--input', self.perturbed_dt_file(), '--format', 'json')
        self.assertEqual(code, ExitCode.SPHERE_FAILED)
        report = json.loads(out)
        self.assertFalse(report['sphere_map'])
        self.assertTrue(report['remainder'])

    def test_builtin_maps_pass(self):
        for name in ('dt', 'hst', 'whitney', 'linear'):
            with self.subTest(name=name):
                code, out = call('verify', '--builtin', name, '--n', '2', '--format', 'json')
                self.assertEqual(code, ExitCode.OK)
                self.assertEqual(json.loads(out)['remainder'], [])

    def test_map_file_round_trip(self):
        code, out = call('builtin', '--builtin', 'hst', '--n', '2', '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        code, _ = call('verify', '--input', self.write_json('hst.json', json.loads(out)))
        self.assertEqual(code, ExitCode.OK)


class BuiltinCommandTests(CommandTestCase):
    def test_dt_components(self):
        code, out = call('builtin', '--builtin', 'dt', '--n', '2', '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        report = json.loads(out)
        self.assertEqual((report['n'], report['N']), (2, 5))
        self.assertEqual(report['components'][2], [{'coeff': {'re': '3/5', 'im': '0'}, 'z': [0, 0, 1]}])

    def test_approximate_hints(self):
        _, exact = call('builtin', '--builtin', 'dt', '--n', '2')
        _, approx = call('builtin', '--builtin', 'dt', '--n', '2', '--approx')
        self.assertIn('3/5*z3', exact)
        self.assertNotIn('~', exact)
        self.assertIn('(~0.6)', approx)


class IdentityCommandTests(CommandTestCase):
    def problem_file(self, problem):
        return self.write_json('problem.json', json.loads(json.dumps(IdentityProblemSerializer(problem).data)))

    def test_sharp_example(self):
        code, out = call('identity_sharp', '--n', '3', '--k', '2', '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        report = json.loads(out)
        self.assertEqual((report['m'], report['dim'], report['bound']), (5, 2, 2))
        self.assertEqual(len(report['solutions']), 2)
        self.assertEqual(len(report['problem']['p']), 5)

    def test_sharp_example_from_file(self):
        path = self.write_json('sharp.json', {'n': 4, 'k': 1, 'literal': True})
        code, out = call('identity_sharp', '--input', path, '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        self.assertEqual(json.loads(out)['m'], 7)

    def test_solve_both_forms(self):
        path = self.problem_file(sharp_example(3, 2).problem)
        code, out = call('identity_solve', '--input', path, '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        report = json.loads(out)
        self.assertEqual([space['form'] for space in report['spaces']], ['matrix', 'conjugate'])
        self.assertEqual([space['dim'] for space in report['spaces']], [2, 2])

    def test_solve_single_form(self):
        path = self.problem_file(sharp_example(2, 1).problem)
        code, out = call('identity_solve', '--input', path, '--form', 'conjugate')
        self.assertEqual(code, ExitCode.OK)
        self.assertIn('Solutions (conjugate form)', out)
        self.assertNotIn('matrix form', out)

    def test_check_bound(self):
        code, out = call('identity_check', '--input', self.problem_file(sharp_example(4, 2).problem), '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        report = json.loads(out)
        self.assertEqual((report['bound'], report['dim']), (2, 2))
        self.assertTrue(report['tight'])

    def test_check_without_bound(self):
        path = self.problem_file(sharp_example(3, 2, literal=True).problem)
        code, out = call('identity_check', '--input', path, '--format', 'json')
        self.assertEqual(code, ExitCode.HYPOTHESIS_FAILED)
        self.assertIsNone(json.loads(out)['bound'])

    def test_decompose_round_trip(self):
        code, out = call('decompose', '--n', '3', '--k', '2', '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        serializer = DecompositionSerializer(data=json.loads(out))
        serializer.is_valid(raise_exception=True)
        example = sharp_example(3, 2)
        self.assertEqual(serializer.save(), decompose(example.problem, example.solutions))

    def test_decompose_from_file(self):
        _, out = call('decompose', '--n', '4', '--k', '3', '--format', 'json')
        code, again = call('decompose', '--input', self.write_json('decomposition.json', json.loads(out)),
                           '--format', 'json')
        self.assertEqual(code, ExitCode.OK)
        self.assertEqual(again, out)


class MalformedInputTests(CommandTestCase):
    def test_exit_code_three(self):
        bad_json = Path(self.tmp.name) / 'bad.json'
        bad_json.write_text('{"n": 2,')
        inhomogeneous = self.write_json('inhomogeneous.json', {
            'n': 2, 'degree': 2, 'p': [[{'coeff': '1', 'z': [2, 0]}], [{'coeff': '1', 'z': [1, 0]}]],
        })
        cases = [
            ('verify', '--input', str(Path(self.tmp.name) / 'missing.json')),
            ('verify', '--input', str(bad_json)),
            ('identity_solve', '--input', inhomogeneous),
            ('identity_check', '--input', inhomogeneous),
            ('analyze', '--builtin', 'nope', '--n', '2'),
            ('analyze', '--builtin', 'dt'),
            ('analyze', '--builtin', 'dt', '--n', '2', '--input', inhomogeneous),
            ('analyze', '--builtin', 'dt', '--n', '2', '--trials', '0'),
            ('analyze', '--builtin', 'dt', '--n', 'two'),
            ('analyze', '--builtin', 'dt', '--n', '2', '--u', '0.5'),
            ('identity_sharp', '--n', '3', '--k', '3'),
            ('identity_sharp', '--n', '3'),
            ('builtin', '--builtin', 'linear', '--n', '3', '--N', '2'),
        ]
        for args in cases:
            with self.subTest(args=args):
                code, out = call(*args)
                self.assertEqual(code, ExitCode.MALFORMED_INPUT)
                self.assertEqual(out, '')


class RunConfigTests(SimpleTestCase):
    def test_defaults(self):
        config = RunConfig('analyze', builtin='dt', n=2)
        self.assertIs(config.command, CommandName.ANALYZE)
        self.assertIs(config.output_format, OutputFormat.TABLE)
        self.assertEqual(config.form, 'both')

    def test_invalid_combinations(self):
        cases = [
            dict(command='verify'),
            dict(command='builtin', input_path='map.json'),
            dict(command='identity-solve'),
            dict(command='decompose', n=3),
            dict(command='analyze', builtin='dt', n=2, trials=0),
            dict(command='identity-solve', input_path='p.json', form='polar'),
        ]
        for kwargs in cases:
            with self.subTest(**kwargs):
                with self.assertRaises(ValidationError) as ctx:
                    RunConfig(**kwargs)
                self.assertEqual(ctx.exception.code, 'invalid_config')

    def test_unknown_command(self):
        with self.assertRaises(ValueError):
            RunConfig('plot')

    def test_run_returns_report_and_code(self):
        result = run(RunConfig('identity-sharp', n=2, k=1, output_format='json'))
        self.assertEqual(result.exit_code, ExitCode.OK)
        self.assertEqual(json.loads(result.report)['dim'], 1)
        failed = run(RunConfig('identity-sharp', n=2, k=2))
        self.assertEqual(failed.exit_code, ExitCode.MALFORMED_INPUT)
        self.assertEqual(failed.report, '')
        self.assertTrue(failed.message)


class SettingsTests(SimpleTestCase):
    def test_rest_framework_only_parses_and_renders_json(self):
        self.assertEqual(set(settings.REST_FRAMEWORK), {
            'DEFAULT_RENDERER_CLASSES', 'DEFAULT_PARSER_CLASSES', 'UNAUTHENTICATED_USER',
        })
        self.assertEqual(settings.REST_FRAMEWORK['DEFAULT_RENDERER_CLASSES'], ['rest_framework.renderers.JSONRenderer'])
        self.assertEqual(settings.REST_FRAMEWORK['DEFAULT_PARSER_CLASSES'], ['rest_framework.parsers.JSONParser'])

    def test_toolkit_tunables(self):
        self.assertEqual(settings.RIGIDITY_TOOLKIT['DEFAULT_TRIALS'], 3)
        self.assertGreaterEqual(settings.RIGIDITY_TOOLKIT['CAMPAIGN_WORKERS'], 1)
