"""Dispatch of a RunConfig to the toolkit operations and mapping of failures onto exit codes."""
import logging

import attrs
from django.conf import settings
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework.exceptions import ParseError, ValidationError
from rest_framework.parsers import JSONParser

from cli.config import CommandName, ExitCode, OutputFormat
from cli.rendering import render_json, render_tables
from crmaps.families import builtin_dt, builtin_hst, linear_embedding, whitney
from crmaps.maps import sphere_residual
from crmaps.serializers import CRMapSerializer
from identity.decomposition import decompose
from identity.lemma import check_bound, solve_conjugate_form, solve_matrix_form
from identity.serializers import (
    BoundReportSerializer, DecompositionSerializer, IdentityProblemSerializer, SharpExampleSerializer,
    SolutionSpaceSerializer,
)
from identity.sharpness import sharp_example
from polys.serializers import PolynomialField
from rigidity.defect import analyze
from rigidity.serializers import RigidityVerdictSerializer
from utils.exceptions import InvariantViolation, NotASphereMapError, ToolkitError

logger = logging.getLogger(__name__)

MALFORMED = (DjangoValidationError, ValidationError, ParseError, ToolkitError, OSError, ValueError, IndexError)


@attrs.frozen
class RunResult:
    exit_code: ExitCode
    report: str = ''
    message: str = ''


@attrs.frozen
class _Outcome:
    data: dict
    sections: list
    exit_code: ExitCode = ExitCode.OK
    message: str = ''


def load_input(path):
    with open(path, 'rb') as stream:
        return JSONParser().parse(stream)


def _validated(serializer_class, data):
    serializer = serializer_class(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def build_map(config):
    if config.input_path is not None:
        return _validated(CRMapSerializer, load_input(config.input_path))
    if config.builtin == 'linear':
        return linear_embedding(config.n, config.N)
    if config.builtin == 'dt':
        return builtin_dt(config.n, config.u)
    if config.builtin == 'hst':
        return builtin_hst(config.n, config.u_s, config.u_t)
    return whitney(config.n)


def _map_rows(f):
    return [('n', f.n), ('N', f.N)] + [(f"f{j + 1}", component) for j, component in enumerate(f.components)]


def _problem_rows(problem):
    return [('n', problem.n), ('m', problem.m), ('degree', problem.degree)] + [
        (f"p{j + 1}", poly) for j, poly in enumerate(problem.p)
    ]


def _solution_rows(solutions):
    rows = []
    for i, pair in enumerate(solutions, start=1):
        rows += [(f"r{i}", pair.r), (f"q{i}", pair.conjugate_form()), (f"Q{i}", pair.Q)]
    return rows


def _verify(config):
    f = build_map(config)
    remainder = sphere_residual(f)
    data = {
        'map': CRMapSerializer(f).data,
        'sphere_map': not remainder,
        'remainder': PolynomialField().to_representation(remainder),
    }
    sections = [('Map', _map_rows(f)), ('Sphere check', [('sphere map', not remainder), ('remainder', remainder)])]
    if remainder:
        return _Outcome(data, sections, ExitCode.SPHERE_FAILED,
                        f"The map does not send S^{f.n} into S^{f.N}; remainder {remainder}")
    return _Outcome(data, sections)


def _analyze(config):
    verdict = analyze(build_map(config), trials=config.trials, seed=config.seed)
    report = verdict.defect
    rows = [
        ('n', report.n), ('N', report.N), ('base point', verdict.profile.point), ('profile', report.dims),
        ('l0', len(report.dims)), ('increments', report.increments), ('k per level', report.k_per_level),
        ('k', report.k), ('d', report.d),
        ('plane bound', report.plane_bound), ('image span', verdict.image_span),
        ('hypothesis ok', report.hypothesis_ok), ('codim criterion', report.codim_criterion_ok),
        ('lower bound ok', verdict.lower_bound_ok), ('upper bound ok', verdict.upper_bound_ok),
        ('sharp', verdict.sharp),
    ]
    rows += [('reason', reason) for reason in report.reasons]
    rows += [('warning', warning) for warning in verdict.warnings]
    outcome = _Outcome(RigidityVerdictSerializer(verdict).data, [('Rigidity verdict', rows)])
    if verdict.bound_breached:
        return attrs.evolve(outcome, exit_code=ExitCode.INVARIANT_VIOLATION,
                            message=f"Bound breached: image span {verdict.image_span} for profile {report.dims}")
    if not report.hypothesis_ok:
        return attrs.evolve(outcome, exit_code=ExitCode.HYPOTHESIS_FAILED,
                            message='Hypothesis not satisfied: ' + '; '.join(report.reasons))
    return outcome


def _identity_solve(config):
    problem = _validated(IdentityProblemSerializer, load_input(config.input_path))
    spaces = []
    if config.form in ('matrix', 'both'):
        spaces.append(solve_matrix_form(problem))
    if config.form in ('conjugate', 'both'):
        spaces.append(solve_conjugate_form(problem))
    if len({space.dim for space in spaces}) > 1:
        raise InvariantViolation(f"The two forms disagree: dims {[space.dim for space in spaces]}")
    data = {
        'problem': IdentityProblemSerializer(problem).data,
        'spaces': [SolutionSpaceSerializer(space).data for space in spaces],
    }
    sections = [('Problem', _problem_rows(problem))] + [
        (f"Solutions ({space.form} form)", [('dim', space.dim)] + _solution_rows(space.basis)) for space in spaces
    ]
    return _Outcome(data, sections)


def _identity_check(config):
    problem = _validated(IdentityProblemSerializer, load_input(config.input_path))
    report = check_bound(problem)
    rows = [('n', report.n), ('m', report.m), ('degree', report.degree), ('bound', report.bound),
            ('dim', report.dim), ('tight', report.tight), ('violated', report.violated)]
    outcome = _Outcome(BoundReportSerializer(report).data, [('Dimension bound', rows)])
    if report.violated:
        return attrs.evolve(outcome, exit_code=ExitCode.INVARIANT_VIOLATION,
                            message=f"dim {report.dim} exceeds the bound {report.bound}")
    if report.bound is None:
        return attrs.evolve(outcome, exit_code=ExitCode.HYPOTHESIS_FAILED,
                            message=f"m = {report.m} is not below n(n+1)/2 = {report.n * (report.n + 1) // 2}")
    return outcome


def _sharp_example(config):
    if config.input_path is not None:
        return _validated(SharpExampleSerializer, load_input(config.input_path))
    return sharp_example(config.n, config.k, config.literal)


def _identity_sharp(config):
    example = _sharp_example(config)
    summary = [('reading', example.reading), ('k', example.k), ('dim', example.dim), ('bound', example.bound),
               ('tight', example.tight)]
    sections = [('Sharp example', summary), ('Problem', _problem_rows(example.problem)),
                ('Constructed solutions', _solution_rows(example.solutions))]
    return _Outcome(SharpExampleSerializer(example).data, sections)


def _decompose(config):
    if config.input_path is not None:
        result = _validated(DecompositionSerializer, load_input(config.input_path))
    else:
        example = sharp_example(config.n, config.k, config.literal)
        result = decompose(example.problem, example.solutions)
    rows = [('kappa', result.kappa), ('v', result.v)]
    rows += [(f"h{j + 1}", poly) for j, poly in enumerate(result.h)]
    for i, (r, s) in enumerate(zip(result.r, result.s), start=1):
        rows += [(f"r{i}", r), (f"s{i}", s)]
    sections = [('Problem', _problem_rows(result.problem)), ('Decomposition', rows)]
    return _Outcome(DecompositionSerializer(result).data, sections)


def _builtin(config):
    f = build_map(config)
    return _Outcome(CRMapSerializer(f).data, [(f"Builtin {config.builtin}", _map_rows(f))])


HANDLERS = {
    CommandName.VERIFY: _verify,
    CommandName.ANALYZE: _analyze,
    CommandName.IDENTITY_SOLVE: _identity_solve,
    CommandName.IDENTITY_CHECK: _identity_check,
    CommandName.IDENTITY_SHARP: _identity_sharp,
    CommandName.DECOMPOSE: _decompose,
    CommandName.BUILTIN: _builtin,
}


def _describe(exc):
    if isinstance(exc, DjangoValidationError):
        return '; '.join(exc.messages)
    if isinstance(exc, ValidationError):
        return str(exc.detail)
    return str(exc)


def _failure(config, code, exc):
    message = _describe(exc)
    logger.error(f"{config.command.value} failed with exit code {int(code)}: {message}")
    return RunResult(code, '', message)


def run(config):
    try:
        outcome = HANDLERS[config.command](config)
    except NotASphereMapError as exc:
        return _failure(config, ExitCode.SPHERE_FAILED, exc)
    except InvariantViolation as exc:
        return _failure(config, ExitCode.INVARIANT_VIOLATION, exc)
    except MALFORMED as exc:
        return _failure(config, ExitCode.MALFORMED_INPUT, exc)
    if config.output_format is OutputFormat.JSON:
        report = render_json(outcome.data)
    else:
        digits = settings.RIGIDITY_TOOLKIT['APPROX_DIGITS'] if config.approx else None
        report = render_tables(outcome.sections, digits)
    if outcome.exit_code:
        logger.error(f"{config.command.value} finished with exit code {int(outcome.exit_code)}: {outcome.message}")
    return RunResult(outcome.exit_code, report, outcome.message)
