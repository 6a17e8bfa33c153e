import sys
from functools import partial

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from cli.config import BUILTIN_NAMES, ExitCode, OutputFormat, RunConfig
from cli.runner import run


def _parser_error(parser, message):
    if not parser.called_from_command_line:
        raise CommandError(f"Error: {message}", returncode=ExitCode.MALFORMED_INPUT)
    parser.print_usage(sys.stderr)
    parser.exit(ExitCode.MALFORMED_INPUT, f"{parser.prog}: error: {message}\n")


class ToolkitCommand(BaseCommand):
    """Shared flags and the run/exit-code plumbing of the toolkit commands."""
    name = None
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # bad flags are malformed input too
        parser.error = partial(_parser_error, parser)
        return parser

    def add_arguments(self, parser):
        parser.add_argument('--input', help='Path of the input JSON file.')
        parser.add_argument('--format', dest='output_format', choices=[choice.value for choice in OutputFormat],
                            default=OutputFormat.TABLE.value, help='Report format (default: table).')
        parser.add_argument('--approx', action='store_true', help='Add decimal hints to rationals in tables.')

    def add_map_arguments(self, parser):
        parser.add_argument('--builtin', choices=BUILTIN_NAMES, help='Use a built-in map instead of --input.')
        parser.add_argument('--n', type=int, help='Source dimension of the built-in map.')
        parser.add_argument('--N', type=int, help='Target dimension (linear embedding only).')
        parser.add_argument('--u', default='1/2', help='Circle parameter of dt (rational, default 1/2).')
        parser.add_argument('--u-s', default='1/2', help='Circle parameter s of hst (rational, default 1/2).')
        parser.add_argument('--u-t', default='1/2', help='Circle parameter t of hst (rational, default 1/2).')

    def add_sampling_arguments(self, parser):
        defaults = settings.RIGIDITY_TOOLKIT
        parser.add_argument('--trials', type=int, default=defaults['DEFAULT_TRIALS'],
                            help='Number of sampled sphere points.')
        parser.add_argument('--seed', type=int, default=defaults['DEFAULT_SEED'], help='Sampling seed.')

    def add_sharp_arguments(self, parser):
        parser.add_argument('--n', type=int, help='Number of variables.')
        parser.add_argument('--k', type=int, help='Number of constructed solutions, 1 <= k <= n-1.')
        parser.add_argument('--literal', action='store_true',
                            help='Use m = sum_{j=0}^{k} (n-j) instead of sum_{j=0}^{k-1} (n-j).')

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(self.name, options)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=ExitCode.MALFORMED_INPUT) from exc
        result = run(config)
        if result.report:
            self.stdout.write(result.report)
        if result.exit_code:
            raise CommandError(result.message, returncode=result.exit_code)
