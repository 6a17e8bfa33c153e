from cli.config import SOLVE_FORMS, CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Solve p(z) Q = r(z) z exactly for the problem in --input.'
    name = CommandName.IDENTITY_SOLVE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--form', choices=SOLVE_FORMS, default='both',
                            help='Matrix form, conjugate form, or both (cross-checked).')
