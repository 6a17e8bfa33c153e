from cli.config import CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Build the quadratic example whose solution space attains the bound.'
    name = CommandName.IDENTITY_SHARP

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_sharp_arguments(parser)
