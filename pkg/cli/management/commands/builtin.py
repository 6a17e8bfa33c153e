from cli.config import CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Print a built-in map (linear, dt, hst or whitney).'
    name = CommandName.BUILTIN

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_map_arguments(parser)
