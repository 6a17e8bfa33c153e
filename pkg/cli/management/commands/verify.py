from cli.config import CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Check that a map sends S^n into S^N; prints the reduction remainder.'
    name = CommandName.VERIFY

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_map_arguments(parser)
