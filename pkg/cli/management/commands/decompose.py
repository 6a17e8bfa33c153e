from cli.config import CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Split p into a kernel part and r-multiples, given independent solutions.'
    name = CommandName.DECOMPOSE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_sharp_arguments(parser)
