from cli.config import CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Degeneracy profile, defect integers, plane bound and image span of a sphere map.'
    name = CommandName.ANALYZE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_map_arguments(parser)
        self.add_sampling_arguments(parser)
