from cli.config import CommandName
from cli.management.commands._base import ToolkitCommand


class Command(ToolkitCommand):
    help = 'Compare the solution space dimension of the problem in --input with its bound.'
    name = CommandName.IDENTITY_CHECK
