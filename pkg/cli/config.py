import enum
from typing import Optional

import attrs
from django.core.exceptions import ValidationError


class CommandName(str, enum.Enum):
    VERIFY = 'verify'
    ANALYZE = 'analyze'
    IDENTITY_SOLVE = 'identity-solve'
    IDENTITY_CHECK = 'identity-check'
    IDENTITY_SHARP = 'identity-sharp'
    DECOMPOSE = 'decompose'
    BUILTIN = 'builtin'


class OutputFormat(str, enum.Enum):
    TABLE = 'table'
    JSON = 'json'


class ExitCode(enum.IntEnum):
    OK = 0
    SPHERE_FAILED = 1
    HYPOTHESIS_FAILED = 2
    MALFORMED_INPUT = 3
    INVARIANT_VIOLATION = 4


BUILTIN_NAMES = ('linear', 'dt', 'hst', 'whitney')
SOLVE_FORMS = ('matrix', 'conjugate', 'both')

MAP_COMMANDS = {CommandName.VERIFY, CommandName.ANALYZE, CommandName.BUILTIN}
PROBLEM_COMMANDS = {CommandName.IDENTITY_SOLVE, CommandName.IDENTITY_CHECK}
SHARP_COMMANDS = {CommandName.IDENTITY_SHARP, CommandName.DECOMPOSE}


def _invalid(message, **params):
    return ValidationError(message, code='invalid_config', params=params)


@attrs.frozen
class RunConfig:
    command: CommandName = attrs.field(converter=CommandName)
    input_path: Optional[str] = None
    output_format: OutputFormat = attrs.field(default=OutputFormat.TABLE, converter=OutputFormat)
    approx: bool = False
    trials: Optional[int] = None
    seed: Optional[int] = None
    builtin: Optional[str] = None
    n: Optional[int] = None
    N: Optional[int] = None
    u: str = '1/2'
    u_s: str = '1/2'
    u_t: str = '1/2'
    k: Optional[int] = None
    literal: bool = False
    form: str = 'both'

    def __attrs_post_init__(self):
        if self.trials is not None and self.trials < 1:
            raise _invalid('--trials must be at least 1, got %(trials)s.', trials=self.trials)
        if self.builtin is not None and self.builtin not in BUILTIN_NAMES:
            raise _invalid('Unknown builtin %(name)s.', name=self.builtin)
        if self.form not in SOLVE_FORMS:
            raise _invalid('Unknown form %(form)s.', form=self.form)
        if self.command in MAP_COMMANDS:
            self._check_map_source()
        elif self.command in PROBLEM_COMMANDS and self.input_path is None:
            raise _invalid('%(command)s needs --input.', command=self.command.value)
        elif self.command in SHARP_COMMANDS and self.input_path is None and (self.n is None or self.k is None):
            raise _invalid('%(command)s needs --input or both --n and --k.', command=self.command.value)

    def _check_map_source(self):
        if self.command is CommandName.BUILTIN and self.builtin is None:
            raise _invalid('builtin needs --builtin.')
        if (self.input_path is None) == (self.builtin is None):
            raise _invalid('Give exactly one of --input and --builtin.')
        if self.builtin is not None and self.n is None:
            raise _invalid('--builtin needs --n.')

    @classmethod
    def from_options(cls, command, options):
        """Build a config from management command options; flags a command does not declare keep their defaults."""
        fields = {field.name for field in attrs.fields(cls)} - {'command', 'input_path'}
        values = {name: options[name] for name in fields if options.get(name) is not None}
        return cls(command, input_path=options.get('input'), **values)
