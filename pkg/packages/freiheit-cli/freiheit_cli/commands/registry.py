"""
Command table for the freiheit CLI.

Every command needs a payload schema under freiheit_cli/schemas, so the
table is fixed.
"""

import logging

from freiheit_cli.commands.geometry import CertifySchottkyCommand, ObstructCommand
from freiheit_cli.commands.groups import (
    ChibarCommand,
    IofCommand,
    MiofBoundCommand,
    QuotientCheckCommand,
    TheoremBCommand,
)
from freiheit_cli.commands.interface import FreiheitCommand
from freiheit_cli.commands.magnus import CertifyMagnusCommand

logger = logging.getLogger(__name__)

BUILTIN_COMMANDS = (
    CertifyMagnusCommand,
    ObstructCommand,
    CertifySchottkyCommand,
    IofCommand,
    MiofBoundCommand,
    ChibarCommand,
    TheoremBCommand,
    QuotientCheckCommand,
)


def load_commands() -> dict[str, FreiheitCommand]:
    """
    Instantiate the commands, keyed by name.

    Raises:
        ValueError: Two commands share a name
    """
    commands: dict[str, FreiheitCommand] = {}
    for command_class in BUILTIN_COMMANDS:
        command = command_class()
        name = command.info.name
        if name in commands:
            raise ValueError(f"Command '{name}' is registered twice")
        commands[name] = command
    logger.debug(f"Loaded commands: {', '.join(commands)}")
    return commands
