"""Built-in freiheit commands."""

from freiheit_cli.commands.interface import CommandInfo, CommandResult, FreiheitCommand
from freiheit_cli.commands.registry import BUILTIN_COMMANDS, load_commands

__all__ = [
    "BUILTIN_COMMANDS",
    "CommandInfo",
    "CommandResult",
    "FreiheitCommand",
    "load_commands",
]
