"""
Command interface for the freiheit CLI.

Every subcommand implements this interface and is listed in
freiheit_cli.commands.registry.BUILTIN_COMMANDS.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

from freiheit.config import FreiheitConfig


@dataclass
class CommandInfo:
    """
    Command metadata.

    Attributes:
        name: Subcommand name on the command line
        description: One line for --help
        uses_depth: True if --depth means something for this command
    """
    name: str
    description: str
    uses_depth: bool = False


@dataclass
class CommandResult:
    """
    What a command hands back to the runner.

    Attributes:
        result: JSON-ready report body
        positive: Certified/consistent (exit 0) or not (exit 2)
    """
    result: dict
    positive: bool


class FreiheitCommand(ABC):
    """
    Base class for freiheit commands.

    Example:
        class EchoCommand(FreiheitCommand):
            @property
            def info(self) -> CommandInfo:
                return CommandInfo(name="echo", description="Echo the payload")

            def execute(self, payload, config, depth=None) -> CommandResult:
                return CommandResult(result=payload, positive=True)
    """

    @property
    @abstractmethod
    def info(self) -> CommandInfo:
        """
        Return command metadata.

        Returns:
            CommandInfo with name and description
        """
        pass

    @abstractmethod
    def execute(
        self, payload: dict, config: FreiheitConfig, depth: int | None = None
    ) -> CommandResult:
        """
        Run the command on a validated payload.

        Args:
            payload: Input object, already checked against the schema
            config: Effective configuration for this job
            depth: Value of --depth, if given
        """
        pass

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        """
        Re-check a serialized report without repeating its search.

        Override for commands whose reports can be re-verified.
        """
        raise NotImplementedError(f"'{self.info.name}' has no --verify mode")


def verification_result(kind: str, problems: list[str], verdict_positive: bool) -> CommandResult:
    """A valid report keeps the exit status of its recorded verdict."""
    return CommandResult(
        result={"kind": f"{kind}-verification", "valid": not problems, "problems": problems},
        positive=verdict_positive and not problems,
    )
