from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional, Type

from .invocation import Invocation


class ContextStrategy(ABC):
    """Abstract base class for strategies that prepare invocation state."""

    @abstractmethod
    def execute(self, invocation: Invocation) -> None:
        """Execute the context strategy.

        Args:
            invocation: The running command; strategies write into its state
        """
        pass


class ReplyStrategy(ABC):
    """Abstract base class for strategies that write command results."""

    def _send_message(self, invocation: Invocation, message: str):
        """Results go to the output stream only, one trailing newline each."""
        invocation.write(message)

    @abstractmethod
    def execute(self, invocation: Invocation) -> None:
        """Execute the reply strategy.

        Args:
            invocation: The running command
        """
        pass


@dataclass
class ErrorStrategy(ABC):
    """Abstract base class for error handling strategies."""

    error_messages: Optional[Dict[Type[Exception], str]]
    default_message: str

    @abstractmethod
    def handle_error(self, invocation: Invocation, error: Exception) -> int:
        """Report an error raised while handling the command.

        Returns:
            The process exit code
        """
        pass
