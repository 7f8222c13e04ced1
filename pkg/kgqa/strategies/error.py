import logging
from typing import Dict, Optional, Type

from kgqa.errors import UsageError
from ..models.invocation import Invocation
from ..models.strategies import ErrorStrategy

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2


class LoggingErrorStrategy(ErrorStrategy):
    """Logs the error, tells the user on the error stream and picks the exit code.

    Usage errors exit with 1 and repeat the command usage; every other
    failure is a data or load error and exits with 2.
    """

    def __init__(
        self,
        default_message: str = "The command failed",
        error_messages: Optional[Dict[Type[Exception], str]] = None,
    ):
        super().__init__(error_messages=error_messages, default_message=default_message)

    def _message_for(self, error: Exception) -> str:
        # first matching entry wins, so list subclasses before their bases
        for error_type, custom_message in (self.error_messages or {}).items():
            if isinstance(error, error_type):
                return custom_message
        return self.default_message

    def handle_error(self, invocation: Invocation, error: Exception) -> int:
        logger.error(f"Error while running {invocation.command}: {error}")
        # stack trace only when debugging
        if logger.isEnabledFor(logging.DEBUG):
            logger.exception(error)

        invocation.stderr.write(
            f"kgqa {invocation.command}: {self._message_for(error)}: {error}\n"
        )
        if isinstance(error, UsageError):
            invocation.stderr.write(invocation.usage)
            return EXIT_USAGE
        return EXIT_DATA
