from typing import Optional

from .invocation import Invocation
from .strategies import ContextStrategy, ErrorStrategy, ReplyStrategy


class UnitHandler:
    """A handler that executes a sequence of strategies for one CLI command."""

    def __init__(
        self,
        context_strategy: Optional[ContextStrategy] = None,
        reply_strategy: Optional[ReplyStrategy] = None,
        error_strategy: Optional[ErrorStrategy] = None,
    ):
        self.context_strategy = context_strategy
        self.reply_strategy = reply_strategy
        self.error_strategy = error_strategy

    def __call__(self, invocation: Invocation) -> int:
        """Execute the handler's strategies in sequence and return an exit code."""
        try:
            if self.context_strategy:
                self.context_strategy.execute(invocation)

            if self.reply_strategy:
                self.reply_strategy.execute(invocation)

            return 0

        except Exception as e:
            if self.error_strategy:
                return self.error_strategy.handle_error(invocation, e)
            raise
