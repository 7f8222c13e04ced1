from typing import Callable, Iterable

from ..models.invocation import Invocation
from ..models.strategies import ReplyStrategy


class LinesReplyStrategy(ReplyStrategy):
    """Writes one line per item produced from the invocation; nothing for no items."""

    def __init__(self, lines: Callable[[Invocation], Iterable[str]]):
        self.lines = lines

    def execute(self, invocation: Invocation) -> None:
        for line in self.lines(invocation):
            self._send_message(invocation, line)
