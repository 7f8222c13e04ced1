from .reply import LinesReplyStrategy
from .context import SimpleContextStrategy
from .error import EXIT_DATA, EXIT_USAGE, LoggingErrorStrategy
from .qa_reply import REPL_PROMPT, REPL_QUIT, AnswerReply, ReplReply

__all__ = [
    "LinesReplyStrategy",
    "SimpleContextStrategy",
    "LoggingErrorStrategy",
    "EXIT_DATA",
    "EXIT_USAGE",
    "AnswerReply",
    "ReplReply",
    "REPL_PROMPT",
    "REPL_QUIT",
]
