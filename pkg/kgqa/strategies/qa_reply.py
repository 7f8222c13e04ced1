import logging

from kgqa.qa import QAEngine
from ..models.invocation import Invocation
from ..models.strategies import ReplyStrategy

logger = logging.getLogger(__name__)

REPL_PROMPT = "? "
REPL_QUIT = ":quit"


class AnswerReply(ReplyStrategy):
    """Answers the question given on the command line."""

    def execute(self, invocation: Invocation) -> None:
        engine: QAEngine = invocation.state["engine"]
        question = " ".join(invocation.args.question)
        answer = engine.answer(question)
        logger.info(f"{answer.status.value}: {question!r}")
        self._send_message(invocation, answer.text)


class ReplReply(ReplyStrategy):
    """Reads questions line by line until end of input or `:quit`.

    The prompt goes to the error stream so piped output holds answers only.
    """

    def execute(self, invocation: Invocation) -> None:
        engine: QAEngine = invocation.state["engine"]
        while True:
            invocation.stderr.write(REPL_PROMPT)
            invocation.stderr.flush()
            line = invocation.stdin.readline()
            if not line:
                break
            question = line.strip()
            if question == REPL_QUIT:
                break
            if not question:
                continue
            self._send_message(invocation, engine.answer(question).text)
