from kgqa.models import UnitHandler
from kgqa.strategies import AnswerReply, LoggingErrorStrategy, ReplReply, SimpleContextStrategy
from .common import (
    load_invocation_config,
    load_invocation_engine,
    load_invocation_graph,
    require_templates,
)


def _engine_context() -> SimpleContextStrategy:
    return SimpleContextStrategy(
        {
            "config": load_invocation_config,
            "templates_checked": require_templates,
            "graph": load_invocation_graph,
            "engine": load_invocation_engine,
        }
    )


def create_ask_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=_engine_context(),
        reply_strategy=AnswerReply(),
        error_strategy=LoggingErrorStrategy(default_message="could not load the question answering state"),
    )


def create_repl_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=_engine_context(),
        reply_strategy=ReplReply(),
        error_strategy=LoggingErrorStrategy(default_message="could not load the question answering state"),
    )
