from typing import List

from prettytable import PrettyTable

from kgqa.matching import abstract_question
from kgqa.models import Invocation, UnitHandler
from kgqa.strategies import LinesReplyStrategy, LoggingErrorStrategy, SimpleContextStrategy
from kgqa.utils import tokenize_words
from .common import (
    load_invocation_config,
    load_invocation_engine,
    load_invocation_graph,
    question_text,
    require_templates,
)


def _debug_lines(invocation: Invocation) -> List[str]:
    engine = invocation.state["engine"]
    tokens = tokenize_words(question_text(invocation))
    mentions = engine.recognize(tokens)
    abstract = abstract_question(tokens, mentions)

    table = PrettyTable()
    table.field_names = ["rank", "template", "relation", "direction", "score", "passed"]
    table.align["template"] = "l"
    for rank, result in enumerate(engine.matcher.rank(abstract), 1):
        template = engine.matcher[result.template_id]
        table.add_row(
            [
                rank,
                template.id,
                template.relation,
                template.direction.value,
                f"{result.score:.4f}",
                "yes" if result.passed else "no",
            ]
        )
    return [
        f"mentions: {' '.join(str(m) for m in mentions) or '-'}",
        f"abstract: {' '.join(abstract)}",
        table.get_string(),
    ]


def create_match_debug_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=SimpleContextStrategy(
            {
                "config": load_invocation_config,
                "templates_checked": require_templates,
                "graph": load_invocation_graph,
                "engine": load_invocation_engine,
            }
        ),
        reply_strategy=LinesReplyStrategy(_debug_lines),
        error_strategy=LoggingErrorStrategy(default_message="template matching failed"),
    )
