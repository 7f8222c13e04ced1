from typing import List

from kgqa.models import Invocation, UnitHandler
from kgqa.qa import EntityRecognizer, load_tagger
from kgqa.strategies import LinesReplyStrategy, LoggingErrorStrategy, SimpleContextStrategy
from kgqa.utils import tokenize_words
from .common import load_invocation_config, load_invocation_graph, question_text


def _recognizer(invocation: Invocation) -> EntityRecognizer:
    config, graph = invocation.state["config"], invocation.state["graph"]
    return EntityRecognizer(graph, load_tagger(config, graph), config.use_crf)


def _mention_lines(invocation: Invocation) -> List[str]:
    tokens = tokenize_words(question_text(invocation))
    return [str(mention) for mention in invocation.state["recognizer"].recognize(tokens)]


def create_ner_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=SimpleContextStrategy(
            {
                "config": load_invocation_config,
                "graph": load_invocation_graph,
                "recognizer": _recognizer,
            }
        ),
        reply_strategy=LinesReplyStrategy(_mention_lines),
        error_strategy=LoggingErrorStrategy(default_message="entity recognition failed"),
    )
