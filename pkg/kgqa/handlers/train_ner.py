from pathlib import Path
from typing import List, Optional
import logging

from kgqa.errors import DataError
from kgqa.models import Invocation, UnitHandler
from kgqa.ner import CrfTagger, Gazetteer, LabelSet, evaluate_tagger, read_ner_corpus, train_perceptron
from kgqa.qa import load_graph
from kgqa.stats.metrics import safe_ratio
from kgqa.strategies import LinesReplyStrategy, LoggingErrorStrategy, SimpleContextStrategy
from .common import load_invocation_config

logger = logging.getLogger(__name__)


def _read_corpus(invocation: Invocation):
    path = Path(invocation.args.corpus)
    try:
        with open(path, encoding="utf-8") as source:
            return read_ner_corpus(source)
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"Could not read NER corpus {path}: {e}") from e


def _gazetteer(invocation: Invocation) -> Optional[Gazetteer]:
    config = invocation.state["config"]
    if not config.triples and not config.db_url:
        return None
    return Gazetteer.from_graph(load_graph(config))


def _train(invocation: Invocation) -> CrfTagger:
    corpus = invocation.state["corpus"]
    labels = LabelSet.from_tags(tag for _, tags in corpus for tag in tags)
    model, transitions = train_perceptron(
        corpus, labels, invocation.args.epochs, invocation.state["gazetteer"]
    )
    tagger = CrfTagger(model, transitions)
    try:
        tagger.save(invocation.args.out)
    except OSError as e:
        raise DataError(f"Could not write NER model {invocation.args.out}: {e}") from e
    return tagger


def _training_lines(invocation: Invocation) -> List[str]:
    corpus = invocation.state["corpus"]
    counts = evaluate_tagger(invocation.state["tagger"], corpus)
    pre, rec, f = safe_ratio(counts)
    return [
        f"sentences={len(corpus)} labels={invocation.state['tagger'].labels.k} "
        f"model={invocation.args.out}",
        f"tp={counts.tp} fp={counts.fp} fn={counts.fn}",
        f"precision={pre:.6f} recall={rec:.6f} f1={f:.6f}",
    ]


def create_train_ner_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=SimpleContextStrategy(
            {
                "config": load_invocation_config,
                "corpus": _read_corpus,
                "gazetteer": _gazetteer,
                "tagger": _train,
            }
        ),
        reply_strategy=LinesReplyStrategy(_training_lines),
        error_strategy=LoggingErrorStrategy(default_message="NER training failed"),
    )
