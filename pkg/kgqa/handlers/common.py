"""State loaders shared by the command handlers.

Each takes the running Invocation, so they can be listed directly in a
SimpleContextStrategy.
"""

from typing import Any, Dict
import logging

from kgqa.config import Config, load_config
from kgqa.errors import UsageError
from kgqa.models.graph import KnowledgeGraph
from kgqa.models.invocation import Invocation
from kgqa.qa import QAEngine, load_graph

logger = logging.getLogger(__name__)

# flag destination -> config key
FLAG_KEYS = {
    "triples": "triples",
    "embeddings": "embeddings",
    "templates": "templates",
    "ner_model": "ner_model",
    "alpha": "alpha",
    "threshold": "threshold",
    "use_crf": "use_crf",
    "rouge_n": "rouge_n",
    "workers": "max_workers",
}


def flag_overrides(invocation: Invocation) -> Dict[str, Any]:
    return {
        key: getattr(invocation.args, flag)
        for flag, key in FLAG_KEYS.items()
        if getattr(invocation.args, flag, None) is not None
    }


def load_invocation_config(invocation: Invocation) -> Config:
    config = load_config(invocation.args.config, flag_overrides(invocation))
    if not invocation.args.verbose:
        logging.getLogger().setLevel(config.log_level)
    return config


def require_graph_source(invocation: Invocation) -> Config:
    config: Config = invocation.state["config"]
    if not config.triples and not config.db_url:
        raise UsageError("no knowledge graph given; pass --triples or set triples in --config")
    return config


def load_invocation_graph(invocation: Invocation) -> KnowledgeGraph:
    require_graph_source(invocation)
    return load_graph(invocation.state["config"])


def load_invocation_engine(invocation: Invocation) -> QAEngine:
    config = require_templates(invocation)
    return QAEngine.from_config(config, invocation.state["graph"])


def question_text(invocation: Invocation) -> str:
    return " ".join(invocation.args.question)


def require_templates(invocation: Invocation) -> Config:
    config: Config = invocation.state["config"]
    if config.templates is None:
        raise UsageError("no templates given; pass --templates or set templates in --config")
    return config
