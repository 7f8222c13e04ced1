from pathlib import Path
from typing import Optional
import logging

from kgqa.config import Config
from kgqa.errors import ConfigError, DataError
from kgqa.matching import TemplateMatcher, load_templates
from kgqa.models.graph import KnowledgeGraph, load_graph_files
from kgqa.models.repository import GraphRepository
from kgqa.ner import CrfTagger, Gazetteer
from kgqa.vectors import EmbeddingTable, load_embeddings

logger = logging.getLogger(__name__)


def _read_lines(path: Path, what: str):
    try:
        with open(path, encoding="utf-8") as source:
            return source.readlines()
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"Could not read {what} file {path}: {e}") from e


def load_graph(config: Config) -> KnowledgeGraph:
    """Stored graph from `db_url` (if any), then every triples file on top."""
    graph = KnowledgeGraph()
    if config.db_url:
        repository = GraphRepository(config.db_url)
        try:
            graph = repository.load()
        finally:
            repository.close()
    graph, reports = load_graph_files(config.triples, graph)
    for report in reports:
        if report.malformed_lines:
            logger.warning(f"{report.source}: {report.malformed_lines} malformed rows skipped")
    logger.info(f"Graph ready: {graph.stats()}")
    return graph


def load_embedding_table(config: Config) -> Optional[EmbeddingTable]:
    if config.embeddings is None:
        return None
    return load_embeddings(_read_lines(config.embeddings, "embeddings"))


def load_matcher(config: Config) -> TemplateMatcher:
    if config.templates is None:
        raise ConfigError("No templates file configured")
    templates = load_templates(_read_lines(config.templates, "templates"))
    return TemplateMatcher(
        templates, load_embedding_table(config), config.alpha, config.threshold
    )


def load_tagger(config: Config, graph: KnowledgeGraph) -> Optional[CrfTagger]:
    if not config.use_crf or config.ner_model is None:
        return None
    return CrfTagger.load(config.ner_model, Gazetteer.from_graph(graph))
