from pathlib import Path
from typing import List
import logging

from kgqa.errors import GraphIOError, UsageError
from kgqa.models import GraphRepository, Invocation, KnowledgeGraph, UnitHandler, export_tsv, load_graph_files
from kgqa.strategies import LinesReplyStrategy, LoggingErrorStrategy, SimpleContextStrategy
from .common import load_invocation_config

logger = logging.getLogger(__name__)


def _import_files(invocation: Invocation):
    config = invocation.state["config"]
    if not config.triples:
        raise UsageError("import needs at least one --triples file")
    return load_graph_files(config.triples, KnowledgeGraph())


def _persist(invocation: Invocation) -> List[str]:
    graph, _ = invocation.state["imported"]
    notes = []
    if invocation.args.db:
        repository = GraphRepository(invocation.args.db)
        try:
            rows = repository.save(graph)
        finally:
            repository.close()
        notes.append(f"saved {rows} rows to {invocation.args.db}")
    if invocation.args.export:
        path = Path(invocation.args.export)
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as target:
                target.writelines(export_tsv(graph))
        except OSError as e:
            raise GraphIOError(f"Could not write {path}: {e}") from e
        notes.append(f"exported {len(graph.triples)} triples to {path}")
    return notes


def _report_lines(invocation: Invocation) -> List[str]:
    graph, reports = invocation.state["imported"]
    stats = graph.stats()
    lines = [str(report) for report in reports]
    lines.append(
        f"graph: entities={stats.entity_count} triples={stats.triple_count} "
        f"entity_types={stats.entity_type_count} relation_types={stats.relation_type_count}"
    )
    lines.extend(invocation.state["persisted"])
    return lines


def create_import_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=SimpleContextStrategy(
            {
                "config": load_invocation_config,
                "imported": _import_files,
                "persisted": _persist,
            }
        ),
        reply_strategy=LinesReplyStrategy(_report_lines),
        error_strategy=LoggingErrorStrategy(
            default_message="import failed",
            error_messages={UsageError: "missing input", GraphIOError: "could not read or write the graph"},
        ),
    )
