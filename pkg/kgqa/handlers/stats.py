"""`stats`: four counts for one graph, or a per-source table with a RESULT row."""

from typing import List

from prettytable import PrettyTable

from kgqa.models import Invocation, KnowledgeGraph, UnitHandler, load_graph_files
from kgqa.qa import load_graph
from kgqa.strategies import LinesReplyStrategy, LoggingErrorStrategy, SimpleContextStrategy
from .common import load_invocation_config, require_graph_source

STATS_COLUMNS = ["source", "entity", "relevancy", "entity type", "relevancy type"]


def _per_source(invocation: Invocation):
    config = require_graph_source(invocation)
    if len(config.triples) < 2:
        return []
    rows = []
    for path in config.triples:
        graph, _ = load_graph_files([path], KnowledgeGraph())
        rows.append([path.name, *graph.stats().as_row()])
    return rows


def _stats_lines(invocation: Invocation) -> List[str]:
    result = invocation.state["graph"].stats()
    rows = invocation.state["sources"]
    if not rows:
        return [str(result)]
    table = PrettyTable()
    table.field_names = STATS_COLUMNS
    table.align["source"] = "l"
    table.add_rows(rows)
    table.add_row(["RESULT", *result.as_row()])
    return [table.get_string()]


def create_stats_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=SimpleContextStrategy(
            {
                "config": load_invocation_config,
                "sources": _per_source,
                "graph": lambda invocation: load_graph(invocation.state["config"]),
            }
        ),
        reply_strategy=LinesReplyStrategy(_stats_lines),
        error_strategy=LoggingErrorStrategy(default_message="stats failed"),
    )
