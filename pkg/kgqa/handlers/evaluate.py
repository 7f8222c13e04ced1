from pathlib import Path
from typing import List

from kgqa.errors import DataError
from kgqa.models import Invocation, UnitHandler
from kgqa.stats.evaluation import load_eval_records, render_records, render_report, score_dataset
from kgqa.strategies import LinesReplyStrategy, LoggingErrorStrategy, SimpleContextStrategy
from .common import (
    load_invocation_config,
    load_invocation_engine,
    load_invocation_graph,
    require_templates,
)


def _read_gold(invocation: Invocation):
    path = Path(invocation.args.gold)
    try:
        with open(path, encoding="utf-8") as source:
            return load_eval_records(source)
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"Could not read gold set {path}: {e}") from e


def _score(invocation: Invocation):
    config = invocation.state["config"]
    return score_dataset(
        invocation.state["records"],
        invocation.state["engine"],
        rouge_order=config.rouge_n,
        max_workers=config.max_workers,
    )


def _report_lines(invocation: Invocation) -> List[str]:
    report = invocation.state["report"]
    lines = []
    if invocation.args.details:
        lines.append(render_records(report))
    lines.append(render_report(report))
    return lines


def create_eval_handler() -> UnitHandler:
    return UnitHandler(
        context_strategy=SimpleContextStrategy(
            {
                "config": load_invocation_config,
                "templates_checked": require_templates,
                "records": _read_gold,
                "graph": load_invocation_graph,
                "engine": load_invocation_engine,
                "report": _score,
            }
        ),
        reply_strategy=LinesReplyStrategy(_report_lines),
        error_strategy=LoggingErrorStrategy(default_message="evaluation failed"),
    )
