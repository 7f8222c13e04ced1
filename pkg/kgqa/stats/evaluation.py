"""Dataset evaluation: run the engine over gold questions and aggregate metrics."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence
import json
import logging

from prettytable import PrettyTable

from kgqa.errors import DataError, EmptyDatasetError
from kgqa.qa import Answer, QAEngine
from kgqa.utils import normalize, tokenize_words
from .metrics import (
    ConfusionCounts,
    bleu,
    exact_match,
    f1,
    first_correct_rank,
    mrr,
    normalize_answer,
    precision,
    recall,
    rouge_l,
    rouge_n,
)

logger = logging.getLogger(__name__)

METRIC_ORDER = ("em", "precision", "recall", "f1", "macro_f1", "mrr", "bleu", "rouge_n", "rouge_l")


@dataclass
class EvalRecord:
    question: str
    gold_answers: List[str]
    predicted: List[str] = field(default_factory=list)
    predicted_text: Optional[str] = None
    reference_text: Optional[str] = None

    def __post_init__(self):
        if not self.gold_answers:
            raise ValueError(f"Record {self.question!r} has no gold answers")

    @classmethod
    def from_dict(cls, data: dict) -> "EvalRecord":
        gold = data["gold"]
        if not isinstance(gold, list) or not all(isinstance(answer, str) for answer in gold):
            raise TypeError(f"gold must be a list of strings, got {gold!r}")
        return cls(
            question=data["question"],
            gold_answers=gold,
            reference_text=data.get("reference_text"),
        )


@dataclass(frozen=True)
class RecordScore:
    question: str
    status: str
    predicted: List[str]
    correct: bool
    rank: Optional[int]
    counts: ConfusionCounts


@dataclass
class MetricReport:
    em: Optional[float] = None
    precision: Optional[float] = None
    recall: Optional[float] = None
    f1: Optional[float] = None
    macro_f1: Optional[float] = None
    mrr: Optional[float] = None
    bleu: Optional[float] = None
    rouge_n: Optional[float] = None
    rouge_l: Optional[float] = None
    records: List[RecordScore] = field(default_factory=list)

    def values(self) -> Dict[str, float]:
        """Present metrics in report order."""
        present = {}
        for name in METRIC_ORDER:
            value = getattr(self, name)
            if value is not None:
                present[name] = value
        return present


def load_eval_records(source: Iterable[str]) -> List[EvalRecord]:
    """One flat JSON object per line: question, gold, optional reference_text."""
    records = []
    for line_number, line in enumerate(source, 1):
        if not line.strip():
            continue
        try:
            records.append(EvalRecord.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise DataError(f"Line {line_number}: invalid eval record: {e}") from e
    return records


def _answer_record(engine: QAEngine, record: EvalRecord) -> Answer:
    return engine.answer(record.question)


def _mean(values: Sequence[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def _score_text(records: Sequence[EvalRecord], n: int, report: MetricReport):
    bleu_scores, rouge_n_scores, rouge_l_scores = [], [], []
    for record in records:
        if not record.reference_text or not record.predicted_text:
            continue
        candidate = [normalize(t) for t in tokenize_words(record.predicted_text)]
        reference = [normalize(t) for t in tokenize_words(record.reference_text)]
        if not candidate or not reference:
            continue
        bleu_scores.append(bleu(candidate, [reference]))
        rouge_l_scores.append(rouge_l(candidate, reference))
        if len(reference) >= n:
            rouge_n_scores.append(rouge_n(candidate, reference, n))
    report.bleu = _mean(bleu_scores)
    report.rouge_n = _mean(rouge_n_scores)
    report.rouge_l = _mean(rouge_l_scores)


def score_dataset(
    records: Sequence[EvalRecord],
    engine: QAEngine,
    rouge_order: int = 2,
    max_workers: int = 1,
) -> MetricReport:
    """Answer every record and compute the metrics whose inputs are present."""
    if not records:
        raise EmptyDatasetError("The evaluation dataset is empty")

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            answers = list(executor.map(lambda r: _answer_record(engine, r), records))
    else:
        answers = [_answer_record(engine, record) for record in records]

    report = MetricReport()
    total = ConfusionCounts()
    per_record_f1 = []
    for record, answer in zip(records, answers):
        record.predicted = list(answer.entity_names)
        record.predicted_text = answer.text
        counts = ConfusionCounts.from_sets(
            {normalize_answer(name) for name in record.predicted},
            {normalize_answer(name) for name in record.gold_answers},
        )
        total += counts
        pre = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
        per_record_f1.append(f1(pre, recall(counts)))

        rank = first_correct_rank(record.predicted, record.gold_answers)
        report.records.append(
            RecordScore(
                question=record.question,
                status=answer.status.value,
                predicted=record.predicted,
                correct=rank == 1,
                rank=rank,
                counts=counts,
            )
        )
        if rank != 1:
            logger.info(f"Missed {record.question!r}: predicted {record.predicted}")

    report.em = exact_match(records)
    report.mrr = mrr([score.rank for score in report.records])
    if total.tp + total.fp:
        report.precision = precision(total)
    report.recall = recall(total)
    if report.precision is not None:
        report.f1 = f1(report.precision, report.recall)
    report.macro_f1 = _mean(per_record_f1)
    _score_text(records, rouge_order, report)
    return report


def render_report(report: MetricReport) -> str:
    """Table of metric values followed by one `metric=<name> value=<v>` line each."""
    table = PrettyTable()
    table.field_names = ["metric", "value"]
    table.align["metric"] = "l"
    table.align["value"] = "r"
    values = report.values()
    table.add_rows([[name, f"{value:.4f}"] for name, value in values.items()])
    lines = [table.get_string()]
    lines.extend(f"metric={name} value={value:.6f}" for name, value in values.items())
    return "\n".join(lines)


def render_records(report: MetricReport) -> str:
    table = PrettyTable()
    table.field_names = ["#", "question", "status", "rank", "predicted"]
    table.align = "l"
    for i, score in enumerate(report.records, 1):
        table.add_row(
            [i, score.question, score.status, score.rank or "-", ", ".join(score.predicted)]
        )
    return table.get_string()
