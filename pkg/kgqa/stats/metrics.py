from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from nltk.translate.bleu_score import SmoothingFunction, modified_precision, sentence_bleu
from rouge_score import rouge_scorer
from rouge_score.tokenizers import Tokenizer

from kgqa.errors import (
    EmptyCandidateError,
    EmptyDatasetError,
    EmptyReferenceError,
    NoReferencesError,
    ReferenceTooShortError,
    UndefinedMetricError,
)
from kgqa.utils import normalize

SMOOTHING = SmoothingFunction()


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError(f"Confusion counts must be non-negative: {self}")

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    @classmethod
    def from_sets(cls, predicted: Iterable, gold: Iterable) -> "ConfusionCounts":
        predicted, gold = set(predicted), set(gold)
        return cls(
            tp=len(predicted & gold), fp=len(predicted - gold), fn=len(gold - predicted)
        )


def normalize_answer(text: str) -> str:
    return normalize(text).strip()


def exact_match(records: Sequence) -> float:
    """Share of records whose top-1 prediction equals some gold answer.

    Records need `predicted` (ranked) and `gold_answers` attributes.
    """
    if not records:
        raise EmptyDatasetError("Exact match needs at least one record")
    right = 0
    for record in records:
        gold = {normalize_answer(answer) for answer in record.gold_answers}
        if record.predicted and normalize_answer(record.predicted[0]) in gold:
            right += 1
    return right / len(records)


def precision(c: ConfusionCounts) -> float:
    if c.tp + c.fp == 0:
        raise UndefinedMetricError("Precision is undefined when tp + fp = 0")
    return c.tp / (c.tp + c.fp)


def recall(c: ConfusionCounts) -> float:
    if c.tp + c.fn == 0:
        raise UndefinedMetricError("Recall is undefined when tp + fn = 0")
    return c.tp / (c.tp + c.fn)


def f1(pre: float, rec: float) -> float:
    if pre + rec == 0:
        return 0.0
    return 2 * pre * rec / (pre + rec)


def mrr(ranks: Sequence[Optional[int]]) -> float:
    """Mean reciprocal rank; a missing rank contributes 0."""
    if not ranks:
        raise EmptyDatasetError("MRR needs at least one query")
    total = 0.0
    for rank in ranks:
        if rank is None:
            continue
        if rank < 1:
            raise ValueError(f"Ranks start at 1, got {rank}")
        total += 1.0 / rank
    return total / len(ranks)


MAX_ROUGE_N = 9

# joins pre-tokenized text for the ROUGE scorer and splits it back unchanged
TOKEN_SEPARATOR = "\x1f"


class PreTokenized(Tokenizer):
    """Tokenizer for `RougeScorer` that keeps the caller's tokens as they are."""

    def tokenize(self, text: str) -> List[str]:
        return text.split(TOKEN_SEPARATOR) if text else []


@lru_cache(maxsize=None)
def _rouge_scorer(rouge_type: str) -> rouge_scorer.RougeScorer:
    return rouge_scorer.RougeScorer([rouge_type], tokenizer=PreTokenized())


def _rouge_recall(rouge_type: str, candidate: Sequence[str], reference: Sequence[str]) -> float:
    score = _rouge_scorer(rouge_type).score(
        TOKEN_SEPARATOR.join(reference), TOKEN_SEPARATOR.join(candidate)
    )
    return float(score[rouge_type].recall)


def bleu(
    candidate: Sequence[str],
    references: Sequence[Sequence[str]],
    max_n: int = 4,
    smoothing: bool = False,
) -> float:
    """Clipped n-gram precision geometric mean times the brevity penalty.

    With `smoothing`, orders n >= 2 use add-one counts.
    """
    if not candidate:
        raise EmptyCandidateError("BLEU needs a non-empty candidate")
    if not references:
        raise NoReferencesError("BLEU needs at least one reference")

    candidate, references = list(candidate), [list(ref) for ref in references]
    # an order with no match makes the score exactly 0 unless smoothed
    orders = range(1, 2 if smoothing else max_n + 1)
    if any(modified_precision(references, candidate, n).numerator == 0 for n in orders):
        return 0.0

    return float(
        sentence_bleu(
            references,
            candidate,
            weights=tuple(1.0 / max_n for _ in range(max_n)),
            smoothing_function=SMOOTHING.method2 if smoothing else SMOOTHING.method0,
        )
    )


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int = 2) -> float:
    """Recall of reference n-grams, clipped by candidate counts."""
    if not 1 <= n <= MAX_ROUGE_N:
        raise ValueError(f"n must lie in [1, {MAX_ROUGE_N}], got {n}")
    if len(reference) < n:
        raise ReferenceTooShortError(f"Reference of {len(reference)} tokens has no {n}-grams")
    return _rouge_recall(f"rouge{n}", candidate, reference)


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> float:
    """Longest common subsequence length over the reference length."""
    if not reference:
        raise EmptyReferenceError("ROUGE-L needs a non-empty reference")
    return _rouge_recall("rougeL", candidate, reference)


def first_correct_rank(predicted: Sequence[str], gold: Iterable[str]) -> Optional[int]:
    gold_keys = {normalize_answer(answer) for answer in gold}
    for rank, name in enumerate(predicted, 1):
        if normalize_answer(name) in gold_keys:
            return rank
    return None


def mention_counts(
    predicted: Iterable[Tuple], gold: Iterable[Tuple]
) -> ConfusionCounts:
    """Exact (span, label) agreement between two mention collections."""
    return ConfusionCounts.from_sets(predicted, gold)


def safe_ratio(c: ConfusionCounts) -> List[float]:
    """[precision, recall, f1] with undefined parts reported as 0."""
    pre = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
    rec = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    return [pre, rec, f1(pre, rec)]
