"""Answer metrics and dataset evaluation reports."""

from .metrics import (
    ConfusionCounts,
    bleu,
    exact_match,
    f1,
    mrr,
    precision,
    recall,
    rouge_l,
    rouge_n,
)
