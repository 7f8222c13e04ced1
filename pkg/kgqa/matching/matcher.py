from dataclasses import dataclass
from typing import List, Optional, Sequence
import logging

from kgqa.errors import NoTemplatesError
from kgqa.vectors import (
    EmbeddingTable,
    TfIdfModel,
    cosine,
    fit_tfidf,
    question_embedding,
    sparse_cosine,
    tfidf_vector,
)
from .templates import Template

logger = logging.getLogger(__name__)

DEFAULT_ALPHA = 0.5
DEFAULT_THRESHOLD = 0.35


@dataclass(frozen=True)
class MatchResult:
    template_id: str
    score: float
    passed: bool


def _check_alpha(alpha: float):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


def score_template(
    q_abstract: Sequence[str],
    t: Template,
    tfidf: TfIdfModel,
    emb: EmbeddingTable,
    alpha: float = DEFAULT_ALPHA,
) -> float:
    _check_alpha(alpha)
    template_tokens = t.tokens
    lexical = sparse_cosine(tfidf_vector(tfidf, q_abstract), tfidf_vector(tfidf, template_tokens))
    semantic = cosine(
        question_embedding(tfidf, emb, q_abstract),
        question_embedding(tfidf, emb, template_tokens),
    )
    # skip the zero-weighted side so alpha in {0, 1} degenerates exactly
    if alpha == 1.0:
        return lexical
    if alpha == 0.0:
        return semantic
    return alpha * lexical + (1 - alpha) * semantic


def best_template(
    q_abstract: Sequence[str],
    templates: Sequence[Template],
    tfidf: TfIdfModel,
    emb: EmbeddingTable,
    alpha: float = DEFAULT_ALPHA,
    threshold: float = DEFAULT_THRESHOLD,
) -> MatchResult:
    """Highest-scoring template; equal scores go to the smallest template id."""
    ranked = rank_templates(q_abstract, templates, tfidf, emb, alpha, threshold)
    return ranked[0]


def rank_templates(
    q_abstract: Sequence[str],
    templates: Sequence[Template],
    tfidf: TfIdfModel,
    emb: EmbeddingTable,
    alpha: float = DEFAULT_ALPHA,
    threshold: float = DEFAULT_THRESHOLD,
) -> List[MatchResult]:
    if not templates:
        raise NoTemplatesError("No templates to match against")
    results = [
        MatchResult(t.id, score, score >= threshold)
        for t in templates
        for score in [score_template(q_abstract, t, tfidf, emb, alpha)]
    ]
    results.sort(key=lambda r: (-r.score, r.template_id))
    return results


class TemplateMatcher:
    """Templates with the TF-IDF model fitted on their own texts."""

    def __init__(
        self,
        templates: Sequence[Template],
        embeddings: Optional[EmbeddingTable] = None,
        alpha: float = DEFAULT_ALPHA,
        threshold: float = DEFAULT_THRESHOLD,
    ):
        if not templates:
            raise NoTemplatesError("A matcher needs at least one template")
        _check_alpha(alpha)
        if not -1.0 <= threshold <= 1.0:
            raise ValueError(f"threshold must lie in [-1, 1], got {threshold}")
        self.templates = {t.id: t for t in templates}
        self.embeddings = embeddings if embeddings is not None else EmbeddingTable()
        self.alpha = alpha
        self.threshold = threshold
        self.tfidf = fit_tfidf([t.tokens for t in templates])
        logger.debug(f"Fitted TF-IDF on {len(templates)} templates, {len(self.tfidf.vocab)} terms")

    def __getitem__(self, template_id: str) -> Template:
        return self.templates[template_id]

    def rank(self, q_abstract: Sequence[str]) -> List[MatchResult]:
        return rank_templates(
            q_abstract,
            list(self.templates.values()),
            self.tfidf,
            self.embeddings,
            self.alpha,
            self.threshold,
        )

    def best(self, q_abstract: Sequence[str]) -> MatchResult:
        return self.rank(q_abstract)[0]
