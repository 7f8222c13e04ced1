"""TF-IDF over pre-tokenized documents.

idf(t) = ln((1 + N) / (1 + df(t))) + 1, tf is the raw count, vectors are
L2-normalized. Terms never seen while fitting use df = 0.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np
from sklearn.feature_extraction.text import CountVectorizer, TfidfTransformer

from kgqa.errors import EmptyCorpusError
from kgqa.utils import normalize


def _normalized_terms(tokens: Sequence[str]) -> List[str]:
    return [normalize(token) for token in tokens]


@dataclass(frozen=True)
class SparseVector:
    """Term weights keyed by normalized term; zero weights are never stored."""

    entries: Dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def norm(self) -> float:
        return float(np.linalg.norm(list(self.entries.values()))) if self.entries else 0.0

    def dot(self, other: "SparseVector") -> float:
        if len(other.entries) < len(self.entries):
            return other.dot(self)
        return sum(w * other.entries.get(t, 0.0) for t, w in self.entries.items())


@dataclass(frozen=True, eq=False)
class TfIdfModel:
    doc_count: int
    df: Dict[str, int]
    vocab: Dict[str, int]
    idf: np.ndarray

    def idf_of(self, term: str) -> float:
        index = self.vocab.get(term)
        if index is None:
            return float(np.log((1 + self.doc_count) / 1.0) + 1.0)
        return float(self.idf[index])


def fit_tfidf(corpus: Sequence[Sequence[str]]) -> TfIdfModel:
    """Fit document frequencies over a corpus of token lists."""
    if not corpus:
        raise EmptyCorpusError("Cannot fit TF-IDF on an empty corpus")

    if not any(corpus):
        # documents without terms still count towards N
        return TfIdfModel(doc_count=len(corpus), df={}, vocab={}, idf=np.zeros(0))

    vectorizer = CountVectorizer(analyzer=_normalized_terms)
    counts = vectorizer.fit_transform(corpus)

    vocab = {term: int(index) for term, index in vectorizer.vocabulary_.items()}
    doc_freq = np.asarray((counts > 0).sum(axis=0)).ravel()
    transformer = TfidfTransformer(smooth_idf=True, sublinear_tf=False).fit(counts)

    return TfIdfModel(
        doc_count=len(corpus),
        df={term: int(doc_freq[index]) for term, index in vocab.items()},
        vocab=vocab,
        idf=np.asarray(transformer.idf_, dtype=np.float64),
    )


def tfidf_vector(m: TfIdfModel, tokens: Sequence[str]) -> SparseVector:
    counts = Counter(_normalized_terms(tokens))
    weights = {term: tf * m.idf_of(term) for term, tf in counts.items()}
    norm = float(np.linalg.norm(list(weights.values()))) if weights else 0.0
    if norm == 0:
        return SparseVector()
    return SparseVector({term: w / norm for term, w in sorted(weights.items()) if w})


def sparse_cosine(a: SparseVector, b: SparseVector) -> float:
    norm = a.norm() * b.norm()
    if norm == 0:
        return 0.0
    return float(np.clip(a.dot(b) / norm, -1.0, 1.0))
