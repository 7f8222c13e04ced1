from typing import Sequence

import numpy as np

from .embeddings import EmbeddingTable
from .tfidf import TfIdfModel, tfidf_vector


def question_embedding(
    m: TfIdfModel, tbl: EmbeddingTable, tokens: Sequence[str]
) -> np.ndarray:
    """TF-IDF-weighted mean of the word vectors of in-vocabulary tokens.

    Tokens without a vector are skipped; the zero vector is returned when
    nothing is left.
    """
    weights = tfidf_vector(m, tokens).entries
    total = np.zeros(tbl.dim, dtype=np.float64)
    weight_sum = 0.0
    for term in sorted(weights):
        vector = tbl.vectors.get(term)
        if vector is None:
            continue
        total += weights[term] * vector
        weight_sum += weights[term]

    if weight_sum == 0:
        return np.zeros(tbl.dim, dtype=np.float64)
    return total / weight_sum
