from .embeddings import DEFAULT_DIM, EmbeddingTable, load_embeddings, cosine
from .tfidf import SparseVector, TfIdfModel, fit_tfidf, tfidf_vector, sparse_cosine
from .question import question_embedding

__all__ = [
    "DEFAULT_DIM",
    "EmbeddingTable",
    "load_embeddings",
    "cosine",
    "SparseVector",
    "TfIdfModel",
    "fit_tfidf",
    "tfidf_vector",
    "sparse_cosine",
    "question_embedding",
]
