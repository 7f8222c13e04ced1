from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional
import logging

import numpy as np

from kgqa.errors import DimensionMismatchError, EmbeddingParseError, LengthMismatchError
from kgqa.utils import normalize

logger = logging.getLogger(__name__)

DEFAULT_DIM = 50


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    dim: int = DEFAULT_DIM
    vectors: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError(f"Embedding dimension must be positive, got {self.dim}")

    def __contains__(self, token: str) -> bool:
        return normalize(token) in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, token: str) -> Optional[np.ndarray]:
        return self.vectors.get(normalize(token))


def load_embeddings(source: Iterable[str]) -> EmbeddingTable:
    """Read the `<count> <dim>` header followed by `<token> <c1> ... <c_dim>` rows.

    The advisory count is ignored; a repeated token keeps its last row.
    """
    lines = iter(source)
    header = next(lines, "").split()
    if len(header) != 2:
        raise EmbeddingParseError(f"Expected '<count> <dim>' header, got {header!r}")
    try:
        _, dim = int(header[0]), int(header[1])
    except ValueError as e:
        raise EmbeddingParseError(f"Non-integer embeddings header {header!r}") from e
    if dim <= 0:
        raise EmbeddingParseError(f"Embedding dimension must be positive, got {dim}")

    vectors: Dict[str, np.ndarray] = {}
    for line_number, line in enumerate(lines, 2):
        parts = line.split()
        if not parts:
            continue
        token, components = parts[0], parts[1:]
        if len(components) != dim:
            raise DimensionMismatchError(
                f"Line {line_number}: {len(components)} components for {token!r}, expected {dim}"
            )
        try:
            vector = np.array([float(c) for c in components], dtype=np.float64)
        except ValueError as e:
            raise EmbeddingParseError(f"Line {line_number}: {e}") from e
        if not np.all(np.isfinite(vector)):
            raise EmbeddingParseError(f"Line {line_number}: non-finite component")
        vectors[normalize(token)] = vector

    logger.info(f"Loaded {len(vectors)} vectors of dimension {dim}")
    return EmbeddingTable(dim=dim, vectors=vectors)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatchError(f"Vector lengths differ: {a.shape} vs {b.shape}")
    norm = np.linalg.norm(a) * np.linalg.norm(b)
    if norm == 0:
        return 0.0
    return float(np.clip(np.dot(a, b) / norm, -1.0, 1.0))
