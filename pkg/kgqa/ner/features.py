from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from kgqa.utils import normalize
from .gazetteer import Gazetteer
from .labels import LabelSet

SENTENCE_START = "<s>"
SENTENCE_END = "</s>"


def token_shape(token: str) -> str:
    """Collapsed character classes: 'AIDS' -> 'X', 'Sorafenib' -> 'Xx', 'HLA-B' -> 'X-X'."""
    shape: List[str] = []
    for char in token:
        if char.isupper():
            code = "X"
        elif char.islower():
            code = "x"
        elif char.isdigit():
            code = "d"
        else:
            code = char
        if not shape or shape[-1] != code:
            shape.append(code)
    return "".join(shape)


def extract_features(
    tokens: Sequence[str], position: int, gazetteer: Optional[Gazetteer] = None
) -> List[str]:
    token = tokens[position]
    previous = normalize(tokens[position - 1]) if position > 0 else SENTENCE_START
    following = (
        normalize(tokens[position + 1]) if position + 1 < len(tokens) else SENTENCE_END
    )
    features = [
        "bias",
        f"tok={normalize(token)}",
        f"shape={token_shape(token)}",
        f"prev={previous}",
        f"next={following}",
    ]
    if gazetteer is not None:
        features.extend(f"gaz={tag}" for tag in gazetteer.get_features(token))
    return features


@dataclass
class EmissionModel:
    """Linear scores: weight vectors over labels, keyed by feature string."""

    labels: LabelSet
    weights: Dict[str, np.ndarray] = field(default_factory=dict)
    gazetteer: Optional[Gazetteer] = None

    def update(self, feature: str, label_index: int, delta: float):
        vector = self.weights.get(feature)
        if vector is None:
            vector = self.weights[feature] = np.zeros(self.labels.k, dtype=np.float64)
        vector[label_index] += delta

    def features(self, tokens: Sequence[str], position: int) -> List[str]:
        return extract_features(tokens, position, self.gazetteer)

    def to_dict(self) -> dict:
        return {
            feature: [float(w) for w in vector]
            for feature, vector in sorted(self.weights.items())
            if np.any(vector)
        }


def score_emissions(m: EmissionModel, tokens: Sequence[str], ls: LabelSet) -> np.ndarray:
    """(n x k) matrix; entry [t, j] sums the weights of token t's features for label j."""
    if ls.k != m.labels.k:
        raise ValueError(f"Model has {m.labels.k} labels, label set has {ls.k}")
    scores = np.zeros((len(tokens), ls.k), dtype=np.float64)
    for t in range(len(tokens)):
        for feature in m.features(tokens, t):
            vector = m.weights.get(feature)
            if vector is not None:
                scores[t] += vector
    return scores
