"""Linear-chain CRF layer: transition matrix with START/STOP states and Viterbi.

Forbidden transitions hold -inf; numpy keeps -inf absorbing under + and max.
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from kgqa.errors import NoFeasiblePathError
from .labels import EntityMention, LabelSet, OUTSIDE, mentions_from_tags, split_tag

NEG_INF = -np.inf


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """(k+2)x(k+2) scores; row i, column j scores moving from label i to j.

    Index k is START and k+1 is STOP. Column START and row STOP are never read.
    """

    scores: np.ndarray

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        if scores.ndim != 2 or scores.shape[0] != scores.shape[1] or scores.shape[0] < 3:
            raise ValueError(f"Transition matrix must be (k+2)x(k+2), got {scores.shape}")
        if np.isnan(scores).any() or np.isposinf(scores).any():
            raise ValueError("Transition scores must be finite or -inf")
        object.__setattr__(self, "scores", scores)

    @classmethod
    def zeros(cls, k: int) -> "TransitionMatrix":
        return cls(np.zeros((k + 2, k + 2), dtype=np.float64))

    @property
    def k(self) -> int:
        return self.scores.shape[0] - 2

    @property
    def start(self) -> int:
        return self.k

    @property
    def stop(self) -> int:
        return self.k + 1


@dataclass(frozen=True)
class TagSequence:
    tags: List[int]
    score: float


def path_score(e: np.ndarray, a: TransitionMatrix, tags: Sequence[int]) -> float:
    """Emission sum plus START, pairwise and STOP transitions for one path."""
    e = np.asarray(e, dtype=np.float64)
    score = a.scores[a.start, tags[0]] + e[0, tags[0]]
    for t in range(1, len(tags)):
        score += a.scores[tags[t - 1], tags[t]] + e[t, tags[t]]
    return float(score + a.scores[tags[-1], a.stop])


def viterbi(e: np.ndarray, a: TransitionMatrix) -> TagSequence:
    """Highest-scoring label path; ties go to the lexicographically smallest path.

    Best suffix scores are computed right to left, then the path is read left
    to right taking the first maximizing label at each step.
    """
    e = np.asarray(e, dtype=np.float64)
    if e.ndim != 2 or e.shape[0] < 1:
        raise ValueError(f"Emission scores must be an (n x k) matrix with n >= 1, got {e.shape}")
    n, k = e.shape
    if k != a.k:
        raise ValueError(f"Emission scores have {k} labels, transitions have {a.k}")

    pairwise = a.scores[:k, :k]
    # suffix[t, j]: best score of positions t+1..n-1 and STOP given label j at t
    suffix = np.empty((n, k), dtype=np.float64)
    suffix[n - 1] = a.scores[:k, a.stop]
    for t in range(n - 2, -1, -1):
        suffix[t] = np.max(pairwise + (e[t + 1] + suffix[t + 1])[np.newaxis, :], axis=1)

    values = a.scores[a.start, :k] + e[0] + suffix[0]
    best = float(np.max(values))
    if best == NEG_INF:
        raise NoFeasiblePathError("Every label path is forbidden by the transitions")

    tags = [int(np.argmax(values))]
    for t in range(1, n):
        values = pairwise[tags[-1]] + e[t] + suffix[t]
        tags.append(int(np.argmax(values)))
    return TagSequence(tags=tags, score=best)


def constrain_bio(a: TransitionMatrix, ls: LabelSet) -> TransitionMatrix:
    """Copy of `a` with -inf on every transition that would break BIO."""
    if a.k != ls.k:
        raise ValueError(f"Transition matrix has {a.k} labels, label set has {ls.k}")
    scores = a.scores.copy()
    for j, label in enumerate(ls.labels):
        prefix, etype = split_tag(label)
        if prefix != "I":
            continue
        scores[ls.start_index, j] = NEG_INF
        for i, source in enumerate(ls.labels):
            _, source_type = split_tag(source)
            if source == OUTSIDE or source_type != etype:
                scores[i, j] = NEG_INF
    return TransitionMatrix(scores)


def decode_mentions(
    tokens: Sequence[str], ts: TagSequence, ls: LabelSet
) -> List[EntityMention]:
    if len(tokens) != len(ts.tags):
        raise ValueError(f"{len(tokens)} tokens but {len(ts.tags)} tags")
    return mentions_from_tags(tokens, [ls.labels[i] for i in ts.tags])
