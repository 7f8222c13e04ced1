from pathlib import Path
from typing import List, Optional, Sequence, Union
import json
import logging

import numpy as np

from kgqa.errors import DataError
from kgqa.stats.metrics import ConfusionCounts, mention_counts
from .crf import TransitionMatrix, constrain_bio, decode_mentions, viterbi
from .features import EmissionModel, score_emissions
from .gazetteer import Gazetteer
from .labels import EntityMention, LabelSet, mentions_from_tags
from .perceptron import Sentence

logger = logging.getLogger(__name__)


class CrfTagger:
    def __init__(self, model: EmissionModel, transitions: TransitionMatrix):
        if model.labels.k != transitions.k:
            raise ValueError(
                f"Model has {model.labels.k} labels, transitions have {transitions.k}"
            )
        self.model = model
        self.labels = model.labels
        self.transitions = transitions
        self._constrained = constrain_bio(transitions, self.labels)

    def tag(self, tokens: Sequence[str]) -> List[EntityMention]:
        if not tokens:
            return []
        emissions = score_emissions(self.model, tokens, self.labels)
        return decode_mentions(tokens, viterbi(emissions, self._constrained), self.labels)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels.labels),
            "weights": self.model.to_dict(),
            # json has no -inf; forbidden entries are written as null
            "transitions": [
                [None if np.isneginf(v) else float(v) for v in row]
                for row in self.transitions.scores
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, gazetteer: Optional[Gazetteer] = None) -> "CrfTagger":
        try:
            labels = LabelSet(tuple(data["labels"]))
            weights = {
                feature: np.asarray(vector, dtype=np.float64)
                for feature, vector in data["weights"].items()
            }
            scores = np.array(
                [[-np.inf if v is None else float(v) for v in row] for row in data["transitions"]],
                dtype=np.float64,
            )
            transitions = TransitionMatrix(scores)
        except (KeyError, TypeError, ValueError) as e:
            raise DataError(f"Invalid NER model document: {e}") from e
        for feature, vector in weights.items():
            if vector.shape != (labels.k,):
                raise DataError(f"Weights for {feature!r} do not cover {labels.k} labels")
        model = EmissionModel(labels=labels, weights=weights, gazetteer=gazetteer)
        return cls(model, transitions)

    def save(self, path: Union[str, Path]):
        Path(path).write_text(json.dumps(self.to_dict(), indent=1, sort_keys=True), encoding="utf-8")
        logger.info(f"Saved NER model with {len(self.model.weights)} features to {path}")

    @classmethod
    def load(cls, path: Union[str, Path], gazetteer: Optional[Gazetteer] = None) -> "CrfTagger":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise DataError(f"Could not read NER model {path}: {e}") from e
        return cls.from_dict(data, gazetteer)


def _mention_keys(mentions: Sequence[EntityMention]):
    return {(m.token_span, m.label) for m in mentions}


def evaluate_tagger(tagger: CrfTagger, corpus: Sequence[Sentence]) -> ConfusionCounts:
    """Mention-level counts: a mention is correct when span and label both match."""
    total = ConfusionCounts()
    for tokens, tags in corpus:
        gold = mentions_from_tags(tokens, tags)
        total += mention_counts(_mention_keys(tagger.tag(tokens)), _mention_keys(gold))
    return total
