from typing import Iterable, List, Optional, Sequence, Tuple
import logging

from kgqa.errors import EmptyCorpusError, InvalidBioSequenceError
from .crf import TransitionMatrix, constrain_bio, viterbi
from .features import EmissionModel, score_emissions
from .gazetteer import Gazetteer
from .labels import LabelSet, is_bio_valid

logger = logging.getLogger(__name__)

Sentence = Tuple[List[str], List[str]]


def read_ner_corpus(source: Iterable[str]) -> List[Sentence]:
    """Parse `<token> TAB <tag>` lines with blank lines between sentences."""
    corpus: List[Sentence] = []
    tokens: List[str] = []
    tags: List[str] = []
    for line_number, line in enumerate(source, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if tokens:
                corpus.append((tokens, tags))
                tokens, tags = [], []
            continue
        columns = line.split("\t")
        if len(columns) != 2 or not columns[0] or not columns[1]:
            raise InvalidBioSequenceError(
                f"Line {line_number}: expected '<token>\\t<tag>', got {line!r}"
            )
        tokens.append(columns[0])
        tags.append(columns[1].strip())
    if tokens:
        corpus.append((tokens, tags))
    return corpus


def _transition_path(tags: Sequence[int], a: TransitionMatrix) -> List[Tuple[int, int]]:
    states = [a.start, *tags, a.stop]
    return list(zip(states[:-1], states[1:]))


def train_perceptron(
    corpus: Sequence[Sentence],
    ls: LabelSet,
    epochs: int,
    gazetteer: Optional[Gazetteer] = None,
) -> Tuple[EmissionModel, TransitionMatrix]:
    """Perceptron updates in corpus order, decoding under BIO constraints.

    When the constrained decode differs from gold, gold feature and transition
    counts are added and predicted ones subtracted. The raw (unconstrained)
    learned transition matrix is returned.
    """
    if not corpus:
        raise EmptyCorpusError("Cannot train on an empty corpus")
    gold_paths = []
    for tokens, tags in corpus:
        if len(tokens) != len(tags) or not is_bio_valid(tags):
            raise InvalidBioSequenceError(f"Gold tags are not BIO-valid: {tags}")
        gold_paths.append(ls.indices(tags))

    model = EmissionModel(labels=ls, gazetteer=gazetteer)
    transitions = TransitionMatrix.zeros(ls.k)

    for epoch in range(1, epochs + 1):
        mistakes = 0
        for (tokens, _), gold in zip(corpus, gold_paths):
            emissions = score_emissions(model, tokens, ls)
            predicted = viterbi(emissions, constrain_bio(transitions, ls)).tags
            if predicted == gold:
                continue

            mistakes += 1
            for t in range(len(tokens)):
                if predicted[t] == gold[t]:
                    continue
                for feature in model.features(tokens, t):
                    model.update(feature, gold[t], 1.0)
                    model.update(feature, predicted[t], -1.0)
            for i, j in _transition_path(gold, transitions):
                transitions.scores[i, j] += 1.0
            for i, j in _transition_path(predicted, transitions):
                transitions.scores[i, j] -= 1.0

        logger.info(f"Epoch {epoch}/{epochs}: {mistakes} sentences updated")
        if mistakes == 0:
            # no update can happen in later epochs either
            break

    return model, transitions
