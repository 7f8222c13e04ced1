from .labels import (
    OUTSIDE,
    EntityMention,
    LabelSet,
    is_bio_valid,
    mentions_from_tags,
    split_tag,
    tags_from_mentions,
)
from .crf import (
    NEG_INF,
    TagSequence,
    TransitionMatrix,
    constrain_bio,
    decode_mentions,
    path_score,
    viterbi,
)
from .gazetteer import Gazetteer, gazetteer_tag
from .features import EmissionModel, extract_features, score_emissions, token_shape
from .perceptron import read_ner_corpus, train_perceptron
from .tagger import CrfTagger, evaluate_tagger
