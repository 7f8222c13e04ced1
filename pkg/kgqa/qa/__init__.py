from .recognizer import EntityRecognizer
from .loading import load_embedding_table, load_graph, load_matcher, load_tagger
from .engine import (
    NO_ENTITY_TEXT,
    NO_RESULTS_TEXT,
    NO_TEMPLATE_TEXT,
    Answer,
    AnswerStatus,
    ParsedQuestion,
    QAEngine,
    execute,
    generate_answer,
)
