from .templates import Direction, Template, abstract_question, load_templates, slot_token
from .matcher import (
    DEFAULT_ALPHA,
    DEFAULT_THRESHOLD,
    MatchResult,
    TemplateMatcher,
    best_template,
    rank_templates,
    score_template,
)
