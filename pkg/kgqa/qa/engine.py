"""Question answering pipeline: recognize, match, query, phrase."""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence
import logging

from kgqa.config import Config
from kgqa.errors import NoEntityFoundError, NoTemplateMatchError
from kgqa.matching import Direction, MatchResult, Template, TemplateMatcher, abstract_question
from kgqa.models.graph import Entity, KnowledgeGraph
from kgqa.ner import EntityMention
from kgqa.utils import format_list, normalize, tokenize_words
from .loading import load_graph, load_matcher, load_tagger
from .recognizer import EntityRecognizer

logger = logging.getLogger(__name__)

NO_ENTITY_TEXT = "I could not recognize a known entity in your question."
NO_TEMPLATE_TEXT = "I could not match your question to a known question type."
NO_RESULTS_TEXT = "I found no {relation} information for {entity} in the knowledge graph."


class AnswerStatus(str, Enum):
    ANSWERED = "Answered"
    NO_RESULTS = "NoResults"
    NO_ENTITY = "NoEntity"
    NO_TEMPLATE_MATCH = "NoTemplateMatch"


@dataclass(frozen=True)
class ParsedQuestion:
    source: str
    tokens: List[str]
    mentions: List[EntityMention]
    match: MatchResult
    template: Template
    mention: EntityMention
    resolved_entity: str


@dataclass(frozen=True)
class Answer:
    entity_names: List[str]
    text: str
    status: AnswerStatus
    template_id: Optional[str] = None

    def __post_init__(self):
        if (self.status == AnswerStatus.ANSWERED) != bool(self.entity_names):
            raise ValueError(f"Status {self.status.value} disagrees with {self.entity_names}")
        if not self.text:
            raise ValueError("Answer text must not be empty")


def execute(p: ParsedQuestion, g: KnowledgeGraph) -> List[Entity]:
    """One-hop lookup in the template's direction, sorted by name then id."""
    if p.template.direction == Direction.FORWARD:
        ids = g.objects(p.resolved_entity, p.template.relation)
    else:
        ids = g.subjects(p.resolved_entity, p.template.relation)
    entities = [g.entities[entity_id] for entity_id in set(ids)]
    return sorted(entities, key=lambda e: (normalize(e.name), e.id))


def generate_answer(p: ParsedQuestion, results: Sequence[Entity]) -> Answer:
    if not results:
        return Answer(
            entity_names=[],
            text=NO_RESULTS_TEXT.format(relation=p.template.relation, entity=p.mention.text),
            status=AnswerStatus.NO_RESULTS,
            template_id=p.template.id,
        )
    names = [entity.name for entity in results]
    text = p.template.answer_surface.replace("{entity}", p.mention.text).replace(
        "{list}", format_list(names)
    )
    return Answer(names, text, AnswerStatus.ANSWERED, template_id=p.template.id)


class QAEngine:
    """Loaded graph, templates and recognizer; immutable once built."""

    def __init__(
        self,
        graph: KnowledgeGraph,
        matcher: TemplateMatcher,
        recognizer: Optional[EntityRecognizer] = None,
    ):
        self.graph = graph
        self.matcher = matcher
        self.recognizer = recognizer if recognizer is not None else EntityRecognizer(graph)

    @classmethod
    def from_config(cls, config: Config, graph: Optional[KnowledgeGraph] = None) -> "QAEngine":
        graph = graph if graph is not None else load_graph(config)
        recognizer = EntityRecognizer(graph, load_tagger(config, graph), config.use_crf)
        return cls(graph, load_matcher(config), recognizer)

    def recognize(self, tokens: Sequence[str]) -> List[EntityMention]:
        return self.recognizer.recognize(tokens)

    def parse(self, question: str) -> ParsedQuestion:
        tokens = tokenize_words(question)
        mentions = self.recognize(tokens)
        if not mentions:
            raise NoEntityFoundError(f"No entity mention in {question!r}")

        match = self.matcher.best(abstract_question(tokens, mentions))
        if not match.passed:
            raise NoTemplateMatchError(
                f"Best template {match.template_id} scored {match.score:.3f}, "
                f"below threshold {self.matcher.threshold}"
            )

        template = self.matcher[match.template_id]
        for mention in mentions:
            if mention.label == template.subject_type and mention.entity_id is not None:
                return ParsedQuestion(
                    source=question,
                    tokens=tokens,
                    mentions=mentions,
                    match=match,
                    template=template,
                    mention=mention,
                    resolved_entity=mention.entity_id,
                )
        raise NoTemplateMatchError(
            f"Template {template.id} expects a {template.subject_type} mention"
        )

    def execute(self, p: ParsedQuestion) -> List[Entity]:
        return execute(p, self.graph)

    def answer(self, question: str) -> Answer:
        try:
            parsed = self.parse(question)
        except NoEntityFoundError as e:
            logger.debug(str(e))
            return Answer([], NO_ENTITY_TEXT, AnswerStatus.NO_ENTITY)
        except NoTemplateMatchError as e:
            logger.debug(str(e))
            return Answer([], NO_TEMPLATE_TEXT, AnswerStatus.NO_TEMPLATE_MATCH)
        return generate_answer(parsed, execute(parsed, self.graph))
