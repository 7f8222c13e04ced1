from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence
import logging
import re

from kgqa.errors import DuplicateTemplateIdError, MalformedTemplateError
from kgqa.ner.labels import EntityMention
from kgqa.utils import tokenize_words

logger = logging.getLogger(__name__)

SLOT_PATTERN = re.compile(r"<([^<>\s]+)>")


def slot_token(etype: str) -> str:
    return f"<{etype}>"


class Direction(str, Enum):
    FORWARD = "forward"  # entity is the triple subject
    REVERSE = "reverse"  # entity is the triple object


@dataclass(frozen=True)
class Template:
    id: str
    text: str
    relation: str
    subject_type: str
    direction: Direction
    answer_surface: str

    def __post_init__(self):
        slots = SLOT_PATTERN.findall(self.text)
        if len(slots) != 1:
            raise MalformedTemplateError(
                f"Template {self.id} needs exactly one slot, found {len(slots)}"
            )
        if slots[0] != self.subject_type:
            raise MalformedTemplateError(
                f"Template {self.id} slot <{slots[0]}> does not match type {self.subject_type}"
            )

    @property
    def tokens(self) -> List[str]:
        return tokenize_words(self.text)


def _parse_direction(value: str, line_number: int) -> Direction:
    try:
        return Direction(value.strip().lower())
    except ValueError as e:
        raise MalformedTemplateError(f"Line {line_number}: unknown direction {value!r}") from e


def load_templates(source: Iterable[str]) -> List[Template]:
    """Read `id, relation, subject_type, direction, text, answer_surface` rows."""
    templates: List[Template] = []
    seen = set()
    for line_number, line in enumerate(source, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        columns = [column.strip() for column in line.split("\t")]
        if len(columns) != 6 or not all(columns):
            raise MalformedTemplateError(
                f"Line {line_number}: expected 6 TAB-separated columns, got {len(columns)}"
            )
        template_id, relation, subject_type, direction, text, answer_surface = columns
        if template_id in seen:
            raise DuplicateTemplateIdError(f"Line {line_number}: duplicate template id {template_id}")
        seen.add(template_id)
        templates.append(
            Template(
                id=template_id,
                text=text,
                relation=relation,
                subject_type=subject_type,
                direction=_parse_direction(direction, line_number),
                answer_surface=answer_surface,
            )
        )

    logger.info(f"Loaded {len(templates)} templates")
    return templates


def abstract_question(
    tokens: Sequence[str], mentions: Sequence[EntityMention]
) -> List[str]:
    """Replace every mention span with its `<etype>` slot token."""
    result: List[str] = []
    position = 0
    for mention in sorted(mentions, key=lambda m: m.token_span):
        first, last = mention.token_span
        if first < position or last >= len(tokens):
            raise ValueError(f"Mention {mention} overlaps or is out of bounds")
        result.extend(tokens[position:first])
        result.append(slot_token(mention.label))
        position = last + 1
    result.extend(tokens[position:])
    return result
