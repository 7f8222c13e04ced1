from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from kgqa.errors import InvalidBioSequenceError

OUTSIDE = "O"


@dataclass(frozen=True)
class EntityMention:
    """A recognized entity: surface text, entity type and inclusive token span."""

    text: str
    label: str
    token_span: Tuple[int, int]
    entity_id: Optional[str] = None

    def __post_init__(self):
        first, last = self.token_span
        if first < 0 or last < first:
            raise ValueError(f"Invalid token span {self.token_span}")

    def __str__(self) -> str:
        return f"[{self.text}, {self.label}]"


def split_tag(tag: str) -> Tuple[str, Optional[str]]:
    """'B-drug' -> ('B', 'drug'); 'O' -> ('O', None)."""
    if tag == OUTSIDE:
        return OUTSIDE, None
    prefix, sep, etype = tag.partition("-")
    if prefix not in ("B", "I") or not sep or not etype:
        raise ValueError(f"Not a BIO tag: {tag!r}")
    return prefix, etype


@dataclass(frozen=True)
class LabelSet:
    """k BIO labels; START and STOP take transition indices k and k+1."""

    labels: Tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("A label set needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"Duplicate labels in {self.labels}")
        for label in self.labels:
            split_tag(label)

    @classmethod
    def from_types(cls, etypes: Iterable[str]) -> "LabelSet":
        labels: List[str] = []
        for etype in sorted(set(etypes)):
            labels.extend([f"B-{etype}", f"I-{etype}"])
        labels.append(OUTSIDE)
        return cls(tuple(labels))

    @classmethod
    def from_tags(cls, tags: Iterable[str]) -> "LabelSet":
        return cls.from_types(etype for _, etype in map(split_tag, tags) if etype)

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def start_index(self) -> int:
        return self.k

    @property
    def stop_index(self) -> int:
        return self.k + 1

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def indices(self, tags: Sequence[str]) -> List[int]:
        return [self.index(tag) for tag in tags]


def is_bio_valid(tags: Sequence[str]) -> bool:
    """True when every I-X follows B-X or I-X."""
    previous: Optional[str] = None
    for tag in tags:
        prefix, etype = split_tag(tag)
        if prefix == "I" and previous not in (f"B-{etype}", f"I-{etype}"):
            return False
        previous = tag
    return True


def mentions_from_tags(
    tokens: Sequence[str], tags: Sequence[str]
) -> List[EntityMention]:
    """Turn each maximal B-X (I-X)* run into one mention of type X."""
    if len(tokens) != len(tags):
        raise ValueError(f"{len(tokens)} tokens but {len(tags)} tags")

    mentions: List[EntityMention] = []
    start: Optional[int] = None
    current: Optional[str] = None

    def close(end: int):
        if start is not None:
            text = " ".join(tokens[start : end + 1])
            mentions.append(EntityMention(text, current, (start, end)))

    for i, tag in enumerate(tags):
        prefix, etype = split_tag(tag)
        if prefix == "I":
            if current != etype or start is None:
                raise InvalidBioSequenceError(
                    f"Tag {tag} at position {i} has no B-{etype}/I-{etype} predecessor"
                )
            continue
        close(i - 1)
        start, current = (i, etype) if prefix == "B" else (None, None)
    close(len(tags) - 1)
    return mentions


def tags_from_mentions(length: int, mentions: Sequence[EntityMention]) -> List[str]:
    """BIO tags for non-overlapping mentions over `length` tokens."""
    tags = [OUTSIDE] * length
    for mention in mentions:
        first, last = mention.token_span
        if last >= length or any(tag != OUTSIDE for tag in tags[first : last + 1]):
            raise ValueError(f"Mention {mention} overlaps or is out of bounds")
        tags[first] = f"B-{mention.label}"
        for i in range(first + 1, last + 1):
            tags[i] = f"I-{mention.label}"
    return tags
