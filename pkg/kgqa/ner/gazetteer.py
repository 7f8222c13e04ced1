"""Gazetteer over knowledge-graph entity names.

Lookups are case-insensitive on normalized tokens. Besides leftmost-longest
tagging, the gazetteer encodes each known token by its position in a name
(B or I per entity type) for the emission features.
"""

from collections import defaultdict
from typing import Dict, List, Sequence, Set, Tuple

from kgqa.models.graph import KnowledgeGraph
from kgqa.utils import normalize, tokenize_words
from .labels import EntityMention


def encode_iob(i: int) -> str:
    return "B" if i == 0 else "I"


class Gazetteer:
    """Entity names of a graph, indexed by their normalized token tuples."""

    def __init__(self, names: Dict[Tuple[str, ...], List[Tuple[str, str]]]):
        # name tokens -> [(entity id, etype)] sorted by id
        self.names = {key: sorted(value) for key, value in names.items()}
        self.max_length = max((len(key) for key in self.names), default=0)

        positions: Dict[str, Set[str]] = defaultdict(set)
        for key, entries in self.names.items():
            for i, token in enumerate(key):
                for _, etype in entries:
                    positions[token].add(f"{encode_iob(i)}-{etype}")
        self.positions = {token: sorted(tags) for token, tags in positions.items()}

    @classmethod
    def from_graph(cls, g: KnowledgeGraph) -> "Gazetteer":
        names: Dict[Tuple[str, ...], List[Tuple[str, str]]] = defaultdict(list)
        for entity in g.entities.values():
            key = tuple(normalize(token) for token in tokenize_words(entity.name))
            if key:
                names[key].append((entity.id, entity.etype))
        return cls(names)

    def __contains__(self, token: str) -> bool:
        return normalize(token) in self.positions

    def get_features(self, token: str) -> List[str]:
        """Position tags such as 'B-disease' for every name containing `token`."""
        return self.positions.get(normalize(token), [])

    def tag(self, tokens: Sequence[str]) -> List[EntityMention]:
        """Leftmost-longest, non-overlapping matches of entity names.

        Equal-length matches at one start go to the smallest entity id.
        """
        keys = [normalize(token) for token in tokens]
        mentions: List[EntityMention] = []
        i = 0
        while i < len(tokens):
            for length in range(min(self.max_length, len(tokens) - i), 0, -1):
                entries = self.names.get(tuple(keys[i : i + length]))
                if entries:
                    entity_id, etype = entries[0]
                    mentions.append(
                        EntityMention(
                            text=" ".join(tokens[i : i + length]),
                            label=etype,
                            token_span=(i, i + length - 1),
                            entity_id=entity_id,
                        )
                    )
                    i += length
                    break
            else:
                i += 1
        return mentions


def gazetteer_tag(tokens: Sequence[str], g: KnowledgeGraph) -> List[EntityMention]:
    return Gazetteer.from_graph(g).tag(tokens)
