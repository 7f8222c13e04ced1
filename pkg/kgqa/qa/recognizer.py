from typing import List, Optional, Sequence
import logging

from kgqa.models.graph import KnowledgeGraph
from kgqa.ner import CrfTagger, EntityMention, Gazetteer

logger = logging.getLogger(__name__)


def _overlaps(span, taken) -> bool:
    first, last = span
    return any(first <= t_last and t_first <= last for t_first, t_last in taken)


class EntityRecognizer:
    def __init__(
        self,
        graph: KnowledgeGraph,
        tagger: Optional[CrfTagger] = None,
        use_crf: bool = False,
    ):
        self.graph = graph
        self.gazetteer = Gazetteer.from_graph(graph)
        self.tagger = tagger
        self.use_crf = use_crf and tagger is not None
        if use_crf and tagger is None:
            logger.warning("use_crf is set but no NER model is loaded; using the gazetteer only")

    def _link(self, mention: EntityMention) -> EntityMention:
        ids = [
            entity_id
            for entity_id in self.graph.resolve(mention.text)
            if self.graph.entities[entity_id].etype == mention.label
        ]
        return EntityMention(
            mention.text, mention.label, mention.token_span, ids[0] if ids else None
        )

    def recognize(self, tokens: Sequence[str]) -> List[EntityMention]:
        """Gazetteer mentions, plus CRF mentions that do not overlap them."""
        mentions = self.gazetteer.tag(tokens)
        if not self.use_crf:
            return mentions

        taken = [m.token_span for m in mentions]
        for mention in self.tagger.tag(tokens):
            if not _overlaps(mention.token_span, taken):
                mentions.append(self._link(mention))
        return sorted(mentions, key=lambda m: m.token_span)
