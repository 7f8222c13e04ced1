from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple
import logging

from kgqa.errors import (
    ConflictingIdError,
    GraphIOError,
    UnknownEntityError,
    UnknownNameError,
)
from kgqa.utils import normalize

logger = logging.getLogger(__name__)

TSV_COLUMNS = 7


@dataclass(frozen=True)
class Entity:
    """A node of the knowledge graph."""

    id: str
    name: str
    etype: str

    def __post_init__(self):
        if not self.id or not self.name or not self.etype:
            raise ValueError(f"Entity fields must be non-empty: {self!r}")

    @property
    def dedup_key(self) -> Tuple[str, str]:
        """Entities extracted from different sources merge on this key."""
        return normalize(self.name), self.etype


@dataclass(frozen=True, order=True)
class Triple:
    """A (subject, relation, object) fact; ordering is by ids then relation."""

    subject: str
    relation: str
    object: str

    def __post_init__(self):
        if not self.subject or not self.relation or not self.object:
            raise ValueError(f"Triple fields must be non-empty: {self!r}")

    @property
    def sort_key(self) -> Tuple[str, str, str]:
        return self.subject, self.relation, self.object


@dataclass
class ImportReport:
    """Row-by-row accounting of an import or merge."""

    entities_added: int = 0
    triples_added: int = 0
    duplicate_entities_skipped: int = 0
    duplicate_triples_skipped: int = 0
    malformed_lines: int = 0
    source: Optional[str] = None

    def __str__(self) -> str:
        prefix = f"{self.source}: " if self.source else ""
        return (
            f"{prefix}entities_added={self.entities_added} "
            f"triples_added={self.triples_added} "
            f"duplicate_entities_skipped={self.duplicate_entities_skipped} "
            f"duplicate_triples_skipped={self.duplicate_triples_skipped} "
            f"malformed_lines={self.malformed_lines}"
        )


@dataclass(frozen=True)
class GraphStats:
    entity_count: int = 0
    triple_count: int = 0
    entity_type_count: int = 0
    relation_type_count: int = 0

    def as_row(self) -> List[int]:
        return [
            self.entity_count,
            self.triple_count,
            self.entity_type_count,
            self.relation_type_count,
        ]

    def __str__(self) -> str:
        return "\t".join(str(value) for value in self.as_row())


@dataclass
class KnowledgeGraph:
    """Entity set, triple set and the indexes used by one-hop queries.

    Built by a single writer; treat as read-only once loading is done.
    """

    entities: Dict[str, Entity] = field(default_factory=dict)
    triples: Set[Triple] = field(default_factory=set)
    index_sr: Dict[Tuple[str, str], Set[str]] = field(
        default_factory=lambda: defaultdict(set)
    )
    index_or: Dict[Tuple[str, str], Set[str]] = field(
        default_factory=lambda: defaultdict(set)
    )
    name_index: Dict[str, List[str]] = field(
        default_factory=lambda: defaultdict(list)
    )
    _dedup: Dict[Tuple[str, str], str] = field(default_factory=dict, repr=False)

    def add_entity(self, entity: Entity) -> bool:
        """Insert an entity; False when it (or its dedup key) is already present."""
        existing = self.entities.get(entity.id)
        if existing is not None:
            if existing.dedup_key != entity.dedup_key:
                raise ConflictingIdError(
                    f"Entity id {entity.id} is bound to {existing.name!r} "
                    f"({existing.etype}), not {entity.name!r} ({entity.etype})"
                )
            return False

        if entity.dedup_key in self._dedup:
            return False

        self.entities[entity.id] = entity
        self._dedup[entity.dedup_key] = entity.id
        self.name_index[normalize(entity.name)].append(entity.id)
        self.name_index[normalize(entity.name)].sort()
        return True

    def add_triple(self, triple: Triple) -> bool:
        for endpoint in (triple.subject, triple.object):
            if endpoint not in self.entities:
                raise UnknownEntityError(f"Entity {endpoint} is not in the graph")

        if triple in self.triples:
            return False

        self.triples.add(triple)
        self.index_sr[(triple.subject, triple.relation)].add(triple.object)
        self.index_or[(triple.object, triple.relation)].add(triple.subject)
        return True

    def canonical_id(self, entity: Entity) -> Optional[str]:
        """Id of the stored entity sharing `entity`'s dedup key, if any."""
        return self._dedup.get(entity.dedup_key)

    def resolve(self, name: str) -> List[str]:
        """Entity ids whose normalized name equals normalize(name), sorted."""
        return list(self.name_index.get(normalize(name), []))

    def objects(self, subject_id: str, relation: str) -> List[str]:
        return sorted(self.index_sr.get((subject_id, relation), ()))

    def subjects(self, object_id: str, relation: str) -> List[str]:
        return sorted(self.index_or.get((object_id, relation), ()))

    def sorted_triples(self) -> List[Triple]:
        return sorted(self.triples, key=lambda t: t.sort_key)

    def query(
        self,
        subject_name: Optional[str] = None,
        relation: Optional[str] = None,
        object_name: Optional[str] = None,
    ) -> List[Triple]:
        """One-hop pattern query; names match case-insensitively.

        Raises UnknownNameError when a bound name resolves to nothing. A
        resolvable name with no matching triple gives an empty list.
        """
        if subject_name is None and relation is None and object_name is None:
            raise ValueError("At least one of subject, relation, object must be bound")

        subject_ids = self._resolve_bound(subject_name)
        object_ids = self._resolve_bound(object_name)

        if subject_ids is not None and relation is not None:
            candidates = {
                Triple(sid, relation, oid)
                for sid in subject_ids
                for oid in self.index_sr.get((sid, relation), ())
            }
        elif object_ids is not None and relation is not None:
            candidates = {
                Triple(sid, relation, oid)
                for oid in object_ids
                for sid in self.index_or.get((oid, relation), ())
            }
        else:
            candidates = self.triples

        matches = [
            t
            for t in candidates
            if (subject_ids is None or t.subject in subject_ids)
            and (relation is None or t.relation == relation)
            and (object_ids is None or t.object in object_ids)
        ]
        return sorted(matches, key=lambda t: t.sort_key)

    def _resolve_bound(self, name: Optional[str]) -> Optional[Set[str]]:
        if name is None:
            return None
        ids = self.resolve(name)
        if not ids:
            raise UnknownNameError(f"No entity named {name!r}")
        return set(ids)

    def entity_types(self) -> Set[str]:
        return {entity.etype for entity in self.entities.values()}

    def relation_types(self) -> Set[str]:
        return {triple.relation for triple in self.triples}

    def stats(self) -> GraphStats:
        return GraphStats(
            entity_count=len(self.entities),
            triple_count=len(self.triples),
            entity_type_count=len(self.entity_types()),
            relation_type_count=len(self.relation_types()),
        )


def stats(g: KnowledgeGraph) -> GraphStats:
    return g.stats()


def _parse_row(line: str) -> Optional[Tuple[Entity, str, Entity]]:
    columns = line.rstrip("\r\n").split("\t")
    if len(columns) != TSV_COLUMNS:
        return None
    sid, sname, stype, relation, oid, oname, otype = (c.strip() for c in columns)
    if not relation:
        return None
    try:
        return Entity(sid, sname, stype), relation, Entity(oid, oname, otype)
    except ValueError:
        return None


def import_tsv(
    g: KnowledgeGraph, source: Iterable[str], source_name: Optional[str] = None
) -> ImportReport:
    """Apply every well-formed row of the triples format to `g`.

    Malformed rows are counted and skipped. A failing stream aborts the import
    with GraphIOError; rows applied before the failure stay in `g`.
    """
    report = ImportReport(source=source_name)
    seen: Set[str] = set()
    line_number = 0

    try:
        for line_number, line in enumerate(source, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue

            row = _parse_row(line)
            if row is None:
                report.malformed_lines += 1
                logger.warning(f"Skipping malformed row {line_number} of {source_name}")
                continue

            subject, relation, obj = row
            try:
                endpoints = [_add_counted(g, e, seen, report) for e in (subject, obj)]
            except ConflictingIdError as e:
                report.malformed_lines += 1
                logger.warning(f"Skipping row {line_number} of {source_name}: {e}")
                continue

            if g.add_triple(Triple(endpoints[0], relation, endpoints[1])):
                report.triples_added += 1
            else:
                report.duplicate_triples_skipped += 1
    except (OSError, UnicodeDecodeError) as e:
        raise GraphIOError(
            f"Import of {source_name} failed after line {line_number}: {e} ({report})"
        ) from e

    logger.info(f"Imported {report}")
    return report


def _add_counted(
    g: KnowledgeGraph, entity: Entity, seen: Set[str], report: ImportReport
) -> str:
    """Add `entity` and return the id its triples must use."""
    added = g.add_entity(entity)
    if entity.id not in seen:
        seen.add(entity.id)
        if added:
            report.entities_added += 1
        else:
            report.duplicate_entities_skipped += 1
    return entity.id if added or entity.id in g.entities else g.canonical_id(entity)


def export_tsv(g: KnowledgeGraph) -> Iterator[str]:
    """Yield the triples format, one newline-terminated record per triple."""
    for triple in g.sorted_triples():
        subject, obj = g.entities[triple.subject], g.entities[triple.object]
        yield "\t".join(
            [
                subject.id,
                subject.name,
                subject.etype,
                triple.relation,
                obj.id,
                obj.name,
                obj.etype,
            ]
        ) + "\n"


def _free_id(g: KnowledgeGraph, entity_id: str) -> str:
    suffix = 2
    while f"{entity_id}#{suffix}" in g.entities:
        suffix += 1
    return f"{entity_id}#{suffix}"


def merge(g1: KnowledgeGraph, g2: KnowledgeGraph) -> Tuple[KnowledgeGraph, ImportReport]:
    """Union of two graphs by entity dedup key and triple key.

    Entities of g1 keep their ids; a g2 entity whose id is taken by a
    different entity is re-keyed to the first free `<id>#<n>`.
    """
    result = KnowledgeGraph()
    report = ImportReport(source="merge")
    id_maps: List[Dict[str, str]] = []

    for graph in (g1, g2):
        id_map: Dict[str, str] = {}
        for entity_id in sorted(graph.entities):
            entity = graph.entities[entity_id]
            survivor = result.canonical_id(entity)
            if survivor is not None:
                id_map[entity_id] = survivor
                report.duplicate_entities_skipped += 1
                continue
            if entity_id in result.entities:
                new_id = _free_id(result, entity_id)
                logger.warning(f"Re-keying {entity_id} ({entity.name}) to {new_id}")
                entity = Entity(new_id, entity.name, entity.etype)
            result.add_entity(entity)
            id_map[entity_id] = entity.id
            report.entities_added += 1
        id_maps.append(id_map)

    for graph, id_map in zip((g1, g2), id_maps):
        for triple in graph.sorted_triples():
            mapped = Triple(id_map[triple.subject], triple.relation, id_map[triple.object])
            if result.add_triple(mapped):
                report.triples_added += 1
            else:
                report.duplicate_triples_skipped += 1

    return result, report


def load_graph_files(
    paths: Sequence[Path], g: Optional[KnowledgeGraph] = None
) -> Tuple[KnowledgeGraph, List[ImportReport]]:
    """Import each triples file into its own graph and merge them onto `g` in order.

    Ids are local to a source, so a later file reusing an id for a different
    entity is re-keyed by `merge` instead of being dropped.
    """
    g = g if g is not None else KnowledgeGraph()
    reports = []
    for path in paths:
        source_graph = KnowledgeGraph()
        try:
            with open(path, encoding="utf-8") as source:
                reports.append(import_tsv(source_graph, source, source_name=str(path)))
        except OSError as e:
            raise GraphIOError(f"Cannot read triples file {path}: {e}") from e
        g, _ = merge(g, source_graph)
    return g, reports
