import logging

from sqlalchemy.orm import Session

from kgqa.errors import GraphIOError
from kgqa.utils import normalize
from .database import EntityRow, TripleRow, init_db
from .graph import Entity, KnowledgeGraph, Triple

logger = logging.getLogger(__name__)


class GraphRepository:
    """Persists a KnowledgeGraph in a SQL database."""

    def __init__(self, db_url: str = "sqlite:///data/kg.db"):
        """Initialize the repository with a database connection."""
        self.db_url = db_url
        self.Session = init_db(db_url)
        self._session = self.Session()

    def _reset_session(self):
        """Reset the session if it's in an invalid state."""
        if self._session is not None:
            try:
                self._session.close()
            except Exception:
                pass
        self._session = self.Session()

    def _safe_commit(self):
        """Safely commit changes and handle any errors."""
        try:
            self._session.commit()
        except Exception as e:
            self._session.rollback()
            self._reset_session()
            raise e

    def _safe_query(self, query_func):
        """Execute a query function with automatic session recovery."""
        try:
            return query_func(self._session)
        except Exception:
            self._session.rollback()
            self._reset_session()
            # Try one more time with fresh session
            try:
                return query_func(self._session)
            except Exception as e2:
                self._session.rollback()
                raise GraphIOError(
                    f"Query failed after session reset: {str(e2)}"
                ) from e2

    def save(self, g: KnowledgeGraph) -> int:
        """Replace the stored graph with `g`; returns the number of rows written."""
        try:
            self._session.query(TripleRow).delete()
            self._session.query(EntityRow).delete()

            entity_rows = [
                EntityRow(
                    entity_id=entity.id,
                    name=entity.name,
                    etype=entity.etype,
                    normalized_name=normalize(entity.name),
                )
                for entity in sorted(g.entities.values(), key=lambda e: e.id)
            ]
            self._session.bulk_save_objects(entity_rows)
            self._session.flush()

            triple_rows = [
                TripleRow(subject_id=t.subject, relation=t.relation, object_id=t.object)
                for t in g.sorted_triples()
            ]
            self._session.bulk_save_objects(triple_rows)
            self._safe_commit()
        except Exception as e:
            self._session.rollback()
            self._reset_session()
            raise GraphIOError(f"Failed to save graph to {self.db_url}: {str(e)}") from e

        logger.info(
            f"Saved {len(entity_rows)} entities and {len(triple_rows)} triples to {self.db_url}"
        )
        return len(entity_rows) + len(triple_rows)

    def load(self) -> KnowledgeGraph:
        """Rebuild a KnowledgeGraph, indexes included, from the stored rows."""

        def query_func(session: Session) -> KnowledgeGraph:
            g = KnowledgeGraph()
            for row in session.query(EntityRow).order_by(EntityRow.entity_id).all():
                g.add_entity(Entity(row.entity_id, row.name, row.etype))
            for row in session.query(TripleRow).order_by(TripleRow.triple_id).all():
                g.add_triple(Triple(row.subject_id, row.relation, row.object_id))
            return g

        return self._safe_query(query_func)

    def close(self):
        self._session.close()
