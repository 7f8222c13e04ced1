from sqlalchemy import (
    create_engine,
    Column,
    Integer,
    String,
    ForeignKey,
    UniqueConstraint,
)
from sqlalchemy.orm import declarative_base, relationship, sessionmaker

Base = declarative_base()


class EntityRow(Base):
    __tablename__ = "entities"

    entity_id = Column(String, primary_key=True)
    name = Column(String, nullable=False)
    etype = Column(String, nullable=False, index=True)
    # lookups by name go through this column
    normalized_name = Column(String, nullable=False, index=True)

    __table_args__ = (
        UniqueConstraint("normalized_name", "etype", name="uq_entity_dedup_key"),
    )

    # Relationships
    outgoing = relationship(
        "TripleRow", foreign_keys="TripleRow.subject_id", back_populates="subject_entity"
    )
    incoming = relationship(
        "TripleRow", foreign_keys="TripleRow.object_id", back_populates="object_entity"
    )


class TripleRow(Base):
    __tablename__ = "triples"

    triple_id = Column(Integer, primary_key=True, autoincrement=True)
    subject_id = Column(
        String, ForeignKey("entities.entity_id", ondelete="CASCADE"), nullable=False
    )
    relation = Column(String, nullable=False, index=True)
    object_id = Column(
        String, ForeignKey("entities.entity_id", ondelete="CASCADE"), nullable=False
    )

    __table_args__ = (
        UniqueConstraint("subject_id", "relation", "object_id", name="uq_triple"),
    )

    # Relationships
    subject_entity = relationship(
        "EntityRow", foreign_keys=[subject_id], back_populates="outgoing"
    )
    object_entity = relationship(
        "EntityRow", foreign_keys=[object_id], back_populates="incoming"
    )


# Database connection setup
def init_db(db_url: str = "sqlite:///data/kg.db"):
    """Initialize the database connection and create tables."""
    engine = create_engine(db_url)
    Base.metadata.create_all(engine)
    return sessionmaker(bind=engine)
