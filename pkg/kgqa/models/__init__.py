from .graph import (
    Entity,
    GraphStats,
    ImportReport,
    KnowledgeGraph,
    Triple,
    export_tsv,
    import_tsv,
    load_graph_files,
    merge,
    stats,
)
from .repository import GraphRepository
from .invocation import Invocation
from .strategies import ContextStrategy, ReplyStrategy, ErrorStrategy
from .unit_handler import UnitHandler
