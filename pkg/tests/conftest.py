from pathlib import Path

import pytest

from kgqa.config import load_config
from kgqa.models.graph import KnowledgeGraph, import_tsv
from kgqa.qa import QAEngine

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for key in (
        "KGQA_CONFIG", "KGQA_ALPHA", "KGQA_THRESHOLD", "KGQA_USE_CRF", "KGQA_LOG_LEVEL",
        "KGQA_ROUGE_N", "KGQA_MAX_WORKERS",
    ):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def toy_graph():
    g = KnowledgeGraph()
    with open(FIXTURES / "toy.tsv", encoding="utf-8") as source:
        import_tsv(g, source, source_name="toy.tsv")
    return g


@pytest.fixture
def demo_config():
    return load_config(FIXTURES / "demo.conf", environ={})


@pytest.fixture
def engine(demo_config, toy_graph):
    return QAEngine.from_config(demo_config, toy_graph)
