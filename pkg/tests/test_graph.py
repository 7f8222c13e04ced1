import random

import pytest

from kgqa.errors import ConflictingIdError, GraphIOError, UnknownEntityError, UnknownNameError
from kgqa.models.graph import (
    Entity,
    GraphStats,
    KnowledgeGraph,
    Triple,
    export_tsv,
    import_tsv,
    load_graph_files,
    merge,
    stats,
)


def row(*columns):
    return "\t".join(columns) + "\n"


def synthetic_graph(prefix, size, triple_count, relations, shared_names=0, step=7, offset=1):
    """Graph of `size` entities; the first `shared_names` reuse the shared name pool."""
    g = KnowledgeGraph()
    ids = [f"{prefix}{i:05d}" for i in range(size)]
    for i, entity_id in enumerate(ids):
        name = f"shared concept {i}" if i < shared_names else f"{prefix} concept {i}"
        g.add_entity(Entity(entity_id, name, f"type{i % 9}"))
    for i in range(triple_count):
        g.add_triple(
            Triple(ids[i % size], f"{prefix}_rel{i % relations}", ids[(step * i + offset) % size])
        )
    return g


@pytest.fixture
def guideline_graph():
    return synthetic_graph("U", 416, 500, 11, shared_names=300)


@pytest.fixture
def literature_graph():
    return synthetic_graph("V", 2723, 4547, 39, shared_names=300, step=13, offset=5)


def test_add_entity_to_empty_graph():
    g = KnowledgeGraph()
    assert g.add_entity(Entity("E1", "HCC", "disease")) is True
    assert stats(g).entity_count == 1


def test_add_entity_twice_is_idempotent():
    g = KnowledgeGraph()
    g.add_entity(Entity("E1", "HCC", "disease"))
    assert g.add_entity(Entity("E1", "HCC", "disease")) is False
    assert stats(g).entity_count == 1


def test_same_dedup_key_under_new_id_is_skipped():
    g = KnowledgeGraph()
    g.add_entity(Entity("E1", "HCC", "disease"))
    assert g.add_entity(Entity("X9", "hcc", "disease")) is False
    assert g.canonical_id(Entity("X9", "hcc", "disease")) == "E1"


def test_conflicting_id():
    g = KnowledgeGraph()
    g.add_entity(Entity("E1", "HCC", "disease"))
    with pytest.raises(ConflictingIdError):
        g.add_entity(Entity("E1", "sorafenib", "drug"))


def test_add_triple_and_duplicate():
    g = KnowledgeGraph()
    g.add_entity(Entity("E1", "HCC", "disease"))
    g.add_entity(Entity("D1", "sorafenib", "drug"))
    assert g.add_triple(Triple("E1", "treated_by", "D1")) is True
    assert g.add_triple(Triple("E1", "treated_by", "D1")) is False
    assert stats(g).triple_count == 1


def test_triple_with_missing_endpoint():
    g = KnowledgeGraph()
    g.add_entity(Entity("E1", "HCC", "disease"))
    with pytest.raises(UnknownEntityError):
        g.add_triple(Triple("E1", "treated_by", "D404"))


def test_entity_and_triple_fields_must_be_non_empty():
    with pytest.raises(ValueError):
        Entity("", "HCC", "disease")
    with pytest.raises(ValueError):
        Triple("E1", "", "D1")


def test_import_counts():
    lines = [
        row("E1", "HCC", "disease", "treated_by", "D1", "sorafenib", "drug"),
        row("E1", "HCC", "disease", "treated_by", "D2", "lenvatinib", "drug"),
        row("D1", "sorafenib", "drug", "side_effect", "S1", "fatigue", "symptom"),
    ]
    report = import_tsv(KnowledgeGraph(), lines)
    assert report.entities_added == 4
    assert report.triples_added == 3
    assert report.duplicate_entities_skipped == 0
    assert report.malformed_lines == 0


def test_import_skips_malformed_comment_and_blank_rows():
    lines = [
        "# header comment\n",
        "\n",
        row("E1", "HCC", "disease", "treated_by", "D1", "sorafenib", "drug"),
        row("E1", "HCC", "disease", "treated_by", "D1"),
        row("E1", "sorafenib", "drug", "treated_by", "D2", "lenvatinib", "drug"),
    ]
    g = KnowledgeGraph()
    report = import_tsv(g, lines)
    # the last row rebinds E1 and counts as malformed
    assert report.malformed_lines == 2
    assert report.triples_added == 1
    assert stats(g) == GraphStats(2, 1, 2, 1)


def test_import_skips_rows_without_relation():
    lines = [
        row("E1", "HCC", "disease", "treated_by", "D1", "sorafenib", "drug"),
        row("E2", "AIDS", "disease", "", "D2", "lenvatinib", "drug"),
        row("E3", "hepatitis C", "disease", "treated_by", "D3", "ribavirin", "drug"),
        row("E4", "jaundice", "symptom", "  ", "D4", "tenofovir", "drug"),
    ]
    g = KnowledgeGraph()
    report = import_tsv(g, lines)
    assert report.malformed_lines == 2
    assert report.triples_added == 2
    assert report.entities_added == 4
    assert "E2" not in g.entities and "D4" not in g.entities


def test_import_remaps_duplicate_names_to_survivor():
    lines = [
        row("E1", "HCC", "disease", "treated_by", "D1", "sorafenib", "drug"),
        row("E7", "hcc", "disease", "treated_by", "D2", "lenvatinib", "drug"),
    ]
    g = KnowledgeGraph()
    report = import_tsv(g, lines)
    assert report.duplicate_entities_skipped == 1
    assert g.objects("E1", "treated_by") == ["D1", "D2"]
    assert "E7" not in g.entities


def test_import_stream_failure():
    def failing():
        yield row("E1", "HCC", "disease", "treated_by", "D1", "sorafenib", "drug")
        raise OSError("disk gone")

    g = KnowledgeGraph()
    with pytest.raises(GraphIOError):
        import_tsv(g, failing())
    # rows before the failure stay applied
    assert stats(g).triple_count == 1


def test_import_twice_adds_no_triples(fixtures_dir, toy_graph):
    with open(fixtures_dir / "toy.tsv", encoding="utf-8") as source:
        report = import_tsv(toy_graph, source)
    assert report.triples_added == 0
    assert report.entities_added == 0
    assert report.duplicate_triples_skipped == 41


def test_toy_fixture_stats(toy_graph):
    assert stats(toy_graph) == GraphStats(35, 41, 4, 5)
    assert str(stats(toy_graph)) == "35\t41\t4\t5"


def test_stats_small_graphs():
    assert stats(KnowledgeGraph()) == GraphStats(0, 0, 0, 0)
    g = KnowledgeGraph()
    import_tsv(g, [row("E1", "HCC", "disease", "treated_by", "D1", "sorafenib", "drug")])
    assert stats(g) == GraphStats(2, 1, 2, 1)


def test_query_subject_and_relation(toy_graph):
    assert toy_graph.query(subject_name="HCC", relation="treated_by") == [
        Triple("E001", "treated_by", "D001"),
        Triple("E001", "treated_by", "D002"),
    ]


def test_query_is_case_insensitive(toy_graph):
    assert toy_graph.query(subject_name="hcc", relation="treated_by") == toy_graph.query(
        subject_name="HCC", relation="treated_by"
    )


def test_query_fully_bound(toy_graph):
    assert toy_graph.query("AIDS", "treated_by", "efavirenz") == [
        Triple("E002", "treated_by", "D007")
    ]


def test_query_object_side(toy_graph):
    subjects = [t.subject for t in toy_graph.query(relation="has_symptom", object_name="jaundice")]
    assert subjects == ["E001", "E003", "E004", "E005"]


def test_query_unknown_name(toy_graph):
    with pytest.raises(UnknownNameError):
        toy_graph.query(subject_name="influenza", relation="treated_by")


def test_query_known_name_without_matches(toy_graph):
    assert toy_graph.query(subject_name="hepatitis B", relation="associated_gene") == []


def test_query_needs_a_bound_field(toy_graph):
    with pytest.raises(ValueError):
        toy_graph.query()


def test_query_relation_only_matches_scan(toy_graph):
    expected = sorted(t.sort_key for t in toy_graph.triples if t.relation == "side_effect")
    assert [t.sort_key for t in toy_graph.query(relation="side_effect")] == expected


def test_indexes_agree_with_linear_scan():
    rng = random.Random(7)
    g = KnowledgeGraph()
    ids = [f"N{i}" for i in range(60)]
    for i, entity_id in enumerate(ids):
        g.add_entity(Entity(entity_id, f"node {i}", f"t{i % 3}"))
    relations = ["r0", "r1", "r2", "r3"]
    for _ in range(900):
        g.add_triple(Triple(rng.choice(ids), rng.choice(relations), rng.choice(ids)))

    for triple in g.triples:
        assert triple.object in g.objects(triple.subject, triple.relation)
        assert triple.subject in g.subjects(triple.object, triple.relation)

    for _ in range(200):
        entity_id, relation = rng.choice(ids), rng.choice(relations)
        assert g.objects(entity_id, relation) == sorted(
            t.object for t in g.triples if t.subject == entity_id and t.relation == relation
        )
        assert g.subjects(entity_id, relation) == sorted(
            t.subject for t in g.triples if t.object == entity_id and t.relation == relation
        )


def test_export_import_round_trip(toy_graph):
    exported = list(export_tsv(toy_graph))
    keys = [tuple(line.split("\t")[i] for i in (0, 3, 4)) for line in exported]
    assert keys == sorted(keys)

    copy = KnowledgeGraph()
    import_tsv(copy, exported)
    assert stats(copy) == stats(toy_graph)
    assert copy.sorted_triples() == toy_graph.sorted_triples()
    assert list(export_tsv(copy)) == exported


def test_merge_with_empty_graph(toy_graph):
    merged, report = merge(toy_graph, KnowledgeGraph())
    assert stats(merged) == stats(toy_graph)
    assert report.duplicate_entities_skipped == 0


def test_merge_disjoint_graphs():
    g1 = synthetic_graph("A", 2, 1, 1)
    g2 = synthetic_graph("B", 3, 2, 1)
    merged, _ = merge(g1, g2)
    assert stats(merged).entity_count == 5
    assert stats(merged).triple_count == 3


def test_merge_rekeys_conflicting_ids():
    g1, g2 = KnowledgeGraph(), KnowledgeGraph()
    g1.add_entity(Entity("E1", "HCC", "disease"))
    g2.add_entity(Entity("E1", "sorafenib", "drug"))
    g2.add_entity(Entity("E2", "AIDS", "disease"))
    g2.add_triple(Triple("E2", "treated_by", "E1"))

    merged, report = merge(g1, g2)
    assert merged.entities["E1#2"].name == "sorafenib"
    assert merged.sorted_triples() == [Triple("E2", "treated_by", "E1#2")]
    assert report.entities_added == 3


def test_merge_accounting_of_two_sources(guideline_graph, literature_graph):
    assert stats(guideline_graph).as_row()[:2] == [416, 500]
    assert stats(literature_graph).as_row()[:2] == [2723, 4547]

    merged, report = merge(guideline_graph, literature_graph)
    result = stats(merged)
    assert result.entity_count == 2839
    assert result.triple_count == 5047
    assert result.relation_type_count == 50
    assert report.duplicate_entities_skipped == 300

    shared = {e.dedup_key for e in guideline_graph.entities.values()} & {
        e.dedup_key for e in literature_graph.entities.values()
    }
    assert result.entity_count == 416 + 2723 - len(shared)


def test_importing_both_sources_into_one_graph(guideline_graph, literature_graph):
    g = KnowledgeGraph()
    first = import_tsv(g, export_tsv(guideline_graph), source_name="guidelines")
    second = import_tsv(g, export_tsv(literature_graph), source_name="literature")
    assert first.entities_added == 416
    assert second.duplicate_entities_skipped == 300
    assert stats(g).entity_count == 2839
    assert stats(g).triple_count == 5047


def test_loading_several_files_rekeys_reused_ids(tmp_path):
    first, second = tmp_path / "a.tsv", tmp_path / "b.tsv"
    first.write_text(row("E1", "HCC", "disease", "treated_by", "E2", "sorafenib", "drug"), encoding="utf-8")
    second.write_text(row("E1", "AIDS", "disease", "treated_by", "E2", "zidovudine", "drug"), encoding="utf-8")

    g, reports = load_graph_files([first, second])
    assert [r.malformed_lines for r in reports] == [0, 0]
    assert stats(g).as_row() == [4, 2, 2, 1]
    assert g.entities["E1#2"].name == "AIDS"

    separate = []
    for path in (first, second):
        source_graph, _ = load_graph_files([path])
        separate.append(source_graph)
    merged, _ = merge(*separate)
    assert g.sorted_triples() == merged.sorted_triples()


def test_loading_files_onto_a_stored_graph(tmp_path, toy_graph):
    path = tmp_path / "extra.tsv"
    path.write_text(row("X1", "influenza", "disease", "treated_by", "X2", "oseltamivir", "drug"), encoding="utf-8")
    g, _ = load_graph_files([path], toy_graph)
    assert stats(g).as_row()[:2] == [37, 42]
    assert g.objects("X1", "treated_by") == ["X2"]
