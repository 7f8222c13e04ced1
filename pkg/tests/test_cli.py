import io

import pytest

from kgqa.cli import run
from kgqa.qa import NO_ENTITY_TEXT


class Result:
    def __init__(self, code, stdout, stderr):
        self.code = code
        self.stdout = stdout
        self.stderr = stderr


def kgqa(*argv, stdin=""):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run([str(arg) for arg in argv], io.StringIO(stdin), stdout, stderr)
    return Result(code, stdout.getvalue(), stderr.getvalue())


@pytest.fixture
def demo(fixtures_dir):
    return ["--config", fixtures_dir / "demo.conf"]


def test_stats_from_config(demo):
    result = kgqa("stats", *demo)
    assert result.code == 0
    assert result.stdout == "35\t41\t4\t5\n"


def test_stats_from_triples_flag(fixtures_dir):
    assert kgqa("stats", "--triples", fixtures_dir / "toy.tsv").stdout == "35\t41\t4\t5\n"


def test_config_path_from_environment(monkeypatch, fixtures_dir):
    monkeypatch.setenv("KGQA_CONFIG", str(fixtures_dir / "demo.conf"))
    assert kgqa("stats").stdout == "35\t41\t4\t5\n"


def test_stats_table_for_several_sources(tmp_path, fixtures_dir):
    text = (fixtures_dir / "toy.tsv").read_text(encoding="utf-8")
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    first, second = tmp_path / "first.tsv", tmp_path / "second.tsv"
    first.write_text("\n".join(rows[:20]) + "\n", encoding="utf-8")
    second.write_text("\n".join(rows[15:]) + "\n", encoding="utf-8")

    result = kgqa("stats", "--triples", first, "--triples", second)
    assert result.code == 0
    for column in ("source", "entity", "relevancy", "entity type", "relevancy type"):
        assert column in result.stdout
    assert "first.tsv" in result.stdout
    result_row = next(line for line in result.stdout.splitlines() if "RESULT" in line)
    assert [cell.strip() for cell in result_row.split("|")[2:6]] == ["35", "41", "4", "5"]


def test_ask(demo):
    result = kgqa("ask", *demo, "Which", "medicine", "can", "treat", "AIDS?")
    assert result.code == 0
    assert result.stdout == "The drugs that treat AIDS are: efavirenz and zidovudine.\n"


def test_ask_is_deterministic(demo):
    first = kgqa("ask", *demo, "Which diseases cause jaundice?")
    second = kgqa("ask", *demo, "Which diseases cause jaundice?")
    assert first.stdout == second.stdout
    assert first.stdout == "jaundice can be caused by: HCC, hepatitis B, hepatitis C and liver cirrhosis.\n"


def test_ask_with_unknown_entity_still_succeeds(demo):
    result = kgqa("ask", *demo, "Which medicine can treat influenza?")
    assert result.code == 0
    assert result.stdout == NO_ENTITY_TEXT + "\n"


def test_repl_answers_like_ask(demo):
    questions = "Which medicine can treat AIDS?\n\nWhat does sorafenib treat?\n:quit\nWhich medicine can treat HCC?\n"
    result = kgqa("repl", *demo, stdin=questions)
    assert result.code == 0
    assert result.stdout.splitlines() == [
        kgqa("ask", *demo, "Which medicine can treat AIDS?").stdout.strip(),
        kgqa("ask", *demo, "What does sorafenib treat?").stdout.strip(),
    ]
    assert "? " in result.stderr


def test_repl_stops_at_end_of_input(demo):
    result = kgqa("repl", *demo, stdin="What does ribavirin treat?")
    assert result.stdout == "ribavirin is used to treat: hepatitis C.\n"


def test_ner(demo):
    assert kgqa("ner", *demo, "Which medicine can treat AIDS?").stdout == "[AIDS, disease]\n"
    result = kgqa("ner", *demo, "Patients with hepatitis B often report fatigue.")
    assert result.stdout == "[hepatitis B, disease]\n[fatigue, symptom]\n"


def test_match_debug(demo):
    result = kgqa("match-debug", *demo, "Which medicine can treat AIDS?")
    assert result.code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "mentions: [AIDS, disease]"
    assert lines[1] == "abstract: Which medicine can treat <disease> ?"
    first_row = [line for line in lines if line.startswith("|")][1]
    assert "T1" in first_row and "yes" in first_row


def test_unknown_command():
    result = kgqa("frobnicate")
    assert result.code == 1
    assert "usage" in result.stderr


def test_help_goes_to_the_given_stdout(capsys):
    result = kgqa("--help")
    assert result.code == 0
    assert "usage" in result.stdout
    assert "ask" in result.stdout
    assert kgqa("ask", "--help").stdout.startswith("usage")
    assert capsys.readouterr().out == ""


def test_missing_inputs_are_usage_errors(fixtures_dir):
    result = kgqa("ask", "Which medicine can treat AIDS?")
    assert result.code == 1
    assert "kgqa ask:" in result.stderr
    assert "usage" in result.stderr

    assert kgqa("stats").code == 1
    assert kgqa("import").code == 1
    assert kgqa("ask", "--triples", fixtures_dir / "toy.tsv", "Which medicine can treat AIDS?").code == 1
    assert kgqa("train-ner", "--out", "model.json").code == 1
    assert kgqa("eval", "--epochs", "3").code == 1


def test_missing_config_file_is_a_data_error(tmp_path):
    result = kgqa("stats", "--config", tmp_path / "missing.conf")
    assert result.code == 2
    assert "kgqa stats:" in result.stderr


def test_unreadable_triples_file_is_a_data_error(tmp_path):
    assert kgqa("stats", "--triples", tmp_path / "missing.tsv").code == 2


def test_invalid_environment_value(monkeypatch, demo):
    monkeypatch.setenv("KGQA_ALPHA", "2")
    assert kgqa("stats", *demo).code == 2


def test_flags_override_environment(monkeypatch, demo):
    monkeypatch.setenv("KGQA_THRESHOLD", "1.5")
    assert kgqa("stats", *demo).code == 2
    result = kgqa("ask", *demo, "--threshold", "0.35", "What does sorafenib treat?")
    assert result.stdout == "sorafenib is used to treat: HCC.\n"


def test_eval_perfect_gold_set(demo, fixtures_dir):
    result = kgqa("eval", *demo, "--gold", fixtures_dir / "gold.jsonl")
    assert result.code == 0
    lines = result.stdout.splitlines()
    assert "metric=em value=1.000000" in lines
    assert "metric=mrr value=1.000000" in lines
    assert "metric=bleu value=1.000000" in lines


def test_eval_with_miss_and_details(demo, fixtures_dir):
    result = kgqa("eval", *demo, "--gold", fixtures_dir / "gold_with_miss.jsonl", "--details", "--workers", "3")
    assert result.code == 0
    assert "metric=em value=0.916667" in result.stdout.splitlines()
    assert "Which medicine can treat influenza?" in result.stdout


def test_eval_rejects_broken_gold_set(demo, tmp_path):
    gold = tmp_path / "gold.jsonl"
    gold.write_text('{"question": "Which medicine can treat AIDS?"}\n', encoding="utf-8")
    assert kgqa("eval", *demo, "--gold", gold).code == 2


def test_train_ner_then_tag_with_crf(demo, fixtures_dir, tmp_path):
    model = tmp_path / "ner.json"
    result = kgqa("train-ner", *demo, "--corpus", fixtures_dir / "ner_corpus.tsv", "--out", model)
    assert result.code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == f"sentences=20 labels=7 model={model}"
    assert lines[2] == "precision=1.000000 recall=1.000000 f1=1.000000"
    assert model.exists()

    tagged = kgqa("ner", *demo, "--use-crf", "--ner-model", model, "Which medicine can treat AIDS?")
    assert tagged.code == 0
    assert "[AIDS, disease]" in tagged.stdout.splitlines()

    answered = kgqa("ask", *demo, "--use-crf", "--ner-model", model, "Which medicine can treat AIDS?")
    assert answered.stdout == "The drugs that treat AIDS are: efavirenz and zidovudine.\n"


def test_train_ner_rejects_invalid_corpus(demo, tmp_path):
    corpus = tmp_path / "bad.tsv"
    corpus.write_text("fever\tI-symptom\n", encoding="utf-8")
    assert kgqa("train-ner", *demo, "--corpus", corpus, "--out", tmp_path / "m.json").code == 2


def test_import_exports_and_stores(fixtures_dir, tmp_path):
    exported = tmp_path / "merged.tsv"
    db_url = f"sqlite:///{tmp_path / 'kg.db'}"
    result = kgqa("import", "--triples", fixtures_dir / "toy.tsv", "--export", exported, "--db", db_url)
    assert result.code == 0
    lines = result.stdout.splitlines()
    assert lines[0].endswith(
        "entities_added=35 triples_added=41 duplicate_entities_skipped=0 "
        "duplicate_triples_skipped=0 malformed_lines=0"
    )
    assert lines[1] == "graph: entities=35 triples=41 entity_types=4 relation_types=5"
    assert lines[2] == f"saved 76 rows to {db_url}"
    assert lines[3] == f"exported 41 triples to {exported}"

    assert kgqa("stats", "--triples", exported).stdout == "35\t41\t4\t5\n"

    config = tmp_path / "db.conf"
    config.write_text(
        f"db_url = {db_url}\ntemplates = {fixtures_dir / 'templates.tsv'}\n", encoding="utf-8"
    )
    assert kgqa("stats", "--config", config).stdout == "35\t41\t4\t5\n"
    assert kgqa("ask", "--config", config, "What does sorafenib treat?").stdout == (
        "sorafenib is used to treat: HCC.\n"
    )


def test_import_counts_malformed_rows(tmp_path):
    triples = tmp_path / "bad.tsv"
    triples.write_text(
        "E1\tHCC\tdisease\ttreated_by\tD1\tsorafenib\tdrug\nE1\tHCC\tdisease\n", encoding="utf-8"
    )
    result = kgqa("import", "--triples", triples)
    assert result.code == 0
    assert "malformed_lines=1" in result.stdout


def test_stats_result_row_rekeys_reused_ids(tmp_path):
    first, second = tmp_path / "a.tsv", tmp_path / "b.tsv"
    first.write_text("E1\tHCC\tdisease\ttreated_by\tE2\tsorafenib\tdrug\n", encoding="utf-8")
    second.write_text("E1\tAIDS\tdisease\ttreated_by\tE2\tzidovudine\tdrug\n", encoding="utf-8")
    result = kgqa("stats", "--triples", first, "--triples", second)
    result_row = next(line for line in result.stdout.splitlines() if "RESULT" in line)
    assert [cell.strip() for cell in result_row.split("|")[2:6]] == ["4", "2", "2", "1"]


def test_each_run_logs_to_its_own_error_stream(tmp_path):
    triples = tmp_path / "bad.tsv"
    triples.write_text("E1\tHCC\tdisease\n", encoding="utf-8")
    first = kgqa("stats", "--triples", triples)
    second = kgqa("stats", "--triples", triples)
    assert "malformed" in first.stderr
    assert "malformed" in second.stderr


def test_eval_rejects_unsupported_rouge_order(demo, fixtures_dir):
    result = kgqa("eval", *demo, "--gold", fixtures_dir / "gold.jsonl", "--rouge-n", "10")
    assert result.code == 2
    assert "rouge_n" in result.stderr
