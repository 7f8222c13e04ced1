import math
import random
from functools import lru_cache
from types import SimpleNamespace

import pytest

from kgqa.errors import (
    EmptyCandidateError,
    EmptyDatasetError,
    EmptyReferenceError,
    NoReferencesError,
    ReferenceTooShortError,
    UndefinedMetricError,
)
from kgqa.stats.metrics import (
    ConfusionCounts,
    bleu,
    exact_match,
    f1,
    first_correct_rank,
    mention_counts,
    mrr,
    precision,
    recall,
    rouge_l,
    rouge_n,
    safe_ratio,
)

VOCAB = ["the", "cat", "sat", "on", "mat", "a", "dog"]


def record(predicted, gold):
    return SimpleNamespace(predicted=predicted, gold_answers=gold)


def random_sentence(rng, low=1, high=9):
    return [rng.choice(VOCAB) for _ in range(rng.randint(low, high))]


def naive_grams(tokens, n):
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def naive_bleu(candidate, references, max_n):
    precisions = []
    for n in range(1, max_n + 1):
        grams = naive_grams(candidate, n)
        matched = 0
        for gram in set(grams):
            best = max(naive_grams(ref, n).count(gram) for ref in references)
            matched += min(grams.count(gram), best)
        if matched == 0:
            return 0.0
        precisions.append(matched / len(grams))
    lengths = sorted(len(ref) for ref in references)
    r = min(lengths, key=lambda length: abs(length - len(candidate)))
    penalty = 1.0 if len(candidate) > r else math.exp(1 - r / len(candidate))
    return penalty * math.prod(precisions) ** (1 / max_n)


def naive_lcs(a, b):
    @lru_cache(maxsize=None)
    def solve(i, j):
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + solve(i + 1, j + 1)
        return max(solve(i + 1, j), solve(i, j + 1))

    return solve(0, 0)


def test_exact_match():
    records = [
        record(["Efavirenz", "zidovudine"], ["efavirenz", "zidovudine"]),
        record(["zidovudine"], ["efavirenz"]),
        record([], ["HCC"]),
        record(["hcc "], ["HCC"]),
    ]
    assert exact_match(records) == 0.5
    with pytest.raises(EmptyDatasetError):
        exact_match([])


def test_exact_match_is_bounded():
    rng = random.Random(1)
    for _ in range(50):
        records = [record(random_sentence(rng, 0, 3), random_sentence(rng, 1, 3)) for _ in range(5)]
        assert 0.0 <= exact_match(records) <= 1.0


def test_precision_recall_f1():
    c = ConfusionCounts(tp=3, fp=1, fn=2)
    assert precision(c) == 0.75
    assert recall(c) == 0.6
    assert f1(0.75, 0.6) == pytest.approx(2 * 0.75 * 0.6 / 1.35)
    assert f1(0.0, 0.0) == 0.0


def test_undefined_precision_and_recall():
    with pytest.raises(UndefinedMetricError):
        precision(ConfusionCounts(tp=0, fp=0, fn=3))
    with pytest.raises(UndefinedMetricError):
        recall(ConfusionCounts(tp=0, fp=2, fn=0))
    assert safe_ratio(ConfusionCounts()) == [0.0, 0.0, 0.0]


def test_confusion_counts():
    c = ConfusionCounts.from_sets({"a", "b", "c"}, {"b", "c", "d", "e"})
    assert c == ConfusionCounts(tp=2, fp=1, fn=2)
    assert c + ConfusionCounts(1, 1, 1) == ConfusionCounts(3, 2, 3)
    assert mention_counts([((0, 0), "drug")], [((0, 0), "disease")]) == ConfusionCounts(0, 1, 1)
    with pytest.raises(ValueError):
        ConfusionCounts(tp=-1)


def test_mrr():
    assert mrr([1, 2, None, 4]) == pytest.approx((1 + 0.5 + 0 + 0.25) / 4)
    assert mrr([None]) == 0.0
    with pytest.raises(EmptyDatasetError):
        mrr([])
    with pytest.raises(ValueError):
        mrr([0])


def test_first_correct_rank():
    assert first_correct_rank(["a", "B", "c"], ["b"]) == 2
    assert first_correct_rank(["a"], ["z"]) is None


def test_bleu_brevity_penalty():
    value = bleu(["the", "cat", "sat"], [["the", "cat", "sat", "down"]], max_n=2)
    assert value == pytest.approx(math.exp(-1 / 3))
    assert value == pytest.approx(0.7165313105737893)


def test_bleu_identical_sentences():
    sentence = ["the", "cat", "sat", "on", "the", "mat"]
    assert bleu(sentence, [sentence]) == pytest.approx(1.0)


def test_bleu_prefers_shorter_reference_on_length_ties():
    assert bleu(["a", "b", "c"], [["a", "b"], ["a", "b", "c", "d"]], max_n=2) == pytest.approx(1.0)


def test_bleu_zero_and_smoothing():
    assert bleu(["the", "dog"], [["the", "cat"]], max_n=2) == 0.0
    assert bleu(["the", "dog"], [["the", "cat"]], max_n=2, smoothing=True) == pytest.approx(0.5)
    assert bleu(["dog"], [["the", "cat"]], max_n=1, smoothing=True) == 0.0


def test_bleu_clips_repeated_words():
    assert bleu(["the", "the", "the"], [["the", "cat"]], max_n=1) == pytest.approx(1 / 3)


def test_bleu_rejects_empty_input():
    with pytest.raises(EmptyCandidateError):
        bleu([], [["a"]])
    with pytest.raises(NoReferencesError):
        bleu(["a"], [])


def test_rouge_n():
    assert rouge_n(["the", "cat", "sat"], ["the", "cat", "sat", "down"], n=2) == pytest.approx(2 / 3)
    assert rouge_n(["a", "a"], ["a", "b", "a"], n=1) == pytest.approx(2 / 3)
    with pytest.raises(ReferenceTooShortError):
        rouge_n(["a"], ["a"], n=2)
    with pytest.raises(ValueError):
        rouge_n(["a"], ["a"], n=0)
    with pytest.raises(ValueError):
        rouge_n(["a"] * 12, ["a"] * 12, n=10)


def test_rouge_l():
    assert rouge_l(["a", "b", "c", "d"], ["a", "c", "d", "e"]) == 0.75
    assert rouge_l([], ["a"]) == 0.0
    with pytest.raises(EmptyReferenceError):
        rouge_l(["a"], [])


def test_metrics_agree_with_naive_versions():
    rng = random.Random(42)
    for _ in range(200):
        candidate = random_sentence(rng)
        references = [random_sentence(rng) for _ in range(rng.randint(1, 3))]
        max_n = rng.randint(1, 4)
        assert bleu(candidate, references, max_n) == pytest.approx(
            naive_bleu(candidate, references, max_n), abs=1e-9
        )
        assert 0.0 <= bleu(candidate, references, max_n, smoothing=True) <= 1.0

        reference = references[0]
        expected = naive_lcs(tuple(candidate), tuple(reference)) / len(reference)
        assert rouge_l(candidate, reference) == pytest.approx(expected, abs=1e-9)

        n = rng.randint(1, 3)
        if len(reference) >= n:
            grams = naive_grams(reference, n)
            overlap = sum(min(naive_grams(candidate, n).count(g), grams.count(g)) for g in set(grams))
            assert rouge_n(candidate, reference, n) == pytest.approx(overlap / len(grams), abs=1e-9)
