import math
import random

import pytest

from l2grader import lm
from l2grader.errors import ContextTooLong, EmptyTrainingText
from .oracles import brute_force_sentence_score, random_corpus, wb_prob

TWO_SENTENCES = [["the", "cat", "sat"], ["the", "cat", "ran"]]


def test_unigram_counts_and_witten_bell_mass():
    model = lm.train([["a", "b", "a"]], order=1)
    assert model.counts[("a",)] == 2
    assert model.counts[("b",)] == 1
    # N=3 tokens, T=2 types: seen mass c/(N+T), unseen mass T/(N+T) on unknown
    assert model.prob("a") == pytest.approx(0.4)
    assert model.prob("b") == pytest.approx(0.2)
    assert model.prob("zzz") == pytest.approx(0.4)


def test_bigram_hand_computed_comparison():
    model = lm.train(TWO_SENTENCES, order=2)
    # hand computation: context "the" has 2 continuations of 1 type,
    # lambda = 2/3; unigram p(cat) = 2/10
    assert model.prob("cat", ("the",)) == pytest.approx(11 / 15)
    assert model.prob("sat", ("the",)) == pytest.approx(1 / 30)
    assert model.prob("cat", ("the",)) > model.prob("sat", ("the",))
    assert model.prob("the", (lm.SOS,)) == pytest.approx(11 / 15)
    assert model.prob("zzz", ("cat",)) == pytest.approx(0.2)


def test_unseen_context_backs_off_to_unigram():
    model = lm.train(TWO_SENTENCES, order=2)
    for word in ("the", "cat", "sat", "ran", "zzz"):
        assert model.prob(word, ("unseen",)) == pytest.approx(model.prob(word))


def test_prob_matches_independent_oracle_on_random_corpora():
    rng = random.Random(1)
    for _ in range(10):
        corpus = random_corpus(rng)
        order = rng.randint(1, 4)
        model = lm.train(corpus, order)
        for _ in range(10):
            word = rng.choice(["a", "b", "zzz"])
            context = tuple(
                rng.choice(["a", "b", "c", "zzz"])
                for _ in range(rng.randint(0, order - 1))
            )
            assert model.prob(word, context) == pytest.approx(
                wb_prob(corpus, order, word, context), rel=1e-12
            )


def test_normalization_over_vocabulary_plus_unknown():
    rng = random.Random(2)
    for _ in range(10):
        corpus = random_corpus(rng)
        order = rng.randint(1, 4)
        model = lm.train(corpus, order)
        for _ in range(10):
            context = tuple(
                rng.choice(["a", "b", "c", "d", lm.SOS])
                for _ in range(rng.randint(0, order - 1))
            )
            total = sum(model.prob(w, context) for w in model.vocabulary)
            total += model.prob("zzz", context)
            assert total == pytest.approx(1.0, abs=1e-9)


def test_seen_word_at_least_as_likely_as_unknown_small_corpus():
    # ten sentences over a tiny, heavily repeated vocabulary
    corpus = [["a", "b", "c", "a", "b"], ["b", "c", "a", "b", "c"]] * 5
    for order in (1, 2, 3):
        model = lm.train(corpus, order)
        contexts = [()]
        if order >= 2:
            contexts += [("a",), ("b",), ("c",)]
        if order >= 3:
            contexts += [("a", "b"), ("b", "c"), ("c", "a")]
        for context in contexts:
            floor = model.prob("zzz", context)
            for word in sorted(model.vocabulary):
                assert model.prob(word, context) >= floor


def test_score_sentence_empty():
    model = lm.train(TWO_SENTENCES, order=2)
    score = model.score_sentence([])
    assert score == lm.SentenceScore(0.0, 0.0, 0, 0, 0)


def test_score_sentence_all_seen_no_backoff():
    model = lm.train(TWO_SENTENCES, order=2)
    score = model.score_sentence(["the", "cat", "sat"])
    assert score.n_w == 3
    assert score.n_oov == 0
    assert score.n_bo == 0
    assert score.log_p_oov == 0.0


def test_score_sentence_hand_frozen_values():
    model = lm.train(TWO_SENTENCES, order=2)
    score = model.score_sentence(["the", "cat", "jumped"])
    assert score.n_w == 3
    assert score.n_oov == 1
    assert score.n_bo == 1  # (cat, <unk>) never seen at full order
    assert score.log_p == pytest.approx(2 * math.log(11 / 15) + math.log(0.2))
    assert score.log_p_oov == pytest.approx(math.log(0.2))


def test_score_sentence_matches_brute_force_oracle():
    rng = random.Random(3)
    for _ in range(25):
        corpus = random_corpus(rng, max_sentences=3)
        order = rng.randint(1, 4)
        model = lm.train(corpus, order)
        tokens = [rng.choice(["a", "b", "c", "x", "zzz"]) for _ in range(rng.randint(1, 5))]
        got = model.score_sentence(tokens)
        log_p, log_p_oov, n_w, n_oov, n_bo = brute_force_sentence_score(
            corpus, order, tokens
        )
        assert got.n_w == n_w
        assert got.n_oov == n_oov
        assert got.n_bo == n_bo
        assert got.log_p == pytest.approx(log_p, rel=1e-12)
        assert got.log_p_oov == pytest.approx(log_p_oov, rel=1e-12)


def test_monotone_accounting_when_appending_tokens():
    rng = random.Random(4)
    model = lm.train(random_corpus(rng), order=3)
    tokens = []
    previous = model.score_sentence(tokens)
    for word in ["a", "zzz", "b", "q", "c", "a"]:
        tokens.append(word)
        score = model.score_sentence(tokens)
        assert score.n_w == previous.n_w + 1
        assert score.n_oov >= previous.n_oov
        assert score.n_bo >= previous.n_bo
        assert score.log_p < previous.log_p
        previous = score


def test_exp_log_p_equals_product_of_prob_calls():
    model = lm.train(TWO_SENTENCES + [["a", "dog", "sat"]], order=3)
    tokens = ["the", "dog", "sat", "zzz"]
    score = model.score_sentence(tokens)
    product = 1.0
    history = [lm.SOS, lm.SOS]
    for w in tokens:
        product *= model.prob(w, tuple(history[-2:]))
        history.append(w if w in model.vocabulary else lm.UNK)
    assert math.exp(score.log_p) == pytest.approx(product, rel=1e-9)


def test_context_too_long_rejected():
    model = lm.train(TWO_SENTENCES, order=2)
    with pytest.raises(ContextTooLong):
        model.prob("cat", ("the", "big"))


def test_empty_training_text_rejected():
    with pytest.raises(EmptyTrainingText):
        lm.train([], order=2)
    with pytest.raises(EmptyTrainingText):
        lm.train([[], []], order=2)


def test_prefix_closure_of_counts():
    rng = random.Random(5)
    for _ in range(5):
        corpus = random_corpus(rng)
        model = lm.train(corpus, rng.randint(2, 4))
        for gram, count in model.counts.items():
            if count > 0 and len(gram) > 1:
                assert model.counts.get(gram[:-1], 0) > 0


def test_serialization_deterministic_and_round_trips(tmp_path):
    model_a = lm.train(TWO_SENTENCES, order=3)
    model_b = lm.train(list(TWO_SENTENCES), order=3)
    path_a = tmp_path / "a.lm"
    path_b = tmp_path / "b.lm"
    model_a.save(path_a)
    model_b.save(path_b)
    assert path_a.read_bytes() == path_b.read_bytes()

    loaded = lm.NgramModel.load(path_a)
    assert loaded.order == model_a.order
    assert loaded.vocabulary == model_a.vocabulary
    assert loaded.counts == model_a.counts
    tokens = ["the", "cat", "jumped", "zzz"]
    assert loaded.score_sentence(tokens) == model_a.score_sentence(tokens)


def test_header_contents(tmp_path):
    model = lm.train(TWO_SENTENCES, order=2)
    path = tmp_path / "model.lm"
    model.save(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "l2grader-ngram 1"
    assert lines[1] == "order 2"
    assert lines[2] == "vocab_size 4"
    assert lines[4] == "smoothing witten-bell"
    assert lines[5] == "log_base e"
