import math
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from mesia.engine import (
    build_word_stats,
    comment_information,
    conditional_probability,
    mesia,
    remaining_words,
    score_dataset,
    word_probability,
)
from mesia.errors import EmptyComment, EmptyCorpus
from mesia.lexer import StopWordList, tokenize_pair
from mesia.model import CorpusStats, TokenizedPair

NO_STOPS = StopWordList(frozenset())


def tp(tokens, sig=(), id="p"):
    return TokenizedPair(id=id, comment_tokens=tuple(tokens), signature_tokens=frozenset(sig))


AB_BC = build_word_stats([tp(["a", "b"]), tp(["b", "c"])])


class TestWordStats:
    def test_counts(self):
        assert dict(AB_BC.freq) == {"a": 1, "b": 2, "c": 1}
        assert AB_BC.total == 4 and AB_BC.vocab_size == 3

    def test_single(self):
        s = build_word_stats([tp(["x"])])
        assert dict(s.freq) == {"x": 1} and s.total == 1

    def test_duplication_doubles(self):
        pairs = [tp(["a", "b"]), tp(["b", "c"])]
        doubled = build_word_stats(pairs * 2)
        assert {w: 2 * c for w, c in AB_BC.freq.items()} == dict(doubled.freq)
        assert doubled.total == 2 * AB_BC.total

    def test_signature_tokens_not_counted(self):
        s = build_word_stats([tp(["a"], sig={"zzz"})])
        assert "zzz" not in s.freq

    def test_empty(self):
        with pytest.raises(EmptyCorpus):
            build_word_stats([])
        with pytest.raises(EmptyCorpus):
            build_word_stats([[]])


class TestProbabilities:
    def test_known(self):
        assert word_probability("b", AB_BC) == 0.5

    def test_single_word_corpus(self):
        assert word_probability("x", CorpusStats({"x": 1})) == 1.0

    def test_unknown_smoothed(self):
        assert word_probability("zzz", AB_BC) == pytest.approx(1 / 7, abs=1e-12)

    def test_conditional(self):
        assert conditional_probability("a", {"a"}, AB_BC) == 1.0
        assert conditional_probability("b", {"a"}, AB_BC) == 0.5
        for w in ["a", "b", "c", "zzz"]:
            assert conditional_probability(w, set(), AB_BC) == word_probability(w, AB_BC)


class TestInformation:
    def test_all_covered(self):
        assert comment_information(tp(["a", "b"], {"a", "b"}), AB_BC) == 0.0

    def test_repeated_token(self):
        stats = CorpusStats({"a": 1, "z": 3})  # p(a) = 0.25
        assert comment_information(tp(["a", "a"]), stats) == pytest.approx(4.0, abs=1e-9)

    def test_covered_regardless_of_corpus(self):
        stats = CorpusStats({"q": 9})
        assert comment_information(tp(["mark", "us"], {"mark", "us"}), stats) == 0.0

    def test_unconditioned(self):
        pair = tp(["a", "b"], {"a"})
        assert comment_information(pair, AB_BC, conditioned=False) == pytest.approx(3.0, abs=1e-9)
        assert comment_information(pair, AB_BC) == pytest.approx(1.0, abs=1e-9)

    def test_natural_log_base(self):
        pair = tp(["b"])
        assert comment_information(pair, AB_BC, base="e") == pytest.approx(math.log(2), abs=1e-12)

    def test_empty_comment(self):
        with pytest.raises(EmptyComment):
            comment_information(tp([]), AB_BC)


class TestMesia:
    def test_mean(self):
        stats = CorpusStats({"a": 1, "b": 1, "z": 2})
        s = mesia(tp(["a", "b"]), stats, NO_STOPS)
        assert s.mesia == pytest.approx(2.0, abs=1e-9)
        assert s.info_total == pytest.approx(4.0, abs=1e-9)

    def test_covered_is_zero(self):
        s = mesia(tp(["a", "b"], {"a", "b"}), AB_BC, NO_STOPS)
        assert s.mesia == 0.0 and s.remaining_count == 0

    def test_worked_example(self, mark_used, stops):
        pair = tokenize_pair(mark_used)
        stats = build_word_stats([pair])
        s = mesia(pair, stats, stops)
        assert s.remaining_count == 7
        assert s.remaining_proportion == 7 / 18
        words = remaining_words(pair, stops)
        assert words.remaining == ["specified", "setting", "last", "time", "current", "time", "nanoseconds"]
        assert sorted(set(words.stop_words)) == ["as", "by", "in", "its", "the", "to"]
        assert sorted(set(words.signature_words)) == ["entry", "marks", "used"]

    def test_empty(self):
        with pytest.raises(EmptyComment):
            mesia(tp([]), AB_BC, NO_STOPS)


class TestScoreDataset:
    def test_matches_unit_op(self, stops):
        pairs = [tp(["a", "b"], id="1"), tp(["b"], {"b"}, id="2"), tp(["c", "zzz"], id="3")]
        report = score_dataset(pairs, AB_BC, stops)
        assert list(report.scores) == ["1", "2", "3"]
        for p in pairs:
            assert report.scores[p.id] == mesia(p, AB_BC, stops)

    def test_empty(self, stops):
        assert score_dataset([], AB_BC, stops).scores == {}

    def test_errors_do_not_abort(self, stops):
        report = score_dataset([tp([], id="bad"), tp(["a"], id="ok")], AB_BC, stops)
        assert list(report.scores) == ["ok"]
        assert "EmptyComment" in report.errors["bad"]

    def test_parallel_matches_serial(self, stops):
        rng = random.Random(7)
        pairs = [tp([rng.choice("abcdef") for _ in range(rng.randint(1, 6))], id=str(i)) for i in range(60)]
        stats = build_word_stats(pairs)
        serial = score_dataset(pairs, stats, stops)
        parallel = score_dataset(pairs, stats, stops, jobs=3)
        assert list(parallel.scores) == list(serial.scores)
        assert parallel.scores == serial.scores

    def test_synthetic_corpus_matches_oracle(self, stops):
        rng = random.Random(2024)
        vocab = [f"w{i}" for i in range(40)]
        comments = [[rng.choice(vocab) for _ in range(rng.randint(1, 12))] for _ in range(100)]
        sigs = [set(rng.sample(vocab, rng.randint(0, 4))) for _ in range(100)]
        pairs = [tp(c, s, id=f"{i:03d}") for i, (c, s) in enumerate(zip(comments, sigs))]
        stats = build_word_stats(pairs)
        report = score_dataset(pairs, stats, stops)
        hist, expected_hist = [0] * 11, [0] * 11
        for i, (c, s) in enumerate(zip(comments, sigs)):
            expected = oracle.mesia(c, comments, s)
            assert report.scores[f"{i:03d}"].mesia == pytest.approx(expected, abs=1e-9)
            expected_hist[oracle.interval(expected)] += 1
            hist[oracle.interval(report.scores[f"{i:03d}"].mesia)] += 1
        assert hist == expected_hist


tokens = st.lists(st.sampled_from("abcdefgh"), min_size=1, max_size=8)
corpora = st.lists(tokens, min_size=1, max_size=6)
sigsets = st.frozensets(st.sampled_from("abcdefghij"), max_size=4)


def test_duplication_changes_unseen_word_probability():
    # smoothing depends on vocab size, which replication does not scale
    stats = build_word_stats([["a"]])
    assert word_probability("b", stats) != word_probability("b", build_word_stats([["a"]] * 2))


class TestProperties:
    @settings(max_examples=150)
    @given(corpora, tokens, sigsets)
    def test_against_oracle(self, corpus, comment, sig):
        stats = build_word_stats(corpus)
        got = comment_information(tp(comment, sig), stats)
        assert got == pytest.approx(oracle.information(comment, corpus, sig), abs=1e-9)

    @settings(max_examples=150)
    @given(corpora, tokens, sigsets, st.sampled_from("abcdefghij"))
    def test_signature_monotone(self, corpus, comment, sig, extra):
        stats = build_word_stats(corpus)
        before = comment_information(tp(comment, sig), stats)
        after = comment_information(tp(comment, sig | {extra}), stats)
        assert after <= before + 1e-12

    @settings(max_examples=150)
    @given(corpora, tokens, sigsets, st.randoms())
    def test_permutation_invariant(self, corpus, comment, sig, rnd):
        stats = build_word_stats(corpus)
        shuffled = list(comment)
        rnd.shuffle(shuffled)
        a = mesia(tp(comment, sig), stats, NO_STOPS)
        b = mesia(tp(shuffled, sig), stats, NO_STOPS)
        assert a.mesia == pytest.approx(b.mesia, abs=1e-9)
        assert a.remaining_count == b.remaining_count

    @settings(max_examples=150)
    @given(corpora, tokens, sigsets, st.integers(2, 5))
    def test_duplication_invariant(self, corpus, comment, sig, k):
        # the scored comment is part of the replicated dataset
        corpus = corpus + [comment]
        a = mesia(tp(comment, sig), build_word_stats(corpus), NO_STOPS)
        b = mesia(tp(comment, sig), build_word_stats(corpus * k), NO_STOPS)
        assert a.mesia == pytest.approx(b.mesia, abs=1e-9)

    @settings(max_examples=150)
    @given(corpora, tokens, sigsets)
    def test_bounds(self, corpus, comment, sig):
        stats = build_word_stats(corpus)
        s = mesia(tp(comment, sig), stats, NO_STOPS)
        assert s.mesia >= 0
        assert s.info_unconditioned >= s.info_total - 1e-12
        assert s.mesia == pytest.approx(s.info_total / len(comment), abs=1e-9)
        # a word that is the whole corpus vocabulary has p = 1 and carries no information
        certain = {w for w in comment if word_probability(w, stats) == 1.0}
        assert (s.mesia == 0) == all(w in sig or w in certain for w in comment)
        worst = max(-math.log2(word_probability(w, stats)) for w in comment)
        assert s.mesia <= worst + 1e-9
        assert 0 <= s.remaining_proportion <= 1
