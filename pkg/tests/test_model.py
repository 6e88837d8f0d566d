import json
import math

import pytest
from hypothesis import given, strategies as st

from mesia.errors import DuplicateId
from mesia.model import (
    CodeCommentPair,
    CorpusStats,
    Dataset,
    GroupPartition,
    MesiaScore,
    Signature,
    TokenizedPair,
)

words = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=6)
finite = st.floats(0, 1e6, allow_nan=False, allow_infinity=False)


def roundtrip(value):
    return type(value).from_dict(json.loads(json.dumps(value.to_dict())))


@given(words, st.text(max_size=40), words)
def test_pair_roundtrip(id, code, comment):
    p = CodeCommentPair(id, code, comment)
    assert roundtrip(p) == p


@given(words, st.lists(st.tuples(words, words), max_size=4), st.none() | words)
def test_signature_roundtrip(name, params, ret):
    sig = Signature(name, tuple(n for n, _ in params), tuple(t for _, t in params), ret)
    assert roundtrip(sig) == sig


@given(words, st.lists(words, min_size=1, max_size=8), st.frozensets(words, max_size=5))
def test_tokenized_roundtrip(id, toks, sig):
    tp = TokenizedPair(id, tuple(toks), sig)
    assert roundtrip(tp) == tp


@given(st.dictionaries(words, st.integers(1, 1000), min_size=1))
def test_stats_roundtrip(freq):
    s = CorpusStats(freq)
    assert roundtrip(s) == s
    assert s.total == sum(freq.values()) and s.vocab_size == len(freq)
    assert s.total >= s.vocab_size


@given(finite, finite, st.integers(0, 50), st.floats(0, 1))
def test_score_roundtrip(a, b, n, prop):
    s = MesiaScore(a, b, n, prop, a + 1)
    assert roundtrip(s) == s


@given(st.lists(st.lists(words, max_size=4, unique=True), max_size=5, unique_by=lambda g: tuple(g)))
def test_partition_roundtrip(groups):
    flat = [i for g in groups for i in g]
    if len(flat) != len(set(flat)):
        return
    part = GroupPartition("rank-deciles", groups)
    assert roundtrip(part) == part


def test_interval_partition_roundtrip_keeps_inf():
    part = GroupPartition("interval-bins", [["a"], []], boundaries=(0.0, 1.0, math.inf))
    assert roundtrip(part) == part


def test_dataset_rejects_duplicate_ids():
    with pytest.raises(DuplicateId):
        Dataset("train", [CodeCommentPair("a", "f()", "x"), CodeCommentPair("a", "g()", "y")])


def test_dataset_split_validated():
    with pytest.raises(ValueError):
        Dataset("dev", [])


def test_empty_comment_rejected():
    with pytest.raises(ValueError):
        CodeCommentPair("a", "f()", "   ")


def test_signature_invariants():
    with pytest.raises(ValueError):
        Signature("f", ("a",), ())
    with pytest.raises(ValueError):
        Signature("")


def test_tokenized_len_invariant():
    with pytest.raises(ValueError):
        TokenizedPair("a", ("x",), frozenset(), raw_comment_len=2)


def test_partition_rejects_overlap():
    with pytest.raises(ValueError):
        GroupPartition("rank-deciles", [["a"], ["a"]])


def test_stats_are_read_only():
    s = CorpusStats({"a": 1})
    with pytest.raises(TypeError):
        s.freq["b"] = 2
