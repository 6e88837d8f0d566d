"""Deduplication and MESIA-driven partitioning of datasets."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Mapping

from mesia.errors import NegativeScore, TooFewItems, UnknownId, WrongGroupCount
from mesia.lexer import tokenize_comment
from mesia.model import (
    INTERVAL_BINS,
    RANK_DECILES,
    CodeCommentPair,
    Dataset,
    GroupPartition,
    MesiaScore,
)

INTERVAL_EDGES = (0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, math.inf)

# (name, first group, last group), 1-based and inclusive
TRAINING_SETS = (("L", 1, 8), ("M", 2, 9), ("H", 3, 10))


def raw_key(pair: CodeCommentPair) -> tuple[str, str]:
    return " ".join(pair.code.split()), " ".join(pair.comment.split())


def token_key(pair: CodeCommentPair) -> tuple:
    return tuple(pair.code.split()), tuple(tokenize_comment(pair.comment))


EQUALITY_KEYS: dict[str, Callable[[CodeCommentPair], tuple]] = {
    "raw": raw_key,
    "token": token_key,
}


@dataclass(frozen=True)
class DedupReport:
    train_internal: int = 0
    valid_internal: int = 0
    valid_in_train: int = 0
    test_internal: int = 0
    test_in_train_or_valid: int = 0

    @property
    def total(self) -> int:
        return sum(asdict(self).values())

    def to_dict(self) -> dict:
        return asdict(self)


def _unique(ds: Dataset, key) -> tuple[list[CodeCommentPair], int]:
    seen = set()
    kept = []
    for p in ds.pairs:
        k = key(p)
        if k not in seen:
            seen.add(k)
            kept.append(p)
    return kept, len(ds.pairs) - len(kept)


def dedup(
    train: Dataset,
    valid: Dataset,
    test: Dataset,
    equality: str = "raw",
) -> tuple[Dataset, Dataset, Dataset, DedupReport]:
    """Remove duplicates within each split, then leaks into later splits.

    Order of work: train internally; validation internally and against
    train; test internally and against train and validation. The first
    occurrence wins inside a split.
    """
    key = EQUALITY_KEYS[equality]

    train_kept, train_dup = _unique(train, key)
    train_keys = {key(p) for p in train_kept}

    valid_kept, valid_dup = _unique(valid, key)
    valid_clean = [p for p in valid_kept if key(p) not in train_keys]
    valid_keys = {key(p) for p in valid_clean}

    test_kept, test_dup = _unique(test, key)
    test_clean = [p for p in test_kept if key(p) not in train_keys and key(p) not in valid_keys]

    report = DedupReport(
        train_internal=train_dup,
        valid_internal=valid_dup,
        valid_in_train=len(valid_kept) - len(valid_clean),
        test_internal=test_dup,
        test_in_train_or_valid=len(test_kept) - len(test_clean),
    )
    return (
        Dataset(train.split, train_kept),
        Dataset(valid.split, valid_clean),
        Dataset(test.split, test_clean),
        report,
    )


def interval_index(value: float) -> int:
    """Bin of ``value`` among [0,1], (1,2], ..., (9,10], (10, inf)."""
    if value < 0 or math.isnan(value):
        raise NegativeScore(f"MESIA value {value} is not a non-negative number")
    if value > 10:
        return 10
    return max(math.ceil(value) - 1, 0)


def bin_by_interval(scores: Mapping[str, MesiaScore]) -> GroupPartition:
    bins: list[list[str]] = [[] for _ in range(len(INTERVAL_EDGES) - 1)]
    for pid, s in scores.items():
        bins[interval_index(s.mesia)].append(pid)
    return GroupPartition(kind=INTERVAL_BINS, groups=bins, boundaries=INTERVAL_EDGES)


def interval_label(index: int) -> str:
    lo, hi = INTERVAL_EDGES[index], INTERVAL_EDGES[index + 1]
    left = "[" if index == 0 else "("
    right = ")" if math.isinf(hi) else "]"
    hi_s = "+inf" if math.isinf(hi) else f"{hi:g}"
    return f"{left}{lo:g},{hi_s}{right}"


def partition_ranked(
    scores: Mapping[str, MesiaScore],
    k: int = 10,
    drop_remainder: bool = False,
    drop_side: str = "high",
) -> GroupPartition:
    """Rank ids by ascending MESIA and cut them into ``k`` groups.

    Ties are broken by id. With ``drop_remainder`` the ``len % k`` ids at
    ``drop_side`` of the ranking are left out so every group has the same
    size; otherwise the first ``len % k`` groups get one extra id.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(scores) < k:
        raise TooFewItems(f"{len(scores)} items cannot fill {k} groups")
    if drop_side not in ("high", "low"):
        raise ValueError(f"drop_side must be 'high' or 'low', got {drop_side!r}")

    ranked = sorted(scores, key=lambda i: (scores[i].mesia, i))
    size, rem = divmod(len(ranked), k)
    dropped: list[str] = []
    if drop_remainder and rem:
        if drop_side == "high":
            ranked, dropped = ranked[: len(ranked) - rem], ranked[len(ranked) - rem :]
        else:
            dropped, ranked = ranked[:rem], ranked[rem:]
        rem = 0

    groups = []
    start = 0
    for g in range(k):
        end = start + size + (1 if g < rem else 0)
        groups.append(ranked[start:end])
        start = end
    return GroupPartition(kind=RANK_DECILES, groups=groups, dropped=dropped)


def build_training_sets(dataset: Dataset, partition: GroupPartition) -> dict[str, Dataset]:
    """Form the L (groups 1-8), M (2-9) and H (3-10) training sets.

    Pairs keep the order they have in ``dataset``.
    """
    if len(partition.groups) != 10:
        raise WrongGroupCount(f"expected 10 groups, got {len(partition.groups)}")
    sizes = {len(g) for g in partition.groups}
    if len(sizes) != 1:
        raise WrongGroupCount(f"groups must be equal-sized, got sizes {sorted(sizes)}")
    out = {}
    for name, first, last in TRAINING_SETS:
        ids = [i for g in partition.groups[first - 1 : last] for i in g]
        subset = dataset.subset(ids)
        if len(subset) != len(ids):
            missing = set(ids) - set(subset.ids)
            raise UnknownId(f"{len(missing)} partition ids not in dataset, e.g. {sorted(missing)[0]!r}")
        out[name] = subset
    return out
