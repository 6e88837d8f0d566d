"""BLEU scoring of generated comments, overall and per MESIA group.

Conventions follow the widely used NLTK implementation: n-gram precision
denominators are floored at 1, sentence BLEU uses add-one smoothing on the
n >= 2 precisions, and a candidate with no matching unigram scores 0.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from mesia.engine import mean_mesia
from mesia.errors import EmptyReference, MissingCandidate, MissingReference
from mesia.lexer import tokenize_comment
from mesia.porter import stem
from mesia.model import GroupPartition, MesiaScore


@dataclass(frozen=True)
class GeneratedComment:
    id: str
    text: str

    def to_dict(self) -> dict:
        return {"id": self.id, "text": self.text}


def bleu_tokens(text: str, stemmed: bool = False) -> list[str]:
    tokens = tokenize_comment(text)
    return [stem(t) for t in tokens] if stemmed else tokens


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _match_counts(candidate: Sequence[str], reference: Sequence[str], max_n: int) -> tuple[list[int], list[int]]:
    numerators, denominators = [], []
    for n in range(1, max_n + 1):
        cand = _ngrams(candidate, n)
        ref = _ngrams(reference, n)
        numerators.append(sum(min(c, ref[g]) for g, c in cand.items()))
        denominators.append(max(1, sum(cand.values())))
    return numerators, denominators


def brevity_penalty(cand_len: int, ref_len: int) -> float:
    if cand_len > ref_len:
        return 1.0
    if cand_len == 0:
        return 0.0
    return math.exp(1 - ref_len / cand_len)


def sentence_bleu(candidate: Sequence[str], reference: Sequence[str], max_n: int = 4) -> float:
    """Smoothed sentence BLEU of one candidate against one reference."""
    if not reference:
        raise EmptyReference("reference has no tokens")
    if not candidate:
        return 0.0
    num, den = _match_counts(candidate, reference, max_n)
    if num[0] == 0:
        return 0.0
    log_p = math.log(num[0] / den[0])
    log_p += sum(math.log((num[i] + 1) / (den[i] + 1)) for i in range(1, max_n))
    return brevity_penalty(len(candidate), len(reference)) * math.exp(log_p / max_n)


def corpus_bleu(
    candidates: Mapping[str, Sequence[str]],
    references: Mapping[str, Sequence[str]],
    max_n: int = 4,
) -> float:
    """Unsmoothed corpus BLEU; counts and lengths are summed before dividing."""
    num = [0] * max_n
    den = [0] * max_n
    cand_len = ref_len = 0
    for pid in sorted(candidates):
        if pid not in references:
            raise MissingReference(pid)
        cand, ref = candidates[pid], references[pid]
        if not ref:
            raise EmptyReference(f"reference {pid!r} has no tokens")
        n_i, d_i = _match_counts(cand, ref, max_n)
        for i in range(max_n):
            num[i] += n_i[i]
            den[i] += d_i[i]
        cand_len += len(cand)
        ref_len += len(ref)
    if not candidates or any(x == 0 for x in num):
        return 0.0
    log_p = math.fsum(math.log(num[i] / den[i]) for i in range(max_n)) / max_n
    return brevity_penalty(cand_len, ref_len) * math.exp(log_p)


@dataclass(frozen=True)
class GroupBleu:
    group: int
    size: int
    corpus_bleu: float
    sentence_bleu: float
    mean_mesia: float

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "size": self.size,
            "corpus_bleu": self.corpus_bleu,
            "sentence_bleu": self.sentence_bleu,
            "mean_mesia": self.mean_mesia,
        }


def bleu_per_group(
    candidates: Mapping[str, Sequence[str]],
    references: Mapping[str, Sequence[str]],
    partition: GroupPartition,
    scores: Mapping[str, MesiaScore] | None = None,
    max_n: int = 4,
) -> list[GroupBleu]:
    """Corpus and mean sentence BLEU for each group, in group order (1-based).

    ``mean_mesia`` is NaN when no scores are supplied.
    """
    for pid in candidates:
        if pid not in references:
            raise MissingReference(pid)
    rows = []
    for index, ids in enumerate(partition.groups, start=1):
        for pid in ids:
            if pid not in references:
                raise MissingReference(pid)
            if pid not in candidates:
                raise MissingCandidate(pid)
        group_cands = {pid: candidates[pid] for pid in ids}
        group_refs = {pid: references[pid] for pid in ids}
        sent = [sentence_bleu(group_cands[pid], group_refs[pid], max_n) for pid in ids]
        rows.append(
            GroupBleu(
                group=index,
                size=len(ids),
                corpus_bleu=corpus_bleu(group_cands, group_refs, max_n) if ids else math.nan,
                sentence_bleu=math.fsum(sent) / len(sent) if sent else math.nan,
                mean_mesia=mean_mesia(scores, ids) if scores is not None else math.nan,
            )
        )
    return rows
