"""Word statistics, supplementary information and MESIA scoring."""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from mesia.errors import EmptyComment, EmptyCorpus, MesiaError
from mesia.lexer import StopWordList
from mesia.model import CorpusStats, MesiaScore, TokenizedPair

logger = logging.getLogger(__name__)

LOG_BASES = {"2": 2.0, "e": math.e}


def log_base_value(base: float | str) -> float:
    if isinstance(base, str):
        try:
            return LOG_BASES[base]
        except KeyError:
            raise ValueError(f"log base must be one of {sorted(LOG_BASES)}") from None
    return float(base)


def build_word_stats(pairs: Iterable[TokenizedPair | Sequence[str]]) -> CorpusStats:
    """Count every comment token occurrence across ``pairs``.

    Accepts tokenized pairs or bare token sequences. Code tokens are never
    counted: the word distribution is defined over comments only.
    """
    counts: Counter[str] = Counter()
    for p in pairs:
        counts.update(p.comment_tokens if isinstance(p, TokenizedPair) else p)
    if not counts:
        raise EmptyCorpus("no comment tokens to count")
    return CorpusStats(freq=counts)


def word_probability(w: str, stats: CorpusStats) -> float:
    """freq(w) / total; unseen words get 1 / (total + vocab_size)."""
    count = stats.freq.get(w)
    if count is None:
        return 1.0 / (stats.total + stats.vocab_size)
    return count / stats.total


def conditional_probability(w: str, signature_tokens: frozenset[str] | set[str], stats: CorpusStats) -> float:
    if w in signature_tokens:
        return 1.0
    return word_probability(w, stats)


def _information(p: float, base: float) -> float:
    # -log(1) is exactly 0; avoid -0.0
    return 0.0 if p == 1.0 else -math.log(p, base)


def comment_information(
    pair: TokenizedPair,
    stats: CorpusStats,
    conditioned: bool = True,
    base: float | str = 2.0,
) -> float:
    """Information carried by the comment, summed over every token occurrence.

    With ``conditioned`` (the default) tokens found in the split signature
    contribute nothing; otherwise the plain corpus surprisal I(C|W) is returned.
    """
    if not pair.comment_tokens:
        raise EmptyComment(f"pair {pair.id!r} has no comment tokens")
    b = log_base_value(base)
    sig = pair.signature_tokens if conditioned else frozenset()
    return math.fsum(_information(conditional_probability(w, sig, stats), b) for w in pair.comment_tokens)


@dataclass(frozen=True)
class RemainingWords:
    stop_words: list[str] = field(default_factory=list)
    signature_words: list[str] = field(default_factory=list)
    remaining: list[str] = field(default_factory=list)


def remaining_words(pair: TokenizedPair, stops: StopWordList) -> RemainingWords:
    """Partition surface comment words into stop words, signature words and the rest.

    Stop words are matched on the surface form, signature words on the stem.
    """
    out = RemainingWords()
    for surface, stemmed in zip(pair.surface_tokens, pair.comment_tokens):
        if surface in stops:
            out.stop_words.append(surface)
        elif stemmed in pair.signature_tokens:
            out.signature_words.append(surface)
        else:
            out.remaining.append(surface)
    return out


def mesia(
    pair: TokenizedPair,
    stats: CorpusStats,
    stops: StopWordList,
    base: float | str = 2.0,
) -> MesiaScore:
    if pair.raw_comment_len < 1:
        raise EmptyComment(f"pair {pair.id!r} has no comment tokens")
    info = comment_information(pair, stats, True, base)
    unconditioned = comment_information(pair, stats, False, base)
    remaining = len(remaining_words(pair, stops).remaining)
    return MesiaScore(
        info_total=info,
        mesia=info / pair.raw_comment_len,
        remaining_count=remaining,
        remaining_proportion=remaining / pair.raw_comment_len,
        info_unconditioned=unconditioned,
    )


@dataclass
class ScoreReport:
    scores: dict[str, MesiaScore]
    errors: dict[str, str]


def _score_chunk(args) -> list[tuple[str, MesiaScore | None, str | None]]:
    chunk, stats, stops, base = args
    out = []
    for p in chunk:
        try:
            out.append((p.id, mesia(p, stats, stops, base), None))
        except MesiaError as e:
            out.append((p.id, None, f"{type(e).__name__}: {e}"))
    return out


def score_dataset(
    pairs: Sequence[TokenizedPair],
    stats: CorpusStats,
    stops: StopWordList,
    base: float | str = 2.0,
    jobs: int = 1,
) -> ScoreReport:
    """Score every pair; failures are collected in ``errors`` instead of raised.

    Output order follows input order regardless of ``jobs``.
    """
    pairs = list(pairs)
    if jobs <= 1 or len(pairs) < 2 * jobs:
        results = _score_chunk((pairs, stats, stops, base))
    else:
        size = math.ceil(len(pairs) / jobs)
        chunks = [pairs[i : i + size] for i in range(0, len(pairs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [
                r
                for chunk in pool.map(_score_chunk, [(c, stats, stops, base) for c in chunks])
                for r in chunk
            ]
    report = ScoreReport(scores={}, errors={})
    for pid, score, err in results:
        if err is not None:
            report.errors[pid] = err
        else:
            report.scores[pid] = score
    if report.errors:
        logger.warning("%d of %d pairs could not be scored", len(report.errors), len(pairs))
    return report


def mean_mesia(scores: Mapping[str, MesiaScore], ids: Iterable[str]) -> float:
    values = [scores[i].mesia for i in ids]
    return math.fsum(values) / len(values) if values else math.nan
