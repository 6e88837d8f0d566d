"""Supplementary-information scoring of method comments (MESIA)."""

__version__ = "0.1.0"

from mesia.bleu import bleu_per_group, corpus_bleu, sentence_bleu
from mesia.dataset import bin_by_interval, build_training_sets, dedup, partition_ranked
from mesia.engine import (
    build_word_stats,
    comment_information,
    conditional_probability,
    mesia,
    remaining_words,
    score_dataset,
    word_probability,
)
from mesia.lexer import StopWordList, parse_signature, split_identifier, tokenize_comment, tokenize_pair
from mesia.model import (
    CodeCommentPair,
    CorpusStats,
    Dataset,
    GroupPartition,
    MesiaScore,
    Signature,
    TokenizedPair,
)
from mesia.porter import stem

__all__ = [
    "CodeCommentPair",
    "CorpusStats",
    "Dataset",
    "GroupPartition",
    "MesiaScore",
    "Signature",
    "StopWordList",
    "TokenizedPair",
    "bin_by_interval",
    "bleu_per_group",
    "build_training_sets",
    "build_word_stats",
    "comment_information",
    "conditional_probability",
    "corpus_bleu",
    "dedup",
    "mesia",
    "parse_signature",
    "partition_ranked",
    "remaining_words",
    "score_dataset",
    "sentence_bleu",
    "split_identifier",
    "stem",
    "tokenize_comment",
    "tokenize_pair",
    "word_probability",
]
