"""Brute-force reference computations used only by tests.

Deliberately naive: recounts the corpus for every probability and uses
log2 directly, sharing no code with the package.
"""

import math


def probability(word, corpus):
    total = sum(len(c) for c in corpus)
    count = sum(c.count(word) for c in corpus)
    if count == 0:
        vocab = len({w for c in corpus for w in c})
        return 1 / (total + vocab)
    return count / total


def information(comment, corpus, signature=()):
    bits = 0.0
    for w in comment:
        if w in signature:
            continue
        bits += -math.log2(probability(w, corpus))
    return bits


def mesia(comment, corpus, signature=()):
    return information(comment, corpus, signature) / len(comment)


def interval(value):
    edges = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]
    if value <= 1:
        return 0
    for i in range(1, 10):
        if edges[i] < value <= edges[i + 1]:
            return i
    return 10


def modified_precision(cand, ref, n):
    grams = [tuple(cand[i:i + n]) for i in range(len(cand) - n + 1)]
    ref_grams = [tuple(ref[i:i + n]) for i in range(len(ref) - n + 1)]
    matched = 0
    for g in set(grams):
        matched += min(grams.count(g), ref_grams.count(g))
    return matched, max(1, len(grams))
