"""Lexical overlap metrics for generated descriptions.

Tokenization is pinned for reproducibility: lowercase, word characters
only (letters, digits, underscore), everything else a separator.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

from ..errors import DomainError

_WORD_RE = re.compile(r"\w+")

BLEU_EPSILON = 0.1
METEOR_PENALTY_WEIGHT = 0.5
METEOR_PENALTY_POWER = 3
METEOR_RECALL_WEIGHT = 9  # F_mean = 10 P R / (R + 9 P)


def lex_tokens(text: str) -> list[str]:
    return _WORD_RE.findall(text.lower())


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu4_smoothed(candidate: str, reference: str) -> float:
    """Geometric mean of 1..4-gram precisions with an epsilon floor.

    Zero match counts are replaced by BLEU_EPSILON; a brevity penalty
    exp(1 - r/c) applies when the candidate is shorter than the reference.
    """
    cand = lex_tokens(candidate)
    ref = lex_tokens(reference)
    if not cand or not ref:
        raise DomainError("bleu requires non-empty candidate and reference")
    log_sum = 0.0
    for n in range(1, 5):
        cand_counts = _ngram_counts(cand, n)
        ref_counts = _ngram_counts(ref, n)
        total = max(len(cand) - n + 1, 0)
        if total == 0:
            # candidate too short for this order: floor both counts
            log_sum += 0.25 * math.log(BLEU_EPSILON / 1.0)
            continue
        matched = sum(min(cnt, ref_counts[gram]) for gram, cnt in cand_counts.items())
        numer = matched if matched > 0 else BLEU_EPSILON
        log_sum += 0.25 * math.log(numer / total)
    brevity = 1.0 if len(cand) >= len(ref) else math.exp(1.0 - len(ref) / len(cand))
    return brevity * math.exp(log_sum)


@dataclass
class OverlapScores:
    precision: float
    recall: float
    f1: float


def _prf(matched: int, cand_total: int, ref_total: int) -> OverlapScores:
    p = matched / cand_total if cand_total else 0.0
    r = matched / ref_total if ref_total else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return OverlapScores(precision=p, recall=r, f1=f1)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Classic O(|a| * |b|) longest-common-subsequence length."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0] * (len(b) + 1)
        for j, y in enumerate(b, 1):
            curr[j] = prev[j - 1] + 1 if x == y else max(prev[j], curr[j - 1])
        prev = curr
    return prev[-1]


def rouge(candidate: str, reference: str) -> dict[str, OverlapScores]:
    """rouge1 / rouge2 clipped n-gram overlap and rougeL via LCS."""
    cand = lex_tokens(candidate)
    ref = lex_tokens(reference)
    if not cand or not ref:
        raise DomainError("rouge requires non-empty candidate and reference")
    out: dict[str, OverlapScores] = {}
    for n, name in ((1, "rouge1"), (2, "rouge2")):
        cand_counts = _ngram_counts(cand, n)
        ref_counts = _ngram_counts(ref, n)
        matched = sum(min(cnt, ref_counts[g]) for g, cnt in cand_counts.items())
        out[name] = _prf(matched, max(len(cand) - n + 1, 0), max(len(ref) - n + 1, 0))
    lcs = lcs_length(cand, ref)
    out["rougeL"] = _prf(lcs, len(cand), len(ref))
    return out


def _align_greedy(cand: list[str], ref: list[str]) -> list[tuple[int, int]]:
    """Leftmost-greedy exact unigram alignment (candidate order)."""
    used = [False] * len(ref)
    pairs = []
    for i, tok in enumerate(cand):
        for j, rtok in enumerate(ref):
            if not used[j] and rtok == tok:
                used[j] = True
                pairs.append((i, j))
                break
    return pairs


def _chunk_count(pairs: list[tuple[int, int]]) -> int:
    chunks = 0
    prev = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor_lite(candidate: str, reference: str) -> float:
    """Harmonic unigram score with a fragmentation penalty.

    Exact-match alignment only: no stemming or synonym sets, which keeps
    the metric dependency-free and fully deterministic.
    """
    cand = lex_tokens(candidate)
    ref = lex_tokens(reference)
    if not cand or not ref:
        raise DomainError("meteor requires non-empty candidate and reference")
    pairs = _align_greedy(cand, ref)
    matches = len(pairs)
    if matches == 0:
        return 0.0
    precision = matches / len(cand)
    recall = matches / len(ref)
    f_mean = (
        10.0 * precision * recall / (recall + METEOR_RECALL_WEIGHT * precision)
    )
    chunks = _chunk_count(pairs)
    penalty = METEOR_PENALTY_WEIGHT * (chunks / matches) ** METEOR_PENALTY_POWER
    return f_mean * (1.0 - penalty)


def understanding_scores(candidate: str, reference: str) -> dict[str, float]:
    """All lexical metrics for one candidate/reference pair."""
    r = rouge(candidate, reference)
    return {
        "bleu4": bleu4_smoothed(candidate, reference),
        "rouge1_f1": r["rouge1"].f1,
        "rouge1_recall": r["rouge1"].recall,
        "rouge2_f1": r["rouge2"].f1,
        "rouge2_recall": r["rouge2"].recall,
        "rougeL_f1": r["rougeL"].f1,
        "rougeL_recall": r["rougeL"].recall,
        "meteor": meteor_lite(candidate, reference),
    }
