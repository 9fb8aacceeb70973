"""Evaluation metrics: accuracy, macro-F1, ROUGE-L, and BLEU.

All functions are pure. Text metrics tokenize with the shared whitespace
tokenizer so the whole system counts tokens one way.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import EmptyInputError, LengthMismatchError
from .text import tokenize_whitespace
from .types import VeracityLabel


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class BleuConfig:
    max_n: int = 4
    smoothing_epsilon: float = 0.0

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.smoothing_epsilon < 0:
            raise ValueError("smoothing_epsilon must be non-negative")


def _check_pair(gold, pred):
    if len(gold) != len(pred):
        raise LengthMismatchError(f"gold has {len(gold)} items, pred has {len(pred)}")
    if not gold:
        raise EmptyInputError("label lists must be non-empty")


def accuracy(gold: list[VeracityLabel], pred: list[VeracityLabel]) -> float:
    _check_pair(gold, pred)
    return sum(1 for g, p in zip(gold, pred) if g == p) / len(gold)


def macro_f1(
    gold: list[VeracityLabel],
    pred: list[VeracityLabel],
) -> tuple[float, dict[VeracityLabel, tuple[float, float, float]]]:
    """Per-class precision/recall/F1 plus their unweighted mean.

    Classes with zero gold support are reported per-class but excluded from
    the macro average, so a small evaluation slice is not penalized for
    labels that simply do not occur in it.
    """
    _check_pair(gold, pred)
    per_class: dict[VeracityLabel, tuple[float, float, float]] = {}
    averaged = []
    for label in VeracityLabel:
        tp = sum(1 for g, p in zip(gold, pred) if g == label and p == label)
        fp = sum(1 for g, p in zip(gold, pred) if g != label and p == label)
        fn = sum(1 for g, p in zip(gold, pred) if g == label and p != label)
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        per_class[label] = (prec, rec, f1)
        if tp + fn:  # label appears in gold
            averaged.append(f1)
    macro = sum(averaged) / len(averaged) if averaged else 0.0
    return macro, per_class


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, O(|a|*|b|) time, one-row space."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> RougeScore:
    """LCS-based ROUGE with beta=1: precision over the candidate length,
    recall over the reference length, plain harmonic mean."""
    cand = tokenize_whitespace(candidate)
    ref = tokenize_whitespace(reference)
    l = lcs_length(cand, ref)
    prec = l / len(cand) if cand else 0.0
    rec = l / len(ref) if ref else 0.0
    f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
    return RougeScore(precision=prec, recall=rec, f1=f1)


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: str, reference: str, config: BleuConfig | None = None) -> float:
    """Sentence-level BLEU: geometric mean of clipped n-gram precisions with
    brevity penalty. Unsmoothed by default (any zero precision zeroes the
    score); with epsilon smoothing, p_n is floored at eps / candidate-count.
    """
    config = config or BleuConfig()
    cand = tokenize_whitespace(candidate)
    ref = tokenize_whitespace(reference)
    if not cand:
        return 0.0
    log_sum = 0.0
    for n in range(1, config.max_n + 1):
        cand_counts = _ngrams(cand, n)
        total = sum(cand_counts.values())
        if total == 0:
            return 0.0  # candidate shorter than n: no n-grams to score
        ref_counts = _ngrams(ref, n)
        clipped = sum(min(c, ref_counts[g]) for g, c in cand_counts.items())
        p = clipped / total
        if p == 0.0:
            if config.smoothing_epsilon == 0.0:
                return 0.0
            p = config.smoothing_epsilon / total
        log_sum += math.log(p) / config.max_n
    c, r = len(cand), len(ref)
    bp = 1.0 if c > r else math.exp(1.0 - r / c)
    return bp * math.exp(log_sum)


def corpus_bleu(
    candidates: list[str],
    references: list[str],
    config: BleuConfig | None = None,
) -> float:
    """Corpus-level BLEU: n-gram counts pooled over all pairs, one brevity
    penalty from the total lengths."""
    config = config or BleuConfig()
    if len(candidates) != len(references):
        raise LengthMismatchError(
            f"{len(candidates)} candidates vs {len(references)} references"
        )
    total_c = total_r = 0
    clipped_by_n = [0] * config.max_n
    count_by_n = [0] * config.max_n
    for cand_text, ref_text in zip(candidates, references):
        cand = tokenize_whitespace(cand_text)
        ref = tokenize_whitespace(ref_text)
        total_c += len(cand)
        total_r += len(ref)
        for n in range(1, config.max_n + 1):
            cand_counts = _ngrams(cand, n)
            ref_counts = _ngrams(ref, n)
            count_by_n[n - 1] += sum(cand_counts.values())
            clipped_by_n[n - 1] += sum(
                min(c, ref_counts[g]) for g, c in cand_counts.items()
            )
    if total_c == 0:
        return 0.0
    log_sum = 0.0
    for n in range(config.max_n):
        if count_by_n[n] == 0:
            return 0.0
        p = clipped_by_n[n] / count_by_n[n]
        if p == 0.0:
            if config.smoothing_epsilon == 0.0:
                return 0.0
            p = config.smoothing_epsilon / count_by_n[n]
        log_sum += math.log(p) / config.max_n
    bp = 1.0 if total_c > total_r else math.exp(1.0 - total_r / total_c)
    return bp * math.exp(log_sum)
