"""Embedding-benchmark evaluators: bitext mining and pair classification."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DomainError
from ..embedcore.pooling import EmbeddingMatrix, cosine_matrix


@dataclass
class LabeledPair:
    similarity: float
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise DomainError(f"label must be 0 or 1, got {self.label}")
        if not math.isfinite(self.similarity):
            raise DomainError("similarity must be finite")


def _rows(matrix: EmbeddingMatrix | np.ndarray) -> np.ndarray:
    return matrix.rows if isinstance(matrix, EmbeddingMatrix) else np.asarray(matrix, float)


def bitext_mine(
    queries: EmbeddingMatrix | np.ndarray,
    candidates: EmbeddingMatrix | np.ndarray,
    gold: dict[int, int],
) -> dict:
    """Nearest-candidate retrieval scored against a gold alignment.

    Every query predicts its highest-cosine candidate (lowest index wins
    ties). Precision counts correct predictions over predictions made,
    recall over gold pairs.
    """
    q = _rows(queries)
    c = _rows(candidates)
    if q.shape[0] < 1 or c.shape[0] < 1:
        raise DomainError("bitext mining needs at least one query and one candidate")
    if not gold:
        raise DomainError("gold alignment is empty")
    if len(set(gold.values())) != len(gold):
        raise DomainError("gold alignment must be injective")
    for qi, ci in gold.items():
        if not (0 <= qi < q.shape[0] and 0 <= ci < c.shape[0]):
            raise DomainError(f"gold pair ({qi}, {ci}) out of range")
    sims = cosine_matrix(q, c)
    predictions = np.argmax(sims, axis=1)
    correct = sum(1 for qi, ci in gold.items() if predictions[qi] == ci)
    precision = correct / q.shape[0]
    recall = correct / len(gold)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return {
        "f1": f1,
        "precision": precision,
        "recall": recall,
        "predictions": predictions.tolist(),
    }


def _sweep_thresholds(similarities: list[float]) -> list[float]:
    """Midpoints between consecutive distinct sorted similarities, plus infinities."""
    distinct = sorted(set(similarities))
    thresholds = [-math.inf]
    for a, b in zip(distinct, distinct[1:]):
        thresholds.append((a + b) / 2.0)
    thresholds.append(math.inf)
    return thresholds


def _counts_at(pairs: list[LabeledPair], threshold: float) -> tuple[int, int, int, int]:
    tp = fp = tn = fn = 0
    for pair in pairs:
        predicted = pair.similarity >= threshold
        if predicted and pair.label == 1:
            tp += 1
        elif predicted and pair.label == 0:
            fp += 1
        elif not predicted and pair.label == 0:
            tn += 1
        else:
            fn += 1
    return tp, fp, tn, fn


def average_precision(pairs: list[LabeledPair]) -> float:
    """Step-wise area under the precision-recall curve.

    Pairs are ranked by descending similarity with ties kept in input
    order; terms accumulate sequentially so results are reproducible
    bit for bit.
    """
    if not pairs:
        raise DomainError("no pairs")
    total_pos = sum(p.label for p in pairs)
    if total_pos == 0:
        raise DomainError("average precision needs at least one positive pair")
    order = sorted(range(len(pairs)), key=lambda i: -pairs[i].similarity)
    ap = 0.0
    tp = 0
    prev_recall = 0.0
    for rank, idx in enumerate(order, 1):
        if pairs[idx].label == 1:
            tp += 1
        recall = tp / total_pos
        if recall > prev_recall:
            ap += (recall - prev_recall) * (tp / rank)
        prev_recall = recall
    return ap


def pair_classification(pairs: list[LabeledPair]) -> dict:
    """Threshold-swept binary classification over similarity scores.

    Reports the best-accuracy operating point, the best-F1 operating
    point with its precision/recall, and average precision. Threshold
    metrics require both classes to be present.
    """
    if not pairs:
        raise DomainError("no pairs")
    n_pos = sum(p.label for p in pairs)
    if n_pos == 0 or n_pos == len(pairs):
        raise DomainError("threshold metrics need at least one pair of each class")

    best_acc = -1.0
    best_acc_threshold = None
    best_f1 = -1.0
    best_f1_threshold = None
    best_f1_precision = 0.0
    best_f1_recall = 0.0
    for threshold in _sweep_thresholds([p.similarity for p in pairs]):
        tp, fp, tn, fn = _counts_at(pairs, threshold)
        accuracy = (tp + tn) / len(pairs)
        if accuracy > best_acc:
            best_acc = accuracy
            best_acc_threshold = threshold
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        if f1 > best_f1:
            best_f1 = f1
            best_f1_threshold = threshold
            best_f1_precision = precision
            best_f1_recall = recall

    return {
        "average_precision": average_precision(pairs),
        "accuracy": best_acc,
        "accuracy_threshold": best_acc_threshold,
        "f1": best_f1,
        "f1_threshold": best_f1_threshold,
        "precision": best_f1_precision,
        "recall": best_f1_recall,
    }


def read_labeled_pairs(path: str | Path) -> list[LabeledPair]:
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"pairs file not found: {path}")
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                pairs.append(LabeledPair(float(raw["similarity"]), int(raw["label"])))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise DomainError(f"{path}:{line_no}: bad labeled pair: {exc}") from exc
    return pairs
