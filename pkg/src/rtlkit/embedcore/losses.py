"""Contrastive and generative training losses with analytic gradients.

The embedding losses are listwise softmax objectives over cosine
similarities scaled by a temperature: each query is scored against every
in-batch positive (and, in the hard-negative variant, every in-batch
hard negative as well), and the log-likelihood of its own positive is
maximized. Gradients are provided with respect to the raw (unnormalized)
embedding vectors so encoders can chain through them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass
class ContrastiveBatch:
    queries: np.ndarray             # (M, d)
    positives: np.ndarray           # (M, d)
    hard_negatives: np.ndarray | None = None  # (M, d)
    temperature: float = 0.02

    def __post_init__(self) -> None:
        self.queries = np.asarray(self.queries, dtype=np.float64)
        self.positives = np.asarray(self.positives, dtype=np.float64)
        if self.queries.ndim != 2 or self.queries.shape != self.positives.shape:
            raise DomainError("queries and positives must be aligned (M, d) matrices")
        if self.hard_negatives is not None:
            self.hard_negatives = np.asarray(self.hard_negatives, dtype=np.float64)
            if self.hard_negatives.shape != self.queries.shape:
                raise DomainError("hard negatives must align with queries")
        if not self.temperature > 0:
            raise DomainError(f"temperature must be positive, got {self.temperature}")

    @property
    def size(self) -> int:
        return self.queries.shape[0]


def _unit_rows(x: np.ndarray, what: str) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(x, axis=1)
    if np.any(norms == 0):
        raise DomainError(f"zero-norm vector among {what}: cosine undefined")
    return x / norms[:, None], norms


def _logsumexp(z: np.ndarray) -> np.ndarray:
    m = z.max(axis=1, keepdims=True)
    return (m + np.log(np.exp(z - m).sum(axis=1, keepdims=True)))[:, 0]


def loss_emb_no_hard(batch: ContrastiveBatch) -> float:
    """Mean negative log of each query's own positive among all positives."""
    if batch.hard_negatives is not None:
        raise DomainError("batch carries hard negatives; use loss_emb_with_hard")
    u, _ = _unit_rows(batch.queries, "queries")
    v, _ = _unit_rows(batch.positives, "positives")
    z = (u @ v.T) / batch.temperature
    return float(np.mean(_logsumexp(z) - np.diag(z)))


def loss_emb_with_hard(batch: ContrastiveBatch) -> float:
    """Same objective with every hard negative added to the denominator."""
    if batch.hard_negatives is None:
        raise DomainError("batch has no hard negatives; use loss_emb_no_hard")
    u, _ = _unit_rows(batch.queries, "queries")
    v, _ = _unit_rows(batch.positives, "positives")
    w, _ = _unit_rows(batch.hard_negatives, "hard negatives")
    zp = (u @ v.T) / batch.temperature
    zn = (u @ w.T) / batch.temperature
    return float(np.mean(_logsumexp(np.hstack([zp, zn])) - np.diag(zp)))


def loss_generative(predicted: np.ndarray, targets: np.ndarray) -> float:
    """Mean negative log probability of the target token per row.

    Rows must already be probability distributions; a zero probability at
    a target is an error rather than a silently clamped value.
    """
    predicted = np.asarray(predicted, dtype=np.float64)
    targets = np.asarray(targets)
    if predicted.ndim != 2 or predicted.shape[0] < 1:
        raise DomainError("predicted must be an (N, V) matrix")
    if targets.shape != (predicted.shape[0],):
        raise DomainError("targets must align with predicted rows")
    if np.any(np.abs(predicted.sum(axis=1) - 1.0) > 1e-6):
        raise DomainError("each predicted row must sum to 1")
    if np.any((targets < 0) | (targets >= predicted.shape[1])):
        raise DomainError("target ids out of vocabulary range")
    picked = predicted[np.arange(predicted.shape[0]), targets]
    if np.any(picked <= 0.0):
        raise DomainError("zero probability at a target token; smooth upstream")
    return float(-np.mean(np.log(picked)))


def loss_joint_no_hard(batch: ContrastiveBatch, predicted: np.ndarray, targets: np.ndarray) -> float:
    """Embedding loss without hard negatives plus the generative loss."""
    return loss_emb_no_hard(batch) + loss_generative(predicted, targets)


def loss_joint_with_hard(batch: ContrastiveBatch, predicted: np.ndarray, targets: np.ndarray) -> float:
    """Embedding loss with hard negatives plus the generative loss."""
    return loss_emb_with_hard(batch) + loss_generative(predicted, targets)


def _cosine_backward(grad_s: np.ndarray, a: np.ndarray, b: np.ndarray):
    """Backprop d(sum grad_s * cos(a_i, b_j)) into raw a and b rows."""
    ua, na = _unit_rows(a, "left rows")
    ub, nb = _unit_rows(b, "right rows")
    s = ua @ ub.T
    da = (grad_s @ ub - ((grad_s * s).sum(axis=1, keepdims=True)) * ua) / na[:, None]
    db = (grad_s.T @ ua - ((grad_s * s).sum(axis=0)[:, None]) * ub) / nb[:, None]
    return da, db


def grad_emb_no_hard(batch: ContrastiveBatch):
    """Loss value and gradients (d_queries, d_positives)."""
    u, _ = _unit_rows(batch.queries, "queries")
    v, _ = _unit_rows(batch.positives, "positives")
    m = batch.size
    z = (u @ v.T) / batch.temperature
    zmax = z.max(axis=1, keepdims=True)
    ez = np.exp(z - zmax)
    softmax = ez / ez.sum(axis=1, keepdims=True)
    loss = float(np.mean(np.log(ez.sum(axis=1)) + zmax[:, 0] - np.diag(z)))
    grad_s = (softmax - np.eye(m)) / (m * batch.temperature)
    dq, dp = _cosine_backward(grad_s, batch.queries, batch.positives)
    return loss, dq, dp


def grad_emb_with_hard(batch: ContrastiveBatch):
    """Loss value and gradients (d_queries, d_positives, d_negatives)."""
    if batch.hard_negatives is None:
        raise DomainError("batch has no hard negatives")
    u, _ = _unit_rows(batch.queries, "queries")
    v, _ = _unit_rows(batch.positives, "positives")
    w, _ = _unit_rows(batch.hard_negatives, "hard negatives")
    m = batch.size
    zp = (u @ v.T) / batch.temperature
    zn = (u @ w.T) / batch.temperature
    zall = np.hstack([zp, zn])
    zmax = zall.max(axis=1, keepdims=True)
    ez = np.exp(zall - zmax)
    denom = ez.sum(axis=1, keepdims=True)
    softmax = ez / denom
    loss = float(np.mean(np.log(denom[:, 0]) + zmax[:, 0] - np.diag(zp)))
    grad_sp = (softmax[:, :m] - np.eye(m)) / (m * batch.temperature)
    grad_sn = softmax[:, m:] / (m * batch.temperature)
    dq_p, dp = _cosine_backward(grad_sp, batch.queries, batch.positives)
    dq_n, dn = _cosine_backward(grad_sn, batch.queries, batch.hard_negatives)
    return loss, dq_p + dq_n, dp, dn


def grad_generative(predicted_logits: np.ndarray, targets: np.ndarray):
    """Loss and d_logits for softmax rows given raw logits.

    Helper for encoders that produce logits; the public loss_generative
    operates on probability rows and stays clamp-free.
    """
    logits = np.asarray(predicted_logits, dtype=np.float64)
    n = logits.shape[0]
    zmax = logits.max(axis=1, keepdims=True)
    ez = np.exp(logits - zmax)
    probs = ez / ez.sum(axis=1, keepdims=True)
    picked = probs[np.arange(n), targets]
    loss = float(-np.mean(np.log(picked)))
    dlogits = probs.copy()
    dlogits[np.arange(n), targets] -= 1.0
    return loss, dlogits / n
