"""Position-weighted pooling and cosine similarity primitives."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError


@dataclass
class TokenSequence:
    tokens: list[int]
    hidden_states: np.ndarray  # (T, d)

    def __post_init__(self) -> None:
        self.hidden_states = np.asarray(self.hidden_states, dtype=np.float64)
        if self.hidden_states.ndim != 2 or self.hidden_states.shape[0] < 1:
            raise DomainError("hidden_states must be a (T, d) matrix with T >= 1")
        if not np.all(np.isfinite(self.hidden_states)):
            raise DomainError("hidden_states contain non-finite values")


@dataclass
class EmbeddingMatrix:
    rows: np.ndarray  # (n, d)
    normalized: bool = False
    dim: int = field(init=False)
    count: int = field(init=False)

    def __post_init__(self) -> None:
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2:
            raise DomainError("embedding rows must form a 2-D matrix")
        self.count, self.dim = self.rows.shape
        if self.normalized and self.count:
            norms = np.linalg.norm(self.rows, axis=1)
            if np.any(np.abs(norms - 1.0) > 1e-6):
                raise DomainError("normalized flag set but rows are not unit length")

    def normalized_copy(self) -> "EmbeddingMatrix":
        norms = np.linalg.norm(self.rows, axis=1, keepdims=True)
        if np.any(norms == 0):
            raise DomainError("cannot normalize a zero-norm embedding row")
        return EmbeddingMatrix(rows=self.rows / norms, normalized=True)


def position_weights(length: int) -> np.ndarray:
    """Weights t / sum(1..T) for 1-based positions; always sum to 1."""
    if length < 1:
        raise DomainError(f"sequence length must be >= 1, got {length}")
    t = np.arange(1, length + 1, dtype=np.float64)
    return t / t.sum()


def position_weighted_pool(seq: TokenSequence | np.ndarray) -> np.ndarray:
    """Pool token hidden states with weights increasing towards the end."""
    hidden = seq.hidden_states if isinstance(seq, TokenSequence) else np.asarray(seq, float)
    if hidden.ndim != 2 or hidden.shape[0] < 1:
        raise DomainError("pooling expects a (T, d) matrix with T >= 1")
    if not np.all(np.isfinite(hidden)):
        raise DomainError("hidden states contain non-finite values")
    return position_weights(hidden.shape[0]) @ hidden


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise DomainError("cosine similarity is undefined for zero-norm vectors")
    return float(np.dot(a, b) / (na * nb))


def cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All-pairs cosine similarities between rows of a and rows of b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape[1] != b.shape[1]:
        raise DomainError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    na = np.linalg.norm(a, axis=1, keepdims=True)
    nb = np.linalg.norm(b, axis=1, keepdims=True)
    if np.any(na == 0) or np.any(nb == 0):
        raise DomainError("cosine similarity is undefined for zero-norm vectors")
    return (a / na) @ (b / nb).T
