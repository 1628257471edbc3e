"""Deterministic toy text encoder with analytic parameter gradients.

A desk-scale stand-in for a large embedding backbone: tokens are hashed
character-trigram count vectors, a linear projection maps them to hidden
states, and sentence embeddings come from position-weighted pooling. A
small language-model head over a hashed token vocabulary supplies the
generative side, so every loss in this package can be differentiated end
to end against the same parameter set.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .losses import (
    ContrastiveBatch,
    grad_emb_no_hard,
    grad_emb_with_hard,
    grad_generative,
)
from .pooling import EmbeddingMatrix, TokenSequence, position_weights

DEFAULT_DIM = 64
DEFAULT_FEATURES = 2048
DEFAULT_VOCAB = 128


@dataclass
class ToyEncoderParams:
    projection: np.ndarray  # (d, F)
    lm_head: np.ndarray     # (V, d)

    def __post_init__(self) -> None:
        self.projection = np.asarray(self.projection, dtype=np.float64)
        self.lm_head = np.asarray(self.lm_head, dtype=np.float64)
        if self.projection.ndim != 2 or self.lm_head.ndim != 2:
            raise DomainError("projection and lm_head must be matrices")
        if self.lm_head.shape[1] != self.projection.shape[0]:
            raise DomainError("lm_head width must equal projection height")

    @property
    def dim(self) -> int:
        return self.projection.shape[0]

    @property
    def num_features(self) -> int:
        return self.projection.shape[1]

    @property
    def vocab(self) -> int:
        return self.lm_head.shape[0]

    def copy(self) -> "ToyEncoderParams":
        return ToyEncoderParams(self.projection.copy(), self.lm_head.copy())


def init_toy_params(
    seed: int = 0,
    dim: int = DEFAULT_DIM,
    num_features: int = DEFAULT_FEATURES,
    vocab: int = DEFAULT_VOCAB,
) -> ToyEncoderParams:
    rng = np.random.default_rng(seed)
    projection = rng.normal(0.0, 1.0 / np.sqrt(num_features), size=(dim, num_features))
    lm_head = rng.normal(0.0, 1.0 / np.sqrt(dim), size=(vocab, dim))
    return ToyEncoderParams(projection, lm_head)


def _stable_hash(data: str) -> int:
    return int.from_bytes(hashlib.blake2b(data.encode("utf-8"), digest_size=8).digest(), "little")


def text_tokens(text: str) -> list[str]:
    tokens = text.split()
    if not tokens:
        raise DomainError("cannot encode empty text")
    return tokens


def token_vocab_id(token: str, vocab: int) -> int:
    return _stable_hash("tok\x1f" + token) % vocab


def token_feature_vector(token: str, num_features: int) -> np.ndarray:
    """Hashed counts of the character trigrams of the padded token."""
    padded = "\x02" + token + "\x03"
    vec = np.zeros(num_features, dtype=np.float64)
    for i in range(len(padded) - 2):
        vec[_stable_hash("3g\x1f" + padded[i : i + 3]) % num_features] += 1.0
    return vec


def sequence_features(text: str, num_features: int) -> np.ndarray:
    """(T, F) feature matrix; parameter-independent, so cacheable."""
    return np.stack([token_feature_vector(t, num_features) for t in text_tokens(text)])


def pooled_features(text: str, num_features: int) -> np.ndarray:
    """Position-weighted pooled feature vector of a text."""
    feats = sequence_features(text, num_features)
    return position_weights(feats.shape[0]) @ feats


def toy_encoder(text: str, params: ToyEncoderParams) -> TokenSequence:
    """Tokenize and project a text into per-token hidden states."""
    tokens = text_tokens(text)
    feats = sequence_features(text, params.num_features)
    return TokenSequence(
        tokens=[token_vocab_id(t, params.vocab) for t in tokens],
        hidden_states=feats @ params.projection.T,
    )


def encode(text: str, params: ToyEncoderParams) -> np.ndarray:
    """Sentence embedding: projection of the pooled feature vector."""
    return params.projection @ pooled_features(text, params.num_features)


def encode_batch(texts: list[str], params: ToyEncoderParams, normalize: bool = False) -> EmbeddingMatrix:
    rows = np.stack([encode(t, params) for t in texts])
    matrix = EmbeddingMatrix(rows=rows)
    return matrix.normalized_copy() if normalize else matrix


def next_token_probs(text: str, params: ToyEncoderParams):
    """Softmax rows predicting each following token, with target ids.

    Texts shorter than two tokens have no next-token positions.
    """
    seq = toy_encoder(text, params)
    if len(seq.tokens) < 2:
        return np.zeros((0, params.vocab)), np.zeros(0, dtype=np.int64)
    logits = seq.hidden_states[:-1] @ params.lm_head.T
    zmax = logits.max(axis=1, keepdims=True)
    ez = np.exp(logits - zmax)
    probs = ez / ez.sum(axis=1, keepdims=True)
    return probs, np.asarray(seq.tokens[1:], dtype=np.int64)


def _pooled_matrix(texts: list[str], num_features: int) -> np.ndarray:
    return np.stack([pooled_features(t, num_features) for t in texts])


def embed_contrastive_batch(
    queries: list[str],
    positives: list[str],
    params: ToyEncoderParams,
    hard_negatives: list[str] | None = None,
    temperature: float = 0.02,
) -> ContrastiveBatch:
    return ContrastiveBatch(
        queries=np.stack([encode(t, params) for t in queries]),
        positives=np.stack([encode(t, params) for t in positives]),
        hard_negatives=(
            None
            if hard_negatives is None
            else np.stack([encode(t, params) for t in hard_negatives])
        ),
        temperature=temperature,
    )


def emb_loss_and_grad(
    params: ToyEncoderParams,
    queries: list[str],
    positives: list[str],
    hard_negatives: list[str] | None = None,
    temperature: float = 0.02,
):
    """Embedding loss and its gradient with respect to the projection."""
    psi_q = _pooled_matrix(queries, params.num_features)
    psi_p = _pooled_matrix(positives, params.num_features)
    batch = ContrastiveBatch(
        queries=psi_q @ params.projection.T,
        positives=psi_p @ params.projection.T,
        hard_negatives=(
            None
            if hard_negatives is None
            else _pooled_matrix(hard_negatives, params.num_features) @ params.projection.T
        ),
        temperature=temperature,
    )
    if hard_negatives is None:
        loss, dq, dp = grad_emb_no_hard(batch)
        d_proj = dq.T @ psi_q + dp.T @ psi_p
    else:
        psi_n = _pooled_matrix(hard_negatives, params.num_features)
        loss, dq, dp, dn = grad_emb_with_hard(batch)
        d_proj = dq.T @ psi_q + dp.T @ psi_p + dn.T @ psi_n
    return loss, d_proj


def gen_loss_and_grad(params: ToyEncoderParams, texts: list[str]):
    """Next-token loss over all texts plus gradients for both matrices."""
    feats_in: list[np.ndarray] = []
    targets: list[int] = []
    for text in texts:
        tokens = text_tokens(text)
        if len(tokens) < 2:
            continue
        feats = sequence_features(text, params.num_features)
        feats_in.append(feats[:-1])
        targets.extend(token_vocab_id(t, params.vocab) for t in tokens[1:])
    if not targets:
        raise DomainError("no next-token positions: every text has fewer than 2 tokens")
    phi = np.vstack(feats_in)
    tgt = np.asarray(targets, dtype=np.int64)
    hidden = phi @ params.projection.T
    logits = hidden @ params.lm_head.T
    loss, dlogits = grad_generative(logits, tgt)
    d_head = dlogits.T @ hidden
    d_proj = (dlogits @ params.lm_head).T @ phi
    return loss, d_proj, d_head


def train_embedding(
    params: ToyEncoderParams,
    queries: list[str],
    positives: list[str],
    hard_negatives: list[str] | None = None,
    steps: int = 200,
    learning_rate: float = 0.5,
    temperature: float = 0.02,
):
    """Plain gradient descent on the embedding loss; returns loss history."""
    current = params.copy()
    history: list[float] = []
    for _ in range(steps):
        loss, d_proj = emb_loss_and_grad(
            current, queries, positives, hard_negatives, temperature
        )
        history.append(loss)
        current.projection = current.projection - learning_rate * d_proj
    final_loss, _ = emb_loss_and_grad(current, queries, positives, hard_negatives, temperature)
    history.append(final_loss)
    return current, history
