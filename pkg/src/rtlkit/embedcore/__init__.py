"""Numerical core: pooling, contrastive/generative losses, toy encoder."""

from .encoder import (
    ToyEncoderParams,
    emb_loss_and_grad,
    embed_contrastive_batch,
    encode,
    encode_batch,
    gen_loss_and_grad,
    init_toy_params,
    next_token_probs,
    pooled_features,
    text_tokens,
    token_vocab_id,
    toy_encoder,
    train_embedding,
)
from .losses import (
    ContrastiveBatch,
    grad_emb_no_hard,
    grad_emb_with_hard,
    grad_generative,
    loss_emb_no_hard,
    loss_emb_with_hard,
    loss_generative,
    loss_joint_no_hard,
    loss_joint_with_hard,
)
from .pooling import (
    EmbeddingMatrix,
    TokenSequence,
    cosine,
    cosine_matrix,
    position_weighted_pool,
    position_weights,
)
from .vecio import (
    HttpEmbedClient,
    embed_texts_to_file,
    export_jsonl,
    read_embeddings,
    write_embeddings,
)

__all__ = [
    "ContrastiveBatch",
    "EmbeddingMatrix",
    "HttpEmbedClient",
    "TokenSequence",
    "ToyEncoderParams",
    "cosine",
    "cosine_matrix",
    "emb_loss_and_grad",
    "embed_contrastive_batch",
    "embed_texts_to_file",
    "encode",
    "encode_batch",
    "export_jsonl",
    "gen_loss_and_grad",
    "grad_emb_no_hard",
    "grad_emb_with_hard",
    "grad_generative",
    "init_toy_params",
    "loss_emb_no_hard",
    "loss_emb_with_hard",
    "loss_generative",
    "loss_joint_no_hard",
    "loss_joint_with_hard",
    "next_token_probs",
    "pooled_features",
    "position_weighted_pool",
    "position_weights",
    "read_embeddings",
    "text_tokens",
    "token_vocab_id",
    "toy_encoder",
    "train_embedding",
    "write_embeddings",
]
