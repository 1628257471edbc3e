"""MinHash signatures over token shingles and greedy near-duplicate removal.

Each of the seeded hash slots applies a multiply-add permutation (odd
multiplier, wrap-around modulo 2**64) to a stable 64-bit base hash of
every width-w token shingle and keeps the minimum. The fraction of equal
slots between two signatures estimates the Jaccard similarity of the
underlying shingle sets.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .segment import VerilogModule
from .tokenize import tokenize

PAD_TOKEN = "\x00pad"


@dataclass
class ShingleSignature:
    module_id: str
    num_hashes: int
    shingle_width: int
    signature: np.ndarray  # uint64, length num_hashes

    def __post_init__(self) -> None:
        self.signature = np.asarray(self.signature, dtype=np.uint64)
        if self.signature.shape != (self.num_hashes,):
            raise DomainError(
                f"signature length {self.signature.shape} != num_hashes {self.num_hashes}"
            )


def shingle_set(tokens: list[str], width: int) -> set[tuple[str, ...]]:
    """All width-w consecutive token windows, padded when too short."""
    if width < 1:
        raise DomainError(f"shingle_width must be >= 1, got {width}")
    toks = list(tokens)
    if len(toks) < width:
        toks = toks + [PAD_TOKEN] * (width - len(toks))
    return {tuple(toks[i : i + width]) for i in range(len(toks) - width + 1)}


def _shingle_hashes(shingles: set[tuple[str, ...]]) -> np.ndarray:
    out = np.empty(len(shingles), dtype=np.uint64)
    for i, sh in enumerate(sorted(shingles)):
        digest = hashlib.blake2b("\x1f".join(sh).encode("utf-8"), digest_size=8).digest()
        out[i] = int.from_bytes(digest, "little")
    return out


def _permutation_params(num_hashes: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    a = rng.integers(1, 2**64, size=num_hashes, dtype=np.uint64) | np.uint64(1)
    b = rng.integers(0, 2**64, size=num_hashes, dtype=np.uint64)
    return a, b


def minhash_signature(
    module: VerilogModule,
    num_hashes: int = 128,
    shingle_width: int = 5,
    seed: int = 0,
) -> ShingleSignature:
    """Seeded MinHash signature of the module's token shingles."""
    if num_hashes < 1:
        raise DomainError(f"num_hashes must be >= 1, got {num_hashes}")
    shingles = shingle_set(tokenize(module.source_text), shingle_width)
    hashes = _shingle_hashes(shingles)
    a, b = _permutation_params(num_hashes, seed)
    # (n_shingles, num_hashes) permuted values; uint64 wrap-around is intended
    with np.errstate(over="ignore"):
        permuted = hashes[:, None] * a[None, :] + b[None, :]
    return ShingleSignature(
        module_id=module.id,
        num_hashes=num_hashes,
        shingle_width=shingle_width,
        signature=permuted.min(axis=0),
    )


def estimated_jaccard(a: ShingleSignature, b: ShingleSignature) -> float:
    """Fraction of matching signature slots."""
    if a.num_hashes != b.num_hashes or a.shingle_width != b.shingle_width:
        raise DomainError("signatures were built with different parameters")
    return float(np.mean(a.signature == b.signature))


def exact_jaccard(tokens_a: list[str], tokens_b: list[str], width: int) -> float:
    """Brute-force Jaccard of the two shingle sets (oracle-grade, O(n))."""
    sa = shingle_set(tokens_a, width)
    sb = shingle_set(tokens_b, width)
    union = len(sa | sb)
    return len(sa & sb) / union if union else 1.0


@dataclass
class DedupResult:
    kept_ids: list[str]
    dropped_ids: list[str]
    drops: list[dict]  # {id, duplicate_of, estimated_jaccard}

    def to_report(self, jaccard_threshold: float) -> dict:
        return {
            "jaccard_threshold": jaccard_threshold,
            "kept": len(self.kept_ids),
            "dropped": len(self.dropped_ids),
            "kept_ids": self.kept_ids,
            "drops": self.drops,
        }


def dedup(corpus: list[ShingleSignature], jaccard_threshold: float = 0.85) -> DedupResult:
    """Greedy first-wins scan: drop anything too close to an earlier keeper.

    Deterministic given input order; a module is dropped iff its estimated
    Jaccard with any already-kept module reaches the threshold.
    """
    if not 0.0 < jaccard_threshold <= 1.0:
        raise DomainError(f"jaccard_threshold must lie in (0, 1], got {jaccard_threshold}")
    kept: list[ShingleSignature] = []
    result = DedupResult(kept_ids=[], dropped_ids=[], drops=[])
    for sig in corpus:
        duplicate_of = None
        est = 0.0
        for other in kept:
            est = estimated_jaccard(sig, other)
            if est >= jaccard_threshold:
                duplicate_of = other.module_id
                break
        if duplicate_of is None:
            kept.append(sig)
            result.kept_ids.append(sig.module_id)
        else:
            result.dropped_ids.append(sig.module_id)
            result.drops.append(
                {
                    "id": sig.module_id,
                    "duplicate_of": duplicate_of,
                    "estimated_jaccard": est,
                }
            )
    return result
