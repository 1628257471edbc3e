"""Binary embedding file format plus an HTTP embedding-service client.

Layout: magic ``RTE2``, version u16 LE, dim u32 LE, count u64 LE, then
count x dim float32 values, little-endian, row-major.
"""

from __future__ import annotations

import json
import struct
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import requests

from ..errors import DomainError, InfrastructureError
from .pooling import EmbeddingMatrix

MAGIC = b"RTE2"
VERSION = 1
_HEADER = struct.Struct("<4sHIQ")


def write_embeddings(path: str | Path, matrix: EmbeddingMatrix) -> None:
    rows = np.ascontiguousarray(matrix.rows, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, matrix.dim, matrix.count))
        fh.write(rows.tobytes())


def read_embeddings(path: str | Path) -> EmbeddingMatrix:
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"embedding file not found: {path}")
    blob = path.read_bytes()
    if len(blob) < _HEADER.size:
        raise DomainError(f"truncated embedding file: {path}")
    magic, version, dim, count = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise DomainError(f"bad magic in {path}: {magic!r}")
    if version != VERSION:
        raise DomainError(f"unsupported embedding format version {version}")
    expected = _HEADER.size + 4 * dim * count
    if len(blob) != expected:
        raise DomainError(f"embedding file size mismatch: {len(blob)} != {expected}")
    rows = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size).reshape(count, dim)
    rows = rows.astype(np.float64)
    norms = np.linalg.norm(rows, axis=1) if count else np.zeros(0)
    normalized = bool(count) and bool(np.all(np.abs(norms - 1.0) <= 1e-6))
    return EmbeddingMatrix(rows=rows, normalized=normalized)


def export_jsonl(path: str | Path, matrix: EmbeddingMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(matrix.count):
            fh.write(json.dumps({"index": i, "vector": matrix.rows[i].tolist()}) + "\n")


@dataclass
class HttpEmbedClient:
    """Client for an embedding endpoint returning float arrays.

    Request: ``{"model", "input"}``; response: ``{"data": [{"embedding":
    [...]}, ...]}`` in input order. transport is injectable for tests.
    """

    endpoint: str
    model: str
    timeout: float = 30.0
    max_retries: int = 3
    backoff: float = 0.5
    transport: Callable | None = None

    def embed(self, texts: list[str]) -> list[list[float]]:
        post = self.transport or requests.post
        payload = {"model": self.model, "input": list(texts)}
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            try:
                resp = post(self.endpoint, json=payload, timeout=self.timeout)
                status = getattr(resp, "status_code", 200)
                if status >= 500 or status == 429:
                    raise InfrastructureError(f"embedding service returned {status}")
                body = resp.json()
                vectors = [item["embedding"] for item in body["data"]]
                if len(vectors) != len(texts):
                    raise DomainError(
                        f"embedding service returned {len(vectors)} vectors for {len(texts)} inputs"
                    )
                return vectors
            except DomainError:
                raise
            except Exception as exc:  # transport and shape failures are retryable
                last_error = exc
                if attempt < self.max_retries:
                    time.sleep(self.backoff * (2**attempt))
        raise InfrastructureError(f"embedding service failed after retries: {last_error}")


def embed_texts_to_file(texts: list[str], client, path: str | Path) -> EmbeddingMatrix:
    """Fetch embeddings for texts and persist them in the binary format."""
    vectors = client.embed(texts)
    matrix = EmbeddingMatrix(rows=np.asarray(vectors, dtype=np.float64))
    write_embeddings(path, matrix)
    return matrix
