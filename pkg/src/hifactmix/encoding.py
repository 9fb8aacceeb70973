"""Text -> 768-d embedding providers.

Two interchangeable providers sit behind the same duck-typed surface
(`encode`, `batch_encode`, `dim`, `max_sequence_tokens`):

* `ReferenceEncoder` — a deterministic feature-hashing encoder used for
  tests and offline runs. It is bit-identical across platforms because the
  token hash (FNV-1a 64) is fully specified.
* `RemoteEncoder` — an HTTP client for an out-of-process multilingual
  transformer encoder (the heavy model never runs in this process).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
import requests

from .errors import (
    DegenerateEmbeddingError,
    EmptyTextError,
    ProtocolError,
    RemoteError,
    TransportError,
)
from .text import tokenize_whitespace
from .types import EMBED_DIM

_FNV_OFFSET = 14695981039346656037
_FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1


def fnv1a_64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class EncoderConfig:
    max_sequence_tokens: int = 128
    remote_endpoint: str = ""
    timeout_ms: int = 10_000
    model_name: str = "google/muril-base-cased"
    max_concurrent: int = 8

    def __post_init__(self):
        if self.max_sequence_tokens < 1:
            raise ValueError("max_sequence_tokens must be >= 1")
        if self.timeout_ms < 1:
            raise ValueError("timeout_ms must be >= 1")


class ReferenceEncoder:
    """Bag-of-tokens feature hashing into 768 dimensions, L2-normalized.

    Each token's FNV-1a 64-bit hash picks a coordinate (h mod 768) and a
    sign (+1 if the top hash bit is 0, else -1). Lexically overlapping
    texts therefore land near each other, which is the one property the
    end-to-end pipeline tests rely on.
    """

    def __init__(self, config: EncoderConfig | None = None):
        self.config = config or EncoderConfig()

    @property
    def dim(self) -> int:
        return EMBED_DIM

    @property
    def max_sequence_tokens(self) -> int:
        return self.config.max_sequence_tokens

    def encode(self, text: str) -> np.ndarray:
        if not text.strip():
            raise EmptyTextError("cannot encode empty text")
        tokens = tokenize_whitespace(text)[: self.config.max_sequence_tokens]
        v = np.zeros(EMBED_DIM, dtype=np.float64)
        for tok in tokens:
            h = fnv1a_64(tok.encode("utf-8"))
            sign = 1.0 if (h >> 63) == 0 else -1.0
            v[h % EMBED_DIM] += sign
        norm = float(np.sqrt(np.dot(v, v)))
        if norm == 0.0:
            raise DegenerateEmbeddingError(
                f"text hashed to the zero vector: {text[:60]!r}"
            )
        return v / norm

    def batch_encode(self, texts: list[str]) -> list[np.ndarray]:
        return batch_encode(texts, self)


class RemoteEncoder:
    """Client for the remote embedding service.

    Protocol: POST {"texts": [string...]} -> {"embeddings": [[float x 768]...]}.
    Pooling and sequence handling are the server's concern; this client only
    enforces the shape contract. In-flight requests are capped by a
    semaphore so the provider is safe to share across threads.
    """

    def __init__(self, config: EncoderConfig):
        if not config.remote_endpoint:
            raise ValueError("remote_endpoint must be configured")
        self.config = config
        self._gate = threading.Semaphore(config.max_concurrent)
        self._session = requests.Session()

    @property
    def dim(self) -> int:
        return EMBED_DIM

    @property
    def max_sequence_tokens(self) -> int:
        return self.config.max_sequence_tokens

    def _post(self, texts: list[str]) -> list[np.ndarray]:
        timeout = self.config.timeout_ms / 1000.0
        with self._gate:
            try:
                resp = self._session.post(
                    self.config.remote_endpoint,
                    json={"texts": texts},
                    timeout=timeout,
                )
            except requests.RequestException as e:
                raise TransportError(f"embedding request failed: {e}") from e
        if not (200 <= resp.status_code < 300):
            raise RemoteError(resp.status_code, resp.text)
        try:
            payload = resp.json()
        except ValueError:
            raise ProtocolError("embedding response is not JSON") from None
        embs = payload.get("embeddings") if isinstance(payload, dict) else None
        if not isinstance(embs, list) or len(embs) != len(texts):
            raise ProtocolError(
                f"expected {len(texts)} embeddings, got "
                f"{len(embs) if isinstance(embs, list) else type(embs).__name__}"
            )
        out = []
        for row in embs:
            if not isinstance(row, list) or len(row) != EMBED_DIM:
                got = len(row) if isinstance(row, list) else -1
                raise ProtocolError(f"dimension {got} != {EMBED_DIM}")
            vec = np.asarray(row, dtype=np.float64)
            if not np.all(np.isfinite(vec)):
                raise ProtocolError("embedding contains non-finite values")
            out.append(vec)
        return out

    def encode(self, text: str) -> np.ndarray:
        if not text.strip():
            raise EmptyTextError("cannot encode empty text")
        return self._post([text])[0]

    def batch_encode(self, texts: list[str]) -> list[np.ndarray]:
        if not texts:
            return []
        for i, t in enumerate(texts):
            if not t.strip():
                raise EmptyTextError(f"empty text at index {i}")
        return self._post(list(texts))


def batch_encode(texts: list[str], provider) -> list[np.ndarray]:
    """Order-preserving batch encode, element-wise identical to single
    calls; a failure is re-raised annotated with the offending index."""
    out = []
    for i, t in enumerate(texts):
        try:
            out.append(provider.encode(t))
        except Exception as e:
            try:
                annotated = type(e)(f"text at index {i}: {e}")
            except TypeError:
                # error classes with structured constructors keep their shape
                annotated = e
            raise annotated from e
    return out
