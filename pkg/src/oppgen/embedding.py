"""Text embeddings with a pluggable provider and deterministic fallback.

Vectors are numpy float32 arrays, unit-normalized at creation. The
fallback embedder hashes character 3-5-grams into a fixed number of
buckets with a seeded keyed hash, so it is fully deterministic and needs
no model weights. A remote provider can be configured instead; it is
called over HTTP in batches with bounded parallelism.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from typing import Protocol, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyInput, EmptyText, ProviderUnavailable, ZeroVector

DEFAULT_DIMENSION = 384
NORM_TOLERANCE = 1e-6
_BATCH_SIZE = 64


class Embedder(Protocol):
    dimension: int
    provider_id: str

    def embed(self, texts: Sequence[str]) -> np.ndarray: ...


def _normalize_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    if np.any(norms == 0):
        raise ZeroVector("embedding has zero norm")
    return (matrix / norms).astype(np.float32)


def _check_texts(texts: Sequence[str]) -> None:
    for i, t in enumerate(texts):
        if not t:
            raise EmptyText(f"text at position {i} is empty")


class FallbackEmbedder:
    """Seeded feature-hashing embedder over character 3-5-grams.

    The same text always maps to the same unit vector for a given seed
    and dimension. Texts are lowercased and wrapped in sentinel bytes so
    one-character inputs still produce at least one n-gram.
    """

    def __init__(self, dimension: int = DEFAULT_DIMENSION, seed: int = 0) -> None:
        self.dimension = dimension
        self.seed = seed
        self.provider_id = f"fallback-hash-d{dimension}-s{seed}"
        self._key = seed.to_bytes(8, "little", signed=True)
        self._memo: dict[str, tuple[int, int]] = {}

    def _slot(self, gram: str) -> tuple[int, int]:
        hit = self._memo.get(gram)
        if hit is not None:
            return hit
        digest = hashlib.blake2b(gram.encode("utf-8"), key=self._key, digest_size=8).digest()
        value = int.from_bytes(digest, "little")
        slot = (value >> 1) % self.dimension, 1 if value & 1 else -1
        if len(self._memo) < 2_000_000:
            self._memo[gram] = slot
        return slot

    def embed_one(self, text: str) -> np.ndarray:
        if not text:
            raise EmptyText("cannot embed empty text")
        wrapped = "\x02" + text.lower() + "\x03"
        vec = np.zeros(self.dimension, dtype=np.float64)
        for size in (3, 4, 5):
            for i in range(len(wrapped) - size + 1):
                bucket, sign = self._slot(wrapped[i : i + size])
                vec[bucket] += sign
        norm = np.linalg.norm(vec)
        if norm == 0:
            # pathological hash cancellation; fall back to a basis vector
            bucket, _ = self._slot(wrapped)
            vec[bucket] = 1.0
            norm = 1.0
        return (vec / norm).astype(np.float32)

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        _check_texts(texts)
        if len(texts) == 0:
            return np.zeros((0, self.dimension), dtype=np.float32)
        return np.vstack([self.embed_one(t) for t in texts])


class HttpEmbedder:
    """Remote embedding provider: POST {"texts": [...]} -> {"vectors": [[...]]}."""

    def __init__(
        self,
        endpoint: str,
        dimension: int = DEFAULT_DIMENSION,
        max_parallel: int = 4,
        timeout: float = 60.0,
    ) -> None:
        self.endpoint = endpoint
        self.dimension = dimension
        self.max_parallel = max_parallel
        self.timeout = timeout
        self.provider_id = f"http:{endpoint}"

    def _post_batch(self, batch: list[str]) -> np.ndarray:
        import requests

        try:
            resp = requests.post(
                self.endpoint, json={"texts": batch}, timeout=self.timeout
            )
            resp.raise_for_status()
            vectors = resp.json()["vectors"]
        except Exception as exc:  # network, HTTP or payload shape
            raise ProviderUnavailable(f"embedding provider failed: {exc}") from exc
        matrix = np.asarray(vectors, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape != (len(batch), self.dimension):
            raise ProviderUnavailable(
                f"provider returned shape {matrix.shape}, "
                f"expected ({len(batch)}, {self.dimension})"
            )
        return _normalize_rows(matrix)

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        _check_texts(texts)
        if len(texts) == 0:
            return np.zeros((0, self.dimension), dtype=np.float32)
        batches = [
            list(texts[i : i + _BATCH_SIZE]) for i in range(0, len(texts), _BATCH_SIZE)
        ]
        if len(batches) == 1:
            return self._post_batch(batches[0])
        with ThreadPoolExecutor(max_workers=self.max_parallel) as pool:
            parts = list(pool.map(self._post_batch, batches))
        return np.vstack(parts)


def cosine_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - u.v for unit vectors; symmetric, in [0, 2]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatch(f"shapes {u.shape} and {v.shape} differ")
    return float(np.clip(1.0 - float(np.dot(u, v)), 0.0, 2.0))


def centroid(vectors: Sequence[np.ndarray] | np.ndarray) -> np.ndarray:
    """Component-wise mean of unit vectors, re-normalized to unit length."""
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.size == 0:
        raise EmptyInput("centroid of an empty set is undefined")
    if matrix.ndim == 1:
        matrix = matrix[None, :]
    mean = matrix.mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm < 1e-12:
        raise ZeroVector("mean vector has zero norm")
    return (mean / norm).astype(np.float32)


def is_unit(v: np.ndarray, tol: float = NORM_TOLERANCE) -> bool:
    return bool(abs(float(np.linalg.norm(np.asarray(v, dtype=np.float64))) - 1.0) <= tol)
