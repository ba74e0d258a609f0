"""Bundled similarity backends.

Exact-match and token-Jaccard stand in for the embedding model in unit
tests; the hashed backend gives smooth deterministic scores for sweep
tests. The HTTP backend talks to an embedding service exposing
``POST /embed {texts} -> {vectors, dim, model_id}`` with unit-normalized
vectors, so a plain dot product is the cosine.
"""

from __future__ import annotations

import hashlib
import os
import re
from typing import Optional, Sequence

import httpx
import numpy as np


class ExactMatchBackend:
    """1.0 if the strings are equal, else 0.0."""

    backend_id = "exact"

    def score(self, a: str, b: str) -> float:
        return 1.0 if a == b else 0.0


_TOKEN_RE = re.compile(r"[a-z0-9]+")


class TokenJaccardBackend:
    """Jaccard overlap of lowercase word sets, in [0, 1]."""

    backend_id = "jaccard"

    def score(self, a: str, b: str) -> float:
        ta = set(_TOKEN_RE.findall(a.lower()))
        tb = set(_TOKEN_RE.findall(b.lower()))
        if not ta and not tb:
            return 1.0
        if not ta or not tb:
            return 0.0
        return len(ta & tb) / len(ta | tb)


class HashedEmbeddingBackend:
    """Deterministic pseudo-random unit vectors derived from the text.

    Scores are spread over (-1, 1) with no semantic meaning; useful for
    threshold sweeps and oracle tests that need varied similarities.
    """

    def __init__(self, dim: int = 16):
        self.dim = dim
        self.backend_id = f"hashed-{dim}"

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        return [self._one(t) for t in texts]

    def _one(self, text: str) -> list[float]:
        digest = hashlib.sha256(text.encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        vec = rng.standard_normal(self.dim)
        vec /= np.linalg.norm(vec)
        return [float(x) for x in vec]

    def score(self, a: str, b: str) -> float:
        va, vb = self._one(a), self._one(b)
        return float(np.dot(va, vb))


class HttpEmbeddingBackend:
    """Client for the embedding sidecar; batches requests and exposes
    ``embed`` so the evaluator's cache applies."""

    def __init__(
        self,
        url: Optional[str] = None,
        batch_size: int = 64,
        timeout: float = 60.0,
        client: Optional[httpx.Client] = None,
    ):
        base = url or os.environ.get("CQPITFALL_EMBED_URL")
        if not base:
            raise ValueError("no embedding service URL (set CQPITFALL_EMBED_URL)")
        self.url = base.rstrip("/")
        self.batch_size = batch_size
        self._client = client or httpx.Client(timeout=timeout)
        self.backend_id = f"embed:{self.url}"

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        vectors: list[list[float]] = []
        for start in range(0, len(texts), self.batch_size):
            batch = list(texts[start:start + self.batch_size])
            response = self._client.post(f"{self.url}/embed", json={"texts": batch})
            response.raise_for_status()
            body = response.json()
            got = body.get("vectors", [])
            if len(got) != len(batch):
                raise RuntimeError(
                    f"embedding service returned {len(got)} vectors for "
                    f"{len(batch)} texts")
            vectors.extend([[float(x) for x in vec] for vec in got])
        return vectors

    def score(self, a: str, b: str) -> float:
        va, vb = self.embed([a, b])
        return float(np.dot(va, vb))


def similarity_backend_from_id(backend_id: str):
    """Resolve a CLI backend spec: exact | jaccard | hashed[:dim] |
    embed[:url] (url defaults to $CQPITFALL_EMBED_URL)."""
    if backend_id == "exact":
        return ExactMatchBackend()
    if backend_id == "jaccard":
        return TokenJaccardBackend()
    if backend_id.startswith("hashed"):
        _, _, dim = backend_id.partition(":")
        return HashedEmbeddingBackend(int(dim) if dim else 16)
    if backend_id.startswith("embed"):
        _, _, url = backend_id.partition(":")
        return HttpEmbeddingBackend(url or None)
    raise ValueError(f"unknown similarity backend {backend_id!r}")
