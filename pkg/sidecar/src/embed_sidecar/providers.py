"""Embedding providers behind the service.

A provider turns a batch of texts into unit-normalized vectors of a fixed
dimension. Two implementations:

* ``st:<model-id>`` wraps a sentence-transformers checkpoint (the default;
  needs the model available locally or a reachable hub).
* ``ngram:<dim>`` is a fully offline, deterministic lexical embedder:
  signed feature hashing over word unigrams and character trigrams. It has
  no semantic depth, but overlapping wording scores higher than unrelated
  wording, which is enough for contract tests and smoke setups.
"""

from __future__ import annotations

import hashlib
import re
from typing import Protocol, Sequence

import numpy as np


class EmbeddingProvider(Protocol):
    model_id: str
    dim: int

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        """Return an array of shape (len(texts), dim) with unit rows."""
        ...


_WORD_RE = re.compile(r"[a-z0-9]+")


class NgramHashProvider:
    """Signed feature hashing of word unigrams and character trigrams."""

    def __init__(self, dim: int = 256):
        if dim < 8:
            raise ValueError("dim must be at least 8")
        self.dim = dim
        self.model_id = f"ngram-hash-{dim}"

    def _features(self, text: str) -> list[str]:
        lowered = text.lower()
        words = _WORD_RE.findall(lowered)
        features = [f"w:{w}" for w in words]
        compact = " ".join(words)
        features.extend(f"c:{compact[i:i + 3]}"
                        for i in range(max(len(compact) - 2, 0)))
        return features or [f"w:{lowered[:16]}"]

    def _one(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for feature in self._features(text):
            digest = hashlib.sha256(feature.encode("utf-8")).digest()
            bucket = int.from_bytes(digest[:4], "big") % self.dim
            sign = 1.0 if digest[4] & 1 else -1.0
            vec[bucket] += sign
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            vec[0] = 1.0
            norm = 1.0
        return vec / norm

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        return np.stack([self._one(t) for t in texts])


class SentenceTransformerProvider:
    """Wraps a sentence-transformers checkpoint; vectors re-normalized
    server-side so the contract never depends on model internals."""

    def __init__(self, model_id: str):
        from sentence_transformers import SentenceTransformer

        self.model_id = model_id
        self._model = SentenceTransformer(model_id)
        probe = self._model.encode(["probe"], normalize_embeddings=True)
        self.dim = int(probe.shape[1])

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        vectors = self._model.encode(list(texts), normalize_embeddings=True,
                                     convert_to_numpy=True)
        vectors = np.asarray(vectors, dtype=np.float64)
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        return vectors / norms


def provider_from_spec(spec: str) -> EmbeddingProvider:
    """``st:<model-id>`` or ``ngram:<dim>``; bare ids default to ``st:``."""
    kind, _, rest = spec.partition(":")
    if kind == "ngram":
        return NgramHashProvider(int(rest) if rest else 256)
    if kind == "st":
        if not rest:
            raise ValueError("st: needs a model id")
        return SentenceTransformerProvider(rest)
    return SentenceTransformerProvider(spec)
