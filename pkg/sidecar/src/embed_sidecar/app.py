"""FastAPI application: POST /embed and GET /health.

The model loads in a background thread at startup; both endpoints answer
503 until it is ready. Vectors are unit-normalized server-side so a client
dot product equals the cosine similarity.

Environment:
    EMBED_SIDECAR_MODEL       provider spec (default
                              "st:sentence-transformers/all-MiniLM-L6-v2";
                              "ngram:<dim>" runs fully offline)
    EMBED_SIDECAR_MAX_BATCH   maximum texts per request (default 128)
"""

from __future__ import annotations

import os
import threading
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .providers import EmbeddingProvider, provider_from_spec

DEFAULT_MODEL = "st:sentence-transformers/all-MiniLM-L6-v2"
MAX_TEXT_CHARS = 4096


class EmbedRequest(BaseModel):
    texts: list[str] = Field(min_length=1)


class EmbedResponse(BaseModel):
    vectors: list[list[float]]
    dim: int
    model_id: str


class ModelState:
    def __init__(self, spec: str):
        self.spec = spec
        self.provider: Optional[EmbeddingProvider] = None
        self.error: Optional[str] = None
        self._lock = threading.Lock()

    def load(self) -> None:
        try:
            provider = provider_from_spec(self.spec)
        except Exception as exc:  # surface load failures via /health
            with self._lock:
                self.error = f"{type(exc).__name__}: {exc}"
            return
        with self._lock:
            self.provider = provider

    def load_in_background(self) -> None:
        threading.Thread(target=self.load, daemon=True).start()


def create_app(model_spec: Optional[str] = None,
               max_batch: Optional[int] = None,
               load_on_startup: bool = True) -> FastAPI:
    spec = model_spec or os.environ.get("EMBED_SIDECAR_MODEL", DEFAULT_MODEL)
    batch_limit = max_batch or int(os.environ.get("EMBED_SIDECAR_MAX_BATCH", "128"))
    state = ModelState(spec)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        if load_on_startup:
            state.load_in_background()
        yield

    app = FastAPI(title="embed-sidecar", lifespan=lifespan)
    app.state.model = state

    def _ready_provider() -> EmbeddingProvider:
        if state.error is not None:
            raise HTTPException(status_code=503,
                                detail=f"model failed to load: {state.error}")
        if state.provider is None:
            raise HTTPException(status_code=503, detail="model is loading")
        return state.provider

    @app.get("/health")
    def health():
        if state.error is not None:
            raise HTTPException(status_code=503,
                                detail=f"model failed to load: {state.error}")
        if state.provider is None:
            raise HTTPException(status_code=503, detail="model is loading")
        return {"status": "ready", "model_id": state.provider.model_id,
                "dim": state.provider.dim}

    @app.post("/embed", response_model=EmbedResponse)
    def embed(request: EmbedRequest):
        provider = _ready_provider()
        if len(request.texts) > batch_limit:
            raise HTTPException(
                status_code=400,
                detail=f"batch of {len(request.texts)} exceeds limit {batch_limit}")
        for index, text in enumerate(request.texts):
            if not text.strip():
                raise HTTPException(status_code=400,
                                    detail=f"texts[{index}] is empty")
            if len(text) > MAX_TEXT_CHARS:
                raise HTTPException(
                    status_code=400,
                    detail=f"texts[{index}] exceeds {MAX_TEXT_CHARS} characters")
        vectors = provider.embed(request.texts)
        return EmbedResponse(vectors=[[float(x) for x in row] for row in vectors],
                             dim=provider.dim, model_id=provider.model_id)

    return app
