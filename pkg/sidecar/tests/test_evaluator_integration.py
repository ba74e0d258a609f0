"""The toolkit's evaluator, pointed at a live sidecar app, passes the same
threshold-monotonicity suite it passes with its bundled test backends."""

from __future__ import annotations

import random
import time

import pytest
from fastapi.testclient import TestClient

from cqpitfall.evaluate import EvalConfig, EmbeddingCache, evaluate_term
from cqpitfall.simbackends import HttpEmbeddingBackend

from embed_sidecar.app import create_app

WORDS = ["cat", "dog", "tree", "plant", "eats", "only", "some", "part",
         "animal", "leaf", "root", "water"]


@pytest.fixture(scope="module")
def backend():
    app = create_app(model_spec="ngram:128", max_batch=64)
    with TestClient(app) as client:
        deadline = time.monotonic() + 5.0
        while time.monotonic() < deadline:
            if client.get("/health").status_code == 200:
                break
            time.sleep(0.01)
        yield HttpEmbeddingBackend(url=str(client.base_url), client=client)


def _instance(rng):
    def question():
        return " ".join(rng.choices(WORDS, k=rng.randint(2, 6))) + "?"
    return ([question() for _ in range(rng.randint(1, 5))],
            [question() for _ in range(rng.randint(1, 5))])


def test_monotonicity_through_the_sidecar(backend):
    rng = random.Random(42)
    taus = [round(0.05 * k, 2) for k in range(21)]
    cache = EmbeddingCache()
    for _ in range(50):
        gen, gt = _instance(rng)
        previous_p = previous_r = None
        for tau in taus:
            result = evaluate_term(gen, gt, EvalConfig(tau=tau), backend, cache)
            if previous_p is not None:
                assert result.precision <= previous_p + 1e-12
                assert result.recall <= previous_r + 1e-12
            previous_p, previous_r = result.precision, result.recall


def test_identity_and_range_through_the_sidecar(backend):
    result = evaluate_term(["the cat eats plants"], ["the cat eats plants"],
                           EvalConfig(), backend)
    assert result.precision == result.recall == result.f1 == 1.0
    assert result.per_gen_max_sim[0] == pytest.approx(1.0, abs=1e-6)
    mixed = evaluate_term(["cat eats plant", "dog drinks water"],
                          ["water is wet"], EvalConfig(tau=0.99), backend)
    for sim in mixed.per_gen_max_sim:
        assert -1.0 - 1e-9 <= sim <= 1.0 + 1e-9
