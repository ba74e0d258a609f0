from __future__ import annotations

import math
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from embed_sidecar.app import MAX_TEXT_CHARS, create_app
from embed_sidecar.providers import NgramHashProvider, provider_from_spec


@pytest.fixture(scope="module")
def client():
    app = create_app(model_spec="ngram:128", max_batch=16)
    with TestClient(app) as test_client:
        _wait_ready(test_client)
        yield test_client


def _wait_ready(test_client, timeout=5.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        if test_client.get("/health").status_code == 200:
            return
        time.sleep(0.01)
    raise TimeoutError("sidecar did not become ready")


def _embed(client, texts):
    response = client.post("/embed", json={"texts": texts})
    assert response.status_code == 200, response.text
    return response.json()


# --------------------------------------------------------------------------
# Health transitions
# --------------------------------------------------------------------------


def test_health_is_503_before_load_then_200():
    app = create_app(model_spec="ngram:64")
    cold = TestClient(app)  # no lifespan: model never starts loading
    assert cold.get("/health").status_code == 503
    assert cold.post("/embed", json={"texts": ["x"]}).status_code == 503
    with TestClient(app) as warm:
        _wait_ready(warm)
        payload = warm.get("/health").json()
        assert payload["status"] == "ready"
        assert payload["model_id"] == "ngram-hash-64"
        assert payload["dim"] == 64


def test_health_reports_load_failure():
    app = create_app(model_spec="st:")  # invalid spec: no model id
    with TestClient(app) as client:
        deadline = time.monotonic() + 5.0
        while time.monotonic() < deadline:
            response = client.get("/health")
            if "failed to load" in response.text:
                break
            time.sleep(0.01)
        assert response.status_code == 503
        assert "failed to load" in response.text


# --------------------------------------------------------------------------
# /embed contract
# --------------------------------------------------------------------------


def test_vectors_are_unit_norm(client):
    payload = _embed(client, ["hello world", "a cat sat", "ontology term"])
    assert payload["dim"] == 128
    assert len(payload["vectors"]) == 3
    for vector in payload["vectors"]:
        assert len(vector) == 128
        assert abs(math.sqrt(sum(x * x for x in vector)) - 1.0) <= 1e-6


def test_identical_inputs_identical_vectors(client):
    first = _embed(client, ["hello"])["vectors"][0]
    second = _embed(client, ["hello"])["vectors"][0]
    assert first == second


def test_self_similarity_is_one(client):
    vectors = _embed(client, ["a", "a"])["vectors"]
    cosine = float(np.dot(vectors[0], vectors[1]))
    assert abs(cosine - 1.0) <= 1e-6


def test_order_preserving(client):
    forward = _embed(client, ["first text", "second text"])["vectors"]
    backward = _embed(client, ["second text", "first text"])["vectors"]
    assert forward[0] == backward[1]
    assert forward[1] == backward[0]


def test_batch_consistency(client):
    alone = _embed(client, ["the lonely sentence"])["vectors"][0]
    batched = _embed(client, ["padding one", "the lonely sentence",
                              "padding two"])["vectors"][1]
    assert max(abs(a - b) for a, b in zip(alone, batched)) <= 1e-5


def test_cosine_symmetry(client):
    vectors = _embed(client, ["alpha beta", "gamma delta"])["vectors"]
    a, b = np.array(vectors[0]), np.array(vectors[1])
    assert float(np.dot(a, b)) == float(np.dot(b, a))


def test_paraphrase_ranks_above_unrelated(client):
    # rank only; absolute values are model-dependent
    anchor = "The cat sits on the mat."
    paraphrase = "A cat is sitting on the mat."
    unrelated = "Stock markets fell sharply on Tuesday."
    vectors = _embed(client, [anchor, paraphrase, unrelated])["vectors"]
    v = [np.array(x) for x in vectors]
    assert float(np.dot(v[0], v[1])) > float(np.dot(v[0], v[2]))


def test_400_on_empty_list(client):
    response = client.post("/embed", json={"texts": []})
    assert response.status_code in (400, 422)  # schema rejects before handler


def test_400_on_empty_string(client):
    response = client.post("/embed", json={"texts": ["ok", "   "]})
    assert response.status_code == 400
    assert "texts[1]" in response.text


def test_400_on_oversized_text(client):
    response = client.post("/embed", json={"texts": ["x" * (MAX_TEXT_CHARS + 1)]})
    assert response.status_code == 400


def test_400_on_oversized_batch(client):
    response = client.post("/embed", json={"texts": ["x"] * 17})
    assert response.status_code == 400
    assert "limit" in response.text


def test_model_id_echoes_configuration(client):
    payload = _embed(client, ["probe"])
    assert payload["model_id"] == "ngram-hash-128"


# --------------------------------------------------------------------------
# Provider unit behavior
# --------------------------------------------------------------------------


def test_provider_spec_parsing():
    provider = provider_from_spec("ngram:32")
    assert isinstance(provider, NgramHashProvider)
    assert provider.dim == 32
    with pytest.raises(ValueError):
        provider_from_spec("ngram:4")
    with pytest.raises(ValueError):
        provider_from_spec("st:")


def test_ngram_provider_deterministic_unit_rows():
    provider = NgramHashProvider(64)
    rows = provider.embed(["one", "two", "one"])
    assert np.allclose(np.linalg.norm(rows, axis=1), 1.0, atol=1e-9)
    assert np.array_equal(rows[0], rows[2])
