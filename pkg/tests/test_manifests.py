from __future__ import annotations

import json
import random

import pytest

from cqpitfall.manifests import (
    read_generations,
    read_terms_manifest,
    write_cases_manifest,
    write_generations,
    write_terms_manifest,
)
from cqpitfall.misalign import MisalignmentType, build_cases

from gen_random import random_term


def test_terms_manifest_round_trip(animals, tmp_path):
    path = write_terms_manifest([animals], tmp_path / "terms.jsonl")
    terms, prefixes = read_terms_manifest(path)
    assert prefixes["animals"] == animals.prefixes
    assert len(terms) == len(animals.terms)
    for loaded, original in zip(terms, animals.terms):
        assert loaded.term == original.term
        assert loaded.kind == original.kind
        assert loaded.axioms == original.axioms


def test_terms_manifest_round_trip_random(tmp_path):
    rng = random.Random(8)

    class FakeOntology:
        id = "fake"
        prefixes = {}
        terms = [random_term(rng) for _ in range(25)]

    path = write_terms_manifest([FakeOntology()], tmp_path / "terms.jsonl")
    terms, _ = read_terms_manifest(path)
    for loaded, original in zip(terms, FakeOntology.terms):
        assert loaded.axioms == original.axioms


def test_cases_manifest_records_injection(animals, tmp_path):
    cases = build_cases(animals.terms, master_seed=42)
    path = write_cases_manifest(cases, {"animals": animals.prefixes},
                                tmp_path / "cases.jsonl")
    records = [json.loads(l) for l in path.read_text("utf-8").splitlines()]
    assert len(records) == len(cases)
    for record, case in zip(records, cases):
        assert record["seed"] == case.rng_seed
        if case.assigned_type is MisalignmentType.MISUSED_AXIOM:
            assert record["pitfall_axiom_before"] != record["pitfall_axiom_after"]
            assert record["swap"]["before"] != record["swap"]["after"]
        elif case.assigned_type is not MisalignmentType.ALIGNED:
            assert record["pitfall_axiom_before"]
            assert record["pitfall_axiom_after"] is None


def test_generations_round_trip(tmp_path):
    data = {"http://x#a": ["q1?", "q2?"], "http://x#b": ["q3?"]}
    path = write_generations(data, tmp_path / "gens.jsonl")
    assert read_generations(path) == data


def test_generations_schema_mismatch(tmp_path):
    (tmp_path / "bad.jsonl").write_text('{"nope": 1}\n', encoding="utf-8")
    with pytest.raises(ValueError):
        read_generations(tmp_path / "bad.jsonl")
