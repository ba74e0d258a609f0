from __future__ import annotations

import random

import pytest

from cqpitfall.evaluate import (
    Aggregation,
    EmbeddingCache,
    EmptyReferenceError,
    EvalConfig,
    GtMode,
    MissingPolicy,
    aggregate,
    evaluate_suite,
    evaluate_term,
    f1_score,
    matched_set,
    valid_set,
)
from cqpitfall.dataset import DatasetTriple
from cqpitfall.misalign import MisalignmentType
from cqpitfall.model import TermKind
from cqpitfall.simbackends import (
    ExactMatchBackend,
    HashedEmbeddingBackend,
    TokenJaccardBackend,
)

WORDS = ["cat", "dog", "tree", "plant", "eats", "only", "some", "part",
         "animal", "leaf", "root", "water"]


def random_question(rng: random.Random) -> str:
    return " ".join(rng.choices(WORDS, k=rng.randint(2, 6))) + "?"


def random_instance(rng: random.Random, max_size: int = 5):
    gen = [random_question(rng) for _ in range(rng.randint(0, max_size))]
    gt = [random_question(rng) for _ in range(rng.randint(1, max_size))]
    return gen, gt


# --------------------------------------------------------------------------
# Independent brute-force oracle: every pair, first principles
# --------------------------------------------------------------------------


def brute_force(gen, gt, tau, score):
    sims = [[score(a, b) for b in gt] for a in gen]
    valid = {i for i in range(len(gen)) if gt and max(sims[i]) >= tau}
    matched = {j for j in range(len(gt))
               if gen and max(sims[i][j] for i in range(len(gen))) >= tau}
    precision = len(valid) / len(gen) if gen else 0.0
    recall = len(matched) / len(gt) if gt else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall > 0 else 0.0)
    per_gen = [max(sims[i]) for i in range(len(gen))]
    return valid, matched, precision, recall, f1, per_gen


# --------------------------------------------------------------------------
# Set operators
# --------------------------------------------------------------------------


def test_valid_set_self_match():
    assert valid_set(["Q?"], ["Q?"], 0.7, ExactMatchBackend()) == {0}


def test_valid_matched_brute_force_small():
    gen, gt = ["a", "b", "c"], ["a", "d"]
    backend = ExactMatchBackend()
    assert valid_set(gen, gt, 0.7, backend) == {0}
    assert matched_set(gen, gt, 0.7, backend) == {0}
    result = evaluate_term(gen, gt, EvalConfig(), backend)
    assert result.recall == pytest.approx(0.5)


def test_threshold_above_range_gives_empty():
    gen, gt = ["a", "b"], ["a"]
    assert valid_set(gen, gt, 1.01, ExactMatchBackend()) == set()
    assert matched_set(gen, gt, 1.01, ExactMatchBackend()) == set()


def test_symmetry_duality():
    rng = random.Random(3)
    backend = TokenJaccardBackend()
    for _ in range(50):
        gen, gt = random_instance(rng)
        tau = rng.uniform(0.0, 1.0)
        assert valid_set(gen, gt, tau, backend) == matched_set(gt, gen, tau, backend)


# --------------------------------------------------------------------------
# evaluate_term
# --------------------------------------------------------------------------


def test_identical_sets_all_ones():
    questions = ["Q1?", "Q2?", "Q3?"]
    result = evaluate_term(questions, list(questions), EvalConfig(),
                           ExactMatchBackend())
    assert result.precision == result.recall == result.f1 == 1.0
    assert result.per_gen_max_sim == [1.0, 1.0, 1.0]


def test_disjoint_sets_all_zeros():
    result = evaluate_term(["a", "b"], ["c", "d"], EvalConfig(),
                           ExactMatchBackend())
    assert result.precision == result.recall == result.f1 == 0.0
    assert result.per_gen_max_sim == [0.0, 0.0]


def test_empty_generation_flagged_zero_precision():
    result = evaluate_term([], ["a"], EvalConfig(), ExactMatchBackend())
    assert result.empty_generation
    assert result.precision == 0.0
    assert result.f1 == 0.0


def test_empty_reference_raises():
    with pytest.raises(EmptyReferenceError):
        evaluate_term(["a"], [], EvalConfig(), ExactMatchBackend())


def test_default_tau_is_0_7():
    assert EvalConfig().tau == 0.7


@pytest.mark.parametrize("backend_factory", [
    TokenJaccardBackend,
    lambda: HashedEmbeddingBackend(8),
])
def test_oracle_equivalence_100_instances(backend_factory):
    backend = backend_factory()
    rng = random.Random(20260813)
    for _ in range(100):
        gen, gt = random_instance(rng)
        tau = rng.uniform(-0.2, 1.0)
        config = EvalConfig(tau=tau)
        result = evaluate_term(gen, gt, config, backend)
        valid, matched, precision, recall, f1, per_gen = brute_force(
            gen, gt, tau, backend.score)
        assert result.valid_gen == valid
        assert result.matched_gt == matched
        assert abs(result.precision - precision) <= 1e-12
        assert abs(result.recall - recall) <= 1e-12
        assert abs(result.f1 - f1) <= 1e-12
        assert len(result.per_gen_max_sim) == len(per_gen)
        for got, expected in zip(result.per_gen_max_sim, per_gen):
            assert abs(got - expected) <= 1e-12


def test_threshold_monotonicity_seeded():
    backend = HashedEmbeddingBackend(8)
    rng = random.Random(42)
    taus = [round(0.05 * k, 2) for k in range(21)]
    for _ in range(50):
        gen, gt = random_instance(rng)
        if not gen:
            continue
        previous_p, previous_r = None, None
        for tau in taus:
            result = evaluate_term(gen, gt, EvalConfig(tau=tau), backend)
            if previous_p is not None:
                assert result.precision <= previous_p + 1e-12
                assert result.recall <= previous_r + 1e-12
            previous_p, previous_r = result.precision, result.recall


# --------------------------------------------------------------------------
# Cache
# --------------------------------------------------------------------------


def test_embedding_cache_no_recompute():
    calls = []

    class CountingBackend:
        backend_id = "count"

        def embed(self, texts):
            calls.append(list(texts))
            return HashedEmbeddingBackend(8).embed(texts)

    cache = EmbeddingCache()
    backend = CountingBackend()
    valid_set(["a", "b"], ["c"], 0.5, backend, cache)
    first_calls = len(calls)
    valid_set(["a", "b"], ["c"], 0.9, backend, cache)
    assert len(calls) == first_calls  # sweep reuses every vector
    assert len(cache) == 3


# --------------------------------------------------------------------------
# Suite-level evaluation
# --------------------------------------------------------------------------


def _triple(term, assigned, target, normal, ontology="o1"):
    return DatasetTriple(
        term_iri=f"https://example.org/x#{term}",
        term_kind=TermKind.CLASS,
        ontology_id=ontology,
        assigned_type=assigned,
        input_axioms_text=("SubClassOf(:a :b)",),
        definition="def",
        target_cqs=tuple(target),
        cq_normal_all=tuple(normal),
        pitfall_axiom_index=None if assigned is MisalignmentType.ALIGNED else 0,
        seed=1,
    )


def test_suite_identical_sets_report_is_all_100():
    triple = _triple("t1", MisalignmentType.MISSING_AXIOM,
                     ["Q1?", "Q2?", "Q3?"],
                     [(0, ("Q1?", "Q2?", "Q3?"))])
    generations = {triple.term_iri: ["Q1?", "Q2?", "Q3?"]}
    report = evaluate_suite([triple], generations, EvalConfig(),
                            ExactMatchBackend(), GtMode.SP_ONLY)
    row = report.overall
    assert row.micro_precision == row.micro_recall == row.micro_f1 == 1.0
    assert row.cos_sim_per_question == 1.0


def test_suite_micro_average_hand_computed():
    t1 = _triple("t1", MisalignmentType.MISSING_AXIOM, ["a", "b"],
                 [(0, ("a", "b"))])
    t2 = _triple("t2", MisalignmentType.MISSING_AXIOM, ["c", "d"],
                 [(0, ("c", "d"))])
    generations = {t1.term_iri: ["a", "b"], t2.term_iri: ["x", "y"]}
    report = evaluate_suite([t1, t2], generations, EvalConfig(),
                            ExactMatchBackend(), GtMode.SP_ONLY)
    # term1: P=R=1 over 2; term2: P=R=0 over 2 -> micro 0.5
    assert report.overall.micro_precision == pytest.approx(0.5)
    assert report.overall.micro_recall == pytest.approx(0.5)
    assert report.overall.macro_precision == pytest.approx(0.5)


def test_suite_sp_only_skips_aligned():
    aligned = _triple("t3", MisalignmentType.ALIGNED, ["a"], [(0, ("a",))])
    report = evaluate_suite([aligned], {aligned.term_iri: ["a"]},
                            EvalConfig(), ExactMatchBackend(), GtMode.SP_ONLY)
    assert report.per_term == []
    assert any("aligned" in s["reason"] for s in report.skipped_terms)
    full = evaluate_suite([aligned], {aligned.term_iri: ["a"]},
                          EvalConfig(), ExactMatchBackend(),
                          GtMode.SP_PLUS_NORMAL)
    assert len(full.per_term) == 1


def test_suite_sp_plus_normal_uses_all_questions():
    triple = _triple("t4", MisalignmentType.MISSING_AXIOM, ["a"],
                     [(0, ("a",)), (1, ("b", "c"))])
    generations = {triple.term_iri: ["b"]}
    sp_only = evaluate_suite([triple], generations, EvalConfig(),
                             ExactMatchBackend(), GtMode.SP_ONLY)
    assert sp_only.overall.micro_precision == 0.0
    merged = evaluate_suite([triple], generations, EvalConfig(),
                            ExactMatchBackend(), GtMode.SP_PLUS_NORMAL)
    assert merged.overall.micro_precision == 1.0
    assert merged.per_term[0].n_gt == 3


def test_suite_missing_generation_policies():
    triple = _triple("t5", MisalignmentType.MISSING_AXIOM, ["a"], [(0, ("a",))])
    skip = evaluate_suite([triple], {}, EvalConfig(missing=MissingPolicy.SKIP),
                          ExactMatchBackend(), GtMode.SP_ONLY)
    assert skip.per_term == [] and len(skip.skipped_terms) == 1
    zero = evaluate_suite([triple], {},
                          EvalConfig(missing=MissingPolicy.COUNT_AS_ZERO),
                          ExactMatchBackend(), GtMode.SP_ONLY)
    assert zero.per_term[0].empty_generation
    assert zero.overall.micro_recall == 0.0


def test_aggregate_macro_vs_micro_sizes():
    r1 = evaluate_term(["a"], ["a"], EvalConfig(), ExactMatchBackend(), term_iri="a")
    r2 = evaluate_term(["x", "y", "z"], ["q", "r", "s"], EvalConfig(),
                       ExactMatchBackend(), term_iri="b")
    row = aggregate([r1, r2])
    assert row.micro_precision == pytest.approx(1 / 4)
    assert row.macro_precision == pytest.approx(1 / 2)
    assert row.n_gen == 4 and row.n_gt == 4


def test_f1_zero_guard():
    assert f1_score(0.0, 0.0) == 0.0
    assert f1_score(1.0, 1.0) == 1.0


def test_eval_config_aggregation_selection():
    r1 = evaluate_term(["a"], ["a"], EvalConfig(), ExactMatchBackend())
    row = aggregate([r1])
    micro = row.selected(EvalConfig(aggregation=Aggregation.MICRO))
    macro = row.selected(EvalConfig(aggregation=Aggregation.MACRO))
    assert micro[:3] == macro[:3] == (1.0, 1.0, 1.0)


def test_similarity_trims_but_preserves_case():
    result = evaluate_term(["  Q1?  "], ["Q1?"], EvalConfig(), ExactMatchBackend())
    assert result.precision == 1.0  # whitespace trimmed before scoring
    cased = evaluate_term(["q1?"], ["Q1?"], EvalConfig(), ExactMatchBackend())
    assert cased.precision == 0.0  # no lowercasing
