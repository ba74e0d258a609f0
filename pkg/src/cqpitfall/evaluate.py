"""Similarity-thresholded evaluation of generated questions.

Per term, a generated question is *valid* if its best similarity against
the reference set reaches the threshold tau; a reference question is
*matched* if some generated question reaches tau against it. Precision is
the valid fraction of generated questions, recall the matched fraction of
references, F1 their harmonic mean. Alongside the thresholded metrics we
report each generated question's best similarity ("max cosine
similarity"), whose mean is threshold-free.

The metric code only ever consumes pairwise scores; backends either score
pairs directly or expose unit-normalized embeddings whose dot product is
the score.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, Sequence

DEFAULT_TAU = 0.7


class SimilarityBackend(Protocol):
    backend_id: str

    def score(self, a: str, b: str) -> float:
        ...


class EmbeddingBackend(Protocol):
    """Optional richer contract: batch embeddings, unit-normalized."""

    backend_id: str

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        ...


class Aggregation(Enum):
    MICRO = "micro"
    MACRO = "macro"


class GtMode(Enum):
    SP_ONLY = "sp"              # references are the pitfall questions only
    SP_PLUS_NORMAL = "sp+normal"  # references are all questions of the term


class MissingPolicy(Enum):
    SKIP = "skip"
    COUNT_AS_ZERO = "zero"


@dataclass(frozen=True)
class EvalConfig:
    tau: float = DEFAULT_TAU
    backend_id: str = "exact"
    aggregation: Aggregation = Aggregation.MICRO
    cos_sim_per_term: bool = False  # mean of per-term means instead of per-question
    missing: MissingPolicy = MissingPolicy.SKIP

    def __post_init__(self) -> None:
        if not -1.0 <= self.tau <= 1.0:
            raise ValueError("tau must be in [-1, 1]")


class EmptyReferenceError(ValueError):
    pass


class EmbeddingCache:
    """Keyed by (backend_id, exact text); concurrent readers, serialized
    writes."""

    def __init__(self) -> None:
        self._store: dict[tuple[str, str], list[float]] = {}
        self._lock = threading.Lock()

    def get_many(self, backend, texts: Sequence[str]) -> list[list[float]]:
        missing = []
        for text in texts:
            if (backend.backend_id, text) not in self._store:
                missing.append(text)
        if missing:
            unique = list(dict.fromkeys(missing))
            vectors = backend.embed(unique)
            with self._lock:
                for text, vec in zip(unique, vectors):
                    self._store[(backend.backend_id, text)] = vec
        return [self._store[(backend.backend_id, text)] for text in texts]

    def __len__(self) -> int:
        return len(self._store)


def similarity_matrix(
    gen: Sequence[str],
    gt: Sequence[str],
    backend,
    cache: Optional[EmbeddingCache] = None,
) -> list[list[float]]:
    """Pairwise scores, ``matrix[i][j] = sim(gen[i], gt[j])``. Texts are
    trimmed first; no further normalization (no stemming, no lowercasing)
    is applied."""
    gen = [text.strip() for text in gen]
    gt = [text.strip() for text in gt]
    if hasattr(backend, "embed"):
        if cache is None:
            cache = EmbeddingCache()
        gen_vecs = cache.get_many(backend, gen)
        gt_vecs = cache.get_many(backend, gt)
        return [[_dot(a, b) for b in gt_vecs] for a in gen_vecs]
    return [[backend.score(a, b) for b in gt] for a in gen]


def _dot(a: Sequence[float], b: Sequence[float]) -> float:
    return float(sum(x * y for x, y in zip(a, b)))


def valid_set(
    cq_gen: Sequence[str],
    cq_gt: Sequence[str],
    tau: float,
    backend,
    cache: Optional[EmbeddingCache] = None,
) -> set[int]:
    """Indices of generated questions whose best reference score is >= tau."""
    matrix = similarity_matrix(cq_gen, cq_gt, backend, cache)
    return {i for i, row in enumerate(matrix) if row and max(row) >= tau}


def matched_set(
    cq_gen: Sequence[str],
    cq_gt: Sequence[str],
    tau: float,
    backend,
    cache: Optional[EmbeddingCache] = None,
) -> set[int]:
    """Indices of reference questions reached by some generated question."""
    matrix = similarity_matrix(cq_gen, cq_gt, backend, cache)
    result = set()
    for j in range(len(cq_gt)):
        column = [matrix[i][j] for i in range(len(cq_gen))]
        if column and max(column) >= tau:
            result.add(j)
    return result


@dataclass
class TermEvalResult:
    term_iri: str
    n_gen: int
    n_gt: int
    valid_gen: set[int]
    matched_gt: set[int]
    precision: float
    recall: float
    f1: float
    per_gen_max_sim: list[float]
    empty_generation: bool = False

    def to_json_dict(self) -> dict:
        return {
            "term_iri": self.term_iri,
            "n_gen": self.n_gen,
            "n_gt": self.n_gt,
            "valid_gen": sorted(self.valid_gen),
            "matched_gt": sorted(self.matched_gt),
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "per_gen_max_sim": self.per_gen_max_sim,
            "empty_generation": self.empty_generation,
        }


def f1_score(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate_term(
    cq_gen: Sequence[str],
    cq_gt: Sequence[str],
    config: EvalConfig,
    backend,
    cache: Optional[EmbeddingCache] = None,
    term_iri: str = "",
) -> TermEvalResult:
    if not cq_gt:
        raise EmptyReferenceError(f"term {term_iri or '<anonymous>'} has no references")
    matrix = similarity_matrix(cq_gen, cq_gt, backend, cache)  # trims texts
    per_gen_max = [max(row) for row in matrix]
    valid = {i for i, best in enumerate(per_gen_max) if best >= config.tau}
    matched = {
        j for j in range(len(cq_gt))
        if cq_gen and max(matrix[i][j] for i in range(len(cq_gen))) >= config.tau
    }
    empty = len(cq_gen) == 0
    precision = 0.0 if empty else len(valid) / len(cq_gen)
    recall = len(matched) / len(cq_gt)
    return TermEvalResult(
        term_iri=term_iri,
        n_gen=len(cq_gen),
        n_gt=len(cq_gt),
        valid_gen=valid,
        matched_gt=matched,
        precision=precision,
        recall=recall,
        f1=f1_score(precision, recall),
        per_gen_max_sim=per_gen_max,
        empty_generation=empty,
    )


@dataclass
class AggregateRow:
    """Both aggregation flavours over one group of term results."""

    n_terms: int = 0
    n_gen: int = 0
    n_gt: int = 0
    n_valid: int = 0
    n_matched: int = 0
    micro_precision: float = 0.0
    micro_recall: float = 0.0
    micro_f1: float = 0.0
    macro_precision: float = 0.0
    macro_recall: float = 0.0
    macro_f1: float = 0.0
    cos_sim_per_question: float = 0.0
    cos_sim_per_term: float = 0.0

    def selected(self, config: EvalConfig) -> tuple[float, float, float, float]:
        cs = (self.cos_sim_per_term if config.cos_sim_per_term
              else self.cos_sim_per_question)
        if config.aggregation is Aggregation.MACRO:
            return self.macro_precision, self.macro_recall, self.macro_f1, cs
        return self.micro_precision, self.micro_recall, self.micro_f1, cs

    def to_json_dict(self) -> dict:
        return dict(self.__dict__)


def aggregate(results: Sequence[TermEvalResult]) -> AggregateRow:
    row = AggregateRow(n_terms=len(results))
    if not results:
        return row
    row.n_gen = sum(r.n_gen for r in results)
    row.n_gt = sum(r.n_gt for r in results)
    row.n_valid = sum(len(r.valid_gen) for r in results)
    row.n_matched = sum(len(r.matched_gt) for r in results)
    row.micro_precision = row.n_valid / row.n_gen if row.n_gen else 0.0
    row.micro_recall = row.n_matched / row.n_gt if row.n_gt else 0.0
    row.micro_f1 = f1_score(row.micro_precision, row.micro_recall)
    row.macro_precision = sum(r.precision for r in results) / len(results)
    row.macro_recall = sum(r.recall for r in results) / len(results)
    row.macro_f1 = sum(r.f1 for r in results) / len(results)
    sims = [s for r in results for s in r.per_gen_max_sim]
    row.cos_sim_per_question = sum(sims) / len(sims) if sims else 0.0
    term_means = [sum(r.per_gen_max_sim) / len(r.per_gen_max_sim)
                  for r in results if r.per_gen_max_sim]
    row.cos_sim_per_term = sum(term_means) / len(term_means) if term_means else 0.0
    return row


@dataclass
class MetricsReport:
    config: EvalConfig
    gt_mode: GtMode
    per_term: list[TermEvalResult] = field(default_factory=list)
    per_type: dict[str, AggregateRow] = field(default_factory=dict)
    overall: AggregateRow = field(default_factory=AggregateRow)
    skipped_terms: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "tau": self.config.tau,
            "backend_id": self.config.backend_id,
            "aggregation": self.config.aggregation.value,
            "gt_mode": self.gt_mode.value,
            "missing_policy": self.config.missing.value,
            "overall": self.overall.to_json_dict(),
            "per_type": {k: v.to_json_dict() for k, v in self.per_type.items()},
            "per_term": [r.to_json_dict() for r in self.per_term],
            "skipped_terms": self.skipped_terms,
        }


def references_for(triple, gt_mode: GtMode) -> list[str]:
    """The reference question set for one dataset record."""
    if gt_mode is GtMode.SP_ONLY:
        return list(triple.target_cqs)
    return [q for _, questions in triple.cq_normal_all for q in questions]


def evaluate_suite(
    triples,
    generations: dict[str, Sequence[str]],
    config: EvalConfig,
    backend,
    gt_mode: GtMode = GtMode.SP_ONLY,
) -> MetricsReport:
    """Evaluate candidate questions for every dataset record.

    In SP_ONLY mode, aligned records have no pitfall questions and are
    skipped. Records without generations follow ``config.missing``: skip
    and log, or score as an empty generation set.
    """
    report = MetricsReport(config=config, gt_mode=gt_mode)
    cache = EmbeddingCache()
    results_by_type: dict[str, list[TermEvalResult]] = {}
    for triple in triples:
        if gt_mode is GtMode.SP_ONLY and triple.assigned_type.value == "aligned":
            report.skipped_terms.append(
                {"term_iri": triple.term_iri,
                 "reason": "aligned record has no pitfall questions"})
            continue
        refs = references_for(triple, gt_mode)
        if not refs:
            report.skipped_terms.append(
                {"term_iri": triple.term_iri, "reason": "no reference questions"})
            continue
        gen = generations.get(triple.term_iri)
        if gen is None:
            if config.missing is MissingPolicy.SKIP:
                report.skipped_terms.append(
                    {"term_iri": triple.term_iri, "reason": "no generations"})
                continue
            gen = []
        result = evaluate_term(gen, refs, config, backend, cache,
                               term_iri=triple.term_iri)
        report.per_term.append(result)
        results_by_type.setdefault(triple.assigned_type.value, []).append(result)
    report.per_type = {
        k: aggregate(v) for k, v in sorted(results_by_type.items())
    }
    report.overall = aggregate(report.per_term)
    return report
