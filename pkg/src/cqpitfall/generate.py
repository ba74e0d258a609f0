"""Per-case artifact generation: one definition plus one question set per
original axiom.

Question sets are always generated from the ORIGINAL axioms; for a
misused-axiom case the questions therefore target the unswapped form,
which is exactly what makes them validate the pitfall. Parse failures are
retried with a fresh derived seed up to RETRY_BUDGET times; a case that
still fails is reported as failed, never silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .backends import TextBackend
from .misalign import MisalignmentCase, derive_seed
from .prompts import (
    EmptyResponse,
    ItemCountMismatch,
    build_cq_prompt,
    build_definition_prompt,
    parse_cq_response,
)
from .templates import TemplateRegistry

RETRY_BUDGET = 3


class Role(Enum):
    SEMANTIC_PITFALL = "semantic_pitfall"
    NORMAL = "normal"


class GenerationError(RuntimeError):
    def __init__(self, term_iri: str, stage: str, cause: Exception):
        super().__init__(f"{term_iri}: {stage} failed after retries: {cause}")
        self.term_iri = term_iri
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class GenerationConfig:
    n: int = 3
    temperature: Optional[float] = None  # backend default
    backend_id: str = "mock"
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.temperature is not None and self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class CqSet:
    """Questions generated for one axiom of a term."""

    axiom_index: int
    questions: tuple[str, ...]
    role: Role

    def __post_init__(self) -> None:
        for q in self.questions:
            if not q.strip():
                raise ValueError("empty question")
            if "|" in q:
                raise ValueError("question contains the separator character '|'")


@dataclass(frozen=True)
class CaseArtifacts:
    definition: str
    cq_sets: tuple[CqSet, ...]


@dataclass
class GenerationOutcome:
    """Per-case results plus the cases that failed, for the build summary."""

    succeeded: list[tuple[MisalignmentCase, CaseArtifacts]] = field(default_factory=list)
    failed: list[tuple[MisalignmentCase, str]] = field(default_factory=list)


def generate_case_artifacts(
    case: MisalignmentCase,
    config: GenerationConfig,
    backend: TextBackend,
    registry: TemplateRegistry,
    prefixes: Optional[dict[str, str]] = None,
) -> CaseArtifacts:
    term_iri = case.term.term.value
    definition = _generate_definition(case, config, backend, prefixes, term_iri)
    cq_sets = []
    for index, axiom in enumerate(case.term.axioms):
        role = (Role.SEMANTIC_PITFALL if index == case.pitfall_axiom_index
                else Role.NORMAL)
        prompt = build_cq_prompt(axiom, registry, config.n, prefixes)
        questions = _complete_with_retries(
            backend, prompt, config, term_iri, stage=f"questions[{index}]",
            parse=lambda raw: parse_cq_response(raw, config.n),
            seed_parts=("cq", term_iri, index),
        )
        cq_sets.append(CqSet(index, tuple(questions), role))
    return CaseArtifacts(definition, tuple(cq_sets))


def _generate_definition(
    case: MisalignmentCase,
    config: GenerationConfig,
    backend: TextBackend,
    prefixes: Optional[dict[str, str]],
    term_iri: str,
) -> str:
    prompt = build_definition_prompt(case, prefixes)

    def parse(raw: str) -> str:
        text = (raw or "").strip()
        if not text:
            raise EmptyResponse("empty definition")
        return text

    return _complete_with_retries(
        backend, prompt, config, term_iri, stage="definition",
        parse=parse, seed_parts=("definition", term_iri),
    )


def _complete_with_retries(backend, prompt, config, term_iri, stage, parse, seed_parts):
    last: Optional[Exception] = None
    for attempt in range(1 + RETRY_BUDGET):
        seed = derive_seed(config.master_seed, *seed_parts, attempt)
        raw = backend.complete(prompt, config.temperature, seed)
        try:
            return parse(raw)
        except (ItemCountMismatch, EmptyResponse) as exc:
            last = exc
    raise GenerationError(term_iri, stage, last)


def generate_all(
    cases: list[MisalignmentCase],
    config: GenerationConfig,
    backend: TextBackend,
    registry: TemplateRegistry,
    prefixes_by_ontology: Optional[dict[str, dict[str, str]]] = None,
    max_in_flight: int = 1,
) -> GenerationOutcome:
    """Generate artifacts for every case, optionally with up to
    ``max_in_flight`` concurrent backend calls. Results are joined in case
    order, so output never depends on completion order; per-case seeds are
    derived, so concurrency never changes content either."""

    def _one(case: MisalignmentCase):
        prefixes = None
        if prefixes_by_ontology is not None:
            prefixes = prefixes_by_ontology.get(case.term.ontology_id)
        return generate_case_artifacts(case, config, backend, registry, prefixes)

    results: list = [None] * len(cases)
    if max_in_flight <= 1 or len(cases) <= 1:
        for index, case in enumerate(cases):
            try:
                results[index] = _one(case)
            except GenerationError as exc:
                results[index] = exc
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
            futures = {pool.submit(_one, case): index
                       for index, case in enumerate(cases)}
            for future, index in futures.items():
                try:
                    results[index] = future.result()
                except GenerationError as exc:
                    results[index] = exc

    outcome = GenerationOutcome()
    for case, result in zip(cases, results):
        if isinstance(result, GenerationError):
            outcome.failed.append((case, str(result)))
        else:
            outcome.succeeded.append((case, result))
    return outcome
