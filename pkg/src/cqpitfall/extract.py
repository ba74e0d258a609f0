"""Per-term axiom extraction and term sampling."""

from __future__ import annotations

import random
from enum import Enum

from .model import Axiom, Ontology, TermRecord


class ExtractionFilter(Enum):
    """How to build a term's axiom set.

    SUBJECT_ONLY keeps every axiom whose subject is the term (the default).
    DROP_HIERARCHY_DUPLICATES additionally removes axioms that repeat, on
    this term, a statement already asserted on one of its named parents
    (same relation and object): the parent's assertion is the original and
    the term's copy is the inherited duplicate, so the topmost assertion
    always survives.
    """

    SUBJECT_ONLY = "subject-only"
    DROP_HIERARCHY_DUPLICATES = "drop-hierarchy-duplicates"


def extract_terms(
    ontology: Ontology,
    filter_mode: ExtractionFilter = ExtractionFilter.SUBJECT_ONLY,
) -> list[TermRecord]:
    """Return one record per declared term, axioms in source order.

    Terms with no axioms are retained (they are filtered later, at case
    generation). Annotation assertions never reach this point; the parser
    drops them.
    """
    if filter_mode is ExtractionFilter.SUBJECT_ONLY:
        return list(ontology.terms)

    by_term = ontology.term_map()
    result = []
    for record in ontology.terms:
        parent_shapes: set[tuple] = set()
        for iri in ontology.parents(record.term):
            other = by_term.get(iri)
            if other is None:
                continue
            for ax in other.axioms:
                parent_shapes.add(_shape(ax))
        kept = tuple(ax for ax in record.axioms if _shape(ax) not in parent_shapes)
        if len(kept) != len(record.axioms):
            record = TermRecord(record.term, record.kind, kept, record.ontology_id)
        result.append(record)
    return result


def _shape(ax: Axiom) -> tuple:
    return (ax.relation, ax.obj, ax.characteristic, ax.data_property)


def sample_terms(terms: list[TermRecord], cap: int, seed: int) -> list[TermRecord]:
    """Uniform sample without replacement, capped at ``cap``, stable in the
    original order. Deterministic for a given seed."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if len(terms) <= cap:
        return list(terms)
    rng = random.Random(seed)
    picked = sorted(rng.sample(range(len(terms)), cap))
    return [terms[i] for i in picked]
