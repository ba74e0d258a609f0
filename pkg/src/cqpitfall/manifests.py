"""Stage manifests: normalized term records, injection audit records, and
generated-question files. Everything is JSONL so expensive stages are
resumable and auditable."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence, Union

from .misalign import MisalignmentCase, MisalignmentType
from .model import Iri, Ontology, TermKind, TermRecord
from .parser import parse_axiom_text
from .serializer import serialize_axiom


def write_terms_manifest(ontologies: Sequence[Ontology], path: Union[str, Path]) -> Path:
    """One ontology header line (with its prefixes) followed by its term
    records; axioms are stored serialized and re-parsed on load."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for ontology in ontologies:
            handle.write(json.dumps({
                "record": "ontology",
                "id": ontology.id,
                "prefixes": ontology.prefixes,
            }, ensure_ascii=False) + "\n")
            for term in ontology.terms:
                handle.write(json.dumps({
                    "record": "term",
                    "ontology_id": term.ontology_id,
                    "term_iri": term.term.value,
                    "kind": term.kind.value,
                    "axioms": [serialize_axiom(ax, ontology.prefixes)
                               for ax in term.axioms],
                }, ensure_ascii=False) + "\n")
    return path


def read_terms_manifest(
    path: Union[str, Path],
) -> tuple[list[TermRecord], dict[str, dict[str, str]]]:
    terms: list[TermRecord] = []
    prefixes_by_ontology: dict[str, dict[str, str]] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            if data["record"] == "ontology":
                prefixes_by_ontology[data["id"]] = data["prefixes"]
                continue
            prefixes = prefixes_by_ontology.get(data["ontology_id"], {})
            axioms = tuple(parse_axiom_text(text, prefixes) for text in data["axioms"])
            terms.append(TermRecord(
                term=Iri(data["term_iri"]),
                kind=TermKind(data["kind"]),
                axioms=axioms,
                ontology_id=data["ontology_id"],
            ))
    return terms, prefixes_by_ontology


def write_cases_manifest(
    cases: Sequence[MisalignmentCase],
    prefixes_by_ontology: dict[str, dict[str, str]],
    path: Union[str, Path],
) -> Path:
    """Audit record per case: what was injected where, under which seed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for case in cases:
            prefixes = prefixes_by_ontology.get(case.term.ontology_id, {})
            before = after = None
            if case.pitfall_axiom_index is not None:
                index = case.pitfall_axiom_index
                before = serialize_axiom(case.term.axioms[index], prefixes)
                if case.assigned_type is MisalignmentType.MISUSED_AXIOM:
                    after = serialize_axiom(case.input_axioms[index], prefixes)
            record = {
                "term_iri": case.term.term.value,
                "kind": case.term.kind.value,
                "ontology_id": case.term.ontology_id,
                "assigned_type": case.assigned_type.value,
                "seed": case.rng_seed,
                "pitfall_axiom_index": case.pitfall_axiom_index,
                "pitfall_axiom_before": before,
                "pitfall_axiom_after": after,
                "swap": None if case.swap_detail is None else {
                    "path": list(case.swap_detail.path),
                    "before": case.swap_detail.before,
                    "after": case.swap_detail.after,
                },
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
    return path


def write_generations(
    generations: dict[str, Sequence[str]],
    path: Union[str, Path],
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for term_iri, questions in generations.items():
            handle.write(json.dumps(
                {"term_iri": term_iri, "questions": list(questions)},
                ensure_ascii=False) + "\n")
    return path


def read_generations(path: Union[str, Path]) -> dict[str, list[str]]:
    generations: dict[str, list[str]] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            if "term_iri" not in data or "questions" not in data:
                raise ValueError(
                    f"{path}:{line_no}: generations records need "
                    f"term_iri and questions")
            generations[data["term_iri"]] = [str(q) for q in data["questions"]]
    return generations
