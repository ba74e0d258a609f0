"""Dataset assembly, splitting, JSONL persistence and corpus statistics.

JSONL schema (one object per line, UTF-8):

    term_iri             str   absolute IRI of the term
    term_kind            str   "class" | "object_property" | "data_property"
    ontology_id          str
    assigned_type        str   "missing_axiom" | "undefined_axiom" |
                               "misused_axiom" | "aligned"
    input_axioms_text    [str] serialized axiom set shown to the model
    definition           str   generated natural-language definition
    target_cqs           [str] training target questions
    cq_normal_all        [{"axiom_index": int, "questions": [str]}]
    pitfall_axiom_index  int | null
    seed                 int   per-case seed

The companion manifest records counts, seeds, tool version, exclusions and
a fine-tuning metadata block for downstream training runs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from . import __version__
from .generate import CaseArtifacts, GenerationConfig, Role
from .misalign import MisalignmentCase, MisalignmentType, derive_seed
from .model import TermKind
from .serializer import serialize_axiom

# Exported as run-config metadata for the downstream fine-tuning step; this
# toolkit does not train anything itself.
FINE_TUNING_DEFAULTS = {
    "base_model": "LLaMA-3.1-8B-Instruct",
    "adapter": "LoRA",
    "lora_rank": 8,
    "lora_alpha": 16,
    "lora_dropout": 0.05,
    "epochs": 3,
    "effective_batch_size": 4,
    "learning_rate": 3e-4,
    "precision": "bf16",
}


@dataclass(frozen=True)
class DatasetTriple:
    term_iri: str
    term_kind: TermKind
    ontology_id: str
    assigned_type: MisalignmentType
    input_axioms_text: tuple[str, ...]
    definition: str
    target_cqs: tuple[str, ...]
    cq_normal_all: tuple[tuple[int, tuple[str, ...]], ...]
    pitfall_axiom_index: Optional[int]
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "term_iri": self.term_iri,
            "term_kind": self.term_kind.value,
            "ontology_id": self.ontology_id,
            "assigned_type": self.assigned_type.value,
            "input_axioms_text": list(self.input_axioms_text),
            "definition": self.definition,
            "target_cqs": list(self.target_cqs),
            "cq_normal_all": [
                {"axiom_index": i, "questions": list(qs)}
                for i, qs in self.cq_normal_all
            ],
            "pitfall_axiom_index": self.pitfall_axiom_index,
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DatasetTriple":
        return cls(
            term_iri=data["term_iri"],
            term_kind=TermKind(data["term_kind"]),
            ontology_id=data["ontology_id"],
            assigned_type=MisalignmentType(data["assigned_type"]),
            input_axioms_text=tuple(data["input_axioms_text"]),
            definition=data["definition"],
            target_cqs=tuple(data["target_cqs"]),
            cq_normal_all=tuple(
                (entry["axiom_index"], tuple(entry["questions"]))
                for entry in data["cq_normal_all"]
            ),
            pitfall_axiom_index=data["pitfall_axiom_index"],
            seed=data["seed"],
        )


@dataclass(frozen=True)
class SplitSpec:
    """Random fraction split or leave-one-ontology-out."""

    mode: str  # "random" | "leave_one_out"
    train_fraction: float = 0.875
    seed: int = 0
    holdout: Optional[str] = None
    stratify_by_type: bool = False

    def __post_init__(self) -> None:
        if self.mode == "random":
            if not 0.0 < self.train_fraction < 1.0:
                raise ValueError("train_fraction must be in (0, 1)")
        elif self.mode == "leave_one_out":
            if not self.holdout:
                raise ValueError("leave_one_out needs a holdout ontology id")
        else:
            raise ValueError(f"unknown split mode {self.mode!r}")


def assemble(
    generated: Sequence[tuple[MisalignmentCase, CaseArtifacts]],
    config: GenerationConfig,
    seed: int,
    prefixes_by_ontology: Optional[dict[str, dict[str, str]]] = None,
) -> list[DatasetTriple]:
    """One triple per case. Pitfall cases take the pitfall set's questions
    as the target; aligned cases sample n questions uniformly (without
    replacement) from the pooled normal questions."""
    triples = []
    for case, artifacts in generated:
        prefixes = None
        if prefixes_by_ontology is not None:
            prefixes = prefixes_by_ontology.get(case.term.ontology_id)
        if case.assigned_type is MisalignmentType.ALIGNED:
            pool = [q for cq_set in artifacts.cq_sets for q in cq_set.questions]
            rng = random.Random(derive_seed(seed, "target", case.term.term.value))
            picked = sorted(rng.sample(range(len(pool)), config.n))
            target = tuple(pool[i] for i in picked)
        else:
            pitfall_sets = [s for s in artifacts.cq_sets
                            if s.role is Role.SEMANTIC_PITFALL]
            if len(pitfall_sets) != 1:
                raise ValueError(
                    f"{case.term.term}: expected exactly one pitfall question set, "
                    f"found {len(pitfall_sets)}")
            target = pitfall_sets[0].questions
        triples.append(DatasetTriple(
            term_iri=case.term.term.value,
            term_kind=case.term.kind,
            ontology_id=case.term.ontology_id,
            assigned_type=case.assigned_type,
            input_axioms_text=tuple(
                serialize_axiom(ax, prefixes) for ax in case.input_axioms),
            definition=artifacts.definition,
            target_cqs=target,
            cq_normal_all=tuple(
                (s.axiom_index, s.questions) for s in artifacts.cq_sets),
            pitfall_axiom_index=case.pitfall_axiom_index,
            seed=case.rng_seed,
        ))
    return triples


def split(
    triples: Sequence[DatasetTriple],
    spec: SplitSpec,
) -> tuple[list[DatasetTriple], list[DatasetTriple]]:
    if spec.mode == "leave_one_out":
        present = {t.ontology_id for t in triples}
        if spec.holdout not in present:
            raise ValueError(f"holdout ontology {spec.holdout!r} not in dataset "
                             f"(present: {sorted(present)})")
        test = [t for t in triples if t.ontology_id == spec.holdout]
        train = [t for t in triples if t.ontology_id != spec.holdout]
        return train, test

    if spec.stratify_by_type:
        train: list[DatasetTriple] = []
        test: list[DatasetTriple] = []
        for case_type in MisalignmentType:
            bucket = [t for t in triples if t.assigned_type is case_type]
            b_train, b_test = _random_split(bucket, spec.train_fraction,
                                            derive_seed(spec.seed, case_type.value))
            train.extend(b_train)
            test.extend(b_test)
        return train, test
    return _random_split(list(triples), spec.train_fraction, spec.seed)


def _random_split(bucket, fraction, seed):
    indices = list(range(len(bucket)))
    random.Random(seed).shuffle(indices)
    k = round(fraction * len(bucket))
    train_idx = indices[:k]
    test_idx = indices[k:]
    return [bucket[i] for i in train_idx], [bucket[i] for i in test_idx]


def export_jsonl(
    triples: Sequence[DatasetTriple],
    path: Union[str, Path],
    seed: Optional[int] = None,
    config_hash: Optional[str] = None,
    excluded: Optional[Sequence[dict]] = None,
) -> Path:
    """Write the triples and a ``<stem>.manifest.json`` next to them.
    Returns the manifest path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for triple in triples:
            handle.write(json.dumps(triple.to_json_dict(), ensure_ascii=False))
            handle.write("\n")

    by_type: dict[str, int] = {t.value: 0 for t in MisalignmentType}
    by_ontology: dict[str, int] = {}
    for triple in triples:
        by_type[triple.assigned_type.value] += 1
        by_ontology[triple.ontology_id] = by_ontology.get(triple.ontology_id, 0) + 1
    manifest = {
        "file": path.name,
        "records": len(triples),
        "by_type": by_type,
        "by_ontology": dict(sorted(by_ontology.items())),
        "seed": seed,
        "tool_version": __version__,
        "config_hash": config_hash,
        "excluded_cases": list(excluded or []),
        "fine_tuning": FINE_TUNING_DEFAULTS,
    }
    manifest_path = path.with_name(path.stem + ".manifest.json")
    manifest_path.write_text(
        json.dumps(manifest, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return manifest_path


def import_jsonl(path: Union[str, Path]) -> list[DatasetTriple]:
    triples = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                triples.append(DatasetTriple.from_json_dict(json.loads(line)))
    return triples


# --------------------------------------------------------------------------
# Corpus statistics
# --------------------------------------------------------------------------


@dataclass
class CorpusStats:
    per_ontology: dict[str, dict[str, int]] = field(default_factory=dict)
    per_type: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(v["classes"] + v["properties"] for v in self.per_ontology.values())

    def ontology_total(self, ontology_id: str) -> int:
        v = self.per_ontology[ontology_id]
        return v["classes"] + v["properties"]

    def type_total(self, type_value: str) -> int:
        v = self.per_type[type_value]
        return v["classes"] + v["properties"]


def stats(triples: Sequence[DatasetTriple]) -> CorpusStats:
    result = CorpusStats(
        per_type={t.value: {"classes": 0, "properties": 0} for t in MisalignmentType})
    for triple in triples:
        bucket = "classes" if triple.term_kind is TermKind.CLASS else "properties"
        onto = result.per_ontology.setdefault(
            triple.ontology_id, {"classes": 0, "properties": 0})
        onto[bucket] += 1
        result.per_type[triple.assigned_type.value][bucket] += 1
    result.per_ontology = dict(sorted(result.per_ontology.items()))
    return result
