"""Prompt construction and response parsing for the text backend.

The two prompt skeletons are fixed strings; only the marked slots are
substituted. Golden-file tests pin them byte for byte, so any edit here
must update ``tests/golden`` as well.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Optional, TYPE_CHECKING

from .model import Axiom, Iri, Relation, TermKind
from .serializer import manchester, serialize_axiom
from .templates import TemplateRegistry, first_quantifier

if TYPE_CHECKING:
    from .misalign import MisalignmentCase

CQ_PROMPT_SKELETON = (
    "As an ontology engineer, generate a list of competency questions based on the "
    "following axiom and one-shot example. Definition of competency questions (CQs): "
    "the questions that outline the scope of ontology and provide an idea about the "
    "knowledge that needs to be entailed in the ontology. Avoid using narrative "
    "questions + axioms. Don’t generate unnecessary text.\n"
    "Just return {n} distinct CQs separated by '|'. Use the one-shot and known "
    "templates only as inspiration — do not copy them directly. Rephrase and vary "
    "the structure of each CQ while maintaining its logical intent.\n"
    "Generate competency questions including axioms and current template.\n"
    "Template:{template}\n"
    "{example}\n"
    "Axiom: {axiom}\n"
    "Generated CQs:"
)

DEFINITION_PROMPT_SKELETON = (
    "You are an ontology engineer.\n"
    "Generate a {type} description including information of axiom set.\n"
    "The description should be concise and informative, providing a clear "
    "understanding of the {type}’s purpose and characteristics.\n"
    "Don’t generate unnecessary text. Just generate {type} description only.\n"
    "{type} name: {name}\n"
    "Axiom set: {axiom set}\n"
    "For example, {examples}\n"
    "Now, generate the description."
)

AXIOM_SET_SEPARATOR = "; "

PLACEHOLDERS = ("{A}", "{B}", "{C}", "{D}")

_CHARACTERISTIC_LABELS = {
    "FunctionalObjectProperty": "functional",
    "InverseFunctionalObjectProperty": "inverse functional",
    "TransitiveObjectProperty": "transitive",
    "SymmetricObjectProperty": "symmetric",
    "AsymmetricObjectProperty": "asymmetric",
    "ReflexiveObjectProperty": "reflexive",
    "IrreflexiveObjectProperty": "irreflexive",
    "FunctionalDataProperty": "functional",
}


class PromptError(ValueError):
    pass


class EmptyResponse(ValueError):
    """Backend returned nothing usable."""


class ItemCountMismatch(ValueError):
    """Wrong number of '|'-separated items; the orchestrator retries."""

    def __init__(self, found: int, expected: int):
        super().__init__(f"expected {expected} questions, found {found}")
        self.found = found
        self.expected = expected


@lru_cache(maxsize=None)
def _load_data(name: str) -> dict:
    raw = resources.files("cqpitfall.data").joinpath(name).read_text("utf-8")
    return json.loads(raw)


def characteristic_label(keyword: str) -> str:
    return _CHARACTERISTIC_LABELS.get(keyword, keyword)


def bind_placeholders(axiom: Axiom, prefixes: Optional[dict[str, str]] = None) -> dict[str, str]:
    """Values for {A}/{B}/{C}/{D} derived from the axiom shape."""
    bindings = {"{A}": axiom.subject.local_name}
    if axiom.relation is Relation.CHARACTERISTIC:
        bindings["{B}"] = characteristic_label(axiom.characteristic)
        return bindings
    if isinstance(axiom.obj, Iri):
        bindings["{B}"] = axiom.obj.local_name
        return bindings
    bindings["{B}"] = manchester(axiom.obj, prefixes)
    quant = first_quantifier(axiom.class_expr)
    if quant is not None:
        bindings["{C}"] = quant.prop.local_name
        bindings["{D}"] = manchester(quant.filler, prefixes)
    return bindings


def apply_template(text: str, bindings: dict[str, str]) -> str:
    for placeholder, value in bindings.items():
        text = text.replace(placeholder, value)
    leftover = [p for p in PLACEHOLDERS if p in text]
    if leftover:
        raise PromptError(f"unbound placeholders {leftover} in template {text!r}")
    return text


def build_cq_prompt(
    axiom: Axiom,
    registry: TemplateRegistry,
    n: int,
    prefixes: Optional[dict[str, str]] = None,
) -> str:
    """Assemble the question-generation prompt for one axiom."""
    templates = registry.templates_for(axiom)
    if not templates:
        raise PromptError(f"no templates for relation {axiom.relation.value}")
    bindings = bind_placeholders(axiom, prefixes)
    bullet_lines = "".join(
        f"\n- {apply_template(t.text, bindings)}" for t in templates
    )
    example = _render_one_shot(registry.key_for(axiom))
    return (
        CQ_PROMPT_SKELETON
        .replace("{n}", str(n))
        .replace("{template}", bullet_lines)
        .replace("{example}", example)
        .replace("{axiom}", serialize_axiom(axiom, prefixes))
    )


def _render_one_shot(key: str) -> str:
    examples = _load_data("cq_examples.json")
    if key not in examples:
        raise PromptError(f"no one-shot example for relation key {key}")
    ex = examples[key]
    return (
        "One-shot example:\n"
        f"Axiom: {ex['axiom']}\n"
        f"Generated CQs: {' | '.join(ex['cqs'])}"
    )


def build_definition_prompt(
    case: "MisalignmentCase",
    prefixes: Optional[dict[str, str]] = None,
) -> str:
    """Assemble the definition prompt from the case's definition-source
    axioms (never the input axioms)."""
    if not case.definition_source_axioms:
        raise PromptError("definition source is empty")
    type_word = "class" if case.term.kind is TermKind.CLASS else "property"
    axiom_set = AXIOM_SET_SEPARATOR.join(
        serialize_axiom(ax, prefixes) for ax in case.definition_source_axioms
    )
    return (
        DEFINITION_PROMPT_SKELETON
        .replace("{type}", type_word)
        .replace("{name}", case.term.term.local_name)
        .replace("{axiom set}", axiom_set)
        .replace("{examples}", _render_definition_example(type_word))
    )


def _render_definition_example(type_word: str) -> str:
    data = _load_data("definition_examples.json")
    ex = data[type_word]
    return (
        f'given the axiom set "{ex["axiom_set"]}", the {type_word} '
        f'"{ex["name"]}" can be described as: "{ex["description"]}"'
    )


def parse_cq_response(raw: str, n: int) -> list[str]:
    """Split a backend response on '|', trim, and require exactly ``n``
    questions."""
    if raw is None or not raw.strip():
        raise EmptyResponse("backend returned an empty response")
    items = [part.strip() for part in raw.split("|")]
    items = [part for part in items if part]
    if len(items) != n:
        raise ItemCountMismatch(len(items), n)
    return items
