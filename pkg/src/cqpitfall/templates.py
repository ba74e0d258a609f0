"""Question-template registry.

Templates live in an editable JSON data file mapping a relation key to a
pattern description and 3 to 7 template strings with ``{A}``/``{B}``/
``{C}``/``{D}`` placeholders. Subsumption and equivalence axioms whose
object contains a quantified restriction use a separate ``*_restriction``
key so the templates can speak about the property and filler.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .model import (
    AllValuesFrom,
    Axiom,
    ClassExpr,
    Relation,
    SomeValuesFrom,
    expr_children,
)

MIN_TEMPLATES = 3
MAX_TEMPLATES = 7

_RELATION_KEYS = {
    Relation.SUB_CLASS_OF: "subclass_of",
    Relation.EQUIVALENT_TO: "equivalent_to",
    Relation.DISJOINT_WITH: "disjoint_with",
    Relation.DOMAIN: "domain",
    Relation.RANGE: "range",
    Relation.SUB_PROPERTY_OF: "sub_property_of",
    Relation.INVERSE_OF: "inverse_of",
    Relation.CHARACTERISTIC: "characteristic",
}

_REFINABLE = (Relation.SUB_CLASS_OF, Relation.EQUIVALENT_TO)


@dataclass(frozen=True)
class CqTemplate:
    relation_key: str
    text: str


@dataclass(frozen=True)
class RelationEntry:
    key: str
    pattern: str
    templates: tuple[CqTemplate, ...]


class TemplateRegistryError(ValueError):
    pass


class TemplateRegistry:
    """Immutable after load; shared safely across threads."""

    def __init__(self, entries: dict[str, RelationEntry]):
        self._entries = dict(entries)
        self._validate()

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "TemplateRegistry":
        if path is None:
            raw = resources.files("cqpitfall.data").joinpath("cq_templates.json").read_text("utf-8")
        else:
            raw = Path(path).read_text("utf-8")
        data = json.loads(raw)
        entries = {}
        for key, entry in data.items():
            templates = tuple(CqTemplate(key, t) for t in entry["templates"])
            entries[key] = RelationEntry(key, entry.get("pattern", key), templates)
        return cls(entries)

    def _validate(self) -> None:
        missing = [k for k in _RELATION_KEYS.values() if k not in self._entries]
        missing += [f"{k}_restriction" for k in ("subclass_of", "equivalent_to")
                    if f"{k}_restriction" not in self._entries]
        if missing:
            raise TemplateRegistryError(f"missing template entries: {missing}")
        for key, entry in self._entries.items():
            if not MIN_TEMPLATES <= len(entry.templates) <= MAX_TEMPLATES:
                raise TemplateRegistryError(
                    f"{key}: {len(entry.templates)} templates, need "
                    f"{MIN_TEMPLATES}-{MAX_TEMPLATES}")
            for tpl in entry.templates:
                if not tpl.text.strip():
                    raise TemplateRegistryError(f"{key}: empty template")

    def key_for(self, axiom: Axiom) -> str:
        key = _RELATION_KEYS[axiom.relation]
        if axiom.relation in _REFINABLE and contains_quantifier(axiom.class_expr):
            key = f"{key}_restriction"
        return key

    def entry_for(self, axiom: Axiom) -> RelationEntry:
        return self._entries[self.key_for(axiom)]

    def templates_for(self, axiom: Axiom) -> tuple[CqTemplate, ...]:
        return self.entry_for(axiom).templates

    def keys(self) -> list[str]:
        return list(self._entries)

    def entry(self, key: str) -> RelationEntry:
        return self._entries[key]


def contains_quantifier(expr: Optional[ClassExpr]) -> bool:
    if expr is None:
        return False
    if isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
        return True
    return any(contains_quantifier(c) for c in expr_children(expr))


def first_quantifier(expr: Optional[ClassExpr]) -> Optional[Union[SomeValuesFrom, AllValuesFrom]]:
    """Preorder-first quantified restriction, used to bind {C}/{D}."""
    if expr is None:
        return None
    if isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
        return expr
    for child in expr_children(expr):
        hit = first_quantifier(child)
        if hit is not None:
            return hit
    return None
