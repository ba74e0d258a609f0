"""Core data model: IRIs, class expressions, axioms, and term records.

The expression language is the OWL subset needed for misalignment work:
named classes, existential/universal restrictions, boolean intersection/
union/complement, and has-value. Anything else an ontology file throws at
us is preserved verbatim in an :class:`Opaque` leaf so real files ingest
cleanly without widening the mutation surface.

All node types are immutable and hashable; equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

# Prefixes every document can use without declaring them. The empty prefix
# maps to a stable default namespace so snippet-style inputs (a bare
# "SubClassOf(:a :b)") parse without boilerplate.
DEFAULT_NAMESPACE = "https://example.org/ontology#"
BUILTIN_PREFIXES = {
    "": DEFAULT_NAMESPACE,
    "owl": "http://www.w3.org/2002/07/owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

_LOCAL_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*$")


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI. Prefixed names are resolved before construction."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")

    @property
    def local_name(self) -> str:
        """Fragment after '#', else the last path segment."""
        if "#" in self.value:
            return self.value.rsplit("#", 1)[1]
        return self.value.rstrip("/").rsplit("/", 1)[-1]

    def compact(self, prefixes: dict[str, str]) -> str:
        """Render as a prefixed name if a declared namespace matches,
        otherwise as ``<iri>``. Longest namespace wins."""
        best: Optional[tuple[str, str]] = None
        for prefix, ns in prefixes.items():
            if self.value.startswith(ns) and (best is None or len(ns) > len(best[1])):
                local = self.value[len(ns):]
                if _LOCAL_RE.match(local) or local == "":
                    best = (prefix, ns)
        if best is None:
            return f"<{self.value}>"
        prefix = best[0]
        return f"{prefix}:{self.value[len(best[1]):]}"

    def __str__(self) -> str:
        return self.value


class TermKind(Enum):
    CLASS = "class"
    OBJECT_PROPERTY = "object_property"
    DATA_PROPERTY = "data_property"

    @property
    def is_property(self) -> bool:
        return self is not TermKind.CLASS


# --------------------------------------------------------------------------
# Class expressions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Named:
    """A named class (or datatype used in a range position)."""

    iri: Iri


@dataclass(frozen=True)
class SomeValuesFrom:
    """Existential restriction: ``prop some filler``."""

    prop: Iri
    filler: "ClassExpr"


@dataclass(frozen=True)
class AllValuesFrom:
    """Universal restriction: ``prop only filler``."""

    prop: Iri
    filler: "ClassExpr"


@dataclass(frozen=True)
class IntersectionOf:
    operands: tuple["ClassExpr", ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("intersection needs at least 2 operands")


@dataclass(frozen=True)
class UnionOf:
    operands: tuple["ClassExpr", ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("union needs at least 2 operands")


@dataclass(frozen=True)
class ComplementOf:
    operand: "ClassExpr"


@dataclass(frozen=True)
class HasValue:
    prop: Iri
    individual: Iri


@dataclass(frozen=True)
class Opaque:
    """An unsupported construct kept verbatim (normalized token spelling).

    Never eligible for construct swapping; serializes back to its text.
    """

    text: str


ClassExpr = Union[
    Named, SomeValuesFrom, AllValuesFrom, IntersectionOf, UnionOf,
    ComplementOf, HasValue, Opaque,
]

CLASS_EXPR_TYPES = (
    Named, SomeValuesFrom, AllValuesFrom, IntersectionOf, UnionOf,
    ComplementOf, HasValue, Opaque,
)


def expr_children(expr: ClassExpr) -> tuple[ClassExpr, ...]:
    """Child expressions of a node, in a fixed left-to-right order."""
    if isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
        return (expr.filler,)
    if isinstance(expr, (IntersectionOf, UnionOf)):
        return expr.operands
    if isinstance(expr, ComplementOf):
        return (expr.operand,)
    return ()


def expr_depth(expr: ClassExpr) -> int:
    children = expr_children(expr)
    if not children:
        return 1
    return 1 + max(expr_depth(c) for c in children)


# --------------------------------------------------------------------------
# Axioms
# --------------------------------------------------------------------------


class Relation(Enum):
    SUB_CLASS_OF = "SubClassOf"
    EQUIVALENT_TO = "EquivalentTo"
    DISJOINT_WITH = "DisjointWith"
    DOMAIN = "Domain"
    RANGE = "Range"
    SUB_PROPERTY_OF = "SubPropertyOf"
    INVERSE_OF = "InverseOf"
    CHARACTERISTIC = "Characteristic"


# Relations whose object is a class expression (vs a plain IRI).
CLASS_EXPR_RELATIONS = frozenset({
    Relation.SUB_CLASS_OF,
    Relation.EQUIVALENT_TO,
    Relation.DISJOINT_WITH,
    Relation.DOMAIN,
    Relation.RANGE,
})

IRI_RELATIONS = frozenset({Relation.SUB_PROPERTY_OF, Relation.INVERSE_OF})

# Property-characteristic keywords we accept (full functional-syntax names,
# so serialization is the identity on them).
CHARACTERISTIC_KEYWORDS = (
    "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty",
    "TransitiveObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "FunctionalDataProperty",
)


@dataclass(frozen=True)
class Axiom:
    """One statement about a subject term.

    ``characteristic`` holds the full keyword (e.g. ``TransitiveObjectProperty``)
    when ``relation`` is CHARACTERISTIC, in which case ``obj`` is None.
    ``data_property`` distinguishes the DataProperty* spellings of domain,
    range and sub-property axioms so serialization is faithful.
    """

    subject: Iri
    relation: Relation
    obj: Union[ClassExpr, Iri, None] = None
    characteristic: Optional[str] = None
    data_property: bool = False
    source_span: Optional[tuple[int, int]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.relation is Relation.CHARACTERISTIC:
            if self.obj is not None or not self.characteristic:
                raise ValueError("characteristic axioms carry a name and no object")
        elif self.relation in IRI_RELATIONS:
            if not isinstance(self.obj, Iri):
                raise ValueError(f"{self.relation.value} requires an IRI object")
        else:
            if not isinstance(self.obj, CLASS_EXPR_TYPES):
                raise ValueError(f"{self.relation.value} requires a class expression object")

    @property
    def class_expr(self) -> Optional[ClassExpr]:
        """The object as a class expression, when it is one."""
        if isinstance(self.obj, CLASS_EXPR_TYPES):
            return self.obj
        return None


@dataclass(frozen=True)
class TermRecord:
    """A term together with the axioms asserted on it, in source order."""

    term: Iri
    kind: TermKind
    axioms: tuple[Axiom, ...]
    ontology_id: str

    def __post_init__(self) -> None:
        for ax in self.axioms:
            if ax.subject != self.term:
                raise ValueError(f"axiom subject {ax.subject} != term {self.term}")


@dataclass
class Ontology:
    """A parsed ontology: prefix map, term records, and the named-class
    hierarchy derived from SubClassOf/SubPropertyOf axioms."""

    id: str
    prefixes: dict[str, str]
    terms: list[TermRecord]
    hierarchy: dict[Iri, tuple[set[Iri], set[Iri]]] = field(default_factory=dict)

    def term_map(self) -> dict[Iri, TermRecord]:
        return {t.term: t for t in self.terms}

    def parents(self, iri: Iri) -> set[Iri]:
        return self.hierarchy.get(iri, (set(), set()))[0]

    def children(self, iri: Iri) -> set[Iri]:
        return self.hierarchy.get(iri, (set(), set()))[1]
