"""Canonical single-line functional-syntax serialization.

``parse_ontology(serialize_axiom(x))`` reproduces ``x`` for every axiom in
the supported subset; tests enforce the round trip on randomly generated
trees.
"""

from __future__ import annotations

from typing import Optional

from .model import (
    AllValuesFrom,
    Axiom,
    BUILTIN_PREFIXES,
    ClassExpr,
    ComplementOf,
    HasValue,
    IntersectionOf,
    Iri,
    Named,
    Opaque,
    Relation,
    SomeValuesFrom,
    UnionOf,
)


def serialize_expr(expr: ClassExpr, prefixes: Optional[dict[str, str]] = None) -> str:
    prefixes = _with_builtins(prefixes)
    return _expr(expr, prefixes)


def serialize_axiom(axiom: Axiom, prefixes: Optional[dict[str, str]] = None) -> str:
    """Render one axiom in its canonical single-line form."""
    prefixes = _with_builtins(prefixes)
    subject = axiom.subject.compact(prefixes)
    rel = axiom.relation
    if rel is Relation.CHARACTERISTIC:
        return f"{axiom.characteristic}({subject})"
    if rel is Relation.SUB_CLASS_OF:
        return f"SubClassOf({subject} {_expr(axiom.obj, prefixes)})"
    if rel is Relation.EQUIVALENT_TO:
        return f"EquivalentClasses({subject} {_expr(axiom.obj, prefixes)})"
    if rel is Relation.DISJOINT_WITH:
        return f"DisjointClasses({subject} {_expr(axiom.obj, prefixes)})"
    if rel is Relation.DOMAIN:
        kw = "DataPropertyDomain" if axiom.data_property else "ObjectPropertyDomain"
        return f"{kw}({subject} {_expr(axiom.obj, prefixes)})"
    if rel is Relation.RANGE:
        kw = "DataPropertyRange" if axiom.data_property else "ObjectPropertyRange"
        return f"{kw}({subject} {_expr(axiom.obj, prefixes)})"
    if rel is Relation.SUB_PROPERTY_OF:
        kw = "SubDataPropertyOf" if axiom.data_property else "SubObjectPropertyOf"
        return f"{kw}({subject} {axiom.obj.compact(prefixes)})"
    if rel is Relation.INVERSE_OF:
        return f"InverseObjectProperties({subject} {axiom.obj.compact(prefixes)})"
    raise ValueError(f"unhandled relation {rel}")


def _expr(expr: ClassExpr, prefixes: dict[str, str]) -> str:
    if isinstance(expr, Named):
        return expr.iri.compact(prefixes)
    if isinstance(expr, SomeValuesFrom):
        return f"ObjectSomeValuesFrom({expr.prop.compact(prefixes)} {_expr(expr.filler, prefixes)})"
    if isinstance(expr, AllValuesFrom):
        return f"ObjectAllValuesFrom({expr.prop.compact(prefixes)} {_expr(expr.filler, prefixes)})"
    if isinstance(expr, IntersectionOf):
        inner = " ".join(_expr(o, prefixes) for o in expr.operands)
        return f"ObjectIntersectionOf({inner})"
    if isinstance(expr, UnionOf):
        inner = " ".join(_expr(o, prefixes) for o in expr.operands)
        return f"ObjectUnionOf({inner})"
    if isinstance(expr, ComplementOf):
        return f"ObjectComplementOf({_expr(expr.operand, prefixes)})"
    if isinstance(expr, HasValue):
        return f"ObjectHasValue({expr.prop.compact(prefixes)} {expr.individual.compact(prefixes)})"
    if isinstance(expr, Opaque):
        return expr.text
    raise TypeError(f"not a class expression: {expr!r}")


def manchester(expr: ClassExpr, prefixes: Optional[dict[str, str]] = None) -> str:
    """Compact human-readable rendering used when binding template
    placeholders (``eats only plant``, ``(a or b)``)."""
    prefixes = _with_builtins(prefixes)
    return _manchester(expr, prefixes, top=True)


def _manchester(expr: ClassExpr, prefixes: dict[str, str], top: bool = False) -> str:
    def name(iri: Iri) -> str:
        return iri.local_name

    def atom(sub: ClassExpr) -> str:
        rendered = _manchester(sub, prefixes)
        if isinstance(sub, (Named, Opaque)):
            return rendered
        return rendered if rendered.startswith("(") else f"({rendered})"

    if isinstance(expr, Named):
        return name(expr.iri)
    if isinstance(expr, SomeValuesFrom):
        return f"{name(expr.prop)} some {atom(expr.filler)}"
    if isinstance(expr, AllValuesFrom):
        return f"{name(expr.prop)} only {atom(expr.filler)}"
    if isinstance(expr, IntersectionOf):
        inner = " and ".join(_manchester(o, prefixes) for o in expr.operands)
        return inner if top else f"({inner})"
    if isinstance(expr, UnionOf):
        inner = " or ".join(_manchester(o, prefixes) for o in expr.operands)
        return inner if top else f"({inner})"
    if isinstance(expr, ComplementOf):
        return f"not {atom(expr.operand)}"
    if isinstance(expr, HasValue):
        return f"{name(expr.prop)} value {name(expr.individual)}"
    if isinstance(expr, Opaque):
        return expr.text
    raise TypeError(f"not a class expression: {expr!r}")


def _with_builtins(prefixes: Optional[dict[str, str]]) -> dict[str, str]:
    merged = dict(BUILTIN_PREFIXES)
    if prefixes:
        merged.update(prefixes)
    return merged
