"""Seeded random generators for expressions, axioms and terms.

Used by the round-trip, swap and injection property tests; everything is
driven by an explicit ``random.Random`` so failures reproduce exactly.
"""

from __future__ import annotations

import random

from cqpitfall.model import (
    AllValuesFrom,
    Axiom,
    CHARACTERISTIC_KEYWORDS,
    ClassExpr,
    ComplementOf,
    DEFAULT_NAMESPACE,
    HasValue,
    IntersectionOf,
    Iri,
    Named,
    Opaque,
    Relation,
    SomeValuesFrom,
    TermKind,
    TermRecord,
    UnionOf,
)

CLASS_NAMES = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"]
PROP_NAMES = ["p", "q", "r", "s-prop", "t.prop"]
INDIVIDUAL_NAMES = ["ind1", "ind2", "ind3"]


def iri(name: str) -> Iri:
    return Iri(DEFAULT_NAMESPACE + name)


def random_class_iri(rng: random.Random) -> Iri:
    return iri(rng.choice(CLASS_NAMES))


def random_prop_iri(rng: random.Random) -> Iri:
    return iri(rng.choice(PROP_NAMES))


def random_opaque(rng: random.Random) -> Opaque:
    # Text is written in the parser's canonical token spelling so the
    # round trip is the identity.
    kind = rng.randrange(3)
    if kind == 0:
        return Opaque(f"ObjectMinCardinality({rng.randint(0, 9)} "
                      f":{rng.choice(PROP_NAMES)} :{rng.choice(CLASS_NAMES)})")
    if kind == 1:
        return Opaque(f"ObjectOneOf(:{rng.choice(INDIVIDUAL_NAMES)} "
                      f":{rng.choice(INDIVIDUAL_NAMES)})")
    return Opaque(f"DataSomeValuesFrom(:{rng.choice(PROP_NAMES)} xsd:string)")


def random_expr(rng: random.Random, max_depth: int = 4,
                allow_opaque: bool = True) -> ClassExpr:
    if max_depth <= 1:
        roll = rng.randrange(6 if allow_opaque else 5)
        if roll <= 3:
            return Named(random_class_iri(rng))
        if roll == 4:
            return HasValue(random_prop_iri(rng),
                            iri(rng.choice(INDIVIDUAL_NAMES)))
        return random_opaque(rng)
    roll = rng.randrange(10)
    if roll <= 2:
        return Named(random_class_iri(rng))
    if roll == 3:
        return SomeValuesFrom(random_prop_iri(rng),
                              random_expr(rng, max_depth - 1, allow_opaque))
    if roll == 4:
        return AllValuesFrom(random_prop_iri(rng),
                             random_expr(rng, max_depth - 1, allow_opaque))
    if roll in (5, 6):
        count = rng.randint(2, 3)
        ops = tuple(random_expr(rng, max_depth - 1, allow_opaque)
                    for _ in range(count))
        return IntersectionOf(ops) if roll == 5 else UnionOf(ops)
    if roll == 7:
        return ComplementOf(random_expr(rng, max_depth - 1, allow_opaque))
    if roll == 8:
        return HasValue(random_prop_iri(rng), iri(rng.choice(INDIVIDUAL_NAMES)))
    if allow_opaque:
        return random_opaque(rng)
    return Named(random_class_iri(rng))


def random_axiom(rng: random.Random, subject: Iri | None = None,
                 allow_opaque: bool = True) -> Axiom:
    relation = rng.choice(list(Relation))
    if relation in (Relation.SUB_CLASS_OF, Relation.EQUIVALENT_TO,
                    Relation.DISJOINT_WITH):
        return Axiom(subject or random_class_iri(rng), relation,
                     random_expr(rng, allow_opaque=allow_opaque))
    if relation is Relation.DOMAIN:
        return Axiom(subject or random_prop_iri(rng), relation,
                     random_expr(rng, allow_opaque=allow_opaque),
                     data_property=rng.random() < 0.3)
    if relation is Relation.RANGE:
        if rng.random() < 0.3:
            return Axiom(subject or random_prop_iri(rng), relation,
                         Named(Iri("http://www.w3.org/2001/XMLSchema#string")),
                         data_property=True)
        return Axiom(subject or random_prop_iri(rng), relation,
                     random_expr(rng, allow_opaque=allow_opaque))
    if relation is Relation.SUB_PROPERTY_OF:
        return Axiom(subject or random_prop_iri(rng), relation,
                     random_prop_iri(rng), data_property=rng.random() < 0.3)
    if relation is Relation.INVERSE_OF:
        return Axiom(subject or random_prop_iri(rng), relation,
                     random_prop_iri(rng))
    return Axiom(subject or random_prop_iri(rng), Relation.CHARACTERISTIC,
                 characteristic=rng.choice(CHARACTERISTIC_KEYWORDS))


def random_term(rng: random.Random, min_axioms: int = 1, max_axioms: int = 6,
                ontology_id: str = "synthetic") -> TermRecord:
    name = f"term{rng.randrange(10_000)}"
    subject = iri(name)
    count = rng.randint(min_axioms, max_axioms)
    class_like = rng.random() < 0.7
    axioms = []
    for _ in range(count):
        if class_like:
            relation = rng.choice([Relation.SUB_CLASS_OF, Relation.EQUIVALENT_TO,
                                   Relation.DISJOINT_WITH])
            axioms.append(Axiom(subject, relation, random_expr(rng)))
        else:
            axioms.append(random_axiom(rng, subject=subject))
    kind = TermKind.CLASS if class_like else (
        TermKind.DATA_PROPERTY if any(a.data_property for a in axioms)
        else TermKind.OBJECT_PROPERTY)
    return TermRecord(term=subject, kind=kind, axioms=tuple(axioms),
                      ontology_id=ontology_id)
