from __future__ import annotations

import random

import pytest

from cqpitfall.model import (
    AllValuesFrom,
    Axiom,
    DEFAULT_NAMESPACE,
    IntersectionOf,
    Iri,
    Named,
    Opaque,
    Relation,
    SomeValuesFrom,
    TermKind,
)
from cqpitfall.parser import (
    OfnSyntaxError,
    UndeclaredPrefixError,
    parse_axiom_text,
    parse_ontology,
    parse_with_warnings,
)
from cqpitfall.serializer import serialize_axiom

from gen_random import random_axiom


def _iri(name: str) -> Iri:
    return Iri(DEFAULT_NAMESPACE + name)


def test_single_axiom_snippet():
    ontology = parse_ontology("SubClassOf(:lion :carnivore)", "t")
    assert len(ontology.terms) == 1
    term = ontology.terms[0]
    assert term.term == _iri("lion")
    assert term.axioms == (
        Axiom(_iri("lion"), Relation.SUB_CLASS_OF, Named(_iri("carnivore"))),
    )


def test_herbivore_axiom_ast(animals_by_name):
    herb = animals_by_name["herbivore"]
    equivalences = [ax for ax in herb.axioms if ax.relation is Relation.EQUIVALENT_TO]
    assert len(equivalences) == 1
    ns = "https://example.org/animals#"
    expected = IntersectionOf((
        AllValuesFrom(Iri(ns + "eats"), Named(Iri(ns + "plant"))),
        AllValuesFrom(Iri(ns + "eats"),
                      SomeValuesFrom(Iri(ns + "is-part-of"), Named(Iri(ns + "plant")))),
    ))
    assert equivalences[0].obj == expected


def test_prefix_only_file_has_no_terms():
    ontology = parse_ontology("Prefix(ex:=<http://example.com#>)", "t")
    assert ontology.terms == []
    assert ontology.prefixes == {"ex": "http://example.com#"}


def test_empty_file():
    assert parse_ontology("", "t").terms == []


def test_declared_prefix_resolution():
    text = "Prefix(zoo:=<http://zoo.example/ns#>)\nSubClassOf(zoo:lion zoo:cat)"
    ontology = parse_ontology(text, "t")
    assert ontology.terms[0].term == Iri("http://zoo.example/ns#lion")


def test_undeclared_prefix_fails_with_position():
    with pytest.raises(UndeclaredPrefixError) as err:
        parse_ontology("SubClassOf(zoo:lion :cat)", "t")
    assert err.value.prefix == "zoo"
    assert err.value.line == 1
    assert err.value.col == 12


def test_syntax_error_carries_line_and_column():
    with pytest.raises(OfnSyntaxError) as err:
        parse_ontology("SubClassOf(:a :b)\nSubClassOf(:a", "t")
    assert err.value.line == 2


def test_unknown_axiom_kind_warns_not_errors():
    ontology, warnings = parse_with_warnings("FancyNewAxiom(:a :b)", "t")
    assert ontology.terms == []
    assert len(warnings) == 1
    assert "unknown axiom kind" in warnings[0].reason


def test_annotation_assertions_dropped(animals_warnings):
    reasons = [w.reason for w in animals_warnings]
    assert any("annotation assertion" in r for r in reasons)
    assert any("ABox" in r for r in reasons)


def test_unsupported_expression_becomes_opaque():
    ontology, warnings = parse_with_warnings(
        "SubClassOf(:a ObjectExactCardinality(1 :p :b))", "t")
    axiom = ontology.terms[0].axioms[0]
    assert axiom.obj == Opaque("ObjectExactCardinality(1 :p :b)")
    assert any("kept verbatim" in w.reason for w in warnings)


def test_opaque_literal_spacing_normalized():
    text = 'SubClassOf(:a DataHasValue(:age "5"^^xsd:integer))'
    ontology = parse_ontology(text, "t")
    assert ontology.terms[0].axioms[0].obj == Opaque('DataHasValue(:age "5"^^xsd:integer)')


def test_nary_equivalence_decomposes_pairwise():
    ontology = parse_ontology("EquivalentClasses(:a :b :c)", "t")
    axioms = {(ax.subject.local_name, ax.obj.iri.local_name)
              for term in ontology.terms for ax in term.axioms}
    assert axioms == {("a", "b"), ("a", "c"), ("b", "c")}


def test_ontology_wrapper_and_comments():
    text = (
        "Prefix(:=<http://x#>)\n"
        "Ontology(<http://x>\n"
        "# a comment\n"
        "SubClassOf(:a :b)\n"
        ")\n"
    )
    ontology = parse_ontology(text, "t")
    assert len(ontology.terms[0].axioms) == 1


def test_axiom_annotations_are_dropped_with_warning():
    text = 'SubClassOf(Annotation(rdfs:comment "why") :a :b)'
    ontology, warnings = parse_with_warnings(text, "t")
    assert len(ontology.terms[0].axioms) == 1
    assert any("axiom annotation" in w.reason for w in warnings)


def test_declaration_kinds(animals_by_name):
    assert animals_by_name["lion"].kind is TermKind.CLASS
    assert animals_by_name["eats"].kind is TermKind.OBJECT_PROPERTY
    assert animals_by_name["average-mass-kg"].kind is TermKind.DATA_PROPERTY


def test_property_chain_skipped():
    text = "SubObjectPropertyOf(ObjectPropertyChain(:p :q) :r)"
    ontology, warnings = parse_with_warnings(text, "t")
    assert all(not t.axioms for t in ontology.terms)
    assert any("non-IRI argument" in w.reason for w in warnings)


def test_parse_is_deterministic(animals_text):
    first = parse_ontology(animals_text, "animals")
    second = parse_ontology(animals_text, "animals")
    assert [t.term for t in first.terms] == [t.term for t in second.terms]
    assert all(a.axioms == b.axioms for a, b in zip(first.terms, second.terms))


def test_hierarchy_consistency(animals):
    for iri, (parents, children) in animals.hierarchy.items():
        for parent in parents:
            assert iri in animals.hierarchy[parent][1]
        for child in children:
            assert iri in animals.hierarchy[child][0]


def test_round_trip_random_axioms():
    rng = random.Random(20260811)
    for _ in range(1000):
        axiom = random_axiom(rng)
        serialized = serialize_axiom(axiom)
        reparsed = parse_axiom_text(serialized)
        assert reparsed == axiom, serialized
        assert serialize_axiom(reparsed) == serialized


def test_annotated_declaration_drops_annotation():
    text = 'Declaration(Annotation(rdfs:label "x") Class(:x))'
    ontology, warnings = parse_with_warnings(text, "t")
    assert [t.term.local_name for t in ontology.terms] == ["x"]
    assert any("axiom annotation" in w.reason for w in warnings)


def test_ontology_header_with_version_iri_and_imports():
    text = (
        "Ontology(<http://x> <http://x/1.0>\n"
        "Import(<http://other>)\n"
        "SubClassOf(:a :b)\n"
        ")"
    )
    ontology, warnings = parse_with_warnings(text, "t")
    assert len(ontology.terms[0].axioms) == 1
    assert any("import" in w.reason for w in warnings)
