"""Parser for OWL Functional-Style Syntax, restricted to the supported
axiom and expression subset.

What it accepts:

* prefix declarations, an optional ``Ontology(...)`` wrapper, or a bare
  sequence of axioms (snippet files work);
* ``#`` line comments (Protege writes them);
* class axioms (SubClassOf / EquivalentClasses / DisjointClasses, n-ary
  forms decomposed into pairs), property axioms (domain, range,
  sub-property, inverse) and property characteristics;
* annotation assertions and other unsupported axiom kinds are skipped and
  reported as warnings, never errors;
* unsupported class expressions (cardinalities, data ranges, ...) become
  :class:`~cqpitfall.model.Opaque` leaves preserved verbatim.

Parsing is deterministic: identical text yields identical structures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .model import (
    AllValuesFrom,
    Axiom,
    BUILTIN_PREFIXES,
    CHARACTERISTIC_KEYWORDS,
    ClassExpr,
    ComplementOf,
    HasValue,
    IntersectionOf,
    Iri,
    Named,
    Ontology,
    Opaque,
    Relation,
    SomeValuesFrom,
    TermKind,
    TermRecord,
    UnionOf,
)

MAX_EXPR_DEPTH = 512


class OfnSyntaxError(ValueError):
    """Malformed input; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UndeclaredPrefixError(OfnSyntaxError):
    def __init__(self, prefix: str, line: int, col: int):
        super().__init__(f"undeclared prefix '{prefix}:'", line, col)
        self.prefix = prefix


@dataclass(frozen=True)
class ParseWarning:
    """One skipped construct: where and why."""

    line: int
    col: int
    reason: str
    construct: str

    def format(self, file: str) -> str:
        return f"{file}:{self.line}:{self.col}: skipped {self.construct}: {self.reason}"


# --------------------------------------------------------------------------
# Tokenizer
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<iriref><[^<>"{}|^`\\\s]*>)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<pname>(?:[A-Za-z][A-Za-z0-9_.\-]*)?:[A-Za-z0-9_.\-]*)
  | (?P<name>[A-Za-z][A-Za-z0-9_.\-]*)
  | (?P<number>[0-9]+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<eq>=)
  | (?P<caretcaret>\^\^)
  | (?P<lang>@[A-Za-z][A-Za-z0-9\-]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise OfnSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

_SUPPORTED_EXPRS = {
    "ObjectSomeValuesFrom",
    "ObjectAllValuesFrom",
    "ObjectIntersectionOf",
    "ObjectUnionOf",
    "ObjectComplementOf",
    "ObjectHasValue",
}

_DECL_KINDS = {
    "Class": TermKind.CLASS,
    "ObjectProperty": TermKind.OBJECT_PROPERTY,
    "DataProperty": TermKind.DATA_PROPERTY,
}

_SKIPPED_AXIOMS = {
    "AnnotationAssertion": "annotation assertion (definitions are generated, not read)",
    "SubAnnotationPropertyOf": "annotation axiom",
    "AnnotationPropertyDomain": "annotation axiom",
    "AnnotationPropertyRange": "annotation axiom",
    "ClassAssertion": "individual assertion (ABox)",
    "ObjectPropertyAssertion": "individual assertion (ABox)",
    "NegativeObjectPropertyAssertion": "individual assertion (ABox)",
    "DataPropertyAssertion": "individual assertion (ABox)",
    "NegativeDataPropertyAssertion": "individual assertion (ABox)",
    "SameIndividual": "individual assertion (ABox)",
    "DifferentIndividuals": "individual assertion (ABox)",
    "Import": "import directive",
    "DatatypeDefinition": "datatype definition",
    "HasKey": "key axiom",
    "DisjointUnion": "disjoint union axiom",
    "EquivalentObjectProperties": "property equivalence axiom",
    "EquivalentDataProperties": "property equivalence axiom",
    "DisjointObjectProperties": "property disjointness axiom",
    "DisjointDataProperties": "property disjointness axiom",
    "ObjectPropertyChain": "property chain",
    "DLSafeRule": "rule axiom",
}


@dataclass
class _TermSlot:
    kind: TermKind
    declared: bool
    axioms: list[Axiom] = field(default_factory=list)


class _Parser:
    def __init__(self, text: str, ontology_id: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.ontology_id = ontology_id
        self.prefixes: dict[str, str] = dict(BUILTIN_PREFIXES)
        self.declared_prefixes: dict[str, str] = {}
        self.warnings: list[ParseWarning] = []
        self.slots: dict[Iri, _TermSlot] = {}
        self.depth = 0

    # -- token helpers ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise OfnSyntaxError(f"expected {what}, found {_describe(tok)}", tok.line, tok.col)
        return tok

    def error(self, message: str) -> OfnSyntaxError:
        tok = self.peek()
        return OfnSyntaxError(message, tok.line, tok.col)

    # -- entry point --------------------------------------------------------

    def parse(self) -> Ontology:
        self._parse_prefix_decls()
        tok = self.peek()
        if tok.kind == "name" and tok.text == "Ontology":
            self.next()
            self.expect("lparen", "'('")
            # optional ontology IRI and version IRI
            while self.peek().kind == "iriref":
                self.next()
            self._parse_prefix_decls()  # tolerate misplaced decls
            while self.peek().kind == "name" and self.peek().text == "Annotation":
                self._skip_balanced(self.next())
            self._parse_axioms(stop_at_rparen=True)
            self.expect("rparen", "')'")
        else:
            self._parse_axioms(stop_at_rparen=False)
        tok = self.peek()
        if tok.kind != "eof":
            raise OfnSyntaxError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)
        return self._build()

    def _parse_prefix_decls(self) -> None:
        while self.peek().kind == "name" and self.peek().text == "Prefix":
            self.next()
            self.expect("lparen", "'('")
            pname = self.expect("pname", "prefix name ending in ':'")
            prefix, sep, local = pname.text.partition(":")
            if local:
                raise OfnSyntaxError("prefix declaration must end in ':'", pname.line, pname.col)
            self.expect("eq", "'='")
            iriref = self.expect("iriref", "an <IRI>")
            ns = iriref.text[1:-1]
            self.prefixes[prefix] = ns
            self.declared_prefixes[prefix] = ns
            self.expect("rparen", "')'")

    # -- axioms -------------------------------------------------------------

    def _parse_axioms(self, stop_at_rparen: bool) -> None:
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return
            if tok.kind == "rparen" and stop_at_rparen:
                return
            if tok.kind != "name":
                raise OfnSyntaxError(f"expected an axiom, found {_describe(tok)}", tok.line, tok.col)
            self._parse_axiom(self.next())

    def _parse_axiom(self, kw: Token) -> None:
        name = kw.text
        if name == "Declaration":
            self._parse_declaration(kw)
        elif name == "SubClassOf":
            self._parse_subclassof(kw)
        elif name == "EquivalentClasses":
            self._parse_nary_class_axiom(kw, Relation.EQUIVALENT_TO)
        elif name == "DisjointClasses":
            self._parse_nary_class_axiom(kw, Relation.DISJOINT_WITH)
        elif name in ("ObjectPropertyDomain", "DataPropertyDomain"):
            self._parse_domain_range(kw, Relation.DOMAIN, name.startswith("Data"))
        elif name in ("ObjectPropertyRange", "DataPropertyRange"):
            self._parse_domain_range(kw, Relation.RANGE, name.startswith("Data"))
        elif name in ("SubObjectPropertyOf", "SubDataPropertyOf"):
            self._parse_subpropertyof(kw, name.startswith("SubData"))
        elif name == "InverseObjectProperties":
            self._parse_inverse(kw)
        elif name in CHARACTERISTIC_KEYWORDS:
            self._parse_characteristic(kw)
        elif name in _SKIPPED_AXIOMS:
            text = self._skip_balanced(kw)
            self.warn(kw, _SKIPPED_AXIOMS[name], text)
        else:
            text = self._skip_balanced(kw)
            self.warn(kw, "unknown axiom kind", text)

    def _parse_declaration(self, kw: Token) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        inner = self.expect("name", "an entity kind")
        if inner.text in _DECL_KINDS:
            self.expect("lparen", "'('")
            iri = self._parse_iri()
            self.expect("rparen", "')'")
            self._declare(iri, _DECL_KINDS[inner.text], kw, explicit=True)
        else:
            text = self._skip_balanced(inner)
            self.warn(kw, f"unsupported declaration kind {inner.text}", f"Declaration({text})")
        self.expect("rparen", "')'")

    def _parse_subclassof(self, kw: Token) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        sub = self._parse_class_expr()
        sup = self._parse_class_expr()
        self.expect("rparen", "')'")
        if not isinstance(sub, Named):
            self.warn(kw, "complex subclass subject (GCI) not supported",
                      f"SubClassOf({_render(sub)} {_render(sup)})")
            return
        self._add_axiom(Axiom(sub.iri, Relation.SUB_CLASS_OF, sup, source_span=(kw.line, kw.col)),
                        TermKind.CLASS, kw)

    def _parse_nary_class_axiom(self, kw: Token, relation: Relation) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        operands: list[ClassExpr] = []
        while self.peek().kind != "rparen":
            operands.append(self._parse_class_expr())
        self.expect("rparen", "')'")
        if len(operands) < 2:
            raise OfnSyntaxError(f"{kw.text} needs at least 2 operands", kw.line, kw.col)
        for i in range(len(operands)):
            for j in range(i + 1, len(operands)):
                a, b = operands[i], operands[j]
                if isinstance(a, Named):
                    subject, obj = a.iri, b
                elif isinstance(b, Named):
                    subject, obj = b.iri, a
                else:
                    self.warn(kw, "no named operand in pair",
                              f"{kw.text}({_render(a)} {_render(b)})")
                    continue
                self._add_axiom(Axiom(subject, relation, obj, source_span=(kw.line, kw.col)),
                                TermKind.CLASS, kw)

    def _parse_domain_range(self, kw: Token, relation: Relation, is_data: bool) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        prop = self._parse_property(kw)
        if prop is None:
            return  # _parse_property consumed through the closing paren
        obj = self._parse_class_expr()
        self.expect("rparen", "')'")
        kind = TermKind.DATA_PROPERTY if is_data else TermKind.OBJECT_PROPERTY
        self._add_axiom(
            Axiom(prop, relation, obj, data_property=is_data, source_span=(kw.line, kw.col)),
            kind, kw)

    def _parse_subpropertyof(self, kw: Token, is_data: bool) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        if self.peek().kind == "name":  # e.g. ObjectPropertyChain
            inner = self.next()
            text = self._skip_balanced(inner)
            self._skip_to_rparen()
            self.warn(kw, "sub-property with non-IRI argument", f"{kw.text}({text} ...)")
            return
        sub = self._parse_iri()
        if self.peek().kind == "name":
            inner = self.next()
            text = self._skip_balanced(inner)
            self._skip_to_rparen()
            self.warn(kw, "sub-property with non-IRI argument", f"{kw.text}(... {text})")
            return
        sup = self._parse_iri()
        self.expect("rparen", "')'")
        kind = TermKind.DATA_PROPERTY if is_data else TermKind.OBJECT_PROPERTY
        self._add_axiom(
            Axiom(sub, Relation.SUB_PROPERTY_OF, sup, data_property=is_data,
                  source_span=(kw.line, kw.col)),
            kind, kw)

    def _parse_inverse(self, kw: Token) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        first = self._parse_property(kw)
        if first is None:
            return
        second = self._parse_property(kw)
        if second is None:
            return
        self.expect("rparen", "')'")
        self._add_axiom(
            Axiom(first, Relation.INVERSE_OF, second, source_span=(kw.line, kw.col)),
            TermKind.OBJECT_PROPERTY, kw)

    def _parse_characteristic(self, kw: Token) -> None:
        self.expect("lparen", "'('")
        self._skip_axiom_annotations(kw)
        prop = self._parse_property(kw)
        if prop is None:
            return
        self.expect("rparen", "')'")
        kind = TermKind.DATA_PROPERTY if kw.text.endswith("DataProperty") else TermKind.OBJECT_PROPERTY
        self._add_axiom(
            Axiom(prop, Relation.CHARACTERISTIC, characteristic=kw.text,
                  source_span=(kw.line, kw.col)),
            kind, kw)

    def _parse_property(self, kw: Token) -> Optional[Iri]:
        """A property position: a plain IRI, or something fancier
        (ObjectInverseOf) that forces us to skip the whole axiom."""
        tok = self.peek()
        if tok.kind in ("pname", "iriref"):
            return self._parse_iri()
        inner = self.next()
        if inner.kind != "name":
            raise OfnSyntaxError(f"expected a property IRI, found {_describe(inner)}",
                                 inner.line, inner.col)
        text = self._skip_balanced(inner)
        self._skip_to_rparen()
        self.warn(kw, "complex property expression not supported", f"{kw.text}(... {text} ...)")
        return None

    def _skip_axiom_annotations(self, kw: Token) -> None:
        while self.peek().kind == "name" and self.peek().text == "Annotation":
            inner = self.next()
            self._skip_balanced(inner)
            self.warn(kw, "axiom annotation dropped", f"{kw.text}(Annotation(...) ...)")

    # -- class expressions --------------------------------------------------

    def _parse_class_expr(self) -> ClassExpr:
        self.depth += 1
        try:
            if self.depth > MAX_EXPR_DEPTH:
                raise self.error("expression nesting too deep")
            tok = self.peek()
            if tok.kind in ("pname", "iriref"):
                return Named(self._parse_iri())
            if tok.kind != "name":
                raise OfnSyntaxError(
                    f"expected a class expression, found {_describe(tok)}", tok.line, tok.col)
            kw = self.next()
            if kw.text not in _SUPPORTED_EXPRS:
                # Preserve verbatim; cardinalities, data ranges, one-ofs, ...
                text = self._skip_balanced(kw)
                self.warn(kw, "unsupported class expression kept verbatim "
                              "(never swap-eligible)", text)
                return Opaque(text)
            self.expect("lparen", "'('")
            if kw.text in ("ObjectSomeValuesFrom", "ObjectAllValuesFrom"):
                if self.peek().kind == "name":
                    # ObjectInverseOf(...) in the property slot: keep opaque
                    inner = self._skip_balanced(self.next())
                    rest = self._collect_until_rparen()
                    return Opaque(f"{kw.text}({inner}{' ' if rest else ''}{rest})")
                prop = self._parse_iri()
                filler = self._parse_class_expr()
                self.expect("rparen", "')'")
                if kw.text == "ObjectSomeValuesFrom":
                    return SomeValuesFrom(prop, filler)
                return AllValuesFrom(prop, filler)
            if kw.text in ("ObjectIntersectionOf", "ObjectUnionOf"):
                operands: list[ClassExpr] = []
                while self.peek().kind != "rparen":
                    operands.append(self._parse_class_expr())
                self.expect("rparen", "')'")
                if len(operands) < 2:
                    raise OfnSyntaxError(f"{kw.text} needs at least 2 operands", kw.line, kw.col)
                if kw.text == "ObjectIntersectionOf":
                    return IntersectionOf(tuple(operands))
                return UnionOf(tuple(operands))
            if kw.text == "ObjectComplementOf":
                operand = self._parse_class_expr()
                self.expect("rparen", "')'")
                return ComplementOf(operand)
            # ObjectHasValue
            if self.peek().kind == "name":
                inner = self._skip_balanced(self.next())
                rest = self._collect_until_rparen()
                return Opaque(f"ObjectHasValue({inner}{' ' if rest else ''}{rest})")
            prop = self._parse_iri()
            if self.peek().kind in ("pname", "iriref"):
                individual = self._parse_iri()
                self.expect("rparen", "')'")
                return HasValue(prop, individual)
            if self.peek().kind == "name":
                # AnonymousIndividual(...) or similar: keep opaque
                inner = self._skip_balanced(self.next())
                self.expect("rparen", "')'")
                return Opaque(f"ObjectHasValue({prop.compact(self.prefixes)} {inner})")
            rest = self._collect_until_rparen()
            return Opaque(f"ObjectHasValue({prop.compact(self.prefixes)} {rest})")
        finally:
            self.depth -= 1

    def _parse_iri(self) -> Iri:
        tok = self.next()
        if tok.kind == "iriref":
            return Iri(tok.text[1:-1])
        if tok.kind == "pname":
            prefix, _, local = tok.text.partition(":")
            if prefix not in self.prefixes:
                raise UndeclaredPrefixError(prefix, tok.line, tok.col)
            return Iri(self.prefixes[prefix] + local)
        raise OfnSyntaxError(f"expected an IRI, found {_describe(tok)}", tok.line, tok.col)

    # -- opaque/skip machinery ----------------------------------------------

    def _skip_balanced(self, head: Token) -> str:
        """Consume ``head(...)`` with balanced parens; return the normalized
        verbatim text (single spaces between sibling tokens)."""
        self.expect("lparen", "'('")
        toks: list[Token] = [head, Token("lparen", "(", head.line, head.col)]
        depth = 1
        while depth > 0:
            tok = self.next()
            if tok.kind == "eof":
                raise OfnSyntaxError(f"unterminated {head.text}(...)", head.line, head.col)
            if tok.kind == "lparen":
                depth += 1
            elif tok.kind == "rparen":
                depth -= 1
            toks.append(tok)
        return _join_tokens(toks)

    def _collect_until_rparen(self) -> str:
        """Gather flat argument tokens up to and including ')'."""
        toks: list[Token] = []
        while True:
            tok = self.next()
            if tok.kind == "eof":
                raise OfnSyntaxError("unterminated construct", tok.line, tok.col)
            if tok.kind == "rparen":
                return _join_tokens(toks)
            if tok.kind == "name" and self.peek().kind == "lparen":
                inner = self._skip_balanced(tok)
                toks.append(Token("opaque", inner, tok.line, tok.col))
                continue
            toks.append(tok)

    def _skip_to_rparen(self) -> None:
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                raise OfnSyntaxError("unterminated axiom", tok.line, tok.col)
            if tok.kind == "lparen":
                depth += 1
            elif tok.kind == "rparen":
                if depth == 0:
                    self.next()
                    return
                depth -= 1
            self.next()

    # -- term bookkeeping ----------------------------------------------------

    def warn(self, tok: Token, reason: str, construct: str) -> None:
        self.warnings.append(ParseWarning(tok.line, tok.col, reason, construct))

    def _declare(self, iri: Iri, kind: TermKind, tok: Token, explicit: bool) -> None:
        slot = self.slots.get(iri)
        if slot is None:
            self.slots[iri] = _TermSlot(kind=kind, declared=explicit)
            return
        if explicit and not slot.declared:
            slot.declared = True
            if slot.kind != kind:
                self.warn(tok, f"kind conflict for {iri}: declared {kind.value}, "
                               f"inferred {slot.kind.value}", f"Declaration({iri})")
                slot.kind = kind
        elif explicit and slot.declared and slot.kind != kind:
            self.warn(tok, f"duplicate declaration with different kind for {iri}",
                      f"Declaration({iri})")

    def _add_axiom(self, axiom: Axiom, inferred_kind: TermKind, tok: Token) -> None:
        self._declare(axiom.subject, inferred_kind, tok, explicit=False)
        self.slots[axiom.subject].axioms.append(axiom)

    def _build(self) -> Ontology:
        terms = [
            TermRecord(term=iri, kind=slot.kind, axioms=tuple(slot.axioms),
                       ontology_id=self.ontology_id)
            for iri, slot in self.slots.items()
        ]
        hierarchy: dict[Iri, tuple[set[Iri], set[Iri]]] = {}

        def slot_for(iri: Iri) -> tuple[set[Iri], set[Iri]]:
            if iri not in hierarchy:
                hierarchy[iri] = (set(), set())
            return hierarchy[iri]

        for term in terms:
            for ax in term.axioms:
                if ax.relation is Relation.SUB_CLASS_OF and isinstance(ax.obj, Named):
                    slot_for(ax.subject)[0].add(ax.obj.iri)
                    slot_for(ax.obj.iri)[1].add(ax.subject)
                elif ax.relation is Relation.SUB_PROPERTY_OF and isinstance(ax.obj, Iri):
                    slot_for(ax.subject)[0].add(ax.obj)
                    slot_for(ax.obj)[1].add(ax.subject)
        return Ontology(id=self.ontology_id, prefixes=dict(self.declared_prefixes),
                        terms=terms, hierarchy=hierarchy)


def _join_tokens(toks: list[Token]) -> str:
    """Rebuild token text with canonical spacing: no space around parens'
    inner edges or datatype/lang attachments, single spaces elsewhere."""
    out: list[str] = []
    for i, tok in enumerate(toks):
        if i > 0:
            prev = toks[i - 1]
            attach = (
                prev.kind == "lparen"
                or tok.kind in ("rparen", "lparen", "caretcaret", "lang")
                or prev.kind == "caretcaret"
            )
            if not attach:
                out.append(" ")
        out.append(tok.text)
    return "".join(out)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


def _render(expr: ClassExpr) -> str:
    from .serializer import serialize_expr

    return serialize_expr(expr)


def parse_ontology(text: str, ontology_id: str = "ontology") -> Ontology:
    """Parse functional-syntax text into an :class:`Ontology`.

    Raises :class:`OfnSyntaxError` (with line/column) on malformed input and
    :class:`UndeclaredPrefixError` for unresolvable prefixed names. Skipped
    constructs are recorded on the result via :func:`parse_with_warnings`.
    """
    ontology, _ = parse_with_warnings(text, ontology_id)
    return ontology


def parse_with_warnings(text: str, ontology_id: str = "ontology") -> tuple[Ontology, list[ParseWarning]]:
    parser = _Parser(text, ontology_id)
    ontology = parser.parse()
    return ontology, parser.warnings


def parse_axiom_text(text: str, prefixes: Optional[dict[str, str]] = None) -> Axiom:
    """Parse a single serialized axiom back into an :class:`Axiom`."""
    preamble = ""
    if prefixes:
        preamble = "".join(f"Prefix({p}:=<{ns}>)\n" for p, ns in prefixes.items())
    ontology, warnings = parse_with_warnings(preamble + text, "axiom")
    axioms = [ax for term in ontology.terms for ax in term.axioms]
    if len(axioms) != 1:
        raise ValueError(f"expected exactly one axiom in {text!r}, got {len(axioms)}")
    return axioms[0]
