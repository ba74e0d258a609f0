"""Misalignment typing and injection.

A term is randomly assigned one of four case types and then perturbed so
that its axiom input and its definition source diverge in a controlled way:

* MISSING_AXIOM   - one axiom is removed from the input; the definition is
                    generated from the complete set.
* UNDEFINED_AXIOM - the input stays complete; one axiom is withheld from
                    the definition source.
* MISUSED_AXIOM   - one quantifier or boolean connective in one axiom of
                    the input is swapped for its dual (some<->only,
                    and<->or); the definition source stays original.
* ALIGNED         - no modification on either side.

Eligibility: MISSING/UNDEFINED need at least two axioms; MISUSED needs a
swappable construct somewhere in the term's expressions; ALIGNED is always
available. All random choices are uniform and deterministic per seed.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .model import (
    AllValuesFrom,
    Axiom,
    ClassExpr,
    IntersectionOf,
    SomeValuesFrom,
    TermRecord,
    UnionOf,
    expr_children,
)

TreePath = tuple[int, ...]

SWAP_ELIGIBLE_TYPES = (SomeValuesFrom, AllValuesFrom, IntersectionOf, UnionOf)


class MisalignmentType(Enum):
    MISSING_AXIOM = "missing_axiom"
    UNDEFINED_AXIOM = "undefined_axiom"
    MISUSED_AXIOM = "misused_axiom"
    ALIGNED = "aligned"


class PathError(ValueError):
    """Tree path does not address a node."""


class SwapEligibilityError(ValueError):
    """Node at path is not a quantifier or boolean connective."""


class NotEligibleError(ValueError):
    """Requested case type is not eligible for the term."""


@dataclass(frozen=True)
class SwapDetail:
    """Where a construct swap happened and what changed."""

    axiom_index: int
    path: TreePath
    before: str
    after: str


@dataclass(frozen=True)
class MisalignmentCase:
    """A term after type assignment and injection.

    ``input_axioms`` is what the model sees; ``definition_source_axioms``
    is what the definition is generated from. ``pitfall_axiom_index``
    points into the ORIGINAL axiom list and is present exactly when the
    type is not ALIGNED.
    """

    term: TermRecord
    assigned_type: MisalignmentType
    input_axioms: tuple[Axiom, ...]
    definition_source_axioms: tuple[Axiom, ...]
    pitfall_axiom_index: Optional[int]
    swap_detail: Optional[SwapDetail]
    rng_seed: int

    def validate(self) -> None:
        original = self.term.axioms
        t = self.assigned_type
        if (self.pitfall_axiom_index is not None) != (t is not MisalignmentType.ALIGNED):
            raise ValueError("pitfall_axiom_index present iff type is not ALIGNED")
        if t is MisalignmentType.MISSING_AXIOM:
            assert len(self.input_axioms) == len(original) - 1
            assert self.definition_source_axioms == original
        elif t is MisalignmentType.UNDEFINED_AXIOM:
            assert self.input_axioms == original
            assert len(self.definition_source_axioms) == len(original) - 1
        elif t is MisalignmentType.MISUSED_AXIOM:
            assert len(self.input_axioms) == len(original)
            diffs = [i for i, (a, b) in enumerate(zip(self.input_axioms, original)) if a != b]
            assert diffs == [self.pitfall_axiom_index]
            assert self.definition_source_axioms == original
            assert self.swap_detail is not None
        else:
            assert self.input_axioms == original
            assert self.definition_source_axioms == original


# --------------------------------------------------------------------------
# Tree navigation and construct swapping
# --------------------------------------------------------------------------


def node_at(expr: ClassExpr, path: TreePath) -> ClassExpr:
    node = expr
    for step in path:
        children = expr_children(node)
        if step < 0 or step >= len(children):
            raise PathError(f"no child {step} at {node!r}")
        node = children[step]
    return node


def replace_at(expr: ClassExpr, path: TreePath, replacement: ClassExpr) -> ClassExpr:
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    children = expr_children(expr)
    if head < 0 or head >= len(children):
        raise PathError(f"no child {head} at {expr!r}")
    new_child = replace_at(children[head], rest, replacement)
    if isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
        return type(expr)(expr.prop, new_child)
    if isinstance(expr, (IntersectionOf, UnionOf)):
        ops = list(expr.operands)
        ops[head] = new_child
        return type(expr)(tuple(ops))
    # ComplementOf is the only other branching node
    return type(expr)(new_child)


def dual_of(node: ClassExpr) -> ClassExpr:
    if isinstance(node, SomeValuesFrom):
        return AllValuesFrom(node.prop, node.filler)
    if isinstance(node, AllValuesFrom):
        return SomeValuesFrom(node.prop, node.filler)
    if isinstance(node, IntersectionOf):
        return UnionOf(node.operands)
    if isinstance(node, UnionOf):
        return IntersectionOf(node.operands)
    raise SwapEligibilityError(f"not swap-eligible: {type(node).__name__}")


def swap_construct(expr: ClassExpr, path: TreePath) -> ClassExpr:
    """Replace the construct at ``path`` with its dual; an involution."""
    node = node_at(expr, path)
    if not isinstance(node, SWAP_ELIGIBLE_TYPES):
        raise SwapEligibilityError(f"not swap-eligible: {type(node).__name__}")
    return replace_at(expr, path, dual_of(node))


def swap_paths(expr: ClassExpr) -> list[TreePath]:
    """All paths to swap-eligible nodes, preorder (root first)."""
    found: list[TreePath] = []

    def walk(node: ClassExpr, path: TreePath) -> None:
        if isinstance(node, SWAP_ELIGIBLE_TYPES):
            found.append(path)
        for i, child in enumerate(expr_children(node)):
            walk(child, path + (i,))

    walk(expr, ())
    return found


def axiom_swap_paths(axiom: Axiom) -> list[TreePath]:
    expr = axiom.class_expr
    if expr is None:
        return []
    return swap_paths(expr)


def construct_name(node: ClassExpr) -> str:
    return type(node).__name__


# --------------------------------------------------------------------------
# Type assignment and injection
# --------------------------------------------------------------------------


def eligible_types(term: TermRecord) -> set[MisalignmentType]:
    eligible = {MisalignmentType.ALIGNED}
    if len(term.axioms) >= 2:
        eligible.add(MisalignmentType.MISSING_AXIOM)
        eligible.add(MisalignmentType.UNDEFINED_AXIOM)
    if any(axiom_swap_paths(ax) for ax in term.axioms):
        eligible.add(MisalignmentType.MISUSED_AXIOM)
    return eligible


_TYPE_ORDER = list(MisalignmentType)


def assign_type(
    term: TermRecord,
    seed: int,
    weights: Optional[dict[MisalignmentType, float]] = None,
) -> MisalignmentType:
    """Pick one eligible type, uniformly unless ``weights`` skews the draw."""
    eligible = sorted(eligible_types(term), key=_TYPE_ORDER.index)
    rng = random.Random(seed)
    if weights:
        w = [max(weights.get(t, 1.0), 0.0) for t in eligible]
        if sum(w) <= 0:
            raise ValueError("weights eliminate every eligible type")
        return rng.choices(eligible, weights=w, k=1)[0]
    return eligible[rng.randrange(len(eligible))]


def inject(term: TermRecord, assigned: MisalignmentType, seed: int) -> MisalignmentCase:
    """Apply the perturbation for ``assigned``; choices are seed-determined."""
    if assigned not in eligible_types(term):
        raise NotEligibleError(f"{assigned.value} not eligible for {term.term}")
    rng = random.Random(seed)
    original = term.axioms

    if assigned is MisalignmentType.ALIGNED:
        case = MisalignmentCase(term, assigned, original, original, None, None, seed)
    elif assigned is MisalignmentType.MISSING_AXIOM:
        i = rng.randrange(len(original))
        kept = original[:i] + original[i + 1:]
        case = MisalignmentCase(term, assigned, kept, original, i, None, seed)
    elif assigned is MisalignmentType.UNDEFINED_AXIOM:
        i = rng.randrange(len(original))
        kept = original[:i] + original[i + 1:]
        case = MisalignmentCase(term, assigned, original, kept, i, None, seed)
    else:
        candidates = [i for i, ax in enumerate(original) if axiom_swap_paths(ax)]
        i = candidates[rng.randrange(len(candidates))]
        paths = axiom_swap_paths(original[i])
        path = paths[rng.randrange(len(paths))]
        expr = original[i].class_expr
        assert expr is not None
        before = node_at(expr, path)
        swapped_expr = swap_construct(expr, path)
        swapped = Axiom(
            original[i].subject, original[i].relation, swapped_expr,
            data_property=original[i].data_property,
            source_span=original[i].source_span,
        )
        mutated = original[:i] + (swapped,) + original[i + 1:]
        detail = SwapDetail(i, path, construct_name(before),
                            construct_name(node_at(swapped_expr, path)))
        case = MisalignmentCase(term, assigned, mutated, original, i, detail, seed)
    case.validate()
    return case


def derive_seed(master_seed: int, *parts: object) -> int:
    """Stable per-item seed so parallel order never changes output."""
    digest = hashlib.sha256()
    digest.update(str(master_seed).encode("utf-8"))
    for part in parts:
        digest.update(b"\x1f")
        digest.update(str(part).encode("utf-8"))
    return int.from_bytes(digest.digest()[:8], "big")


def build_cases(
    terms: Sequence[TermRecord],
    master_seed: int,
    weights: Optional[dict[MisalignmentType, float]] = None,
) -> list[MisalignmentCase]:
    """Assign and inject every non-empty term; zero-axiom terms are skipped
    (nothing to define or validate)."""
    cases = []
    for term in terms:
        if not term.axioms:
            continue
        seed = derive_seed(master_seed, term.ontology_id, term.term.value)
        assigned = assign_type(term, seed, weights)
        cases.append(inject(term, assigned, seed))
    return cases
