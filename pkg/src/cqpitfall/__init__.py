"""Toolkit for building semantic-pitfall validation datasets from OWL
ontologies and scoring competency questions against references."""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    AllValuesFrom,
    Axiom,
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
from .parser import (  # noqa: F401
    OfnSyntaxError,
    ParseWarning,
    UndeclaredPrefixError,
    parse_axiom_text,
    parse_ontology,
    parse_with_warnings,
)
from .serializer import manchester, serialize_axiom, serialize_expr  # noqa: F401
from .extract import ExtractionFilter, extract_terms, sample_terms  # noqa: F401
from .misalign import (  # noqa: F401
    MisalignmentCase,
    MisalignmentType,
    SwapDetail,
    assign_type,
    build_cases,
    derive_seed,
    eligible_types,
    inject,
    swap_construct,
    swap_paths,
)
from .templates import CqTemplate, TemplateRegistry  # noqa: F401
from .prompts import (  # noqa: F401
    EmptyResponse,
    ItemCountMismatch,
    build_cq_prompt,
    build_definition_prompt,
    parse_cq_response,
)
from .backends import HttpTextBackend, MockTemplateBackend, TextBackend  # noqa: F401
from .generate import (  # noqa: F401
    CaseArtifacts,
    CqSet,
    GenerationConfig,
    GenerationError,
    Role,
    generate_all,
    generate_case_artifacts,
)
from .dataset import (  # noqa: F401
    CorpusStats,
    DatasetTriple,
    SplitSpec,
    assemble,
    export_jsonl,
    import_jsonl,
    split,
    stats,
)
from .evaluate import (  # noqa: F401
    Aggregation,
    EvalConfig,
    GtMode,
    MetricsReport,
    MissingPolicy,
    TermEvalResult,
    evaluate_suite,
    evaluate_term,
    matched_set,
    valid_set,
)
from .simbackends import (  # noqa: F401
    ExactMatchBackend,
    HashedEmbeddingBackend,
    HttpEmbeddingBackend,
    TokenJaccardBackend,
)
