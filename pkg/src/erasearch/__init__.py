"""Period-aware entity search over annotated diachronic corpora.

Find text fragments that refer to a historical period without naming it:
traverse a SKOS-style category network downward from the period's root
categories, date the member entities from their descriptions, prune what
falls outside the period, and retrieve the sentences whose entity links
hit the resulting selection. Every inclusion and exclusion is logged, so
each saved fragment carries the full chain of decisions that made it
retrievable.
"""

from .corpus import CorpusIndex, Document, EntityLink, Fragment, Snippet
from .errors import (
    ConflictingAliasWarning,
    DuplicateDocId,
    EraSearchError,
    FragmentNotInResultSet,
    MalformedTriple,
    OffsetOutOfBounds,
    SurfaceMismatch,
    UnknownCategory,
    UnknownSession,
    UnknownTarget,
)
from .kg import (
    KnowledgeGraph,
    Literal,
    Triple,
    build_graph,
    label_search,
    member_entities,
    narrower_categories,
    parse_triples,
    serialize_triples,
)
from .session import (
    Action,
    Decision,
    Origin,
    RelevanceAssertion,
    SearchSession,
    SessionStore,
    TargetKind,
    assert_fragment_relevance,
    create_session,
    effective_selection,
    export_session,
    export_session_bytes,
    import_session,
    record_decision,
)
from .temporal import (
    CategoryStatus,
    ClassificationThresholds,
    Period,
    RelevanceClass,
    TemporalProfile,
    classify_entity,
    extract_temporal_profile,
    prune_categories,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "CategoryStatus",
    "ClassificationThresholds",
    "ConflictingAliasWarning",
    "CorpusIndex",
    "Decision",
    "Document",
    "DuplicateDocId",
    "EntityLink",
    "EraSearchError",
    "Fragment",
    "FragmentNotInResultSet",
    "KnowledgeGraph",
    "Literal",
    "MalformedTriple",
    "OffsetOutOfBounds",
    "Origin",
    "Period",
    "RelevanceAssertion",
    "RelevanceClass",
    "SearchSession",
    "SessionStore",
    "Snippet",
    "SurfaceMismatch",
    "TargetKind",
    "TemporalProfile",
    "Triple",
    "UnknownCategory",
    "UnknownSession",
    "UnknownTarget",
    "assert_fragment_relevance",
    "build_graph",
    "classify_entity",
    "create_session",
    "effective_selection",
    "export_session",
    "export_session_bytes",
    "extract_temporal_profile",
    "import_session",
    "label_search",
    "member_entities",
    "narrower_categories",
    "parse_triples",
    "prune_categories",
    "record_decision",
    "serialize_triples",
    "__version__",
]
