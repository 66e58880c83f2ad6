"""HTTP JSON API over the graph, index, and session modules.

The app is built by :func:`create_app` from a :class:`ServiceConfig`; the
graph and corpus are loaded once at startup and shared read-only, while
session mutations are serialized per session id and written to disk
before the response goes out.

Error responses always carry ``{"error": code, "message": text}``:
400 for invalid input, 404 for unknown sessions/categories/targets,
409 when asserting a fragment that the current selection cannot reach.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Literal as TypingLiteral

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .corpus import DEFAULT_SENTENCE_SPLIT, CorpusIndex, Fragment, Snippet
from .errors import (
    FragmentNotInResultSet,
    UnknownCategory,
    UnknownSession,
    UnknownTarget,
)
from .kg import (
    DEFAULT_MAX_DEPTH,
    KnowledgeGraph,
    build_graph,
    label_search,
    parse_triples,
)
from .session import (
    Action,
    SearchSession,
    SessionStore,
    TargetKind,
    assert_fragment_relevance,
    create_session,
    effective_selection,
    export_session_bytes,
    record_decision,
)
from .temporal import (
    MAX_PLAUSIBLE_YEAR,
    MIN_PLAUSIBLE_YEAR,
    ClassificationThresholds,
    Period,
)

logger = logging.getLogger(__name__)


# -- configuration -----------------------------------------------------------


@dataclass(frozen=True)
class ServiceConfig:
    """Startup wiring, read from a single JSON document.

    Relative paths are resolved against the directory containing the
    config file, so a generated bundle can be moved around freely.
    """

    kg_path: Path
    corpus_path: Path
    session_dir: Path = Path("sessions")
    host: str = "127.0.0.1"
    port: int = 8000
    preferred_language: str = "en"
    max_depth: int = DEFAULT_MAX_DEPTH
    year_fraction: float = 0.5
    interval_fraction: float = 0.5
    min_year: int = MIN_PLAUSIBLE_YEAR
    max_year: int = MAX_PLAUSIBLE_YEAR
    sentence_split_regex: str = DEFAULT_SENTENCE_SPLIT
    min_confidence: float = 0.0
    typeahead_k: int = 10
    preview_k: int = 5
    preview_context: int = 1
    page_size: int = 20
    page_size_max: int = 200
    cors_origins: tuple[str, ...] = ()

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port out of range: {self.port}")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        for name in ("year_fraction", "interval_fraction", "min_confidence"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.max_year < self.min_year:
            raise ValueError("max_year must be >= min_year")
        for name in ("typeahead_k", "preview_k", "page_size", "page_size_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.page_size_max < self.page_size:
            raise ValueError("page_size_max must be >= page_size")
        if self.preview_context < 0:
            raise ValueError("preview_context must be >= 0")

    @property
    def thresholds(self) -> ClassificationThresholds:
        return ClassificationThresholds(self.year_fraction, self.interval_fraction)

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        path = Path(path)
        raw = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "kg_path" not in raw or "corpus_path" not in raw:
            raise ValueError("config requires kg_path and corpus_path")
        base = path.resolve().parent
        kwargs = dict(raw)
        for key in ("kg_path", "corpus_path", "session_dir"):
            if key in kwargs:
                p = Path(kwargs[key])
                kwargs[key] = p if p.is_absolute() else base / p
        if "cors_origins" in kwargs:
            kwargs["cors_origins"] = tuple(kwargs["cors_origins"])
        return cls(**kwargs)


# -- request bodies ----------------------------------------------------------


class PeriodBody(BaseModel):
    label: str
    start_year: int
    end_year: int


class CreateSessionBody(BaseModel):
    motivation: str = ""
    period: PeriodBody
    roots: list[str] = Field(min_length=1)
    max_depth: int | None = Field(default=None, ge=0)


class DecisionBody(BaseModel):
    action: TypingLiteral["select", "deselect"]
    target_kind: TypingLiteral["category", "entity"]
    target: str


class AssertionBody(BaseModel):
    doc_id: str
    sentence_index: int = Field(ge=0)


# -- shared state ------------------------------------------------------------


@dataclass
class AppState:
    config: ServiceConfig
    graph: KnowledgeGraph
    index: CorpusIndex
    store: SessionStore
    sessions: dict[str, SearchSession] = field(default_factory=dict)
    _locks: dict[str, threading.Lock] = field(default_factory=dict)
    _meta: threading.Lock = field(default_factory=threading.Lock)

    def lock_for(self, session_id: str) -> threading.Lock:
        with self._meta:
            return self._locks.setdefault(session_id, threading.Lock())

    def get_session(self, session_id: str) -> SearchSession:
        with self._meta:
            cached = self.sessions.get(session_id)
        if cached is not None:
            return cached
        session = self.store.load(
            self.graph,
            session_id,
            thresholds=self.config.thresholds,
            min_year=self.config.min_year,
            max_year=self.config.max_year,
        )
        with self._meta:
            return self.sessions.setdefault(session_id, session)

    def put_session(self, session: SearchSession) -> None:
        with self._meta:
            self.sessions[session.session_id] = session


# -- response shaping --------------------------------------------------------


def _snippet_dict(s: Snippet) -> dict:
    return {
        "doc_id": s.doc_id,
        "sentence_index": s.sentence_index,
        "date": s.date.isoformat(),
        "meta": s.meta,
        "text": s.text,
        "snippet_start": s.snippet_start,
        "sentence_start": s.sentence_start,
        "sentence_end": s.sentence_end,
        "context_before": s.context_before,
        "context_after": s.context_after,
        "highlights": [
            {"start": h.start, "end": h.end, "iri": h.iri} for h in s.highlights
        ],
    }


def _decision_dict(d) -> dict:
    return {
        "seq": d.seq,
        "timestamp": d.timestamp,
        "action": d.action.value,
        "target_kind": d.target_kind.value,
        "target": d.target,
        "origin": d.origin.value,
    }


def _assertion_dict(a) -> dict:
    return {
        "seq": a.seq,
        "timestamp": a.timestamp,
        "doc_id": a.doc_id,
        "sentence_start": a.sentence_start,
        "sentence_end": a.sentence_end,
        "entities": list(a.entities),
        "period_subjects": list(a.period_subjects),
        "supporting_decisions": list(a.supporting_decisions),
    }


def _effective_dict(session: SearchSession) -> dict:
    categories, entities = effective_selection(session)
    return {"categories": sorted(categories), "entities": sorted(entities)}


def _assessment_payload(state: AppState, session: SearchSession, include_previews: bool) -> dict:
    cfg = state.config
    selected_categories, effective_entities = effective_selection(session)
    own_state: dict[tuple[TargetKind, str], Action] = {}
    for d in session.decisions:
        own_state[(d.target_kind, d.target)] = d.action
    depth_of: dict[str, int] = {}
    for tree in session.trees:
        for node in tree.nodes:
            depth_of.setdefault(node.iri, node.depth)
    counts = state.index.entity_counts(session.entities())

    categories = []
    for cat in session.categories():
        members = session.members[cat]
        entities = [
            {
                "iri": e,
                "label": state.graph.display_label(e),
                "relevance": session.entity_classes[e].value,
                "count": counts[e],
                "selected": own_state.get((TargetKind.ENTITY, e)) is Action.SELECT,
                "effective": e in effective_entities,
            }
            for e in members
        ]
        entry = {
            "iri": cat,
            "label": state.graph.display_label(cat),
            "depth": depth_of[cat],
            "status": session.category_status[cat].value,
            "selected": cat in selected_categories,
            "entities": entities,
        }
        if include_previews:
            previewable = [e for e in members if e in effective_entities]
            snippets = (
                state.index.preview(previewable, cfg.preview_k, cfg.preview_context)
                if previewable
                else []
            )
            entry["previews"] = [_snippet_dict(s) for s in snippets]
        categories.append(entry)

    return {
        "session_id": session.session_id,
        "created_at": session.created_at,
        "motivation": session.motivation,
        "period": {
            "label": session.period.label,
            "start_year": session.period.start_year,
            "end_year": session.period.end_year,
        },
        "roots": list(session.roots),
        "max_depth": session.max_depth,
        "categories": categories,
        "effective": {
            "categories": sorted(selected_categories),
            "entities": sorted(effective_entities),
        },
    }


# -- app factory -------------------------------------------------------------


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message})


def load_state(config: ServiceConfig) -> AppState:
    """Load graph and corpus from the configured paths and open the store."""
    for label, p in (("kg_path", config.kg_path), ("corpus_path", config.corpus_path)):
        if not Path(p).is_file():
            raise FileNotFoundError(f"{label} does not exist: {p}")
    graph = build_graph(
        parse_triples(Path(config.kg_path).read_bytes()),
        preferred_language=config.preferred_language,
    )
    index = CorpusIndex(config.sentence_split_regex, config.min_confidence)
    with open(config.corpus_path, "rb") as fh:
        n_docs = index.load_jsonl(fh)
    index.freeze()
    logger.info(
        "loaded %d categories, %d entities, %d documents",
        len(graph.categories), len(graph.entities), n_docs,
    )
    return AppState(
        config=config,
        graph=graph,
        index=index,
        store=SessionStore(config.session_dir),
    )


def create_app(config: ServiceConfig) -> FastAPI:
    state = load_state(config)
    app = FastAPI(title="erasearch", docs_url=None, redoc_url=None)
    app.state.erasearch = state

    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        parts = [
            "{}: {}".format(".".join(str(x) for x in e["loc"]), e["msg"])
            for e in exc.errors()
        ]
        return _error(400, "validation", "; ".join(parts))

    @app.exception_handler(UnknownSession)
    async def on_unknown_session(request: Request, exc: UnknownSession):
        return _error(404, "unknown_session", str(exc))

    @app.exception_handler(UnknownCategory)
    async def on_unknown_category(request: Request, exc: UnknownCategory):
        return _error(404, "unknown_category", str(exc))

    @app.exception_handler(UnknownTarget)
    async def on_unknown_target(request: Request, exc: UnknownTarget):
        return _error(404, "unknown_target", str(exc))

    @app.exception_handler(FragmentNotInResultSet)
    async def on_not_in_result_set(request: Request, exc: FragmentNotInResultSet):
        return _error(409, "fragment_not_in_result_set", str(exc))

    # -- endpoints ----------------------------------------------------------

    @app.get("/categories")
    def categories(q: str = "", k: int | None = Query(default=None, ge=1)):
        matches = label_search(state.graph, q, k or config.typeahead_k)
        return {"matches": [{"iri": iri, "label": label} for iri, label in matches]}

    @app.post("/sessions", status_code=201)
    def post_session(body: CreateSessionBody):
        try:
            period = Period(body.period.label, body.period.start_year, body.period.end_year)
            session = create_session(
                state.graph,
                motivation=body.motivation,
                period=period,
                roots=body.roots,
                max_depth=config.max_depth if body.max_depth is None else body.max_depth,
                thresholds=config.thresholds,
                min_year=config.min_year,
                max_year=config.max_year,
            )
        except ValueError as exc:
            return _error(400, "validation", str(exc))
        state.store.save(session)
        state.put_session(session)
        return _assessment_payload(state, session, include_previews=False)

    @app.get("/sessions/{session_id}/assessment")
    def get_assessment(session_id: str):
        session = state.get_session(session_id)
        return _assessment_payload(state, session, include_previews=True)

    @app.post("/sessions/{session_id}/decisions")
    def post_decision(session_id: str, body: DecisionBody):
        session = state.get_session(session_id)
        with state.lock_for(session_id):
            decision = record_decision(
                session, Action(body.action), TargetKind(body.target_kind), body.target
            )
            state.store.save(session)
            return {
                "decision": _decision_dict(decision),
                "effective": _effective_dict(session),
            }

    @app.get("/sessions/{session_id}/results")
    def get_results(
        session_id: str,
        page: int = Query(default=1, ge=1),
        page_size: int | None = Query(default=None, ge=1, le=config.page_size_max),
    ):
        session = state.get_session(session_id)
        size = page_size or config.page_size
        _, effective_entities = effective_selection(session)
        fragments = state.index.fetch_fragments(effective_entities)
        window = fragments[(page - 1) * size : page * size]
        snippets = [
            state.index.snippet(
                Fragment(f.doc_id, f.sentence_index, config.preview_context, config.preview_context),
                effective_entities,
            )
            for f in window
        ]
        return {
            "total": len(fragments),
            "page": page,
            "page_size": size,
            "fragments": [_snippet_dict(s) for s in snippets],
        }

    @app.get("/sessions/{session_id}/analytics")
    def get_analytics(session_id: str, group_by: str = Query(...)):
        session = state.get_session(session_id)
        _, effective_entities = effective_selection(session)
        if group_by == "year":
            counts = {
                str(year): n
                for year, n in state.index.timeline_counts(effective_entities).items()
            }
        elif group_by.startswith("meta:") and len(group_by) > len("meta:"):
            counts = state.index.facet_counts(effective_entities, group_by[len("meta:"):])
        else:
            return _error(400, "validation", f"unsupported group_by: {group_by!r}")
        return {"group_by": group_by, "counts": counts}

    @app.post("/sessions/{session_id}/assertions", status_code=201)
    def post_assertion(session_id: str, body: AssertionBody):
        session = state.get_session(session_id)
        with state.lock_for(session_id):
            assertion = assert_fragment_relevance(
                session, state.index, body.doc_id, body.sentence_index
            )
            state.store.save(session)
            return _assertion_dict(assertion)

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str):
        session = state.get_session(session_id)
        with state.lock_for(session_id):
            payload = export_session_bytes(session)
        return Response(
            content=payload,
            media_type="application/json",
            headers={
                "Content-Disposition": f'attachment; filename="{session_id}.json"'
            },
        )

    return app


def config_for_bundle(bundle_dir: Path, **overrides) -> ServiceConfig:
    """Config pointing at the standard file names inside a sample bundle."""
    base = ServiceConfig(
        kg_path=bundle_dir / "graph.nt",
        corpus_path=bundle_dir / "corpus.jsonl",
        session_dir=bundle_dir / "sessions",
    )
    return replace(base, **overrides) if overrides else base
