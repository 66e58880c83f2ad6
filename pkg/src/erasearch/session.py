"""Search sessions: the researcher's period operationalization as data.

A session starts from a period and one or more root categories. The
system's own pruning verdicts enter the same append-only decision log
that later user toggles go to, so the provenance of every relevance
assertion can point at the exact decisions that made its fragment
retrievable. Nothing in the log is ever mutated or removed; superseding
is the only correction mechanism.

Sessions persist as one JSON file each (the export document itself),
written atomically after every event.
"""

from __future__ import annotations

import datetime as dt
import enum
import json
import os
import re
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .corpus import CorpusIndex
from .errors import FragmentNotInResultSet, UnknownSession, UnknownTarget
from .kg import CategoryTree, Iri, KnowledgeGraph, member_entities, narrower_categories
from .temporal import (
    CategoryStatus,
    ClassificationThresholds,
    Period,
    RelevanceClass,
    classify_entity,
    extract_temporal_profile,
    prune_categories,
)

Clock = Callable[[], dt.datetime]

_SESSION_ID_RE = re.compile(r"^[A-Za-z0-9_-]+$")


def _utc_now() -> dt.datetime:
    return dt.datetime.now(dt.timezone.utc)


def _format_timestamp(moment: dt.datetime) -> str:
    moment = moment.astimezone(dt.timezone.utc)
    return moment.isoformat(timespec="milliseconds").replace("+00:00", "Z")


class Action(str, enum.Enum):
    SELECT = "select"
    DESELECT = "deselect"


class TargetKind(str, enum.Enum):
    CATEGORY = "category"
    ENTITY = "entity"


class Origin(str, enum.Enum):
    SYSTEM_DEFAULT = "system_default"
    USER = "user"


@dataclass(frozen=True)
class Decision:
    seq: int
    timestamp: str
    action: Action
    target_kind: TargetKind
    target: Iri
    origin: Origin


@dataclass(frozen=True)
class RelevanceAssertion:
    """A researcher's judgment that one fragment refers to the period."""

    seq: int
    timestamp: str
    doc_id: str
    sentence_start: int
    sentence_end: int
    entities: tuple[Iri, ...]
    period_subjects: tuple[Iri, ...]
    supporting_decisions: tuple[int, ...]


@dataclass
class SearchSession:
    session_id: str
    created_at: str
    motivation: str
    period: Period
    roots: list[Iri]
    max_depth: int
    decisions: list[Decision] = field(default_factory=list)
    assertions: list[RelevanceAssertion] = field(default_factory=list)
    # derived from the graph at creation or import; not exported
    trees: list[CategoryTree] = field(default_factory=list)
    members: dict[Iri, list[Iri]] = field(default_factory=dict)
    entity_classes: dict[Iri, RelevanceClass] = field(default_factory=dict)
    category_status: dict[Iri, CategoryStatus] = field(default_factory=dict)
    _next_seq: int = 1
    _last_moment: dt.datetime | None = None

    def categories(self) -> list[Iri]:
        """All tree categories in discovery order, deduplicated."""
        ordered: dict[Iri, None] = {}
        for tree in self.trees:
            for node in tree.nodes:
                ordered.setdefault(node.iri, None)
        return list(ordered)

    def entities(self) -> list[Iri]:
        merged: set[Iri] = set()
        for entities in self.members.values():
            merged.update(entities)
        return sorted(merged)

    def categories_of_entity(self, entity: Iri) -> list[Iri]:
        return sorted(c for c, es in self.members.items() if entity in es)

    def knows_target(self, kind: TargetKind, target: Iri) -> bool:
        if kind is TargetKind.CATEGORY:
            return target in self.members
        return any(target in es for es in self.members.values())

    def _stamp(self, clock: Clock | None) -> str:
        moment = (clock or _utc_now)()
        if self._last_moment is not None and moment < self._last_moment:
            moment = self._last_moment  # wall clock went backwards; seq stays authoritative
        self._last_moment = moment
        return _format_timestamp(moment)

    def _take_seq(self) -> int:
        seq = self._next_seq
        self._next_seq += 1
        return seq


def _derive_scope(
    graph: KnowledgeGraph,
    period: Period,
    roots: list[Iri],
    max_depth: int,
    thresholds: ClassificationThresholds,
    min_year: int,
    max_year: int,
):
    trees = [narrower_categories(graph, root, max_depth) for root in roots]
    members: dict[Iri, list[Iri]] = {}
    for tree in trees:
        for category, entities in member_entities(graph, tree).items():
            merged = set(members.get(category, [])) | set(entities)
            members[category] = sorted(merged)

    classes: dict[Iri, RelevanceClass] = {}
    for entities in members.values():
        for entity in entities:
            if entity in classes:
                continue
            profile = extract_temporal_profile(
                graph.descriptions.get(entity, ""), min_year=min_year, max_year=max_year
            )
            classes[entity] = classify_entity(profile, period, thresholds)

    status: dict[Iri, CategoryStatus] = {}
    for tree in trees:
        status.update(prune_categories(tree, members, classes))
    return trees, members, classes, status


def create_session(
    graph: KnowledgeGraph,
    *,
    motivation: str,
    period: Period,
    roots: list[Iri],
    max_depth: int,
    thresholds: ClassificationThresholds | None = None,
    min_year: int = 100,
    max_year: int = 2100,
    session_id: str | None = None,
    clock: Clock | None = None,
) -> SearchSession:
    """Create a session and seed its log with the system's default decisions.

    Categories get select/deselect per the pruning verdict; entities get
    deselect only when classified out-of-period. The defaults all carry
    the creation timestamp and precede any user decision.
    """
    if not roots:
        raise ValueError("at least one root category is required")
    th = thresholds or ClassificationThresholds()
    trees, members, classes, status = _derive_scope(
        graph, period, list(roots), max_depth, th, min_year, max_year
    )

    session = SearchSession(
        session_id=session_id or uuid.uuid4().hex,
        created_at="",
        motivation=motivation,
        period=period,
        roots=list(roots),
        max_depth=max_depth,
        trees=trees,
        members=members,
        entity_classes=classes,
        category_status=status,
    )
    created = session._stamp(clock)
    session.created_at = created

    for category in session.categories():
        action = (
            Action.SELECT
            if status[category] is CategoryStatus.INCLUDED
            else Action.DESELECT
        )
        session.decisions.append(
            Decision(
                session._take_seq(), created, action, TargetKind.CATEGORY, category,
                Origin.SYSTEM_DEFAULT,
            )
        )
    for entity in session.entities():
        action = (
            Action.DESELECT
            if classes[entity] is RelevanceClass.OUT_OF_PERIOD
            else Action.SELECT
        )
        session.decisions.append(
            Decision(
                session._take_seq(), created, action, TargetKind.ENTITY, entity,
                Origin.SYSTEM_DEFAULT,
            )
        )
    return session


def record_decision(
    session: SearchSession,
    action: Action,
    target_kind: TargetKind,
    target: Iri,
    clock: Clock | None = None,
) -> Decision:
    """Append a user decision. Earlier decisions are never touched."""
    if not session.knows_target(target_kind, target):
        raise UnknownTarget(target)
    decision = Decision(
        session._take_seq(), session._stamp(clock), action, target_kind, target, Origin.USER
    )
    session.decisions.append(decision)
    return decision


def effective_selection(session: SearchSession) -> tuple[set[Iri], set[Iri]]:
    """Fold the decision log into the current selection.

    The last decision per target wins; an entity is effective only when
    it is selected itself and at least one category containing it is
    selected too.
    """
    state: dict[tuple[TargetKind, Iri], Action] = {}
    for decision in session.decisions:
        state[(decision.target_kind, decision.target)] = decision.action

    selected_categories = {
        target
        for (kind, target), action in state.items()
        if kind is TargetKind.CATEGORY and action is Action.SELECT
    }
    selected_entities = set()
    for (kind, target), action in state.items():
        if kind is not TargetKind.ENTITY or action is not Action.SELECT:
            continue
        if any(c in selected_categories for c in session.categories_of_entity(target)):
            selected_entities.add(target)
    return selected_categories, selected_entities


def assert_fragment_relevance(
    session: SearchSession,
    index: CorpusIndex,
    doc_id: str,
    sentence_index: int,
    clock: Clock | None = None,
) -> RelevanceAssertion:
    """Record that a retrievable fragment refers to the period.

    The assertion cites the selected entities linked in the sentence and
    the seq numbers of every decision about those entities or about a
    category containing them: the full provenance chain, superseded
    decisions included.
    """
    _, selected_entities = effective_selection(session)
    if not index.has_document(doc_id):
        raise FragmentNotInResultSet(doc_id, sentence_index)
    doc = index.document(doc_id)
    if not 0 <= sentence_index < len(doc.sentences):
        raise FragmentNotInResultSet(doc_id, sentence_index)

    matching = sorted(
        {l.iri for l in index.links_in_sentence(doc_id, sentence_index) if l.iri in selected_entities}
    )
    if not matching:
        raise FragmentNotInResultSet(doc_id, sentence_index)

    related_categories: set[Iri] = set()
    for entity in matching:
        related_categories.update(session.categories_of_entity(entity))
    supporting = tuple(
        d.seq
        for d in session.decisions
        if (d.target_kind is TargetKind.ENTITY and d.target in matching)
        or (d.target_kind is TargetKind.CATEGORY and d.target in related_categories)
    )

    start, end = index.sentence_span(doc_id, sentence_index)
    assertion = RelevanceAssertion(
        seq=session._take_seq(),
        timestamp=session._stamp(clock),
        doc_id=doc_id,
        sentence_start=start,
        sentence_end=end,
        entities=tuple(matching),
        period_subjects=tuple(session.roots),
        supporting_decisions=supporting,
    )
    session.assertions.append(assertion)
    return assertion


# -- export / import --------------------------------------------------------


def export_session(session: SearchSession) -> dict:
    """The export document; fixed key order, every decision ever recorded."""
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
        "decisions": [
            {
                "seq": d.seq,
                "timestamp": d.timestamp,
                "action": d.action.value,
                "target_kind": d.target_kind.value,
                "target": d.target,
                "origin": d.origin.value,
            }
            for d in session.decisions
        ],
        "assertions": [
            {
                "seq": a.seq,
                "timestamp": a.timestamp,
                "doc_id": a.doc_id,
                "sentence_start": a.sentence_start,
                "sentence_end": a.sentence_end,
                "entities": list(a.entities),
                "period_subjects": list(a.period_subjects),
                "supporting_decisions": list(a.supporting_decisions),
            }
            for a in session.assertions
        ],
    }


def export_session_bytes(session: SearchSession) -> bytes:
    """Byte-stable JSON rendering of the export document."""
    return (json.dumps(export_session(session), ensure_ascii=False, indent=2) + "\n").encode(
        "utf-8"
    )


def import_session(
    graph: KnowledgeGraph,
    document: dict,
    *,
    thresholds: ClassificationThresholds | None = None,
    min_year: int = 100,
    max_year: int = 2100,
) -> SearchSession:
    """Rebuild a session from its export document.

    The decision log and assertions are taken verbatim; the tree, member
    lists, and classifications are re-derived from the immutable graph,
    which reproduces the creation-time scope exactly.
    """
    period = Period(
        label=document["period"]["label"],
        start_year=document["period"]["start_year"],
        end_year=document["period"]["end_year"],
    )
    roots = list(document["roots"])
    max_depth = document["max_depth"]
    th = thresholds or ClassificationThresholds()
    trees, members, classes, status = _derive_scope(
        graph, period, roots, max_depth, th, min_year, max_year
    )

    decisions = [
        Decision(
            seq=d["seq"],
            timestamp=d["timestamp"],
            action=Action(d["action"]),
            target_kind=TargetKind(d["target_kind"]),
            target=d["target"],
            origin=Origin(d["origin"]),
        )
        for d in document["decisions"]
    ]
    assertions = [
        RelevanceAssertion(
            seq=a["seq"],
            timestamp=a["timestamp"],
            doc_id=a["doc_id"],
            sentence_start=a["sentence_start"],
            sentence_end=a["sentence_end"],
            entities=tuple(a["entities"]),
            period_subjects=tuple(a["period_subjects"]),
            supporting_decisions=tuple(a["supporting_decisions"]),
        )
        for a in document["assertions"]
    ]
    max_seq = max(
        [d.seq for d in decisions] + [a.seq for a in assertions], default=0
    )
    return SearchSession(
        session_id=document["session_id"],
        created_at=document["created_at"],
        motivation=document["motivation"],
        period=period,
        roots=roots,
        max_depth=max_depth,
        decisions=decisions,
        assertions=assertions,
        trees=trees,
        members=members,
        entity_classes=classes,
        category_status=status,
        _next_seq=max_seq + 1,
    )


class SessionStore:
    """One JSON file per session, written atomically after each event."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, session_id: str) -> Path:
        if not _SESSION_ID_RE.match(session_id):
            raise ValueError(f"unsafe session id: {session_id!r}")
        return self.directory / f"{session_id}.json"

    def save(self, session: SearchSession) -> Path:
        path = self._path(session.session_id)
        tmp = path.with_name(f".{path.name}.tmp")
        tmp.write_bytes(export_session_bytes(session))
        os.replace(tmp, path)
        return path

    def load(self, graph: KnowledgeGraph, session_id: str, **kwargs) -> SearchSession:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSession(session_id)
        document = json.loads(path.read_text(encoding="utf-8"))
        return import_session(graph, document, **kwargs)

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))
