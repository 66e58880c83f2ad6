"""Sentence-granular corpus index over entity-link annotations.

Documents arrive as JSON Lines with standoff entity links (code-point
offsets). Ingestion segments each text into sentences and posts every
link under its entity IRI, keyed to the sentence containing the link's
start offset. After ingestion the index is frozen and serves retrieval,
counting, preview, and aggregation queries for any entity selection.
"""

from __future__ import annotations

import datetime as dt
import json
import re
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import DuplicateDocId, OffsetOutOfBounds, SurfaceMismatch
from .kg import Iri

# Split after ., ! or ? followed by whitespace and an uppercase letter or
# digit. The whitespace stays with the preceding sentence so the spans
# partition the text.
DEFAULT_SENTENCE_SPLIT = r"(?<=[.!?])\s+(?=[A-Z0-9])"


@dataclass(frozen=True)
class EntityLink:
    """Standoff annotation tying a text span to an entity IRI."""

    start: int
    end: int
    iri: Iri
    surface: str
    confidence: float = 1.0


@dataclass
class Document:
    doc_id: str
    text: str
    date: dt.date
    meta: dict[str, str]
    sentences: list[tuple[int, int]]
    links: list[EntityLink]

    def sentence_of_offset(self, offset: int) -> int:
        starts = [s for s, _ in self.sentences]
        idx = bisect_right(starts, offset) - 1
        if idx < 0 or offset >= self.sentences[idx][1]:
            raise ValueError(f"offset {offset} outside sentence spans of {self.doc_id}")
        return idx


@dataclass(frozen=True)
class Fragment:
    """A sentence of a document, optionally with surrounding context."""

    doc_id: str
    sentence_index: int
    context_before: int = 0
    context_after: int = 0


@dataclass(frozen=True)
class Highlight:
    """A matched span, relative to the snippet text."""

    start: int
    end: int
    iri: Iri


@dataclass(frozen=True)
class Snippet:
    """Renderable fragment: sentence plus context with marked spans."""

    doc_id: str
    sentence_index: int
    date: dt.date
    meta: dict[str, str]
    text: str
    snippet_start: int
    sentence_start: int
    sentence_end: int
    context_before: int
    context_after: int
    highlights: tuple[Highlight, ...]


@dataclass(frozen=True)
class _Posting:
    sort_key: tuple[dt.date, str, int, int]
    doc_id: str
    sentence_index: int
    link: EntityLink


def segment_sentences(text: str, boundary: re.Pattern) -> list[tuple[int, int]]:
    """Partition text into sentence spans at the boundary regex."""
    if not text:
        return []
    starts = [0]
    for m in boundary.finditer(text):
        starts.append(m.end())
    return [(s, e) for s, e in zip(starts, starts[1:] + [len(text)])]


class CorpusIndex:
    """In-memory inverted index from entity IRI to sentence postings.

    Ingestion is the exclusive write phase; the first query freezes the
    index and later ingests raise ``RuntimeError``. All offsets are
    Unicode code points.
    """

    def __init__(
        self,
        sentence_split_regex: str = DEFAULT_SENTENCE_SPLIT,
        min_confidence: float = 0.0,
    ):
        self._boundary = re.compile(sentence_split_regex)
        self._min_confidence = min_confidence
        self._docs: dict[str, Document] = {}
        self._postings: dict[Iri, list[_Posting]] = {}
        self._frozen = False

    # -- ingestion ---------------------------------------------------------

    def ingest_document(self, record: dict) -> Document:
        """Index one corpus record (see the JSONL schema in the README).

        Raises DuplicateDocId, OffsetOutOfBounds, or SurfaceMismatch when
        the record violates its contract.
        """
        if self._frozen:
            raise RuntimeError("index is frozen; ingest before querying")
        doc_id = record["doc_id"]
        if doc_id in self._docs:
            raise DuplicateDocId(doc_id)
        text = record["text"]
        date = dt.date.fromisoformat(record["date"])
        meta = dict(record.get("meta") or {})
        sentences = segment_sentences(text, self._boundary)

        links: list[EntityLink] = []
        for i, raw in enumerate(record.get("links") or []):
            start, end = raw["start"], raw["end"]
            if not (0 <= start < end <= len(text)):
                raise OffsetOutOfBounds(doc_id, i)
            surface = raw.get("surface", text[start:end])
            if surface != text[start:end]:
                raise SurfaceMismatch(doc_id, i, text[start:end], surface)
            confidence = float(raw.get("confidence", 1.0))
            if not 0.0 <= confidence <= 1.0:
                raise ValueError(f"link {i} of {doc_id}: confidence {confidence} outside [0, 1]")
            links.append(EntityLink(start, end, raw["iri"], surface, confidence))

        doc = Document(doc_id, text, date, meta, sentences, links)
        self._docs[doc_id] = doc
        for link in links:
            if link.confidence < self._min_confidence:
                continue
            sentence_index = doc.sentence_of_offset(link.start)
            posting = _Posting(
                sort_key=(date, doc_id, sentence_index, link.start),
                doc_id=doc_id,
                sentence_index=sentence_index,
                link=link,
            )
            self._postings.setdefault(link.iri, []).append(posting)
        return doc

    def load_jsonl(self, source) -> int:
        """Ingest a JSONL corpus from a path, bytes, or file object."""
        if isinstance(source, (bytes, bytearray)):
            lines = bytes(source).decode("utf-8").splitlines()
        elif hasattr(source, "read"):
            data = source.read()
            if isinstance(data, bytes):
                data = data.decode("utf-8")
            lines = data.splitlines()
        else:
            with open(source, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        count = 0
        for line in lines:
            if not line.strip():
                continue
            self.ingest_document(json.loads(line))
            count += 1
        return count

    def freeze(self) -> None:
        if self._frozen:
            return
        for postings in self._postings.values():
            postings.sort(key=lambda p: p.sort_key)
        self._frozen = True

    # -- lookups -----------------------------------------------------------

    @property
    def doc_count(self) -> int:
        return len(self._docs)

    def doc_ids(self) -> list[str]:
        return sorted(self._docs)

    def document(self, doc_id: str) -> Document:
        return self._docs[doc_id]

    def has_document(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def sentence_span(self, doc_id: str, sentence_index: int) -> tuple[int, int]:
        return self._docs[doc_id].sentences[sentence_index]

    def links_in_sentence(self, doc_id: str, sentence_index: int) -> list[EntityLink]:
        doc = self._docs[doc_id]
        start, end = doc.sentences[sentence_index]
        return [l for l in doc.links if start <= l.start < end]

    # -- queries -----------------------------------------------------------

    def entity_counts(self, entities) -> dict[Iri, int]:
        """Mention count per entity; entities without postings map to 0."""
        self.freeze()
        return {iri: len(self._postings.get(iri, [])) for iri in dict.fromkeys(entities)}

    def _selected_postings(self, selected: set[Iri]) -> list[_Posting]:
        self.freeze()
        merged: list[_Posting] = []
        for iri in selected:
            merged.extend(self._postings.get(iri, []))
        merged.sort(key=lambda p: p.sort_key)
        return merged

    def fetch_fragments(self, entities, excluded_entities=()) -> list[Fragment]:
        """All sentences with at least one link to a selected entity.

        Each (document, sentence) pair is returned once, ordered by
        document date, doc_id, then sentence index.
        """
        selected = set(entities) - set(excluded_entities)
        seen: set[tuple[str, int]] = set()
        fragments: list[Fragment] = []
        for posting in self._selected_postings(selected):
            key = (posting.doc_id, posting.sentence_index)
            if key in seen:
                continue
            seen.add(key)
            fragments.append(Fragment(posting.doc_id, posting.sentence_index))
        return fragments

    def preview(self, entities, k: int, context: int = 1) -> list[Snippet]:
        """Up to ``k`` snippets drawn round-robin across the entities.

        The most-mentioned entity contributes first and each entity's own
        fragments come in (date, doc_id, sentence) order; the chosen set
        is then presented in that same deterministic order.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        self.freeze()
        entity_list = list(dict.fromkeys(entities))
        counts = self.entity_counts(entity_list)
        entity_list.sort(key=lambda iri: (-counts[iri], iri))

        per_entity: list[list[_Posting]] = []
        for iri in entity_list:
            unique: list[_Posting] = []
            seen_local: set[tuple[str, int]] = set()
            for posting in self._postings.get(iri, []):
                key = (posting.doc_id, posting.sentence_index)
                if key not in seen_local:
                    seen_local.add(key)
                    unique.append(posting)
            per_entity.append(unique)

        chosen: list[_Posting] = []
        taken: set[tuple[str, int]] = set()
        round_no = 0
        while len(chosen) < k and any(round_no < len(lst) for lst in per_entity):
            for lst in per_entity:
                if len(chosen) >= k:
                    break
                if round_no >= len(lst):
                    continue
                posting = lst[round_no]
                key = (posting.doc_id, posting.sentence_index)
                if key in taken:
                    continue
                taken.add(key)
                chosen.append(posting)
            round_no += 1

        chosen.sort(key=lambda p: p.sort_key)
        marked = set(entity_list)
        return [
            self.snippet(
                Fragment(p.doc_id, p.sentence_index, context, context), marked
            )
            for p in chosen
        ]

    def snippet(self, fragment: Fragment, highlight_iris: set[Iri]) -> Snippet:
        """Render a fragment with context sentences and marked spans."""
        doc = self._docs[fragment.doc_id]
        si = fragment.sentence_index
        lo = max(0, si - fragment.context_before)
        hi = min(len(doc.sentences) - 1, si + fragment.context_after)
        snippet_start = doc.sentences[lo][0]
        snippet_end = doc.sentences[hi][1]
        sentence_start, sentence_end = doc.sentences[si]
        highlights = tuple(
            Highlight(l.start - snippet_start, l.end - snippet_start, l.iri)
            for l in doc.links
            if l.iri in highlight_iris and snippet_start <= l.start < snippet_end
        )
        return Snippet(
            doc_id=doc.doc_id,
            sentence_index=si,
            date=doc.date,
            meta=doc.meta,
            text=doc.text[snippet_start:snippet_end],
            snippet_start=snippet_start,
            sentence_start=sentence_start,
            sentence_end=sentence_end,
            context_before=si - lo,
            context_after=hi - si,
            highlights=highlights,
        )

    def timeline_counts(self, entities) -> dict[int, int]:
        """Link-level match counts per document year."""
        counts: dict[int, int] = {}
        for posting in self._selected_postings(set(entities)):
            year = self._docs[posting.doc_id].date.year
            counts[year] = counts.get(year, 0) + 1
        return dict(sorted(counts.items()))

    def facet_counts(self, entities, meta_key: str) -> dict[str, int]:
        """Link-level match counts grouped by a document metadata value.

        Documents without the key count under ``"(none)"``.
        """
        counts: dict[str, int] = {}
        for posting in self._selected_postings(set(entities)):
            value = self._docs[posting.doc_id].meta.get(meta_key, "(none)")
            counts[value] = counts.get(value, 0) + 1
        return dict(sorted(counts.items()))

    def verify_offsets(self) -> None:
        """Re-check the surface invariant for every indexed link."""
        for doc in self._docs.values():
            for i, link in enumerate(doc.links):
                if doc.text[link.start:link.end] != link.surface:
                    raise SurfaceMismatch(
                        doc.doc_id, i, doc.text[link.start:link.end], link.surface
                    )
