"""Sentence segmentation, ingestion contracts, and index queries."""

from __future__ import annotations

import io
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from erasearch.corpus import (
    DEFAULT_SENTENCE_SPLIT,
    CorpusIndex,
    Fragment,
    segment_sentences,
)
from erasearch.errors import DuplicateDocId, OffsetOutOfBounds, SurfaceMismatch

E = "http://ex/e/"
BOUNDARY = re.compile(DEFAULT_SENTENCE_SPLIT)


def _doc(doc_id="d1", text="", date="1950-01-01", meta=None, links=()):
    record = {"doc_id": doc_id, "date": date, "text": text, "links": list(links)}
    if meta is not None:
        record["meta"] = meta
    return record


def _link(start, end, iri, **extra):
    return {"start": start, "end": end, "iri": iri, **extra}


# -- segmentation ------------------------------------------------------------


def test_segment_two_sentences():
    text = "Robespierre fell. The Terror ended."
    spans = segment_sentences(text, BOUNDARY)
    assert [text[s:e] for s, e in spans] == ["Robespierre fell. ", "The Terror ended."]


def test_segment_requires_upper_or_digit_after_break():
    text = "See p. 14 of the report."
    assert len(segment_sentences(text, BOUNDARY)) == 2  # digit after "p. "
    text2 = "The amendment (see above) passed. it was late."
    assert len(segment_sentences(text2, BOUNDARY)) == 1  # lowercase continuation


def test_segment_empty_text():
    assert segment_sentences("", BOUNDARY) == []


@given(st.text(max_size=200))
def test_segment_partitions_text(text):
    spans = segment_sentences(text, BOUNDARY)
    assert "".join(text[s:e] for s, e in spans) == text
    for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
        assert s1 < e1 == s2 < e2


# -- ingestion ---------------------------------------------------------------


def test_ingest_posts_link_under_its_sentence():
    index = CorpusIndex()
    index.ingest_document(
        _doc(text="Robespierre fell. The Terror ended.", links=[_link(0, 11, E + "rob")])
    )
    assert index.entity_counts([E + "rob"]) == {E + "rob": 1}
    frags = index.fetch_fragments({E + "rob"})
    assert frags == [Fragment("d1", 0)]


def test_ingest_link_in_second_sentence():
    index = CorpusIndex()
    text = "Robespierre fell. The Terror ended."
    index.ingest_document(_doc(text=text, links=[_link(18, 28, E + "terror")]))
    assert index.fetch_fragments({E + "terror"}) == [Fragment("d1", 1)]


def test_ingest_defaults_meta_and_confidence():
    index = CorpusIndex()
    doc = index.ingest_document(_doc(text="Plain text."))
    assert doc.meta == {}
    index2 = CorpusIndex()
    doc2 = index2.ingest_document(
        _doc(text="Robespierre spoke.", links=[_link(0, 11, E + "rob")])
    )
    assert doc2.links[0].confidence == 1.0
    assert doc2.links[0].surface == "Robespierre"


def test_ingest_duplicate_doc_id():
    index = CorpusIndex()
    index.ingest_document(_doc(text="One."))
    with pytest.raises(DuplicateDocId):
        index.ingest_document(_doc(text="Two."))


@pytest.mark.parametrize("start,end", [(-1, 3), (5, 5), (7, 3), (0, 99)])
def test_ingest_offset_out_of_bounds(start, end):
    index = CorpusIndex()
    with pytest.raises(OffsetOutOfBounds) as exc:
        index.ingest_document(_doc(text="Short text.", links=[_link(start, end, E + "x")]))
    assert exc.value.doc_id == "d1"
    assert exc.value.link_index == 0


def test_ingest_surface_mismatch():
    index = CorpusIndex()
    with pytest.raises(SurfaceMismatch):
        index.ingest_document(
            _doc(text="Robespierre fell.", links=[_link(0, 11, E + "rob", surface="Danton")])
        )


def test_ingest_bad_confidence():
    index = CorpusIndex()
    with pytest.raises(ValueError):
        index.ingest_document(
            _doc(text="Robespierre fell.", links=[_link(0, 11, E + "rob", confidence=1.5)])
        )


def test_ingest_after_freeze_fails():
    index = CorpusIndex()
    index.ingest_document(_doc(text="One."))
    index.entity_counts([E + "x"])  # first query freezes
    with pytest.raises(RuntimeError):
        index.ingest_document(_doc(doc_id="d2", text="Two."))


def test_min_confidence_filters_postings_not_links():
    index = CorpusIndex(min_confidence=0.9)
    doc = index.ingest_document(
        _doc(
            text="Robespierre fell. The Terror ended.",
            links=[
                _link(0, 11, E + "rob", confidence=0.5),
                _link(18, 28, E + "terror", confidence=0.95),
            ],
        )
    )
    assert len(doc.links) == 2  # document keeps the low-confidence link
    assert index.entity_counts([E + "rob", E + "terror"]) == {E + "rob": 0, E + "terror": 1}


def test_load_jsonl_counts_and_skips_blank_lines():
    payload = (
        '{"doc_id": "a", "date": "1950-01-01", "text": "One."}\n'
        "\n"
        '{"doc_id": "b", "date": "1950-01-02", "text": "Two."}\n'
    )
    index = CorpusIndex()
    assert index.load_jsonl(payload.encode("utf-8")) == 2
    assert index.doc_ids() == ["a", "b"]
    index2 = CorpusIndex()
    assert index2.load_jsonl(io.BytesIO(payload.encode("utf-8"))) == 2


# -- queries -----------------------------------------------------------------


@pytest.fixture
def small_index():
    index = CorpusIndex()
    index.ingest_document(
        _doc(
            doc_id="d2",
            date="1951-03-01",
            text="The Terror returned. Nobody cheered.",
            meta={"party": "B"},
            links=[_link(4, 10, E + "terror")],
        )
    )
    index.ingest_document(
        _doc(
            doc_id="d1",
            date="1950-06-01",
            text="Robespierre and the Terror. A new motion followed.",
            meta={"party": "A"},
            links=[_link(0, 11, E + "rob"), _link(20, 26, E + "terror")],
        )
    )
    index.ingest_document(
        _doc(
            doc_id="d3",
            date="1950-06-01",
            text="Robespierre again. Robespierre always.",
            links=[_link(0, 11, E + "rob"), _link(19, 30, E + "rob")],
        )
    )
    index.freeze()
    return index


def test_entity_counts_zeros_and_dedup(small_index):
    counts = small_index.entity_counts([E + "rob", E + "ghost", E + "rob"])
    assert counts == {E + "rob": 3, E + "ghost": 0}
    assert small_index.entity_counts([]) == {}


def test_fetch_fragments_order_and_dedupe(small_index):
    frags = small_index.fetch_fragments({E + "rob", E + "terror"})
    # date ascending, then doc_id, then sentence; d1 sentence 0 has two
    # selected links but appears once
    assert frags == [
        Fragment("d1", 0),
        Fragment("d3", 0),
        Fragment("d3", 1),
        Fragment("d2", 0),
    ]


def test_fetch_fragments_exclusion(small_index):
    assert small_index.fetch_fragments({E + "rob"}, {E + "rob"}) == []
    only_terror = small_index.fetch_fragments({E + "rob", E + "terror"}, {E + "rob"})
    assert only_terror == [Fragment("d1", 0), Fragment("d2", 0)]


def test_fetch_fragments_idempotent(small_index):
    a = small_index.fetch_fragments({E + "rob", E + "terror"})
    b = small_index.fetch_fragments({E + "rob", E + "terror"})
    assert a == b


def test_preview_round_robin():
    # rob's three fragments all predate terror's one; plain date order
    # would fill k=2 with rob alone, round-robin takes one from each
    index = CorpusIndex()
    for day in (1, 2, 3):
        index.ingest_document(
            _doc(
                doc_id=f"r{day}",
                date=f"1950-01-0{day}",
                text="Robespierre spoke.",
                links=[_link(0, 11, E + "rob")],
            )
        )
    index.ingest_document(
        _doc(
            doc_id="t1",
            date="1951-01-01",
            text="The Terror ended.",
            links=[_link(4, 10, E + "terror")],
        )
    )
    snippets = index.preview([E + "terror", E + "rob"], k=2, context=0)
    assert [(s.doc_id, s.sentence_index) for s in snippets] == [("r1", 0), ("t1", 0)]


def test_preview_shared_sentence_counts_for_both():
    # both entities' earliest fragment is the same sentence; it is
    # returned once and the next round draws the runner-up
    index = CorpusIndex()
    index.ingest_document(
        _doc(
            doc_id="s1",
            date="1950-01-01",
            text="Robespierre and the Terror.",
            links=[_link(0, 11, E + "rob"), _link(20, 26, E + "terror")],
        )
    )
    index.ingest_document(
        _doc(
            doc_id="s2",
            date="1950-01-02",
            text="Robespierre alone.",
            links=[_link(0, 11, E + "rob")],
        )
    )
    snippets = index.preview([E + "rob", E + "terror"], k=2, context=0)
    assert [(s.doc_id, s.sentence_index) for s in snippets] == [("s1", 0), ("s2", 0)]


def test_preview_is_subset_of_fetch(small_index):
    selection = [E + "rob", E + "terror"]
    fetched = {(f.doc_id, f.sentence_index) for f in small_index.fetch_fragments(selection)}
    for k in (1, 2, 3, 10):
        previewed = {
            (s.doc_id, s.sentence_index) for s in small_index.preview(selection, k=k)
        }
        assert previewed <= fetched
        assert len(previewed) <= k


def test_preview_k_validation_and_zero_hits(small_index):
    with pytest.raises(ValueError):
        small_index.preview([E + "rob"], k=0)
    assert small_index.preview([E + "ghost"], k=3) == []


def test_snippet_highlights_are_snippet_relative(small_index):
    snippet = small_index.snippet(Fragment("d1", 1, context_before=1), {E + "rob", E + "terror"})
    assert snippet.text == "Robespierre and the Terror. A new motion followed."
    assert snippet.snippet_start == 0
    spans = {snippet.text[h.start:h.end] for h in snippet.highlights}
    assert spans == {"Robespierre", "Terror"}
    # without context the marks outside the sentence disappear
    bare = small_index.snippet(Fragment("d1", 1), {E + "rob", E + "terror"})
    assert bare.highlights == ()


def test_snippet_context_clamped_at_document_edges(small_index):
    snippet = small_index.snippet(Fragment("d2", 0, 3, 3), set())
    assert snippet.context_before == 0
    assert snippet.context_after == 1


def test_timeline_counts_are_link_level(small_index):
    counts = small_index.timeline_counts([E + "rob", E + "terror"])
    assert counts == {1950: 4, 1951: 1}


def test_facet_counts_with_missing_key(small_index):
    counts = small_index.facet_counts([E + "rob", E + "terror"], "party")
    assert counts == {"(none)": 2, "A": 2, "B": 1}
    assert small_index.facet_counts([E + "ghost"], "party") == {}


def test_conservation_on_fixture(small_index):
    selection = [E + "rob", E + "terror"]
    total_links = sum(small_index.entity_counts(selection).values())
    assert sum(small_index.timeline_counts(selection).values()) == total_links
    assert sum(small_index.facet_counts(selection, "party").values()) == total_links
    assert sum(small_index.facet_counts(selection, "chamber").values()) == total_links


def test_verify_offsets_passes(small_index):
    small_index.verify_offsets()


def test_ingestion_order_does_not_change_queries():
    records = [
        _doc(doc_id="a", date="1950-01-01", text="Robespierre spoke.", links=[_link(0, 11, E + "rob")]),
        _doc(doc_id="b", date="1949-01-01", text="Robespierre replied.", links=[_link(0, 11, E + "rob")]),
        _doc(doc_id="c", date="1950-01-01", text="The Terror ended.", links=[_link(4, 10, E + "terror")]),
    ]
    i1, i2 = CorpusIndex(), CorpusIndex()
    for r in records:
        i1.ingest_document(r)
    for r in reversed(records):
        i2.ingest_document(r)
    sel = {E + "rob", E + "terror"}
    assert i1.fetch_fragments(sel) == i2.fetch_fragments(sel)
    assert i1.timeline_counts(sel) == i2.timeline_counts(sel)


# conservation over randomized selections, on the deterministic sample corpus
@given(st.sets(st.sampled_from(["rob", "terror", "ghost"])))
def test_conservation_property(names):
    index = CorpusIndex()
    index.ingest_document(
        _doc(
            doc_id="x1",
            date="1950-01-01",
            text="Robespierre and the Terror. The Terror again.",
            meta={"party": "A"},
            links=[
                _link(0, 11, E + "rob"),
                _link(20, 26, E + "terror"),
                _link(32, 38, E + "terror"),
            ],
        )
    )
    index.ingest_document(
        _doc(
            doc_id="x2",
            date="1951-01-01",
            text="Robespierre once more.",
            links=[_link(0, 11, E + "rob")],
        )
    )
    selection = [E + n for n in names]
    total = sum(index.entity_counts(selection).values())
    assert sum(index.timeline_counts(selection).values()) == total
    assert sum(index.facet_counts(selection, "party").values()) == total
