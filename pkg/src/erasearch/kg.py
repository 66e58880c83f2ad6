"""SKOS-style category network held in memory.

Parses the N-Triples subset used for category and entity data, builds an
immutable property graph, and answers the queries that drive period
operationalization: which categories sit below a root (reverse traversal
of broader-than edges), which entities they contain (reverse traversal of
subject edges), and which category labels match a typeahead query.

The graph is built once and never mutated afterwards, so it is safe to
share across any number of concurrent readers.
"""

from __future__ import annotations

import logging
import re
import warnings
from collections import deque
from dataclasses import dataclass, field

from .errors import ConflictingAliasWarning, MalformedTriple, UnknownCategory

logger = logging.getLogger(__name__)

Iri = str

SKOS_BROADER = "http://www.w3.org/2004/02/skos/core#broader"
DCT_SUBJECT = "http://purl.org/dc/terms/subject"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"
OWL_SAME_AS = "http://www.w3.org/2002/07/owl#sameAs"

DEFAULT_MAX_DEPTH = 3


@dataclass(frozen=True)
class PredicateConfig:
    """Predicate IRIs recognized by :func:`build_graph`.

    Matched by full-string equality; everything else in the input is
    parsed but ignored.
    """

    broader: Iri = SKOS_BROADER
    subject: Iri = DCT_SUBJECT
    label: Iri = RDFS_LABEL
    comment: Iri = RDFS_COMMENT
    same_as: Iri = OWL_SAME_AS


@dataclass(frozen=True)
class Literal:
    """A plain or language-tagged string object of a triple."""

    text: str
    lang: str | None = None


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    obj: Iri | Literal


# One line: <s> <p> <o> .   or   <s> <p> "literal"(@lang)? .
_TRIPLE_RE = re.compile(
    r'^<([^<>\s]+)>\s+<([^<>\s]+)>\s+'
    r'(?:<([^<>\s]+)>|"((?:[^"\\]|\\.)*)"(?:@([A-Za-z][A-Za-z0-9-]*))?)'
    r'\s*\.$'
)

# Absolute IRIs start with a scheme.
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")

_UNESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")
_CHAR_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def _unescape_literal(raw: str, line_number: int) -> str:
    def sub(m: re.Match) -> str:
        esc = m.group(1)
        if esc[0] in "uU":
            return chr(int(esc[1:], 16))
        try:
            return _CHAR_ESCAPES[esc]
        except KeyError:
            raise MalformedTriple(line_number, reason=f"bad escape \\{esc}") from None

    return _UNESCAPE_RE.sub(sub, raw)


def _escape_literal(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
        .replace("\f", "\\f")
        .replace("\b", "\\b")
    )


def _iter_lines(source) -> list[str]:
    # The format is newline-delimited; do not use splitlines(), which would
    # also break on form feeds and similar characters inside literals.
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    return [line.rstrip("\r") for line in text.split("\n")]


def parse_triples(source) -> list[Triple]:
    """Parse the N-Triples subset from bytes, a string, or a file object.

    Blank lines and ``#`` comment lines are skipped. Every other line must
    be ``<s> <p> <o> .`` with an IRI or a plain/language-tagged literal
    object; anything else raises :class:`MalformedTriple` carrying the
    1-based line number. Invalid UTF-8 input raises ``UnicodeDecodeError``.
    """
    triples: list[Triple] = []
    for number, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _TRIPLE_RE.match(line)
        if not m:
            raise MalformedTriple(number, line=raw)
        subject, predicate, obj_iri, obj_text, obj_lang = m.groups()
        for iri in (subject, predicate, obj_iri):
            if iri is not None and not _SCHEME_RE.match(iri):
                raise MalformedTriple(number, line=raw, reason=f"IRI not absolute: {iri}")
        if obj_iri is not None:
            obj: Iri | Literal = obj_iri
        else:
            obj = Literal(_unescape_literal(obj_text, number), obj_lang)
        triples.append(Triple(subject, predicate, obj))
    return triples


def serialize_triples(triples) -> str:
    """Render triples back to the same line-oriented subset.

    ``parse_triples(serialize_triples(ts))`` returns records equal to
    ``ts``.
    """
    lines = []
    for t in triples:
        if isinstance(t.obj, Literal):
            tag = f"@{t.obj.lang}" if t.obj.lang else ""
            obj = f'"{_escape_literal(t.obj.text)}"{tag}'
        else:
            obj = f"<{t.obj}>"
        lines.append(f"<{t.subject}> <{t.predicate}> {obj} .")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(eq=True)
class KnowledgeGraph:
    """Immutable category/entity graph with reverse-traversal indexes.

    ``broader_edges`` point narrower -> broader and ``subject_edges``
    point entity -> category; both are also indexed in reverse so that
    narrower-category and member-entity lookups cost O(out-degree).
    """

    categories: frozenset[Iri]
    entities: frozenset[Iri]
    broader_edges: frozenset[tuple[Iri, Iri]]
    subject_edges: frozenset[tuple[Iri, Iri]]
    labels: dict[Iri, str]
    descriptions: dict[Iri, str]
    aliases: dict[Iri, Iri]
    _narrower: dict[Iri, tuple[Iri, ...]] = field(compare=False, repr=False, default_factory=dict)
    _members: dict[Iri, tuple[Iri, ...]] = field(compare=False, repr=False, default_factory=dict)

    def resolve(self, iri: Iri) -> Iri:
        """Map an IRI through the alias table; canonical IRIs map to themselves."""
        return self.aliases.get(iri, iri)

    def narrower(self, category: Iri) -> tuple[Iri, ...]:
        return self._narrower.get(category, ())

    def raw_members(self, category: Iri) -> tuple[Iri, ...]:
        """Entities with a subject edge to the category, unresolved."""
        return self._members.get(category, ())

    def display_label(self, iri: Iri) -> str:
        label = self.labels.get(iri)
        if label is not None:
            return label
        tail = iri.rsplit("/", 1)[-1].rsplit("#", 1)[-1]
        return tail.replace("_", " ")


def _keep_smallest(store: dict[Iri, dict[str | None, str]], iri: Iri, lit: Literal) -> None:
    # Lexicographically smallest text per (iri, lang) so the result does not
    # depend on triple order.
    by_lang = store.setdefault(iri, {})
    current = by_lang.get(lit.lang)
    if current is None or lit.text < current:
        by_lang[lit.lang] = lit.text


def _pick_literal(by_lang: dict[str | None, str], preferred: str) -> str:
    if preferred in by_lang:
        return by_lang[preferred]
    if None in by_lang:
        return by_lang[None]
    return by_lang[min(k for k in by_lang if k is not None)]


def _resolve_alias_pairs(pairs: set[tuple[Iri, Iri]]) -> dict[Iri, Iri]:
    nxt: dict[Iri, Iri] = {}
    for a, b in sorted(pairs):
        if a == b:
            continue
        if a in nxt and nxt[a] != b:
            warnings.warn(
                ConflictingAliasWarning(f"{a} has multiple sameAs targets; keeping {nxt[a]}")
            )
            continue
        nxt.setdefault(a, b)

    resolved: dict[Iri, Iri] = {}

    def follow(start: Iri) -> None:
        path: list[Iri] = []
        cur = start
        while True:
            if cur in resolved:
                canon = resolved[cur]
                break
            if cur not in nxt:
                canon = cur
                break
            if cur in path:
                cycle = path[path.index(cur):]
                canon = min(cycle)
                warnings.warn(
                    ConflictingAliasWarning(
                        f"sameAs cycle {' -> '.join(cycle)}; canonical pick {canon}"
                    )
                )
                break
            path.append(cur)
            cur = nxt[cur]
        for node in path:
            resolved[node] = canon

    for start in sorted(nxt):
        follow(start)
    return resolved


def build_graph(
    triples,
    predicates: PredicateConfig | None = None,
    preferred_language: str = "en",
) -> KnowledgeGraph:
    """Assemble a :class:`KnowledgeGraph` from parsed triples.

    Broader edges classify both endpoints as categories; subject edges
    classify their subject as an entity and their object as a category.
    An IRI landing in both sets is kept as a category and its own subject
    edges are dropped with a warning. The result is independent of the
    order of the input triples.
    """
    preds = predicates or PredicateConfig()
    broader: set[tuple[Iri, Iri]] = set()
    subject: set[tuple[Iri, Iri]] = set()
    label_texts: dict[Iri, dict[str | None, str]] = {}
    comment_texts: dict[Iri, dict[str | None, str]] = {}
    alias_pairs: set[tuple[Iri, Iri]] = set()

    for t in triples:
        p = t.predicate
        if p == preds.broader:
            if isinstance(t.obj, Literal):
                logger.warning("broader edge with literal object ignored: %s", t.subject)
                continue
            broader.add((t.subject, t.obj))
        elif p == preds.subject:
            if isinstance(t.obj, Literal):
                logger.warning("subject edge with literal object ignored: %s", t.subject)
                continue
            subject.add((t.subject, t.obj))
        elif p == preds.same_as:
            if isinstance(t.obj, Literal):
                logger.warning("sameAs with literal object ignored: %s", t.subject)
                continue
            alias_pairs.add((t.subject, t.obj))
        elif p == preds.label:
            if isinstance(t.obj, Literal):
                _keep_smallest(label_texts, t.subject, t.obj)
        elif p == preds.comment:
            if isinstance(t.obj, Literal):
                _keep_smallest(comment_texts, t.subject, t.obj)
        # all other predicates ignored

    categories = {n for edge in broader for n in edge} | {c for _, c in subject}
    entities = {e for e, _ in subject}
    overlap = categories & entities
    if overlap:
        logger.warning(
            "%d IRIs occur as both category and entity; keeping the category role",
            len(overlap),
        )
        entities -= overlap
        subject = {(e, c) for e, c in subject if e not in overlap}

    aliases = _resolve_alias_pairs(alias_pairs)
    labels = {iri: _pick_literal(by_lang, preferred_language) for iri, by_lang in label_texts.items()}
    descriptions = {
        iri: _pick_literal(by_lang, preferred_language) for iri, by_lang in comment_texts.items()
    }

    narrower: dict[Iri, list[Iri]] = {}
    for narrow, broad in broader:
        narrower.setdefault(broad, []).append(narrow)
    members: dict[Iri, list[Iri]] = {}
    for entity, category in subject:
        members.setdefault(category, []).append(entity)

    return KnowledgeGraph(
        categories=frozenset(categories),
        entities=frozenset(entities),
        broader_edges=frozenset(broader),
        subject_edges=frozenset(subject),
        labels=labels,
        descriptions=descriptions,
        aliases=aliases,
        _narrower={c: tuple(sorted(ns)) for c, ns in narrower.items()},
        _members={c: tuple(sorted(es)) for c, es in members.items()},
    )


@dataclass
class CategoryNode:
    iri: Iri
    depth: int
    parent: Iri | None


@dataclass
class CategoryTree:
    """Breadth-first slice of the category network below one root."""

    root: Iri
    nodes: list[CategoryNode]
    members: dict[Iri, list[Iri]] = field(default_factory=dict)

    def category_set(self) -> set[Iri]:
        return {n.iri for n in self.nodes}


def narrower_categories(graph: KnowledgeGraph, root: Iri, max_depth: int) -> CategoryTree:
    """Depth-limited BFS over broader edges in reverse direction.

    Each category is visited once, at its shallowest depth; sibling
    expansion is in lexicographic order so the node list is deterministic.
    Terminates on cyclic graphs because of the visited set.
    """
    if root not in graph.categories:
        raise UnknownCategory(root)
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")

    nodes = [CategoryNode(root, 0, None)]
    seen = {root}
    queue: deque[tuple[Iri, int]] = deque([(root, 0)])
    while queue:
        current, depth = queue.popleft()
        if depth == max_depth:
            continue
        for child in graph.narrower(current):
            if child in seen:
                continue
            seen.add(child)
            nodes.append(CategoryNode(child, depth + 1, current))
            queue.append((child, depth + 1))
    return CategoryTree(root=root, nodes=nodes)


def member_entities(graph: KnowledgeGraph, tree: CategoryTree) -> dict[Iri, list[Iri]]:
    """Alias-resolved, per-category deduplicated member entity lists.

    An entity may appear under several categories. The mapping is also
    stored on ``tree.members``.
    """
    members: dict[Iri, list[Iri]] = {}
    for node in tree.nodes:
        resolved = {graph.resolve(e) for e in graph.raw_members(node.iri)}
        members[node.iri] = sorted(resolved)
    tree.members = members
    return members


def label_search(graph: KnowledgeGraph, query: str, k: int) -> list[tuple[Iri, str]]:
    """Case-insensitive substring search over category labels.

    Ranked by (match position, label length, IRI); at most ``k`` results.
    An empty query matches nothing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not query:
        return []
    needle = query.lower()
    hits: list[tuple[int, int, Iri, str]] = []
    for iri in graph.categories:
        label = graph.labels.get(iri)
        if label is None:
            continue
        pos = label.lower().find(needle)
        if pos >= 0:
            hits.append((pos, len(label), iri, label))
    hits.sort()
    return [(iri, label) for _, _, iri, label in hits[:k]]
