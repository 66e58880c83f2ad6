"""Deterministic desk-scale sample data.

One fixed category network around the French Revolution and a seeded
synthetic parliamentary-style corpus with standoff entity links. Dates,
parties, and sentence templates are fixed lists; the seed only permutes
assignments, so outputs are reproducible byte for byte.
"""

from __future__ import annotations

import json
import random

from .kg import (
    DCT_SUBJECT,
    OWL_SAME_AS,
    RDFS_COMMENT,
    RDFS_LABEL,
    SKOS_BROADER,
    Literal,
    Triple,
    serialize_triples,
)

CAT = "http://ex/c/"
ENT = "http://ex/e/"

ROOT_CATEGORY = CAT + "French_Revolution"
CATEGORY_MONTAGNARDS = CAT + "Montagnards"
CATEGORY_FIRST_REPUBLIC = CAT + "French_First_Republic"

ENTITY_REIGN_OF_TERROR = ENT + "Reign_of_Terror"
ENTITY_ROBESPIERRE = ENT + "Maximilien_Robespierre"
ENTITY_BASTILLE = ENT + "Bastille"
ENTITY_DROWNINGS = ENT + "Drownings_at_Nantes"
ENTITY_TERROR_ALIAS = ENT + "La_Terreur"

TOY_ENTITIES = (
    ENTITY_REIGN_OF_TERROR,
    ENTITY_ROBESPIERRE,
    ENTITY_BASTILLE,
    ENTITY_DROWNINGS,
)

# Never mentioned in the generated corpus: the guaranteed zero-count entity.
ZERO_MENTION_ENTITY = ENTITY_DROWNINGS


def _en(text: str) -> Literal:
    return Literal(text, "en")


_TOY_TRIPLES = [
    Triple(ROOT_CATEGORY, RDFS_LABEL, _en("French Revolution")),
    Triple(
        ROOT_CATEGORY,
        RDFS_COMMENT,
        _en("The French Revolution (1789-1799) was a period of radical political change in France."),
    ),
    Triple(CATEGORY_MONTAGNARDS, SKOS_BROADER, ROOT_CATEGORY),
    Triple(CATEGORY_MONTAGNARDS, RDFS_LABEL, _en("Montagnards")),
    Triple(CATEGORY_FIRST_REPUBLIC, SKOS_BROADER, ROOT_CATEGORY),
    Triple(CATEGORY_FIRST_REPUBLIC, RDFS_LABEL, _en("French First Republic")),
    Triple(ENTITY_REIGN_OF_TERROR, DCT_SUBJECT, CATEGORY_FIRST_REPUBLIC),
    Triple(ENTITY_REIGN_OF_TERROR, RDFS_LABEL, _en("Reign of Terror")),
    Triple(
        ENTITY_REIGN_OF_TERROR,
        RDFS_COMMENT,
        _en(
            "The Reign of Terror (5 September 1793 - 28 July 1794) was a period of "
            "the French Revolution marked by mass executions."
        ),
    ),
    Triple(ENTITY_ROBESPIERRE, DCT_SUBJECT, CATEGORY_MONTAGNARDS),
    Triple(ENTITY_ROBESPIERRE, RDFS_LABEL, _en("Maximilien Robespierre")),
    Triple(
        ENTITY_ROBESPIERRE,
        RDFS_COMMENT,
        _en(
            "Maximilien Robespierre (6 May 1758 - 28 July 1794) was a French lawyer "
            "and statesman of the Revolution."
        ),
    ),
    Triple(ENTITY_BASTILLE, DCT_SUBJECT, ROOT_CATEGORY),
    Triple(ENTITY_BASTILLE, RDFS_LABEL, _en("Bastille")),
    Triple(
        ENTITY_BASTILLE,
        RDFS_COMMENT,
        _en(
            "The Bastille was a fortress in Paris stormed by a crowd on 14 July 1789, "
            "at the start of the French Revolution."
        ),
    ),
    Triple(ENTITY_DROWNINGS, DCT_SUBJECT, CATEGORY_FIRST_REPUBLIC),
    Triple(ENTITY_DROWNINGS, RDFS_LABEL, _en("Drownings at Nantes")),
    Triple(
        ENTITY_DROWNINGS,
        RDFS_COMMENT,
        _en(
            "The drownings at Nantes were a series of mass executions by drowning "
            "during 1793 to 1794 in the city of Nantes."
        ),
    ),
    # Alias membership: resolves back to the canonical Reign of Terror.
    Triple(ENTITY_TERROR_ALIAS, OWL_SAME_AS, ENTITY_REIGN_OF_TERROR),
    Triple(ENTITY_TERROR_ALIAS, DCT_SUBJECT, CATEGORY_MONTAGNARDS),
]


def generate_toy_graph() -> bytes:
    """The fixed sample category network as N-Triples bytes."""
    header = "# desk-scale sample category network\n"
    return (header + serialize_triples(_TOY_TRIPLES)).encode("utf-8")


_PARTIES = ("Civic Union", "Labour League", "Rural Alliance")
_SPEAKERS = ("van Dijk", "Jansen", "de Boer", "Peters", "Smit")
_CHAMBERS = ("lower", "upper")
_YEARS = (1948, 1949, 1950, 1951)
_CITIES = ("Rotterdam", "Leiden", "Utrecht", "Groningen")

_SURFACES = {
    ENTITY_REIGN_OF_TERROR: "the Reign of Terror",
    ENTITY_ROBESPIERRE: "Robespierre",
    ENTITY_BASTILLE: "the Bastille",
}
_MENTIONABLE = tuple(_SURFACES)

_MENTION_TEMPLATES = (
    "The member for {city} compared the proposal to {e}.",
    "Nobody in this chamber wishes to relive {e}.",
    "He recalled {e} while defending the amendment.",
    "The minister dismissed any parallel with {e}.",
    "Her speech invoked {e} to warn against haste.",
)
_PAIR_TEMPLATE = "Linking {e} with {f} struck the house as excessive."
_PLAIN_TEMPLATES = (
    "The budget was discussed at length.",
    "The chair called for order.",
    "A motion on the harbour works was tabled.",
    "The debate continued after the recess.",
    "Several members asked for a written reply.",
)
_CONFIDENCES = (0.82, 0.9, 0.95, 1.0)


def _mention_sentence(rng: random.Random, entity: str) -> tuple[str, list[tuple[int, int, str]]]:
    template = rng.choice(_MENTION_TEMPLATES).replace("{city}", rng.choice(_CITIES))
    before, after = template.split("{e}")
    surface = _SURFACES[entity]
    return before + surface + after, [(len(before), len(before) + len(surface), entity)]


def _pair_sentence(rng: random.Random) -> tuple[str, list[tuple[int, int, str]]]:
    first, second = rng.sample(_MENTIONABLE, 2)
    before, middle_and_after = _PAIR_TEMPLATE.split("{e}")
    middle, after = middle_and_after.split("{f}")
    s1, s2 = _SURFACES[first], _SURFACES[second]
    text = before + s1 + middle + s2 + after
    spans = [
        (len(before), len(before) + len(s1), first),
        (len(before) + len(s1) + len(middle), len(before) + len(s1) + len(middle) + len(s2), second),
    ]
    return text, spans


def generate_toy_corpus(n_docs: int, seed: int) -> bytes:
    """Seeded synthetic corpus as JSONL bytes.

    Documents spread over four years and three parties; the first three
    documents each open with a mention of one fixed entity so small
    corpora still cover all mentionable entities. Drownings at Nantes is
    never mentioned.
    """
    if n_docs < 1:
        raise ValueError("n_docs must be >= 1")
    rng = random.Random(seed)
    lines = []
    for i in range(n_docs):
        year = _YEARS[i % len(_YEARS)]
        month = rng.randint(1, 12)
        day = rng.randint(1, 28)
        meta = {
            "party": _PARTIES[rng.randrange(len(_PARTIES))],
            "speaker": rng.choice(_SPEAKERS),
        }
        if rng.random() < 0.8:
            meta["chamber"] = rng.choice(_CHAMBERS)

        sentences: list[tuple[str, list[tuple[int, int, str]]]] = []
        n_sentences = rng.randint(2, 4)
        for s in range(n_sentences):
            if i < len(_MENTIONABLE) and s == 0:
                sentences.append(_mention_sentence(rng, _MENTIONABLE[i]))
            elif rng.random() < 0.08:
                sentences.append(_pair_sentence(rng))
            elif rng.random() < 0.55:
                sentences.append(_mention_sentence(rng, rng.choice(_MENTIONABLE)))
            else:
                sentences.append((rng.choice(_PLAIN_TEMPLATES), []))

        text_parts: list[str] = []
        links = []
        offset = 0
        for s_text, spans in sentences:
            for start, end, iri in spans:
                links.append(
                    {
                        "start": offset + start,
                        "end": offset + end,
                        "iri": iri,
                        "confidence": rng.choice(_CONFIDENCES),
                        "surface": s_text[start:end],
                    }
                )
            text_parts.append(s_text)
            offset += len(s_text) + 1  # single joining space
        record = {
            "doc_id": f"doc-{i:04d}",
            "date": f"{year:04d}-{month:02d}-{day:02d}",
            "text": " ".join(text_parts),
            "meta": meta,
            "links": links,
        }
        lines.append(json.dumps(record, ensure_ascii=False))
    return ("\n".join(lines) + "\n").encode("utf-8")
