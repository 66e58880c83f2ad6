"""Exception and warning types shared across the package."""


class EraSearchError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTriple(EraSearchError):
    """A line in a triples file is neither blank, a comment, nor a triple.

    ``line_number`` is 1-based.
    """

    def __init__(self, line_number: int, line: str = "", reason: str = ""):
        self.line_number = line_number
        self.line = line
        self.reason = reason
        detail = f": {reason}" if reason else ""
        super().__init__(f"malformed triple at line {line_number}{detail}")


class UnknownCategory(EraSearchError):
    """A category IRI is not present in the knowledge graph."""

    def __init__(self, iri: str):
        self.iri = iri
        super().__init__(f"unknown category: {iri}")


class ConflictingAliasWarning(UserWarning):
    """sameAs statements conflict (cycle or multiple targets); resolved
    deterministically by lexicographic pick."""


class DuplicateDocId(EraSearchError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"document already ingested: {doc_id}")


class OffsetOutOfBounds(EraSearchError):
    """An entity link's offsets fall outside the document text."""

    def __init__(self, doc_id: str, link_index: int):
        self.doc_id = doc_id
        self.link_index = link_index
        super().__init__(f"link {link_index} of {doc_id} has out-of-bounds offsets")


class SurfaceMismatch(EraSearchError):
    """A link's surface string differs from the text slice it points at."""

    def __init__(self, doc_id: str, link_index: int, expected: str, found: str):
        self.doc_id = doc_id
        self.link_index = link_index
        self.expected = expected
        self.found = found
        super().__init__(
            f"link {link_index} of {doc_id}: surface {found!r} != text slice {expected!r}"
        )


class UnknownTarget(EraSearchError):
    """A decision targets an IRI outside the session's tree and member lists."""

    def __init__(self, target: str):
        self.target = target
        super().__init__(f"target not in session scope: {target}")


class FragmentNotInResultSet(EraSearchError):
    """The fragment is not retrievable under the current effective selection."""

    def __init__(self, doc_id: str, sentence_index: int):
        self.doc_id = doc_id
        self.sentence_index = sentence_index
        super().__init__(
            f"fragment ({doc_id}, sentence {sentence_index}) is not in the result set"
        )


class UnknownSession(EraSearchError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"unknown session: {session_id}")
