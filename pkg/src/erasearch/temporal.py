"""Coarse temporal clues: year extraction and period classification.

Entity descriptions are mined for plausible calendar years and year
ranges with plain regular expressions, and the result is compared with a
target period to sort entities into in-period, out-of-period, borderline,
or undated. Categories whose dated members are mostly out-of-period get
marked for default exclusion.

All functions here are pure; thresholds and the plausible year window are
parameters with the documented defaults.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .kg import CategoryTree, Iri

MIN_PLAUSIBLE_YEAR = 100
MAX_PLAUSIBLE_YEAR = 2100

_DIGIT_RUN_RE = re.compile(r"\d+")

# Characters that glue digit runs into one number ("1,234", "3.456").
_DIGIT_JOINERS = ",."

# A year-range separator: hyphen, en dash, or the word "to", not embedded
# in a word or a longer dash sequence.
_RANGE_SEP_RE = re.compile(r"(?<![\w–-])(?:to|[-–])(?![\w–-])")


@dataclass(frozen=True)
class TemporalProfile:
    """Years and year intervals extracted from one description."""

    years: tuple[int, ...] = ()
    intervals: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        year_set = set(self.years)
        for start, end in self.intervals:
            if start > end:
                raise ValueError(f"interval start {start} after end {end}")
            if start not in year_set or end not in year_set:
                raise ValueError("interval endpoints must appear in years")

    @property
    def is_dated(self) -> bool:
        return bool(self.years)


@dataclass(frozen=True)
class Period:
    """The user's target interval, both years inclusive."""

    label: str
    start_year: int
    end_year: int

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(
                f"period start {self.start_year} after end {self.end_year}"
            )

    def contains(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year

    def overlaps(self, start: int, end: int) -> bool:
        return start <= self.end_year and end >= self.start_year


class RelevanceClass(str, enum.Enum):
    IN_PERIOD = "in_period"
    OUT_OF_PERIOD = "out_of_period"
    BORDERLINE = "borderline"
    UNDATED = "undated"


class CategoryStatus(str, enum.Enum):
    INCLUDED = "included"
    EXCLUDED = "excluded"


@dataclass(frozen=True)
class ClassificationThresholds:
    """Fraction cut-offs for the in-period decision; both default to 0.5."""

    year_fraction: float = 0.5
    interval_fraction: float = 0.5


def _is_joined_to_digits(text: str, start: int, end: int) -> bool:
    # "1,234" / "3.456": the run is glued to another digit through a joiner.
    if start >= 2 and text[start - 1] in _DIGIT_JOINERS and text[start - 2].isdigit():
        return True
    if end + 1 < len(text) and text[end] in _DIGIT_JOINERS and text[end + 1].isdigit():
        return True
    return False


def _pair_joined(between: str) -> bool:
    m = _RANGE_SEP_RE.search(between)
    if not m:
        return False
    # at most one space on each side of the separator
    left = between[: m.start()]
    right = between[m.end():]
    return not left.endswith("  ") and not right.startswith("  ")


def extract_temporal_profile(
    text: str,
    *,
    min_year: int = MIN_PLAUSIBLE_YEAR,
    max_year: int = MAX_PLAUSIBLE_YEAR,
) -> TemporalProfile:
    """Extract years and year intervals from free text.

    Years are maximal 3-4 digit runs within the plausible window that are
    not glued to further digits (so ISBNs, page ranges like "1,234" and
    decimals do not count). Consecutive years linked by "-", an en dash,
    or "to" form an interval when the first is not after the second.
    """
    found: list[tuple[int, int, int]] = []  # (start, end, value)
    for m in _DIGIT_RUN_RE.finditer(text):
        run = m.group()
        if not 3 <= len(run) <= 4:
            continue
        value = int(run)
        if not min_year <= value <= max_year:
            continue
        if _is_joined_to_digits(text, m.start(), m.end()):
            continue
        found.append((m.start(), m.end(), value))

    intervals: list[tuple[int, int]] = []
    for (_, end1, v1), (start2, _, v2) in zip(found, found[1:]):
        if v1 <= v2 and _pair_joined(text[end1:start2]):
            intervals.append((v1, v2))

    years = tuple(sorted({v for _, _, v in found}))
    return TemporalProfile(years=years, intervals=tuple(sorted(set(intervals))))


def classify_entity(
    profile: TemporalProfile,
    period: Period,
    thresholds: ClassificationThresholds | None = None,
) -> RelevanceClass:
    """Classify a temporal profile against the target period.

    Undated when no years were extracted. Otherwise in-period when the
    fraction of years inside the period or the fraction of overlapping
    intervals reaches its threshold, borderline when at least one year or
    interval still touches the period, and out-of-period otherwise.
    """
    th = thresholds or ClassificationThresholds()
    if not profile.years:
        return RelevanceClass.UNDATED

    years_in = sum(1 for y in profile.years if period.contains(y))
    year_fraction = years_in / len(profile.years)

    overlapping = sum(1 for a, b in profile.intervals if period.overlaps(a, b))
    interval_fraction = overlapping / len(profile.intervals) if profile.intervals else 0.0

    if year_fraction >= th.year_fraction or interval_fraction >= th.interval_fraction:
        return RelevanceClass.IN_PERIOD
    if years_in > 0 or overlapping > 0:
        return RelevanceClass.BORDERLINE
    return RelevanceClass.OUT_OF_PERIOD


def prune_categories(
    tree: CategoryTree,
    members: dict[Iri, list[Iri]],
    classes: dict[Iri, RelevanceClass],
) -> dict[Iri, CategoryStatus]:
    """Default selection state per category.

    A category is excluded when strictly more than half of its dated
    members (class != undated) are out-of-period. Borderline counts as
    dated but not negative; a category without dated members passes
    vacuously. Exclusion is only the default: the user may override it in
    the session log.
    """
    statuses: dict[Iri, CategoryStatus] = {}
    for node in tree.nodes:
        entities = members.get(node.iri, [])
        dated = [e for e in entities if classes[e] is not RelevanceClass.UNDATED]
        out = sum(1 for e in dated if classes[e] is RelevanceClass.OUT_OF_PERIOD)
        excluded = 2 * out > len(dated)
        statuses[node.iri] = CategoryStatus.EXCLUDED if excluded else CategoryStatus.INCLUDED
    return statuses
