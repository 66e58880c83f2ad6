"""Year extraction, period classification, and category pruning."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from erasearch.kg import CategoryNode, CategoryTree
from erasearch.temporal import (
    CategoryStatus,
    ClassificationThresholds,
    Period,
    RelevanceClass,
    TemporalProfile,
    classify_entity,
    extract_temporal_profile,
    prune_categories,
)

# -- extraction --------------------------------------------------------------


def test_extract_interval_with_intervening_words():
    p = extract_temporal_profile("(5 September 1793 – 28 July 1794)")
    assert p.years == (1793, 1794)
    assert p.intervals == ((1793, 1794),)


def test_extract_no_dates():
    assert extract_temporal_profile("no dates here") == TemporalProfile()


def test_extract_long_digit_run_excluded():
    assert extract_temporal_profile("ISBN 9781234").years == ()


def test_extract_years_without_range_separator():
    p = extract_temporal_profile("born 1758, died 1794")
    assert p.years == (1758, 1794)
    assert p.intervals == ()


@pytest.mark.parametrize(
    "text",
    ["1793-1794", "1793 - 1794", "1793 – 1794", "1793 to 1794"],
)
def test_extract_interval_separators(text):
    assert extract_temporal_profile(text).intervals == ((1793, 1794),)


@pytest.mark.parametrize(
    "text",
    [
        "1793  -  1794",  # two spaces around the separator
        "1794-1793",  # descending
        "1793 and 1794",  # no separator
        "1793-to-1794",  # separator glued into a word
        "1793 --- 1794",  # dash run, not a single separator
    ],
)
def test_extract_non_intervals(text):
    assert extract_temporal_profile(text).intervals == ()


def test_extract_digit_joiners_exclude_years():
    assert extract_temporal_profile("1,234 items").years == ()
    assert extract_temporal_profile("version 3.456").years == ()
    # a joiner at a sentence boundary does not glue
    assert extract_temporal_profile("in 1793. Next").years == (1793,)


def test_extract_plausibility_window():
    assert extract_temporal_profile("year 99 and 2101").years == ()
    assert extract_temporal_profile("year 100 and 2100").years == (100, 2100)
    assert extract_temporal_profile("in 450 or 1950", min_year=1000).years == (1950,)


def test_extract_sorted_deduplicated():
    p = extract_temporal_profile("1794 then 1758 then 1794")
    assert p.years == (1758, 1794)


# -- profile and period types ------------------------------------------------


def test_profile_rejects_bad_intervals():
    with pytest.raises(ValueError):
        TemporalProfile(years=(1793, 1794), intervals=((1794, 1793),))
    with pytest.raises(ValueError):
        TemporalProfile(years=(1793,), intervals=((1793, 1794),))


def test_period_rejects_reversed_bounds():
    with pytest.raises(ValueError):
        Period("bad", 1799, 1789)


# -- classification ----------------------------------------------------------

REVOLUTION = Period("French Revolution", 1789, 1799)


def test_classify_in_period_by_year_fraction():
    p = TemporalProfile(years=(1793, 1794), intervals=((1793, 1794),))
    assert classify_entity(p, REVOLUTION) is RelevanceClass.IN_PERIOD


def test_classify_undated():
    assert classify_entity(TemporalProfile(), REVOLUTION) is RelevanceClass.UNDATED


def test_classify_out_of_period():
    p = TemporalProfile(years=(1914, 1918))
    assert classify_entity(p, REVOLUTION) is RelevanceClass.OUT_OF_PERIOD


def test_classify_borderline_by_single_year():
    p = TemporalProfile(years=(1700, 1750, 1795))
    assert classify_entity(p, REVOLUTION) is RelevanceClass.BORDERLINE


def test_classify_borderline_by_overlapping_interval():
    p = TemporalProfile(
        years=(1600, 1700, 1800, 1900),
        intervals=((1600, 1700), (1700, 1800), (1800, 1900)),
    )
    # no year inside the period, one of three intervals overlaps
    assert classify_entity(p, REVOLUTION) is RelevanceClass.BORDERLINE


def test_classify_exact_half_year_fraction_is_in_period():
    p = TemporalProfile(years=(1758, 1794))
    assert classify_entity(p, REVOLUTION) is RelevanceClass.IN_PERIOD


def test_classify_custom_thresholds():
    p = TemporalProfile(years=(1758, 1794))
    strict = ClassificationThresholds(year_fraction=0.75, interval_fraction=0.75)
    assert classify_entity(p, REVOLUTION, strict) is RelevanceClass.BORDERLINE


_years_st = st.lists(
    st.integers(min_value=100, max_value=2100), min_size=0, max_size=8
)


@st.composite
def _profiles(draw):
    years = draw(_years_st)
    intervals = []
    if len(years) >= 2:
        n = draw(st.integers(min_value=0, max_value=3))
        for _ in range(n):
            a, b = draw(st.sampled_from(years)), draw(st.sampled_from(years))
            intervals.append((min(a, b), max(a, b)))
    return TemporalProfile(years=tuple(sorted(set(years))), intervals=tuple(intervals))


_periods = st.builds(
    lambda a, b: Period("p", min(a, b), max(a, b)),
    st.integers(min_value=100, max_value=2100),
    st.integers(min_value=100, max_value=2100),
)


@given(_profiles(), _periods)
def test_classify_is_total(profile, period):
    assert classify_entity(profile, period) in set(RelevanceClass)


@given(_profiles(), _periods, st.randoms())
def test_classify_invariant_under_permutation(profile, period, rng):
    years = list(profile.years)
    intervals = list(profile.intervals)
    rng.shuffle(years)
    rng.shuffle(intervals)
    shuffled = TemporalProfile(years=tuple(years), intervals=tuple(intervals))
    assert classify_entity(shuffled, period) is classify_entity(profile, period)


@given(_profiles(), _periods)
def test_classify_containment(profile, period):
    if profile.years and all(period.contains(y) for y in profile.years):
        assert classify_entity(profile, period) is RelevanceClass.IN_PERIOD


@given(
    st.text(max_size=80),
    st.text(alphabet=" abcdefgh", min_size=1, max_size=1),
    st.text(max_size=40),
)
def test_extract_monotonic_under_safe_append(text, seam, tail):
    # Appending text that starts with a space or letter never removes
    # years; a digit or a joiner at the seam could fuse with a trailing
    # run, which is out of scope for this property.
    before = set(extract_temporal_profile(text).years)
    after = set(extract_temporal_profile(text + seam + tail).years)
    assert before <= after


@given(st.text(max_size=120))
def test_extract_profile_invariants(text):
    p = extract_temporal_profile(text)
    assert list(p.years) == sorted(set(p.years))
    for a, b in p.intervals:
        assert a <= b
        assert a in p.years and b in p.years
    assert all(100 <= y <= 2100 for y in p.years)


# -- pruning -----------------------------------------------------------------


def _single_category_tree(entities):
    tree = CategoryTree(root="http://ex/c/C", nodes=[CategoryNode("http://ex/c/C", 0, None)])
    return tree, {"http://ex/c/C": list(entities)}


@pytest.mark.parametrize(
    "classes,expected",
    [
        (
            {"e1": RelevanceClass.OUT_OF_PERIOD, "e2": RelevanceClass.OUT_OF_PERIOD, "e3": RelevanceClass.IN_PERIOD},
            CategoryStatus.EXCLUDED,  # 2/3 out
        ),
        (
            {"e1": RelevanceClass.OUT_OF_PERIOD, "e2": RelevanceClass.IN_PERIOD},
            CategoryStatus.INCLUDED,  # exactly half is not "more than half"
        ),
        (
            {"e1": RelevanceClass.UNDATED, "e2": RelevanceClass.UNDATED},
            CategoryStatus.INCLUDED,  # vacuous
        ),
        (
            {"e1": RelevanceClass.OUT_OF_PERIOD, "e2": RelevanceClass.BORDERLINE},
            CategoryStatus.INCLUDED,  # borderline is dated but not negative
        ),
        ({}, CategoryStatus.INCLUDED),
    ],
)
def test_prune_rule(classes, expected):
    tree, members = _single_category_tree(classes)
    statuses = prune_categories(tree, members, classes)
    assert statuses["http://ex/c/C"] is expected


def test_prune_covers_every_tree_category():
    nodes = [
        CategoryNode("http://ex/c/A", 0, None),
        CategoryNode("http://ex/c/B", 1, "http://ex/c/A"),
    ]
    tree = CategoryTree(root="http://ex/c/A", nodes=nodes)
    members = {"http://ex/c/A": [], "http://ex/c/B": ["e"]}
    statuses = prune_categories(tree, members, {"e": RelevanceClass.OUT_OF_PERIOD})
    assert statuses == {
        "http://ex/c/A": CategoryStatus.INCLUDED,
        "http://ex/c/B": CategoryStatus.EXCLUDED,
    }
