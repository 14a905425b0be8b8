"""UTC arithmetic, Allen classification, temporal phrase parsing."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnlkit.chronos import (
    AllenRelation,
    Interval,
    TemporalParseError,
    TimeRef,
    Timestamp,
    allen_relation,
    anchor_tense,
    converse,
    format_date_phrase,
    format_offset,
    ordinal,
    parse_offset,
    parse_time_expression,
    utc_denormalize,
    utc_normalize,
    within,
)
from cnlkit.terms import Var

UTT = Timestamp(2014, 6, 2, 1, 3, 48)  # the running example's utterance time
ACST = 9 * 60 + 30


def test_serialization_no_padding():
    assert UTT.serialize() == "timestamp(2014,6,2,1,3,48)"
    assert Interval.point(UTT).serialize() == (
        "invl(timestamp(2014,6,2,1,3,48),timestamp(2014,6,2,1,3,48))"
    )


def test_utc_normalize_against_running_example():
    local = Timestamp(2014, 6, 2, 10, 33, 48)
    assert utc_normalize(local, ACST) == UTT


def test_utc_normalize_zero_offset_identity():
    assert utc_normalize(UTT, 0) == UTT


def test_utc_normalize_year_rollover():
    # oracle: 00:30 on Jan 1 minus one hour is 23:30 on Dec 31 of the prior year
    local = Timestamp(2015, 1, 1, 0, 30, 0)
    assert utc_normalize(local, 60) == Timestamp(2014, 12, 31, 23, 30, 0)


offsets = st.integers(-14 * 60, 14 * 60)
stamps = st.builds(
    Timestamp,
    year=st.integers(1990, 2100),
    month=st.integers(1, 12),
    day=st.integers(1, 28),
    hour=st.integers(0, 23),
    minute=st.integers(0, 59),
    second=st.integers(0, 59),
)


@given(stamps, offsets)
@settings(max_examples=150, deadline=None)
def test_normalize_denormalize_roundtrip(ts, off):
    assert utc_normalize(utc_denormalize(ts, off), off) == ts
    assert utc_denormalize(utc_normalize(ts, off), off) == ts


def test_offset_parsing():
    assert parse_offset("+09:30") == ACST
    assert parse_offset("-05:00") == -300
    assert parse_offset("0") == 0
    assert format_offset(ACST) == "+09:30"
    with pytest.raises(TemporalParseError):
        parse_offset("+15:00")


def test_invalid_calendar_fields():
    with pytest.raises(TemporalParseError):
        Timestamp(2014, 2, 30)


# --- Allen relations ------------------------------------------------------


def brute_force_allen(a, b) -> AllenRelation:
    """Independent endpoint-comparison oracle over plain integer pairs."""
    s1, e1 = a
    s2, e2 = b
    if (s1, e1) == (s2, e2):
        return AllenRelation.EQUALS
    if s1 == s2:
        return AllenRelation.STARTS if e1 < e2 else AllenRelation.STARTED_BY
    if e1 == e2:
        return AllenRelation.FINISHED_BY if s1 < s2 else AllenRelation.FINISHES
    if e1 == s2:
        return AllenRelation.MEETS
    if e2 == s1:
        return AllenRelation.MET_BY
    if e1 < s2:
        return AllenRelation.BEFORE
    if e2 < s1:
        return AllenRelation.AFTER
    if s1 < s2 < e1 < e2:
        return AllenRelation.OVERLAPS
    if s2 < s1 < e2 < e1:
        return AllenRelation.OVERLAPPED_BY
    if s2 < s1 and e1 < e2:
        return AllenRelation.DURING
    assert s1 < s2 and e2 < e1
    return AllenRelation.CONTAINS


def all_pairs(limit=4):
    ivs = [(s, e) for s in range(limit + 1) for e in range(s, limit + 1)]
    return itertools.product(ivs, repeat=2)


def test_allen_matches_oracle_exhaustively():
    for a, b in all_pairs():
        assert allen_relation(a, b) == brute_force_allen(a, b), (a, b)


def test_allen_partition_and_converse():
    seen = set()
    for a, b in all_pairs():
        rel = allen_relation(a, b)
        seen.add(rel)
        assert allen_relation(b, a) == converse(rel), (a, b)
    assert seen == set(AllenRelation)  # all 13 relations realized


def test_converse_involutive():
    for rel in AllenRelation:
        assert converse(converse(rel)) == rel


def test_allen_trivial_cases():
    a = Interval(Timestamp(2014, 6, 1), Timestamp(2014, 6, 2))
    assert allen_relation(a, a) == AllenRelation.EQUALS
    b = Interval(Timestamp(2014, 6, 3), Timestamp(2014, 6, 4))
    assert allen_relation(a, b) == AllenRelation.BEFORE


def test_within_filter_agrees_with_relation():
    outer = Interval(Timestamp(2014, 6, 1), Timestamp(2014, 6, 30))
    inner = Interval(Timestamp(2014, 6, 10), Timestamp(2014, 6, 12))
    assert within(inner, outer)
    assert not within(outer, inner)
    assert within(outer, outer)


# --- tense anchoring ------------------------------------------------------


def test_anchor_past_gives_before_constraint():
    utt = Interval.point(UTT)
    ref = anchor_tense("past", utt, Var("t_4"))
    assert ref.symbol == Var("t_4")
    assert ref.constraint == ("before", utt)


def test_anchor_habitual_unconstrained():
    ref = anchor_tense("present_habitual", Interval.point(UTT), Var("t_3"))
    assert ref.habitual and ref.constraint is None


def test_anchor_future_mirrors_past():
    utt = Interval.point(UTT)
    ref = anchor_tense("future", utt, Var("t_9"))
    assert ref.constraint == ("after", utt)


# --- phrase parsing -------------------------------------------------------


def test_one_pm_with_acst_offset():
    # oracle: 13:00 local minus 9:30 is 03:30 UTC
    ref = parse_time_expression(["1", "PM"], UTT, ACST)
    assert ref.point == Timestamp(2014, 6, 2, 3, 30, 0)


def test_one_oclock():
    ref = parse_time_expression(["one", "o'clock"], UTT, 0)
    assert ref.point == Timestamp(2014, 6, 2, 1, 0, 0)


def test_from_to_interval():
    ref = parse_time_expression(["from", "12:00", "to", "13:00"], UTT, 0)
    assert ref.interval.serialize() == (
        "invl(timestamp(2014,6,2,12,0,0),timestamp(2014,6,2,13,0,0))"
    )


def test_yesterday_day_boundaries():
    ref = parse_time_expression(["yesterday"], UTT, 0)
    assert ref.interval == Interval(
        Timestamp(2014, 6, 1, 0, 0, 0), Timestamp(2014, 6, 1, 23, 59, 59)
    )


def test_weekday_grounds_to_most_recent_for_past():
    # 2014-06-02 is a Monday; past-tense "Monday" is that same day
    ref = parse_time_expression(["Monday"], UTT, 0)
    assert ref.interval.start == Timestamp(2014, 6, 2, 0, 0, 0)
    # "Friday": the one before
    ref = parse_time_expression(["Friday"], UTT, 0)
    assert ref.interval.start == Timestamp(2014, 5, 30, 0, 0, 0)


def test_last_week_iso_aligned():
    ref = parse_time_expression(["last", "week"], UTT, 0)
    assert ref.interval == Interval(
        Timestamp(2014, 5, 26, 0, 0, 0), Timestamp(2014, 6, 1, 23, 59, 59)
    )


def test_in_one_month():
    ref = parse_time_expression(["in", "one", "month"], UTT, 0)
    assert ref.interval.start == Timestamp(2014, 7, 2, 0, 0, 0)


def test_decade():
    ref = parse_time_expression(["1960s"], UTT, 0)
    assert ref.interval == Interval(
        Timestamp(1960, 1, 1, 0, 0, 0), Timestamp(1969, 12, 31, 23, 59, 59)
    )


def test_clock_literal_with_seconds():
    ref = parse_time_expression(["13:59:59"], UTT, 0)
    assert ref.point == Timestamp(2014, 6, 2, 13, 59, 59)


def test_unparseable_phrase_names_token():
    with pytest.raises(TemporalParseError) as e:
        parse_time_expression(["flooglewhen"], UTT, 0)
    assert e.value.token == "flooglewhen"


# --- date phrase rendering ------------------------------------------------


def test_format_date_phrase_matches_running_example():
    assert format_date_phrase(UTT, ACST) == (
        "Monday the 2nd of June 2014 at 10:33:48 AM"
    )


def test_date_phrase_parses_back_to_same_instant():
    phrase = format_date_phrase(UTT, ACST)
    ref = parse_time_expression(phrase.split(), UTT, ACST)
    assert ref.point == UTT


def test_ordinal_suffixes():
    assert [ordinal(n) for n in (1, 2, 3, 4, 11, 12, 13, 21, 22, 23, 31)] == [
        "1st", "2nd", "3rd", "4th", "11th", "12th", "13th", "21st", "22nd", "23rd", "31st"
    ]


@given(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda p: p[0] <= p[1]),
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda p: p[0] <= p[1]),
)
@settings(max_examples=200, deadline=None)
def test_allen_partition_property(a, b):
    rel = allen_relation(a, b)
    assert converse(rel) == allen_relation(b, a)
    matches = [r for r in AllenRelation if r == rel]
    assert len(matches) == 1
