"""Time handling: UTC timestamps, intervals, Allen relations, tense
anchoring and natural-language time expressions.

All stored times are UTC at second precision.  Wall-clock input is
normalized through a signed minute offset supplied by session
configuration.  Serialization is bit-exact: ``timestamp(Y,M,D,h,m,s)``
with no zero padding, ``invl(ts,ts)`` for intervals.
"""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .terms import Struct, Num, Term, Var


class TemporalParseError(ValueError):
    def __init__(self, message: str, token: Optional[str] = None):
        self.token = token
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Timestamp:
    year: int
    month: int
    day: int
    hour: int = 0
    minute: int = 0
    second: int = 0

    def __post_init__(self):
        try:
            _dt.datetime(self.year, self.month, self.day, self.hour, self.minute, self.second)
        except ValueError as e:
            raise TemporalParseError(f"invalid calendar fields: {e}") from e

    def to_datetime(self) -> _dt.datetime:
        return _dt.datetime(self.year, self.month, self.day, self.hour, self.minute, self.second)

    @classmethod
    def from_datetime(cls, dt: _dt.datetime) -> "Timestamp":
        return cls(dt.year, dt.month, dt.day, dt.hour, dt.minute, dt.second)

    def serialize(self) -> str:
        return (
            f"timestamp({self.year},{self.month},{self.day},"
            f"{self.hour},{self.minute},{self.second})"
        )

    def term(self) -> Struct:
        return Struct(
            "timestamp",
            (Num(self.year), Num(self.month), Num(self.day),
             Num(self.hour), Num(self.minute), Num(self.second)),
        )


@dataclass(frozen=True)
class Interval:
    start: Timestamp
    end: Timestamp

    def __post_init__(self):
        if self.start > self.end:
            raise TemporalParseError("interval start after end")

    @classmethod
    def point(cls, ts: Timestamp) -> "Interval":
        return cls(ts, ts)

    def serialize(self) -> str:
        return f"invl({self.start.serialize()},{self.end.serialize()})"

    def term(self) -> Struct:
        return Struct("invl", (self.start.term(), self.end.term()))


def interval_from_term(t: Term) -> Interval:
    if not (isinstance(t, Struct) and t.functor == "invl" and len(t.args) == 2):
        raise TemporalParseError(f"not an interval term: {t!r}")
    return Interval(timestamp_from_term(t.args[0]), timestamp_from_term(t.args[1]))


def timestamp_from_term(t: Term) -> Timestamp:
    if not (isinstance(t, Struct) and t.functor == "timestamp" and len(t.args) == 6):
        raise TemporalParseError(f"not a timestamp term: {t!r}")
    vals = []
    for a in t.args:
        if not isinstance(a, Num) or isinstance(a.value, float):
            raise TemporalParseError("timestamp fields must be integers")
        vals.append(a.value)
    return Timestamp(*vals)


# ---------------------------------------------------------------------------
# time references produced by tense anchoring and phrase parsing


@dataclass(frozen=True)
class TimeRef:
    """A point, an interval, or a symbolic time with a relational constraint.

    kind is one of point / interval / symbolic; constraint (for symbolic
    refs) is (relation, Interval) with relation in before/after/during.
    """

    kind: str
    point: Optional[Timestamp] = None
    interval: Optional[Interval] = None
    symbol: Optional[Var] = None
    constraint: Optional[tuple[str, Interval]] = None
    habitual: bool = False

    @classmethod
    def at_point(cls, ts: Timestamp) -> "TimeRef":
        return cls(kind="point", point=ts)

    @classmethod
    def over(cls, iv: Interval) -> "TimeRef":
        return cls(kind="interval", interval=iv)

    @classmethod
    def symbolic(cls, symbol: Var, constraint=None, habitual=False) -> "TimeRef":
        return cls(kind="symbolic", symbol=symbol, constraint=constraint, habitual=habitual)

    def as_interval(self) -> Interval:
        if self.kind == "point":
            return Interval.point(self.point)
        if self.kind == "interval":
            return self.interval
        raise TemporalParseError("symbolic time reference has no fixed interval")


# ---------------------------------------------------------------------------
# UTC arithmetic


MAX_OFFSET_MINUTES = 14 * 60


def utc_normalize(local: Timestamp, offset_minutes: int) -> Timestamp:
    """Wall-clock fields plus a signed UTC offset -> UTC timestamp."""
    if abs(offset_minutes) > MAX_OFFSET_MINUTES:
        raise TemporalParseError(f"offset out of range: {offset_minutes} minutes")
    utc = local.to_datetime() - _dt.timedelta(minutes=offset_minutes)
    return Timestamp.from_datetime(utc)


def utc_denormalize(ts: Timestamp, offset_minutes: int) -> Timestamp:
    """UTC timestamp -> wall-clock fields at the given offset."""
    if abs(offset_minutes) > MAX_OFFSET_MINUTES:
        raise TemporalParseError(f"offset out of range: {offset_minutes} minutes")
    local = ts.to_datetime() + _dt.timedelta(minutes=offset_minutes)
    return Timestamp.from_datetime(local)


def parse_offset(text: str) -> int:
    """'+09:30' / '-05:00' / '0' -> signed minutes."""
    text = text.strip()
    if text in ("0", "+0", "-0", "00:00", "+00:00", "-00:00", "Z", "z"):
        return 0
    m = re.fullmatch(r"([+-])(\d{1,2}):(\d{2})", text)
    if not m:
        raise TemporalParseError(f"bad UTC offset: {text!r}", token=text)
    sign = 1 if m.group(1) == "+" else -1
    minutes = sign * (int(m.group(2)) * 60 + int(m.group(3)))
    if abs(minutes) > MAX_OFFSET_MINUTES:
        raise TemporalParseError(f"offset out of range: {text!r}", token=text)
    return minutes


def format_offset(minutes: int) -> str:
    sign = "+" if minutes >= 0 else "-"
    m = abs(minutes)
    return f"{sign}{m // 60:02d}:{m % 60:02d}"


# ---------------------------------------------------------------------------
# Allen interval algebra


class AllenRelation(Enum):
    BEFORE = "before"
    AFTER = "after"
    MEETS = "meets"
    MET_BY = "met_by"
    OVERLAPS = "overlaps"
    OVERLAPPED_BY = "overlapped_by"
    STARTS = "starts"
    STARTED_BY = "started_by"
    DURING = "during"
    CONTAINS = "contains"
    FINISHES = "finishes"
    FINISHED_BY = "finished_by"
    EQUALS = "equals"


_CONVERSE = {
    AllenRelation.BEFORE: AllenRelation.AFTER,
    AllenRelation.MEETS: AllenRelation.MET_BY,
    AllenRelation.OVERLAPS: AllenRelation.OVERLAPPED_BY,
    AllenRelation.STARTS: AllenRelation.STARTED_BY,
    AllenRelation.DURING: AllenRelation.CONTAINS,
    AllenRelation.FINISHES: AllenRelation.FINISHED_BY,
    AllenRelation.EQUALS: AllenRelation.EQUALS,
}
_CONVERSE.update({v: k for k, v in list(_CONVERSE.items())})


def converse(rel: AllenRelation) -> AllenRelation:
    return _CONVERSE[rel]


def allen_relation(a, b) -> AllenRelation:
    """Classify two intervals by endpoint comparison.

    Accepts Interval or any pair-like (start, end) with comparable,
    equal-typed endpoints.  Degenerate (point) intervals are permitted;
    the endpoint definitions apply unchanged.
    """
    s1, e1 = _endpoints(a)
    s2, e2 = _endpoints(b)
    if s1 == s2 and e1 == e2:
        return AllenRelation.EQUALS
    if s1 == s2:
        return AllenRelation.STARTS if e1 < e2 else AllenRelation.STARTED_BY
    if e1 == e2:
        return AllenRelation.FINISHES if s1 > s2 else AllenRelation.FINISHED_BY
    if e1 == s2:
        return AllenRelation.MEETS
    if s1 == e2:
        return AllenRelation.MET_BY
    if e1 < s2:
        return AllenRelation.BEFORE
    if s1 > e2:
        return AllenRelation.AFTER
    if s1 < s2:
        return AllenRelation.OVERLAPS if e1 < e2 else AllenRelation.CONTAINS
    return AllenRelation.OVERLAPPED_BY if e1 > e2 else AllenRelation.DURING


def _endpoints(x):
    if isinstance(x, Interval):
        return x.start, x.end
    s, e = x
    return s, e


def within(inner: Interval, outer: Interval) -> bool:
    """inner lies inside outer (inclusive) - the filter used when a query
    carries an explicit interval."""
    return allen_relation(inner, outer) in (
        AllenRelation.DURING,
        AllenRelation.STARTS,
        AllenRelation.FINISHES,
        AllenRelation.EQUALS,
    )


# ---------------------------------------------------------------------------
# tense anchoring


def anchor_tense(tense: str, utterance: Interval, symbol: Var) -> TimeRef:
    """Attach the tense-derived constraint to a fresh symbolic time.

    past -> before(t, utterance); future -> after(t, utterance);
    present_habitual -> unconstrained symbol tagged general_habitual.
    """
    if tense == "past":
        return TimeRef.symbolic(symbol, constraint=("before", utterance))
    if tense == "future":
        return TimeRef.symbolic(symbol, constraint=("after", utterance))
    if tense in ("present", "present_habitual"):
        return TimeRef.symbolic(symbol, habitual=True)
    raise TemporalParseError(f"unknown tense: {tense!r}", token=tense)


# ---------------------------------------------------------------------------
# natural-language time expressions

WEEKDAYS = ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]
MONTHS = [
    "january", "february", "march", "april", "may", "june",
    "july", "august", "september", "october", "november", "december",
]
SMALL_NUMBERS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
}
CLOCK_RE = re.compile(r"(\d{1,2}):(\d{2})(?::(\d{2}))?$")
ORDINAL_RE = re.compile(r"(\d+)(st|nd|rd|th)$")
DECADE_RE = re.compile(r"(\d{3})0s$")


def _day_interval(date: _dt.date) -> Interval:
    return Interval(
        Timestamp(date.year, date.month, date.day, 0, 0, 0),
        Timestamp(date.year, date.month, date.day, 23, 59, 59),
    )


def parse_time_expression(
    tokens: Sequence[str],
    utterance: Timestamp,
    offset_minutes: int = 0,
    tense: str = "past",
) -> TimeRef:
    """Parse one temporal phrase to a UTC point or interval.

    Relative phrases (yesterday, last week, day-of-week names, in one
    month) are grounded against the utterance time interpreted at the
    session's local offset; clock times are read as local wall-clock and
    normalized to UTC.  `tense` picks the direction for bare weekday and
    month names.
    """
    words = [w.lower() for w in tokens]
    if not words:
        raise TemporalParseError("empty temporal phrase")
    local_now = utc_denormalize(utterance, offset_minutes)
    today = _dt.date(local_now.year, local_now.month, local_now.day)

    if "to" in words and words[0] == "from":
        split = words.index("to")
        a = parse_time_expression(tokens[1:split], utterance, offset_minutes, tense)
        b = parse_time_expression(tokens[split + 1:], utterance, offset_minutes, tense)
        return TimeRef.over(Interval(_ref_start(a), _ref_end(b)))

    if len(words) == 1:
        w = words[0]
        if w == "today":
            return TimeRef.over(_local_day_to_utc(today, offset_minutes))
        if w == "yesterday":
            return TimeRef.over(_local_day_to_utc(today - _dt.timedelta(days=1), offset_minutes))
        if w == "tomorrow":
            return TimeRef.over(_local_day_to_utc(today + _dt.timedelta(days=1), offset_minutes))
        if w in WEEKDAYS:
            return TimeRef.over(
                _local_day_to_utc(_nearest_weekday(today, WEEKDAYS.index(w), tense), offset_minutes)
            )
        if w in MONTHS:
            return TimeRef.over(
                _month_interval_utc(today, MONTHS.index(w) + 1, tense, offset_minutes)
            )
        m = DECADE_RE.fullmatch(w)
        if m:
            start = int(m.group(1)) * 10
            return TimeRef.over(Interval(
                Timestamp(start, 1, 1, 0, 0, 0), Timestamp(start + 9, 12, 31, 23, 59, 59)
            ))
        m = CLOCK_RE.fullmatch(w)
        if m:
            h, mi, se = int(m.group(1)), int(m.group(2)), int(m.group(3) or 0)
            local = Timestamp(today.year, today.month, today.day, h, mi, se)
            return TimeRef.at_point(utc_normalize(local, offset_minutes))

    if len(words) == 2 and words[1] in ("am", "pm"):
        hour = _parse_hour_word(words[0])
        if words[1] == "pm" and hour != 12:
            hour += 12
        if words[1] == "am" and hour == 12:
            hour = 0
        local = Timestamp(today.year, today.month, today.day, hour, 0, 0)
        return TimeRef.at_point(utc_normalize(local, offset_minutes))

    if len(words) == 2 and words[1] == "o'clock":
        hour = _parse_hour_word(words[0])
        local = Timestamp(today.year, today.month, today.day, hour, 0, 0)
        return TimeRef.at_point(utc_normalize(local, offset_minutes))

    if words[0] == "last" and len(words) == 2:
        return _grounded_unit(words[1], today, offset_minutes, back=True)
    if words[0] == "next" and len(words) == 2:
        return _grounded_unit(words[1], today, offset_minutes, back=False)
    if words[0] == "in" and len(words) == 3:
        count = SMALL_NUMBERS.get(words[1])
        if count is None and words[1].isdigit():
            count = int(words[1])
        if count is not None:
            unit = words[2].rstrip("s")
            target = _shift(today, unit, count)
            return TimeRef.over(_local_day_to_utc(target, offset_minutes))

    date_phrase = _try_date_phrase(words, offset_minutes)
    if date_phrase is not None:
        return date_phrase

    raise TemporalParseError(
        f"cannot parse temporal phrase: {' '.join(tokens)!r}", token=tokens[0]
    )


def _ref_start(r: TimeRef) -> Timestamp:
    return r.point if r.kind == "point" else r.interval.start


def _ref_end(r: TimeRef) -> Timestamp:
    return r.point if r.kind == "point" else r.interval.end


def _parse_hour_word(w: str) -> int:
    if w in SMALL_NUMBERS:
        return SMALL_NUMBERS[w]
    if w.isdigit() and 1 <= int(w) <= 12:
        return int(w)
    m = CLOCK_RE.fullmatch(w)
    if m:
        return int(m.group(1))
    raise TemporalParseError(f"bad hour: {w!r}", token=w)


def _local_day_to_utc(date: _dt.date, offset_minutes: int) -> Interval:
    iv = _day_interval(date)
    return Interval(
        utc_normalize(iv.start, offset_minutes), utc_normalize(iv.end, offset_minutes)
    )


def _nearest_weekday(today: _dt.date, target: int, tense: str) -> _dt.date:
    delta = (today.weekday() - target) % 7
    if tense == "future":
        delta = -((target - today.weekday()) % 7)
    return today - _dt.timedelta(days=delta)


def _month_interval_utc(today: _dt.date, month: int, tense: str, offset_minutes: int) -> Interval:
    year = today.year
    if tense == "future" and month < today.month:
        year += 1
    elif tense != "future" and month > today.month:
        year -= 1
    first = _dt.date(year, month, 1)
    last = (_dt.date(year + (month == 12), month % 12 + 1, 1) - _dt.timedelta(days=1))
    return Interval(
        utc_normalize(Timestamp(first.year, first.month, first.day), offset_minutes),
        utc_normalize(Timestamp(last.year, last.month, last.day, 23, 59, 59), offset_minutes),
    )


def _grounded_unit(unit: str, today: _dt.date, offset_minutes: int, back: bool) -> TimeRef:
    sign = -1 if back else 1
    if unit == "week":
        monday = today - _dt.timedelta(days=today.weekday()) + _dt.timedelta(weeks=sign)
        return TimeRef.over(Interval(
            _local_day_to_utc(monday, offset_minutes).start,
            _local_day_to_utc(monday + _dt.timedelta(days=6), offset_minutes).end,
        ))
    if unit == "month":
        month = today.month + sign
        year = today.year + (month - 1) // 12
        month = (month - 1) % 12 + 1
        return TimeRef.over(_month_interval_utc(
            _dt.date(year, month, 15), month, "past" if back else "future", offset_minutes
        ))
    if unit == "year":
        y = today.year + sign
        return TimeRef.over(Interval(
            utc_normalize(Timestamp(y, 1, 1), offset_minutes),
            utc_normalize(Timestamp(y, 12, 31, 23, 59, 59), offset_minutes),
        ))
    if unit in WEEKDAYS:
        target = WEEKDAYS.index(unit)
        if back:
            delta = (today.weekday() - target) % 7 or 7
            return TimeRef.over(_local_day_to_utc(today - _dt.timedelta(days=delta), offset_minutes))
        delta = (target - today.weekday()) % 7 or 7
        return TimeRef.over(_local_day_to_utc(today + _dt.timedelta(days=delta), offset_minutes))
    raise TemporalParseError(f"cannot ground unit {unit!r}", token=unit)


def _shift(today: _dt.date, unit: str, count: int) -> _dt.date:
    if unit == "day":
        return today + _dt.timedelta(days=count)
    if unit == "week":
        return today + _dt.timedelta(weeks=count)
    if unit == "month":
        month = today.month + count
        year = today.year + (month - 1) // 12
        month = (month - 1) % 12 + 1
        day = min(today.day, _days_in_month(year, month))
        return _dt.date(year, month, day)
    if unit == "year":
        return _dt.date(today.year + count, today.month, today.day)
    raise TemporalParseError(f"cannot shift by unit {unit!r}", token=unit)


def _days_in_month(year: int, month: int) -> int:
    nxt = _dt.date(year + (month == 12), month % 12 + 1, 1)
    return (nxt - _dt.timedelta(days=1)).day


# ---------------------------------------------------------------------------
# explicit date phrases: the generator's output template
#   <Weekday> the <ordinal> of <Month> <year> at <h:mm:ss AM/PM>


def _try_date_phrase(words: list[str], offset_minutes: int) -> Optional[TimeRef]:
    # weekday the Nth of Month YYYY [at h:mm:ss am/pm]
    if len(words) >= 6 and words[0] in WEEKDAYS and words[1] == "the" and words[3] == "of":
        m = ORDINAL_RE.fullmatch(words[2])
        if not m or words[4] not in MONTHS or not words[5].isdigit():
            return None
        day, month, year = int(m.group(1)), MONTHS.index(words[4]) + 1, int(words[5])
        hour = minute = second = 0
        if len(words) == 6:
            local = Timestamp(year, month, day)
            iv = Interval(
                utc_normalize(local, offset_minutes),
                utc_normalize(Timestamp(year, month, day, 23, 59, 59), offset_minutes),
            )
            return TimeRef.over(iv)
        if len(words) == 9 and words[6] == "at" and words[8] in ("am", "pm"):
            cm = CLOCK_RE.fullmatch(words[7])
            if not cm:
                return None
            hour, minute = int(cm.group(1)), int(cm.group(2))
            second = int(cm.group(3) or 0)
            if words[8] == "pm" and hour != 12:
                hour += 12
            if words[8] == "am" and hour == 12:
                hour = 0
            local = Timestamp(year, month, day, hour, minute, second)
            return TimeRef.at_point(utc_normalize(local, offset_minutes))
    return None


_ORDINAL_SUFFIX = {1: "st", 2: "nd", 3: "rd"}


def ordinal(n: int) -> str:
    if 10 <= n % 100 <= 20:
        return f"{n}th"
    return f"{n}{_ORDINAL_SUFFIX.get(n % 10, 'th')}"


def format_date_phrase(ts: Timestamp, offset_minutes: int = 0) -> str:
    """Render a UTC timestamp in the generator's date-phrase template,
    shown in local wall-clock time."""
    local = utc_denormalize(ts, offset_minutes)
    date = _dt.date(local.year, local.month, local.day)
    weekday = WEEKDAYS[date.weekday()].capitalize()
    month = MONTHS[local.month - 1].capitalize()
    hour12 = local.hour % 12 or 12
    meridiem = "AM" if local.hour < 12 else "PM"
    return (
        f"{weekday} the {ordinal(local.day)} of {month} {local.year} "
        f"at {hour12}:{local.minute:02d}:{local.second:02d} {meridiem}"
    )
