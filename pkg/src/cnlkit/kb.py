"""Session knowledge base: asserted clauses, universal rules, query
answering by unification with one-step rule application and Allen-based
temporal filtering, synthetic track ingestion, and situation reports.

Query variables are the q-family symbols the translator emits in query
mode.  Ground before/after/during clauses in a query act as temporal
filters: once the pattern clauses bind the query's time symbol to a
stored one, the stored constraints on that time must leave a nonempty
intersection with the query's region.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import chronos
from .chronos import Interval, Timestamp
from .terms import (
    Atom,
    Form,
    Items,
    Num,
    Struct,
    SymbolAllocator,
    Term,
    Var,
    print_term,
)
from .translate import Envelope

TENSE_ATOMS = {"past", "present", "future", "general_habitual"}
# present and general_habitual form one compatibility class: habitual
# facts answer present-tense questions
_TENSE_CLASS = {"past": "past", "future": "future",
                "present": "now", "general_habitual": "now"}
FEATURE_CATEGORIES = (
    {"singular", "plural"},
    {"male", "female", "neuter"},
)
CONSTRAINT_FUNCTORS = {"before", "after", "during"}


def is_qvar(t: Term) -> bool:
    return isinstance(t, Var) and t.family == "q"


def is_feature_items(t: Term) -> bool:
    return isinstance(t, Items) and all(
        isinstance(x, Atom) or (isinstance(x, Struct) and len(x.args) <= 2)
        for x in t.items
    )


def features_compatible(a: Items, b: Items) -> bool:
    """No category conflict: the lists may differ freely except on number,
    gender and tense class."""
    sa = {x.name for x in a.items if isinstance(x, Atom)}
    sb = {x.name for x in b.items if isinstance(x, Atom)}
    for category in FEATURE_CATEGORIES:
        va, vb = sa & category, sb & category
        if va and vb and va != vb:
            return False
    ta = {_TENSE_CLASS[x] for x in sa & TENSE_ATOMS}
    tb = {_TENSE_CLASS[x] for x in sb & TENSE_ATOMS}
    if ta and tb and ta != tb:
        return False
    return True


def unify(a: Term, b: Term, subst: dict) -> Optional[dict]:
    """Standard first-order unification; only q-family symbols are
    variables, feature lists match by compatibility."""
    a = walk(a, subst)
    b = walk(b, subst)
    if is_qvar(a):
        if a == b:
            return subst
        s2 = dict(subst)
        s2[a.name] = b
        return s2
    if is_qvar(b):
        s2 = dict(subst)
        s2[b.name] = a
        return s2
    if isinstance(a, Atom) and isinstance(b, Atom):
        return subst if a.name == b.name else None
    if isinstance(a, Num) and isinstance(b, Num):
        return subst if a.value == b.value else None
    if isinstance(a, Var) and isinstance(b, Var):
        return subst if a.name == b.name else None
    if isinstance(a, Items) and isinstance(b, Items):
        if is_feature_items(a) and is_feature_items(b):
            return subst if features_compatible(a, b) else None
        if len(a.items) != len(b.items):
            return None
        for x, y in zip(a.items, b.items):
            subst = unify(x, y, subst)
            if subst is None:
                return None
        return subst
    if isinstance(a, Struct) and isinstance(b, Struct):
        if a.functor != b.functor or len(a.args) != len(b.args):
            return None
        for x, y in zip(a.args, b.args):
            subst = unify(x, y, subst)
            if subst is None:
                return None
        return subst
    return None


def walk(t: Term, subst: dict) -> Term:
    while is_qvar(t) and t.name in subst:
        t = subst[t.name]
    return t


def substitute(t: Term, subst: dict) -> Term:
    t = walk(t, subst)
    if isinstance(t, Struct):
        return Struct(t.functor, tuple(substitute(x, subst) for x in t.args))
    if isinstance(t, Items):
        return Items(tuple(substitute(x, subst) for x in t.items))
    return t


def is_event_clause(t: Term) -> bool:
    """Heuristic shared by answering and rendering: an event clause has
    at-term arguments and a trailing feature list carrying a tense atom."""
    if isinstance(t, Struct) and t.functor == "~":
        return is_event_clause(t.args[0])
    if not isinstance(t, Struct) or not t.args:
        return False
    if not isinstance(t.args[-1], Items):
        return False
    tail = {x.name for x in t.args[-1].items if isinstance(x, Atom)}
    if not tail & TENSE_ATOMS:
        return False
    return any(isinstance(a, Struct) and a.functor == "@" for a in t.args[:-1])


def is_typing_clause(t: Term) -> bool:
    return (
        isinstance(t, Struct)
        and len(t.args) == 2
        and isinstance(t.args[0], Struct) and t.args[0].functor == "@"
        and isinstance(t.args[1], Items)
        and not is_event_clause(t)
    )


# ---------------------------------------------------------------------------
# track records


@dataclass(frozen=True)
class TrackRecord:
    source: str
    temporal_offset: int      # seconds ahead of UTC at the source
    track_id: str
    time: Timestamp           # UTC after offset application
    lat: float
    lon: float
    direction: float          # degrees
    speed: float              # knots
    klass: str
    type: str
    allegiance: str
    nationality: str


class TrackRecordError(ValueError):
    pass


def parse_track_line(line: str) -> TrackRecord:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) != 12:
        raise TrackRecordError(f"expected 12 comma-separated fields, got {len(parts)}")
    source, offset_s, track_id, iso, lat, lon, direction, speed, klass, typ, alleg, nat = parts
    if not track_id:
        raise TrackRecordError("empty track id")
    try:
        offset = int(offset_s)
        when = _dt.datetime.fromisoformat(iso)
        utc = when - _dt.timedelta(seconds=offset)
        record = TrackRecord(
            source=source, temporal_offset=offset, track_id=track_id,
            time=Timestamp.from_datetime(utc),
            lat=float(lat), lon=float(lon),
            direction=float(direction), speed=float(speed),
            klass=klass, type=typ, allegiance=alleg, nationality=nat,
        )
    except (ValueError, TypeError) as e:
        raise TrackRecordError(str(e)) from e
    return record


# ---------------------------------------------------------------------------
# the store


@dataclass
class FactStore:
    alloc: SymbolAllocator = field(default_factory=SymbolAllocator)
    ground: dict[str, Term] = field(default_factory=dict)   # print -> clause
    rules: list[Struct] = field(default_factory=list)       # all-forms
    log: list[Envelope] = field(default_factory=list)
    track_skolems: dict[str, tuple[Var, Var]] = field(default_factory=dict)
    track_latest: dict[str, TrackRecord] = field(default_factory=dict)
    track_meta: dict[str, dict] = field(default_factory=dict)

    def clauses(self) -> list[Term]:
        return list(self.ground.values())

    def add_clause(self, c: Term):
        self.ground.setdefault(print_term(c), c)

    def size(self) -> int:
        return len(self.ground)


def assert_form(store: FactStore, env: Envelope) -> FactStore:
    """Ground clauses are added with set semantics; universal forms are
    stored as rules; the envelope log is append-only."""
    if env.act != "assert":
        raise ValueError("assert_form requires an assert envelope")
    store.log.append(env)
    for clause in env.payload.clauses:
        _add_term(store, clause)
    return store


def _add_term(store: FactStore, clause: Term):
    if isinstance(clause, Struct) and clause.functor == "all":
        store.rules.append(clause)
    elif isinstance(clause, Struct) and clause.functor == "=>":
        store.rules.append(clause)
    else:
        store.add_clause(clause)


# one-step forward chaining ---------------------------------------------------


def _rule_parts(rule: Struct):
    if rule.functor == "all":
        body = rule.args[1]
    else:
        body = rule
    if not (isinstance(body, Struct) and body.functor == "=>"):
        return None
    return body.args[0], body.args[1]


def _conjuncts(t: Term) -> list[Term]:
    if isinstance(t, Struct) and t.functor == "&":
        out = []
        for a in t.args:
            out.extend(_conjuncts(a))
        return out
    return [t]


def _freshen(t: Term, entity_map: dict, local_map: dict, alloc: SymbolAllocator,
             wildcard_features: bool) -> Term:
    """Rename a rule's variables apart.  Entity (skc) variables share one
    mapping across the whole rule; time/space variables map per conjunct so
    facts asserted at different times can still feed one rule; feature
    lists in restrictor patterns are wildcards (quantifier-phrase features
    like plural must not block instance facts)."""
    if isinstance(t, Var) and t.family != "q":
        mapping = entity_map if t.family == "skc" else local_map
        if t.name not in mapping:
            mapping[t.name] = alloc.fresh_query()
        return mapping[t.name]
    if isinstance(t, Struct):
        return Struct(t.functor, tuple(
            _freshen(a, entity_map, local_map, alloc, wildcard_features) for a in t.args))
    if isinstance(t, Items):
        if wildcard_features and is_feature_items(t):
            return alloc.fresh_query()
        return Items(tuple(
            _freshen(a, entity_map, local_map, alloc, wildcard_features) for a in t.items))
    return t


def derived_clauses(store: FactStore) -> list[Term]:
    """One-step application of every rule to the ground clauses (the
    documented inference depth limit)."""
    out: dict[str, Term] = {}
    facts = store.clauses()
    alloc = SymbolAllocator()
    for rule in store.rules:
        parts = _rule_parts(rule)
        if parts is None:
            continue
        restrictor, body = parts
        entity_map: dict = {}
        patterns = []
        body_locals: dict = {}
        for conj in _conjuncts(restrictor):
            local: dict = {}
            patterns.append(_freshen(conj, entity_map, local, alloc, wildcard_features=True))
            for k, v in local.items():
                body_locals.setdefault(k, v)  # first conjunct's times feed the body
        body_pat = _freshen(body, entity_map, body_locals, alloc, wildcard_features=False)

        def match_rest(idx: int, subst: dict):
            if idx == len(patterns):
                for conclusion in _conjuncts(body_pat):
                    ground = substitute(conclusion, subst)
                    if not _has_qvar(ground):
                        out.setdefault(print_term(ground), ground)
                return
            for fact in facts:
                s2 = unify(patterns[idx], fact, subst)
                if s2 is not None:
                    match_rest(idx + 1, s2)

        match_rest(0, {})
    return list(out.values())


def _has_qvar(t: Term) -> bool:
    if is_qvar(t):
        return True
    if isinstance(t, Struct):
        return any(_has_qvar(a) for a in t.args)
    if isinstance(t, Items):
        return any(_has_qvar(a) for a in t.items)
    return False


# answering -------------------------------------------------------------------


@dataclass
class AnswerBinding:
    subst: dict
    value: Optional[Term]            # binding of the queried variable
    matched: list[Term]              # the store clauses this answer used
    constraints: list[Term] = field(default_factory=list)  # time constraints of the event


@dataclass
class AnswerResult:
    kind: str                        # bindings | boolean | temporal | predicate
    bindings: list[AnswerBinding] = field(default_factory=list)
    yes: Optional[bool] = None


def _constraint_region(c: Struct) -> Optional[tuple]:
    """(lo, hi) datetime region a ground constraint allows the time to be in."""
    try:
        iv = chronos.interval_from_term(c.args[1])
    except chronos.TemporalParseError:
        return None
    lo, hi = iv.start.to_datetime(), iv.end.to_datetime()
    if c.functor == "before":
        return (_dt.datetime.min, lo)
    if c.functor == "after":
        return (hi, _dt.datetime.max)
    if c.functor == "during":
        return (lo, hi)
    return None


def _regions_intersect(a: tuple, b: tuple) -> bool:
    return max(a[0], b[0]) <= min(a[1], b[1])


def answer(
    store: FactStore,
    query: Form,
    focus,
    queried_var: Optional[Var] = None,
    clause_pool: Optional[list[Term]] = None,
) -> AnswerResult:
    """All bindings of the queried variable against ground clauses plus
    one-step rule application; empty means "no answer"."""
    facts = clause_pool if clause_pool is not None else (
        store.clauses() + derived_clauses(store)
    )
    pattern, temporal = [], []
    for c in query.clauses:
        if isinstance(c, Struct) and c.functor in CONSTRAINT_FUNCTORS and not _has_qvar(c.args[1]):
            temporal.append(c)
        elif isinstance(c, Struct) and c.functor == "directive":
            continue
        else:
            pattern.append(c)

    focus_kind = getattr(focus, "kind", None) or "yes_no"
    if focus_kind == "predicate":
        return _answer_predicate(store, query, facts)

    results: list[AnswerBinding] = []
    seen_keys: set = set()

    def backtrack(idx: int, subst: dict, used: list[Term]):
        if idx == len(pattern):
            if not _temporal_ok(subst, temporal, facts):
                return
            value = None
            if queried_var is not None:
                value = walk(queried_var, subst)
            constraints = _time_constraints(subst, temporal, facts)
            key = print_term(value) if value is not None else tuple(
                print_term(substitute(p, subst)) for p in pattern
            )
            if key in seen_keys:
                return
            seen_keys.add(key)
            results.append(AnswerBinding(dict(subst), value, list(used), constraints))
            return
        for fact in facts:
            s2 = unify(pattern[idx], fact, subst)
            if s2 is not None:
                backtrack(idx + 1, s2, used + [fact])

    backtrack(0, {}, [])
    if focus_kind == "yes_no":
        return AnswerResult(kind="boolean", yes=bool(results), bindings=results)
    if focus_kind == "temporal":
        return AnswerResult(kind="temporal", bindings=results)
    return AnswerResult(kind="bindings", bindings=results)


def _temporal_ok(subst: dict, temporal: list[Struct], facts: list[Term]) -> bool:
    for c in temporal:
        t = walk(c.args[0], subst)
        want = _constraint_region(Struct(c.functor, (t, c.args[1])))
        if want is None:
            continue
        if is_qvar(t):
            continue  # time variable never bound: no ground event time to filter
        stored = [
            f for f in facts
            if isinstance(f, Struct) and f.functor in CONSTRAINT_FUNCTORS
            and f.args and f.args[0] == t
        ]
        for f in stored:
            got = _constraint_region(f)
            if got is not None and not _regions_intersect(want, got):
                return False
    return True


def _time_constraints(subst: dict, temporal: list[Struct], facts: list[Term]) -> list[Term]:
    out = []
    times = set()
    for c in temporal:
        t = walk(c.args[0], subst)
        if isinstance(t, Var):
            times.add(t.name)
    for name, bound in subst.items():
        if isinstance(bound, Var) and bound.family == "t":
            times.add(bound.name)
    for f in facts:
        if isinstance(f, Struct) and f.functor in CONSTRAINT_FUNCTORS and f.args:
            t0 = f.args[0]
            if isinstance(t0, Var) and t0.name in times:
                out.append(f)
    return out


def _answer_predicate(store: FactStore, query: Form, facts: list[Term]) -> AnswerResult:
    """The generic verb "do" queries the predicate itself: find event
    clauses whose subject occurrence matches the query's subject."""
    subject_patterns = [c for c in query.clauses if is_typing_clause(c)]
    results: list[AnswerBinding] = []
    for fact in facts:
        if not is_event_clause(fact):
            continue
        inner = fact.args[0] if isinstance(fact, Struct) and fact.functor == "~" else fact
        if inner.functor in ("does", "do"):
            continue
        subject_at = next((a for a in inner.args if isinstance(a, Struct) and a.functor == "@"), None)
        if subject_at is None:
            continue
        subst: Optional[dict] = {}
        for p in subject_patterns:
            p_at = p.args[0]
            s2 = unify(p_at, subject_at, subst)
            if s2 is None:
                subst = None
                break
            matched = [f for f in facts if unify(substitute(p, s2), f, {}) is not None]
            if not matched:
                subst = None
                break
            subst = s2
        if subst is not None:
            results.append(AnswerBinding(subst, inner, [fact]))
    return AnswerResult(kind="predicate", bindings=results)


# track ingestion and reports --------------------------------------------------


@dataclass
class IngestOutcome:
    accepted: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)


def ingest_tracks(store: FactStore, lines: Iterable[str]) -> IngestOutcome:
    """Each record becomes ground clauses over a stable per-track skolem;
    malformed records are rejected individually and the stream continues."""
    outcome = IngestOutcome()
    for i, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            record = parse_track_line(line)
        except TrackRecordError as e:
            outcome.rejected.append((i, str(e)))
            continue
        _ingest_record(store, record)
        outcome.accepted += 1
    return outcome


def _ingest_record(store: FactStore, r: TrackRecord):
    if r.track_id not in store.track_skolems:
        store.track_skolems[r.track_id] = store.alloc.entity()
        store.track_meta[r.track_id] = {"class": f"{r.klass}_{r.type}"}
    skc, space = store.track_skolems[r.track_id]
    latest = store.track_latest.get(r.track_id)
    if latest is None or r.time >= latest.time:
        store.track_latest[r.track_id] = r
    t = store.alloc.fresh_time()
    at = Struct("@", (skc, t, space))
    iv = Interval.point(r.time)
    klass = f"{r.klass}_{r.type}"
    store.add_clause(Struct(klass, (at, Items((Atom("track"), Atom("singular"))))))
    store.add_clause(Struct("track_id", (at, Atom(r.track_id))))
    store.add_clause(Struct("position", (at, Struct("latlon", (Num(r.lat), Num(r.lon))))))
    store.add_clause(Struct("during", (t, iv.term())))
    store.add_clause(Struct("speed_knots", (at, Num(r.speed))))
    store.add_clause(Struct("direction_deg", (at, Num(r.direction))))
    if r.allegiance:
        store.add_clause(Struct("allegiance", (at, Atom(r.allegiance.lower()))))
    if r.nationality:
        store.add_clause(Struct("nationality", (at, Atom(r.nationality.lower()))))


@dataclass
class SituationReport:
    track_id: str
    forms: list[Form]
    diagnostic: Optional[str] = None


def situation_report(store: FactStore, class_np: str, track_id: str) -> SituationReport:
    """Latest position/attribute clauses for the track plus CNL-asserted
    facts mentioning the same entity."""
    if track_id not in store.track_skolems:
        return SituationReport(track_id, [], diagnostic=f"no such track: {track_id}")
    skc, space = store.track_skolems[track_id]
    latest = store.track_latest[track_id]
    klass = store.track_meta[track_id]["class"]
    t = Var("t_0")
    at = Struct("@", (skc, t, space))
    head = Form((
        Struct(klass, (at, Items((Atom("track"), Atom("singular"))))),
        Struct("track_id", (at, Atom(track_id))),
    ))
    pos = Form((
        Struct("position", (at, Struct("latlon", (Num(latest.lat), Num(latest.lon))))),
        Struct("during", (t, Interval.point(latest.time).term())),
        Struct("speed_knots", (at, Num(latest.speed))),
        Struct("direction_deg", (at, Num(latest.direction))),
        Struct("allegiance", (at, Atom(latest.allegiance.lower()))),
        Struct("nationality", (at, Atom(latest.nationality.lower()))),
    ))
    forms = [head, pos]
    extra = [
        c for c in store.clauses()
        if _mentions(c, skc) and not _is_track_clause(c)
    ]
    if extra:
        forms.append(Form(tuple(extra)))
    return SituationReport(track_id, forms)


def _mentions(t: Term, skc: Var) -> bool:
    if isinstance(t, Var):
        return t == skc
    if isinstance(t, Struct):
        return any(_mentions(a, skc) for a in t.args)
    if isinstance(t, Items):
        return any(_mentions(a, skc) for a in t.items)
    return False


_TRACK_FUNCTORS = {"track_id", "position", "during", "speed_knots",
                   "direction_deg", "allegiance", "nationality"}


def _is_track_clause(t: Term) -> bool:
    if not isinstance(t, Struct):
        return False
    if t.functor in _TRACK_FUNCTORS:
        return True
    return bool(t.args and isinstance(t.args[-1], Items)
                and any(isinstance(x, Atom) and x.name == "track"
                        for x in t.args[-1].items))
