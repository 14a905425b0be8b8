"""Surface generation: logical forms back to controlled English, validated
by re-parsing with the same grammar.

Realization is template-based over the closed grammar: typing clauses
become noun phrases, the event clause becomes the matrix verb, constraints
become adjuncts.  Temporal constraints are rendered explicitly - past
tense plus a "before <date phrase>" adjunct - and adjectives come out in
canonical class order.  Date phrases follow
``<Weekday> the <ordinal> of <Month> <year> at <h:mm:ss AM/PM>`` in the
session's local time.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass
from typing import Optional

from . import chronos
from .chronos import Interval, Timestamp
from .lexicon import (
    ADJ_PRECEDENCE,
    AliasEntry,
    Lexicon,
    POS,
    pluralize,
    verb_past,
)
from .terms import Atom, Form, Items, Num, Struct, Term, Var, print_term
from .translate import PREP_ROLES

ROLE_PREPS: dict[str, str] = {}
for _p, _r in PREP_ROLES.items():
    ROLE_PREPS.setdefault(_r, _p)

TENSE_ATOMS = {"past", "present", "future", "general_habitual"}


class GenerationError(ValueError):
    pass


@dataclass
class _Entity:
    skolem: str
    functor: str
    features: set[str]
    at: Struct
    adjectives: list[str]
    postmods: list[tuple[str, str]]  # (prep, ref skolem)

    @property
    def plural(self) -> bool:
        return "plural" in self.features

    @property
    def definite(self) -> bool:
        return "definite" in self.features


class _FormIndex:
    """Clause classification for one form."""

    def __init__(self, form: Form, lex: Lexicon):
        self.lex = lex
        self.entities: dict[str, _Entity] = {}
        self.constraints: list[Struct] = []   # before/after/during
        self.locations: list[Struct] = []
        self.events: list[tuple[Struct, bool]] = []  # (clause, negated)
        self.identical: Optional[Struct] = None
        self.alls: list[Struct] = []
        self.implication: Optional[Struct] = None
        self.unaries: dict[str, list[str]] = {}
        self.cards: dict[str, object] = {}
        self.possessors: dict[str, str] = {}  # owned label -> owner label
        for c in form.clauses:
            self._classify(c)

    def _classify(self, c: Term):
        if isinstance(c, Struct) and c.functor == "~":
            inner = c.args[0]
            if self._is_event(inner):
                self.events.append((inner, True))
                return
        if not isinstance(c, Struct):
            raise GenerationError(f"cannot realize clause {print_term(c)}")
        if c.functor == "=>":
            self.implication = c
            return
        if c.functor == "all":
            self.alls.append(c)
            return
        if c.functor == "identical":
            self.identical = c
            return
        # shape guards matter: a noun may share its lemma with a structural
        # functor (a card, the goal, the path)
        if c.functor in ("before", "after", "during") and len(c.args) == 2 \
                and isinstance(c.args[0], Var):
            self.constraints.append(c)
            return
        if (c.functor in ROLE_PREPS or c.functor.startswith("location_")) \
                and len(c.args) == 2 and isinstance(c.args[0], (Items, Var)) \
                and is_at(c.args[1]):
            self.locations.append(c)
            return
        if c.functor == "card" and len(c.args) == 2 and isinstance(c.args[0], Var):
            if isinstance(c.args[1], Num):
                self.cards[c.args[0].name] = c.args[1].value
            elif isinstance(c.args[1], Atom):
                self.cards[c.args[0].name] = c.args[1].name
            return
        if c.functor == "possesses" and len(c.args) == 2 \
                and is_at(c.args[0]) and is_at(c.args[1]):
            self.possessors[_at_label(c.args[1])] = _at_label(c.args[0])
            return
        if self._is_event(c):
            self.events.append((c, False))
            return
        if self._is_typing(c):
            self._add_entity(c)
            return
        if len(c.args) == 1 and isinstance(c.args[0], Struct) and c.args[0].functor == "@":
            skolem = _at_label(c.args[0])
            self.unaries.setdefault(skolem, []).append(c.functor)
            return
        raise GenerationError(f"cannot realize clause {print_term(c)}")

    def _is_event(self, c: Term) -> bool:
        if not isinstance(c, Struct) or not c.args:
            return False
        if not isinstance(c.args[-1], Items):
            return False
        feats = {x.name for x in c.args[-1].items if isinstance(x, Atom)}
        return bool(feats & TENSE_ATOMS)

    def _is_typing(self, c: Struct) -> bool:
        return (len(c.args) == 2 and isinstance(c.args[0], Struct)
                and c.args[0].functor == "@" and isinstance(c.args[1], Items))

    def _add_entity(self, c: Struct):
        at = c.args[0]
        skolem = _at_label(at)
        feats = {x.name for x in c.args[1].items if isinstance(x, Atom)}
        self.entities[skolem] = _Entity(
            skolem=skolem, functor=c.functor, features=feats, at=at,
            adjectives=[], postmods=[],
        )

    def finalize(self):
        for skolem, preds in self.unaries.items():
            ent = self.entities.get(skolem)
            if ent is None:
                continue
            for p in preds:
                if p in ("animate", "male", "female"):
                    continue
                ent.adjectives.append(p)
            ent.adjectives.sort(key=self._adj_rank)
        # noun-attached locations become postmodifiers
        remaining = []
        for c in self.locations:
            manner, ref_at = c.args
            inner = manner.items[0] if isinstance(manner, Items) and manner.items else None
            prep = ROLE_PREPS.get(c.functor, c.functor.removeprefix("location_"))
            if isinstance(inner, Struct) and inner.args:
                host = _at_label(inner.args[0])
                ent = self.entities.get(host)
                if ent is not None and inner.functor == ent.functor:
                    ent.postmods.append((prep, _at_label(ref_at)))
                    continue
            remaining.append(c)
        self.locations = remaining

    def _adj_rank(self, lemma: str) -> int:
        for entry in self.lex.lookup(lemma):
            if entry.pos == POS.ADJECTIVE and entry.features.order_class:
                return ADJ_PRECEDENCE[entry.features.order_class]
        return len(ADJ_PRECEDENCE)


def is_at(t: Term) -> bool:
    return isinstance(t, Struct) and t.functor == "@" and len(t.args) == 3


def _at_label(at: Struct) -> str:
    label = at.args[0]
    return label.name if isinstance(label, (Var, Atom)) else print_term(label)


def _at_time(at: Struct) -> Optional[str]:
    t = at.args[1]
    return t.name if isinstance(t, Var) else None


def generate(
    form: Form,
    lex: Lexicon,
    offset_minutes: int = 0,
    aliases: Optional[list[AliasEntry]] = None,
) -> str:
    """Render one form as a surface sentence (deterministic)."""
    idx = _FormIndex(form, lex)
    idx.finalize()
    aliases = aliases or []
    r = _Realizer(idx, lex, offset_minutes, aliases)
    if idx.implication is not None:
        return _capitalize(r.implication(idx.implication)) + "."
    if idx.alls:
        return _capitalize(r.universal(idx.alls[0])) + "."
    if idx.identical is not None:
        return _capitalize(r.identity(idx.identical)) + "."
    if idx.events:
        clause, negated = idx.events[0]
        if clause.functor in ("says", "tells"):
            return _capitalize(r.report(clause)) + "."
        agg = _aggregation(idx.events) if len(idx.events) > 1 else None
        return _capitalize(r.clause(clause, negated, agg=agg)) + "."
    raise GenerationError("form has no main clause to realize")


def _aggregation(events) -> Optional[tuple[int, list[str]]]:
    """Parallel event clauses that differ in exactly one argument position
    realize as a conjoined noun phrase in that position."""
    first, negated0 = events[0]
    arity = len(first.args)
    if any(c.functor != first.functor or len(c.args) != arity or n != negated0
           for c, n in events[1:]):
        return None
    if print_term(first.args[-1]) != print_term(events[-1][0].args[-1]):
        return None
    diff_positions = set()
    for c, _ in events[1:]:
        for i in range(arity - 1):
            if print_term(c.args[i]) != print_term(first.args[i]):
                diff_positions.add(i)
    if len(diff_positions) != 1:
        return None
    pos = diff_positions.pop()
    labels = []
    for c, _ in events:
        label = _at_label(c.args[pos])
        if label not in labels:
            labels.append(label)
    return pos, labels


def _capitalize(s: str) -> str:
    return s[:1].upper() + s[1:] if s else s


class _Realizer:
    def __init__(self, idx: _FormIndex, lex: Lexicon, offset: int, aliases):
        self.idx = idx
        self.lex = lex
        self.offset = offset
        self.alias_by_atom = {}
        for a in aliases:
            self.alias_by_atom.setdefault(a.atom, a.surface_sequence)

    # --- noun phrases -----------------------------------------------------

    def unfold(self, atom: str) -> str:
        seq = self.alias_by_atom.get(atom)
        return " ".join(seq) if seq else atom

    def np(self, skolem: str, force_bare: bool = False, universal: bool = False) -> str:
        ent = self.idx.entities.get(skolem)
        if ent is None:
            raise GenerationError(f"skolem {skolem} has no typing predicate")
        if "proper_noun" in ent.features:
            return self.unfold(ent.functor)
        surface = self.noun_surface(ent)
        adjs = " ".join(ent.adjectives)
        core = f"{adjs} {surface}".strip()
        count = self.idx.cards.get(skolem)
        owner = self.idx.possessors.get(skolem)
        if owner is not None:
            text = f"{self.np(owner)} 's {core}"
        elif count is not None:
            text = f"{_number_word(count)} {core}"
        elif universal:
            text = f"all {core}"
        elif "existential" in ent.features:
            text = f"some {core}"
        elif force_bare or (not ent.definite and ent.plural):
            text = core
        elif ent.definite:
            text = f"the {core}"
        else:
            article = "an" if core[:1].lower() in "aeiou" else "a"
            text = f"{article} {core}"
        for prep, ref in ent.postmods:
            text = f"{text} {prep} {self.np(ref)}"
        return text

    def noun_surface(self, ent: _Entity) -> str:
        lemma = ent.functor
        if ent.plural:
            return pluralize(lemma)
        return self.unfold(lemma)

    # --- verb groups --------------------------------------------------------

    def verb_lemma(self, functor: str) -> str:
        for entry in self.lex.lookup(functor):
            if entry.pos == POS.MAIN_VERB:
                return entry.lemma
        raise GenerationError(f"unknown event functor {functor!r}")

    def verb_group(self, functor: str, feats: set[str], negated: bool,
                   subject_plural: bool, always: bool = False) -> str:
        lemma = self.verb_lemma(functor)
        adverb = "always " if always else ""
        if "past" in feats:
            if negated:
                return f"did not {adverb}{lemma}"
            return f"{adverb}{verb_past(lemma)}"
        if "future" in feats:
            return f"will {'not ' if negated else ''}{adverb}{lemma}"
        if negated:
            aux = "do" if subject_plural else "does"
            return f"{aux} not {adverb}{lemma}"
        finite = lemma if subject_plural else functor
        return f"{adverb}{finite}"

    # --- clause realization ---------------------------------------------------

    def clause(self, event: Struct, negated: bool, np_overrides: Optional[dict] = None,
               agg: Optional[tuple[int, list[str]]] = None) -> str:
        np_overrides = dict(np_overrides or {})
        plural_forced = False
        if agg is not None:
            pos, labels = agg
            joined = " and ".join(self.np(l) for l in labels)
            np_overrides[_at_label(event.args[pos])] = joined
            plural_forced = pos == 0
        feats = {x.name for x in event.args[-1].items if isinstance(x, Atom)}
        mult = next((x.args[0].value for x in event.args[-1].items
                     if isinstance(x, Struct) and x.functor == "times"), None)
        ats = [a for a in event.args[:-1] if isinstance(a, Struct) and a.functor == "@"]
        if not ats:
            raise GenerationError("event clause without argument occurrences")
        subject = _at_label(ats[0])
        subj_np = np_overrides.get(subject) or self.np(subject)
        ent = self.idx.entities.get(subject)
        plural = plural_forced or (ent.plural if ent else False)
        if event.functor == "is" and not ats[1:]:
            parts = [subj_np, "was" if "past" in feats else "is"]
            parts.extend(self.location_phrases(event.functor, subject))
        else:
            vg = self.verb_group(event.functor, feats, negated, plural)
            parts = [subj_np, vg]
            rest = [_at_label(a) for a in ats[1:]]
            if len(rest) == 2:
                # subject, object(theme), recipient: double-object order
                parts.append(np_overrides.get(rest[1]) or self.np(rest[1]))
                parts.append(np_overrides.get(rest[0]) or self.np(rest[0]))
            elif rest:
                parts.append(np_overrides.get(rest[0]) or self.np(rest[0]))
            if mult is not None:
                parts.append(_mult_word(mult))
            parts.extend(self.location_phrases(event.functor, subject))
        t = _at_time(ats[0])
        anchored = bool(feats & {"past", "future"})
        parts.extend(self.temporal_phrases(t, anchors=anchored))
        return " ".join(p for p in parts if p)

    def report(self, clause: Struct) -> str:
        subject = _at_label(clause.args[0])
        feats = {x.name for x in clause.args[-1].items if isinstance(x, Atom)}
        lemma = "say" if clause.functor == "says" else "tell"
        verb = verb_past(lemma) if "past" in feats else (
            clause.functor if not self.idx.entities[subject].plural else lemma)
        parts = [self.np(subject), verb]
        payload_idx = 1
        if clause.functor == "tells":
            parts.append(self.np(_at_label(clause.args[1])))
            payload_idx = 2
        inner_form = Form(tuple(clause.args[payload_idx].items))
        inner = generate(inner_form, self.lex, self.offset,
                         [AliasEntry(v, k) for k, v in self.alias_by_atom.items()])
        inner_core = inner[:-1]
        inner_core = inner_core[:1].lower() + inner_core[1:]
        parts.append(f"that {inner_core}")
        return " ".join(parts)

    def identity(self, ident: Struct) -> str:
        left, right = ident.args
        t = _at_time(left)
        past = any(c.functor == "before" and isinstance(c.args[0], Var)
                   and c.args[0].name == t for c in self.idx.constraints)
        cop = "was" if past else "is"
        text = f"{self.np(_at_label(left))} {cop} {self.np(_at_label(right))}"
        extra = self.temporal_phrases(t)
        return " ".join([text] + extra)

    def universal(self, all_clause: Struct) -> str:
        bound_vars, body = all_clause.args
        bound = {v.name for v in bound_vars.items if isinstance(v, Var)}
        if not (isinstance(body, Struct) and body.functor == "=>"):
            raise GenerationError("universal form without implication body")
        restrictor, conclusion = body.args
        typing = [c for c in _conjuncts(restrictor)]
        for c in typing:
            self.idx._add_entity(c)
        event = conclusion
        negated = False
        locations = []
        for part in _conjuncts(conclusion):
            if isinstance(part, Struct) and part.functor == "~":
                event, negated = part.args[0], True
            elif self.idx._is_event(part):
                event = part
            else:
                locations.append(part)
        self.idx.locations.extend(locations)
        time_quantified = any(Var(name).family == "t" for name in bound)
        overrides = {}
        for c in typing:
            skolem = _at_label(c.args[0])
            if skolem in bound:
                ent = self.idx.entities[skolem]
                plural_noun = pluralize(ent.functor)
                adjs = " ".join(ent.adjectives)
                core = f"{adjs} {plural_noun}".strip()
                bare = not (negated or time_quantified) and len(typing) == 1
                overrides[skolem] = core if bare else f"all {core}"
                ent.features.add("plural")
        return self.clause(event, negated, np_overrides=overrides) if not time_quantified else (
            self.clause_with_always(event, negated, overrides))

    def clause_with_always(self, event: Struct, negated: bool, overrides: dict) -> str:
        feats = {x.name for x in event.args[-1].items if isinstance(x, Atom)}
        ats = [a for a in event.args[:-1] if isinstance(a, Struct) and a.functor == "@"]
        subject = _at_label(ats[0])
        ent = self.idx.entities.get(subject)
        plural = ent.plural if ent else True
        vg = self.verb_group(event.functor, feats, negated, plural, always=True)
        parts = [overrides.get(subject) or self.np(subject), vg]
        for a in ats[1:]:
            label = _at_label(a)
            parts.append(overrides.get(label) or self.np(label))
        parts.extend(self.location_phrases(event.functor, subject))
        return " ".join(parts)

    def implication(self, imp: Struct) -> str:
        ante, cons = imp.args
        return f"if {self.side(ante)} then {self.side(cons)}"

    def side(self, term: Term) -> str:
        if isinstance(term, Struct) and term.functor == "all":
            return self.universal(term)
        parts = _conjuncts(term)
        event = parts[-1]
        negated = False
        if isinstance(event, Struct) and event.functor == "~":
            event, negated = event.args[0], True
        for c in parts[:-1]:
            if self.idx._is_typing(c):
                self.idx._add_entity(c)
        return self.clause(event, negated)

    # --- adjunct phrases ---------------------------------------------------

    def location_phrases(self, event_functor: str, subject: str) -> list[str]:
        out = []
        for c in self.idx.locations:
            manner, ref_at = c.args
            inner = manner.items[0] if isinstance(manner, Items) and manner.items else None
            if isinstance(inner, Struct) and inner.functor != event_functor:
                continue
            prep = ROLE_PREPS.get(c.functor, c.functor.removeprefix("location_"))
            out.append(f"{prep} {self.np(_at_label(ref_at))}")
        return list(dict.fromkeys(out))

    def temporal_phrases(self, t: Optional[str], anchors: bool = True) -> list[str]:
        if t is None:
            return []
        during, anchor_parts = [], []
        for c in self.idx.constraints:
            if not (isinstance(c.args[0], Var) and c.args[0].name == t):
                continue
            iv = chronos.interval_from_term(c.args[1])
            if c.functor == "during":
                during.append(self.render_interval(iv))
            elif anchors:
                word = "before" if c.functor == "before" else "after"
                anchor_parts.append(
                    f"{word} {chronos.format_date_phrase(iv.start, self.offset)}")
        return during + anchor_parts

    def render_interval(self, iv: Interval) -> str:
        start_local = chronos.utc_denormalize(iv.start, self.offset)
        end_local = chronos.utc_denormalize(iv.end, self.offset)
        same_day = (start_local.year, start_local.month, start_local.day) == (
            end_local.year, end_local.month, end_local.day)
        if same_day and (start_local.hour, start_local.minute, start_local.second) == (0, 0, 0) \
                and (end_local.hour, end_local.minute, end_local.second) == (23, 59, 59):
            date = _dt.date(start_local.year, start_local.month, start_local.day)
            return f"on {chronos.WEEKDAYS[date.weekday()].capitalize()}"
        if start_local.day == 1 and end_local.hour == 23 and end_local.minute == 59 \
                and start_local.month == end_local.month and start_local.year == end_local.year:
            return f"in {chronos.MONTHS[start_local.month - 1].capitalize()}"
        if same_day:
            return (f"from {start_local.hour}:{start_local.minute:02d} "
                    f"to {end_local.hour}:{end_local.minute:02d}")
        return (f"from {chronos.format_date_phrase(iv.start, self.offset)} "
                f"to {chronos.format_date_phrase(iv.end, self.offset)}")


def _conjuncts(t: Term) -> list[Term]:
    if isinstance(t, Struct) and t.functor == "&":
        out = []
        for a in t.args:
            out.extend(_conjuncts(a))
        return out
    return [t]


def _number_word(n) -> str:
    if isinstance(n, str):
        return n
    words = {1: "one", 2: "two", 3: "three", 4: "four", 5: "five", 6: "six",
             7: "seven", 8: "eight", 9: "nine", 10: "ten"}
    return words.get(n, str(n))


def _mult_word(n: int) -> str:
    return {1: "once", 2: "twice", 3: "thrice"}.get(n, f"{n} times")


# ---------------------------------------------------------------------------
# round-trip validation


def validate_roundtrip(
    form: Form,
    lex: Lexicon,
    utterance: Interval,
    offset_minutes: int = 0,
    aliases=None,
    acronyms=None,
) -> bool:
    """generate, re-parse with the same grammar, re-translate, and check
    alpha-equality against the original (any licensed reading counts)."""
    from .parser import Parser
    from .deep import to_graph
    from .surface import preprocess, segment, tokenize
    from .terms import SymbolAllocator, alpha_equal
    from .translate import translate

    aliases = aliases or []
    acronyms = acronyms or {}
    try:
        text = generate(form, lex, offset_minutes, aliases)
    except GenerationError:
        return False
    stream = preprocess(segment(tokenize(text))[0], aliases, acronyms)
    trees = Parser(lex).parse(stream)
    for tree in trees:
        try:
            tr = translate(to_graph(tree), None, utterance,
                           alloc=SymbolAllocator(), offset_minutes=offset_minutes)
        except Exception:
            continue
        if alpha_equal(tr.form, form):
            return True
    return False


# ---------------------------------------------------------------------------
# situation reports (template rendering; separate from grammar-backed
# generation)


def render_report(report, lex: Lexicon, offset_minutes: int = 0, aliases=None) -> list[str]:
    if report.diagnostic:
        return [report.diagnostic]
    out = []
    aliases = aliases or []
    alias_by_atom = {}
    for a in aliases:
        alias_by_atom.setdefault(a.atom, " ".join(a.surface_sequence))
    rid = report.track_id
    for form in report.forms:
        klass = None
        pos = None
        when = None
        speed = direction = allegiance = nationality = None
        for c in form.clauses:
            if isinstance(c, Struct) and c.functor == "position":
                pos = c.args[1]
            elif isinstance(c, Struct) and c.functor == "during":
                iv = chronos.interval_from_term(c.args[1])
                when = chronos.format_date_phrase(iv.start, offset_minutes)
            elif isinstance(c, Struct) and c.functor == "speed_knots":
                speed = c.args[1].value
            elif isinstance(c, Struct) and c.functor == "direction_deg":
                direction = c.args[1].value
            elif isinstance(c, Struct) and c.functor == "allegiance":
                allegiance = c.args[1].name
            elif isinstance(c, Struct) and c.functor == "nationality":
                nationality = c.args[1].name
            elif isinstance(c, Struct) and len(c.args) == 2 and isinstance(c.args[1], Items) \
                    and any(isinstance(x, Atom) and x.name == "track" for x in c.args[1].items):
                klass = c.functor
        if klass:
            name = alias_by_atom.get(klass, klass.replace("_", " "))
            article = "an" if name[:1] in "aeiou" else "a"
            out.append(f"{rid} is {article} {name}.")
        if pos is not None and when is not None:
            lat, lon = pos.args[0].value, pos.args[1].value
            out.append(f"{rid} was at latitude {lat} longitude {lon} at {when}.")
        if speed is not None and direction is not None:
            out.append(f"Its speed was {speed} knots and its direction was {direction} degrees.")
        if allegiance and nationality:
            out.append(f"Its allegiance is {allegiance} and its nationality is {nationality}.")
        if klass is None and pos is None and form.clauses:
            try:
                out.append(generate(form, lex, offset_minutes, aliases))
            except GenerationError:
                pass
    return out
