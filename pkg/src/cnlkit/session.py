"""Session orchestration: the full pipeline behind the service and CLI.

A session owns its lexicon overlay, discourse context, symbol counters,
fact store, pending interpretation sets, and an append-only interaction
log from which the whole session state can be replayed.
"""

from __future__ import annotations

import datetime as _dt
import threading
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import chronos, kb
from .chronos import Interval, Timestamp
from .context import DiscourseContext, UnresolvedAnaphorError, advance, resolve
from .deep import DeepGraph, InterpretationSet, PreferenceProfile, rank, select, to_graph
from .effector import GenerationError, generate, render_report, validate_roundtrip
from .lexicon import LayeredLexicon, Lexicon, seed_acronyms, seed_aliases, seed_lexicon
from .parser import Parser, parse_query_focus, tree_text
from .surface import InputDiagnostic, precheck, preprocess, segment, tokenize
from .terms import Form, SymbolAllocator, Struct, Var, print_form, print_term, read_form
from .translate import Envelope, Translation, envelope, translate


def utc_now() -> Timestamp:
    now = _dt.datetime.now(_dt.timezone.utc)
    return Timestamp(now.year, now.month, now.day, now.hour, now.minute, now.second)


@dataclass
class LogEntry:
    at: Timestamp
    teller: str
    command: str          # submit | choose | tracks | generate | paragraph
    payload: dict
    status: str
    detail: dict = field(default_factory=dict)


@dataclass
class PendingSentence:
    ref: str
    iset: InterpretationSet
    utterance: Interval
    mode: str
    text: str


class SessionError(ValueError):
    pass


def _diag_dict(d: InputDiagnostic) -> dict:
    return {
        "severity": d.severity,
        "span": list(d.span),
        "message": d.message,
        "suggestions": list(d.suggestions),
    }


class Session:
    def __init__(
        self,
        teller: str,
        utc_offset: str | int = 0,
        lexicon: Optional[Lexicon] = None,
        clock: Optional[Callable[[], Timestamp]] = None,
        preferences: Optional[PreferenceProfile] = None,
    ):
        if not teller or not teller.strip():
            raise SessionError("teller name must be non-empty")
        self.id = uuid.uuid4().hex[:12]
        self.teller = teller
        self.offset = (chronos.parse_offset(utc_offset)
                       if isinstance(utc_offset, str) else int(utc_offset))
        base = lexicon if lexicon is not None else seed_lexicon()
        self.lex = LayeredLexicon(base)
        self.aliases = seed_aliases(base)
        self.acronyms = seed_acronyms()
        self.parser = Parser(self.lex)
        self.clock = clock or utc_now
        self.prefs = preferences or PreferenceProfile()
        self.ctx = DiscourseContext()
        self.alloc = SymbolAllocator()
        self.store = kb.FactStore()
        self.pending: dict[str, PendingSentence] = {}
        self.log: list[LogEntry] = []
        self._ref_counter = 0
        self._last_log_at: Optional[Timestamp] = None
        # commands within one session execute strictly serialized
        self._lock = threading.RLock()

    # -- logging ---------------------------------------------------------

    def _log(self, at: Timestamp, command: str, payload: dict, status: str, detail=None):
        if self._last_log_at is not None and at < self._last_log_at:
            at = self._last_log_at  # log timestamps are monotone non-decreasing
        self._last_log_at = at
        self.log.append(LogEntry(at, self.teller, command, payload, status, detail or {}))

    def log_dicts(self) -> list[dict]:
        return [
            {
                "timestamp": e.at.serialize(),
                "teller": e.teller,
                "command": e.command,
                "payload": e.payload,
                "status": e.status,
                "detail": e.detail,
            }
            for e in self.log
        ]

    # -- the pipeline ------------------------------------------------------

    def submit(self, text: str, mode: str = "auto", at: Optional[Timestamp] = None) -> dict:
        with self._lock:
            at = at or self.clock()
            if not text.strip():
                return self.paragraph_break(at=at)
            results = []
            for stream in segment(tokenize(text)):
                results.append(self._submit_sentence(stream, mode, at))
            response = {"kind": "batch", "results": results} if len(results) > 1 else results[0]
            self._log(at, "submit", {"text": text, "mode": mode},
                      response.get("kind", "result"))
            return response

    def paragraph_break(self, at: Optional[Timestamp] = None) -> dict:
        with self._lock:
            at = at or self.clock()
            self.ctx = self.ctx.new_paragraph()
            response = {"kind": "paragraph", "status": "new discourse context"}
            self._log(at, "paragraph", {}, "paragraph")
            return response

    def _submit_sentence(self, stream, mode: str, at: Timestamp) -> dict:
        utterance = Interval.point(at)
        processed = preprocess(stream, self.aliases, self.acronyms)
        diagnostics = precheck(processed, self.lex,
                               parse_fn=lambda ts: len(self.parser.parse(ts)))
        if diagnostics:
            return {
                "kind": "diagnostics",
                "timestamp": at.serialize(),
                "diagnostics": [_diag_dict(d) for d in diagnostics],
            }
        trees = self.parser.parse(processed)
        graphs: list[DeepGraph] = []
        seen = set()
        for tree in trees:
            g = to_graph(tree)
            sig = (g.edge_set(), tuple(n.feats for n in g.nodes))
            if sig not in seen:
                seen.add(sig)
                graphs.append(g)
        resolved: list[DeepGraph] = []
        resolution_error: Optional[UnresolvedAnaphorError] = None
        for g in graphs:
            try:
                resolved.extend(resolve(g, self.ctx))
            except UnresolvedAnaphorError as e:
                resolution_error = e
        if not resolved:
            if resolution_error is not None:
                return {
                    "kind": "diagnostics",
                    "timestamp": at.serialize(),
                    "diagnostics": [{
                        "severity": "unresolved_anaphor",
                        "span": [0, 0],
                        "message": str(resolution_error),
                        "suggestions": [],
                    }],
                }
            raise SessionError("no interpretation produced")
        iset = rank(resolved, self.prefs)
        if iset.status == "awaiting_selection":
            self._ref_counter += 1
            ref = f"s{self._ref_counter}"
            text = " ".join(t.text for t in stream.tokens)
            self.pending[ref] = PendingSentence(ref, iset, utterance, mode, text)
            return {
                "kind": "interpretations",
                "timestamp": at.serialize(),
                "sentence_ref": ref,
                "candidates": [
                    {"index": i, "paraphrase": p, "digest": _graph_digest(g)}
                    for i, (g, p) in enumerate(zip(iset.candidates, iset.paraphrases))
                ],
            }
        return self._complete(iset.top, utterance, mode, at)

    def choose(self, sentence_ref: str, index: int, at: Optional[Timestamp] = None) -> dict:
        with self._lock:
            at = at or self.clock()
            pending = self.pending.get(sentence_ref)
            if pending is None:
                raise SessionError(f"no pending selection for {sentence_ref!r}")
            graph = select(pending.iset, index)
            del self.pending[sentence_ref]
            response = self._complete(graph, pending.utterance, pending.mode, at)
            self._log(at, "choose", {"sentence_ref": sentence_ref, "index": index},
                      response.get("status", "ok"))
            return response

    def _complete(self, g: DeepGraph, utterance: Interval, mode: str, at: Timestamp) -> dict:
        act = self._act_for(g, mode)
        if act == "direct":
            return self._directive(g, at)
        tr = translate(g, self.ctx, utterance, alloc=self.alloc,
                       offset_minutes=self.offset,
                       mode="query" if act == "query" else "assert")
        env = envelope(tr.form, self.teller, act, utterance, self.alloc)
        if act == "assert":
            kb.assert_form(self.store, env)
            self.ctx = advance(self.ctx, tr, g)
            return {
                "kind": "result",
                "timestamp": at.serialize(),
                "status": "ok",
                "act": "assert",
                "form": print_form(tr.form),
                "envelope": print_term(env.term()),
            }
        result = self._answer(g, tr)
        return {
            "kind": "result",
            "timestamp": at.serialize(),
            "status": "ok",
            "act": "query",
            "form": print_form(tr.form),
            "envelope": print_term(env.term()),
            **result,
        }

    def _act_for(self, g: DeepGraph, mode: str) -> str:
        if mode in ("assert", "query"):
            return mode
        if g.sentence_type == "interrogative":
            return "query"
        if g.sentence_type == "directive":
            return "direct"
        return "assert"

    def _directive(self, g: DeepGraph, at: Timestamp) -> dict:
        root = g.node(g.root)
        report = kb.situation_report(self.store, root.get("track_class"),
                                     root.get("track_id"))
        sentences = render_report(report, self.lex, self.offset, self.aliases)
        return {
            "kind": "result",
            "timestamp": at.serialize(),
            "status": "ok" if not report.diagnostic else "error",
            "act": "direct",
            "answers": sentences,
            "diagnostic": report.diagnostic,
        }

    # -- query answering ----------------------------------------------------

    def _answer(self, g: DeepGraph, tr: Translation) -> dict:
        root = g.node(g.root)
        focus_kind = tr.queried_kind or "yes_no"

        class _Focus:
            kind = focus_kind

        result = kb.answer(self.store, tr.form, _Focus, queried_var=tr.queried_var)
        bindings = [b for b in result.bindings if self._animacy_ok(b, tr.animate_vars)]
        if result.kind == "boolean":
            yes = bool(bindings)
            return {"answers": ["Yes." if yes else "No."], "boolean": yes}
        sentences: list[str] = []
        short = root.kind == "identity" or (
            root.kind == "predicate" and (root.get("valence") or "").startswith("copula"))
        for binding in bindings:
            sentence = self._render_binding(binding, short)
            if sentence and sentence not in sentences:
                sentences.append(sentence)
        if not sentences:
            sentences = ["No answer."]
        return {"answers": sentences}

    def _animacy_ok(self, binding: kb.AnswerBinding, animate_vars) -> bool:
        for var in animate_vars:
            value = kb.walk(var, binding.subst)
            if isinstance(value, Var) and value.family != "q":
                if not self._binding_animate(value):
                    return False
        return True

    def _binding_animate(self, skolem: Var) -> bool:
        for c in self.store.clauses():
            if kb.is_typing_clause(c) and c.args[0].args[0] == skolem:
                feats = {x.name for x in c.args[1].items if hasattr(x, "name")}
                if "animate" in feats:
                    return True
        return False

    def _render_binding(self, binding: kb.AnswerBinding, short: bool) -> Optional[str]:
        from .terms import Atom, Items

        pool = self.store.clauses() + kb.derived_clauses(self.store)
        clauses = list(binding.matched) + list(binding.constraints)
        if isinstance(binding.value, Struct):  # predicate query: event clause
            clauses = [binding.value] + list(binding.constraints)
        elif isinstance(binding.value, Items):  # bound manner list
            return self._render_manner(binding.value, pool)
        labels = set()
        times = set()

        def collect(t):
            if isinstance(t, Struct):
                if t.functor == "@" and t.args:
                    a, tt = t.args[0], t.args[1]
                    if isinstance(a, Var):
                        labels.add(a.name)
                    if isinstance(tt, Var):
                        times.add(tt.name)
                for a in t.args:
                    collect(a)
            elif isinstance(t, Items):
                for x in t.items:
                    collect(x)

        for c in clauses:
            collect(c)
        labels |= times
        for c in pool:
            if kb.is_typing_clause(c) and isinstance(c.args[0].args[0], Var) \
                    and c.args[0].args[0].name in labels:
                clauses.append(c)
            elif isinstance(c, Struct) and len(c.args) == 1 \
                    and isinstance(c.args[0], Struct) and c.args[0].functor == "@" \
                    and isinstance(c.args[0].args[0], Var) \
                    and c.args[0].args[0].name in labels:
                clauses.append(c)
            elif isinstance(c, Struct) and c.functor in kb.CONSTRAINT_FUNCTORS:
                if any(isinstance(c.args[0], Var) and c.args[0].name == l for l in labels):
                    clauses.append(c)
        seen, dedup = set(), []
        for c in clauses:
            key = print_term(c)
            if key not in seen:
                seen.add(key)
                dedup.append(c)
        if short and isinstance(binding.value, Var):
            np = self._np_of(binding.value.name, dedup)
            if np is not None:
                return np
        try:
            return generate(Form(tuple(dedup)), self.lex, self.offset, self.aliases)
        except GenerationError:
            return None

    def _np_of(self, label: str, clauses: list) -> Optional[str]:
        from .effector import _FormIndex, _Realizer

        if not any(kb.is_typing_clause(c) and c.args[0].args[0] == Var(label)
                   for c in clauses):
            return None
        idx = _FormIndex(Form(tuple(clauses)), self.lex)
        idx.finalize()
        r = _Realizer(idx, self.lex, self.offset, self.aliases)
        np = r.np(label)
        return np[:1].upper() + np[1:] + "."

    def _render_manner(self, manner, pool) -> Optional[str]:
        inner = manner.items[0] if getattr(manner, "items", None) else None
        if not isinstance(inner, Struct) or not inner.args:
            return None
        for c in pool:
            base = c.args[0] if isinstance(c, Struct) and c.functor == "~" else c
            if kb.is_event_clause(c) and isinstance(base, Struct) \
                    and base.functor == inner.functor and base.args[:-1] == inner.args:
                fake = kb.AnswerBinding({}, None, [c], [])
                return self._render_binding(fake, short=False)
        at = next((a for a in inner.args
                   if isinstance(a, Struct) and a.functor == "@"), None)
        if at is None or not isinstance(at.args[0], Var):
            return None
        label = at.args[0].name
        relevant = [c for c in pool if kb.is_typing_clause(c)
                    and c.args[0].args[0].name == label]
        relevant += [c for c in pool if isinstance(c, Struct) and len(c.args) == 1
                     and isinstance(c.args[0], Struct) and c.args[0].functor == "@"
                     and isinstance(c.args[0].args[0], Var)
                     and c.args[0].args[0].name == label]
        return self._np_of(label, relevant)

    # -- tracks and raw generation -------------------------------------------

    def ingest_tracks(self, lines: list[str], at: Optional[Timestamp] = None) -> dict:
        with self._lock:
            at = at or self.clock()
            outcome = kb.ingest_tracks(self.store, lines)
            for track_id in self.store.track_skolems:
                self.lex.add_proper_noun(track_id, taxon="vehicle")
            response = {
                "kind": "tracks",
                "timestamp": at.serialize(),
                "accepted": outcome.accepted,
                "rejected": [{"line": i, "reason": r} for i, r in outcome.rejected],
            }
            self._log(at, "tracks", {"lines": list(lines)}, "ok")
            return response

    def generate_sentence(self, term_text: str, at: Optional[Timestamp] = None) -> dict:
        at = at or self.clock()
        try:
            form = read_form(term_text)
            sentence = generate(form, self.lex, self.offset, self.aliases)
            response = {"kind": "generated", "timestamp": at.serialize(),
                        "sentence": sentence, "status": "ok"}
        except Exception as e:
            response = {"kind": "generated", "timestamp": at.serialize(),
                        "sentence": None, "status": "error", "error": str(e)}
        self._log(at, "generate", {"term": term_text}, response["status"])
        return response

    def precheck_text(self, text: str) -> dict:
        streams = segment(tokenize(text))
        diagnostics = []
        for stream in streams:
            processed = preprocess(stream, self.aliases, self.acronyms)
            diagnostics.extend(precheck(processed, self.lex))
        return {"kind": "precheck",
                "diagnostics": [_diag_dict(d) for d in diagnostics]}


def _graph_digest(g: DeepGraph) -> str:
    import hashlib

    payload = repr(sorted(g.edge_set())) + repr([n.feats for n in g.nodes])
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def replay(log_entries: list[dict], teller: str, utc_offset: str | int = 0,
           lexicon: Optional[Lexicon] = None) -> Session:
    """Rebuild a session by replaying its interaction log; timestamps come
    from the log, making the reconstruction deterministic."""
    from .chronos import timestamp_from_term
    from .terms import read_term

    session = Session(teller, utc_offset, lexicon=lexicon)
    for entry in log_entries:
        at = timestamp_from_term(read_term(entry["timestamp"]))
        command = entry["command"]
        payload = entry["payload"]
        if command == "submit":
            session.submit(payload["text"], payload.get("mode", "auto"), at=at)
        elif command == "choose":
            session.choose(payload["sentence_ref"], payload["index"], at=at)
        elif command == "paragraph":
            session.paragraph_break(at=at)
        elif command == "tracks":
            session.ingest_tracks(payload.get("lines", []), at=at)
        elif command == "generate":
            session.generate_sentence(payload["term"], at=at)
    return session
