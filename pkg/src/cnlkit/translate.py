"""Deep graphs to logical forms: skolemization, ternary entity occurrences,
thematic-role predicates, quantification, negation, conditionals, equality,
numerals, and the tells/perceive envelope.

Conventions (documented here because printed sources elide them):

* one time symbol per sentence; every entity occurrence in the sentence
  shares it (conditionals share one across both halves);
* entity skolems and their space symbols are allocated pairwise (skcN
  with s_N);
* event clauses use the verb's third-singular stem as functor, with the
  core argument occurrences first (subject, object, indirect object) and
  a feature list last;
* a locational adjunct becomes ``location_<prep>([manner], reference)``
  where manner is the event (or head-noun, for NP attachment) term over
  its core occurrences, without the feature list;
* past tense adds ``before(t, utterance)`` unless an explicit before/after
  date adjunct already pins the time; habitual present adds nothing;
* universally quantified clauses put the typing predicates of all core
  arguments into the restrictor conjunction; "always" moves the time
  symbol into the quantifier's variable list;
* numeral-counted entities get ``card(label, n)`` clauses, and repetition
  adverbs put ``times(n)`` into the event feature list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import chronos
from .chronos import Interval, TimeRef
from .deep import DeepGraph, GraphNode
from .lexicon import is_animate, verb_third_singular
from .terms import (
    Atom,
    Form,
    Items,
    Num,
    Struct,
    SymbolAllocator,
    Term,
    Var,
    at_term,
    conj,
    implies,
    neg,
    all_of,
)


class TranslationError(ValueError):
    pass


PREP_ROLES = {
    "in": "location_in", "on": "location_on", "at": "location_at",
    "near": "location_near", "under": "location_under", "over": "location_over",
    "behind": "location_behind", "beside": "location_beside",
    "between": "location_between", "within": "location_within",
    "above": "location_above", "below": "location_below",
    "across": "location_across", "along": "location_along",
    "around": "location_around", "from": "source", "to": "goal",
    "with": "accompaniment", "by": "agent_marker", "into": "goal",
    "onto": "goal", "through": "path", "towards": "goal",
}


@dataclass
class EntityRef:
    node_id: int
    skolem: Var           # skcN in assertions, qN in queries
    space: Var
    functor: str
    features: Items
    quantified: bool = False
    taxon: Optional[str] = None
    gender: Optional[str] = None
    number: Optional[str] = None
    role: Optional[str] = None


@dataclass
class Translation:
    form: Form
    entities: dict[int, EntityRef] = field(default_factory=dict)
    event_time: Optional[Var] = None
    event_lemma: Optional[str] = None
    queried_var: Optional[Var] = None
    queried_kind: Optional[str] = None
    act: str = "assert"
    animate_vars: tuple[Var, ...] = ()  # query vars that must bind animates


def translate(
    g: DeepGraph,
    ctx=None,
    utterance: Optional[Interval] = None,
    *,
    alloc: Optional[SymbolAllocator] = None,
    offset_minutes: int = 0,
    mode: str = "assert",
) -> Translation:
    """Translate an unambiguous deep graph.  Anaphors must already be
    bound (the resolver writes skolems onto graph nodes)."""
    for n in g.nodes:
        if n.kind == "entity" and n.get("pron_subtype") in ("personal", "reflexive", "reciprocal"):
            if n.get("skolem") is None and n.get("bind_to_node") is None:
                raise TranslationError(f"unresolved anaphor {n.label!r} reached translation")
    if utterance is None:
        raise TranslationError("utterance interval required")
    state = _State(g, alloc or SymbolAllocator(), utterance, offset_minutes,
                   query_mode=mode == "query")
    root = g.node(g.root)
    if root.kind == "connective":
        form = _translate_conditional(state, root)
    elif root.kind == "directive":
        form = Form((Struct("directive", (
            Atom("situation_report"), Atom(root.get("track_class")),
            Atom(root.get("track_id")))),))
    elif root.kind == "identity":
        form = _translate_identity(state, root)
    elif root.get("valence") == "report":
        form = _translate_report(state, root)
    else:
        form = _translate_clause_form(state, root)
    return Translation(
        form=form,
        entities=state.entities,
        event_time=state.time,
        event_lemma=root.get("valence") != "report" and root.kind == "predicate" and root.label or None,
        queried_var=state.queried_var,
        queried_kind=root.get("queried"),
        act="query" if state.query_mode else "assert",
        animate_vars=tuple(state.animate_vars),
    )


class _State:
    def __init__(self, g: DeepGraph, alloc: SymbolAllocator, utterance: Interval,
                 offset_minutes: int, query_mode: bool):
        self.g = g
        self.alloc = alloc
        self.utterance = utterance
        self.offset = offset_minutes
        self.query_mode = query_mode
        self.entities: dict[int, EntityRef] = {}
        self.time: Optional[Var] = None
        self.queried_var: Optional[Var] = None
        self.animate_vars: list[Var] = []

    def sentence_time(self) -> Var:
        if self.time is None:
            self.time = self.alloc.fresh_query() if self.query_mode else self.alloc.fresh_time()
        return self.time

    def entity(self, node: GraphNode, role: Optional[str] = None,
               prep: Optional[str] = None) -> EntityRef:
        if node.id in self.entities:
            return self.entities[node.id]
        bound_skc, bound_space = node.get("skolem"), node.get("space")
        bind_to = node.get("bind_to_node")
        if bind_to is not None:
            # clause-internal binding (reflexives, reciprocals)
            target = self.entities.get(bind_to) or self.entity(self.g.node(bind_to))
            skc, space = target.skolem, target.space
        elif bound_skc is not None:
            skc, space = Var(bound_skc), Var(bound_space)
        elif self.query_mode:
            skc, space = self.alloc.fresh_query(), self.alloc.fresh_query()
        else:
            skc, space = self.alloc.entity()
        functor = node.get("functor") or node.label
        if node.kind == "wh" and node.get("head"):
            functor = node.get("head")
        ref = EntityRef(
            node_id=node.id, skolem=skc, space=space, functor=functor,
            features=self._entity_features(node, prep),
            quantified=node.get("quant") in ("universal", "bare_plural") and not self.query_mode,
            taxon=node.get("taxon"), gender=node.get("gender"),
            number=node.get("number"), role=role,
        )
        if self.query_mode and skc.family == "q" and is_animate(node.get("taxon")):
            if node.kind == "wh" or node.get("pron_subtype") == "indefinite":
                self.animate_vars.append(skc)
        self.entities[node.id] = ref
        return ref

    def _entity_features(self, node: GraphNode, prep: Optional[str]) -> Items:
        feats: list[Term] = []
        if is_animate(node.get("taxon")):
            feats.append(Atom("animate"))
        if node.get("gender") in ("male", "female"):
            feats.append(Atom(node.get("gender")))
        definiteness = node.get("definiteness")
        if definiteness in ("definite", "demonstrative", "genitive"):
            feats.append(Atom("definite"))
        elif definiteness == "existential":
            feats.append(Atom("existential"))
        elif definiteness == "indefinite":
            feats.append(Atom("indefinite"))
        elif definiteness == "universal" or node.get("quant") in ("universal", "bare_plural"):
            feats.append(Atom("indefinite"))
        if node.get("number"):
            feats.append(Atom(node.get("number")))
        feats.append(Atom("proper_noun" if node.get("proper") else (
            "pronoun" if node.get("pron_subtype") else "common_noun")))
        if prep:
            feats.append(Struct("prep", (Atom(prep),)))
        return Items(tuple(feats))

    def at(self, ref: EntityRef, t: Optional[Var] = None) -> Struct:
        return at_term(ref.skolem, t if t is not None else self.sentence_time(), ref.space)


def _typing_clause(state: _State, ref: EntityRef) -> Struct:
    return Struct(ref.functor, (state.at(ref), ref.features))


def _unary_clauses(state: _State, ref: EntityRef, node: GraphNode) -> list[Struct]:
    """Lexical-semantic unaries: animacy plus gender when the noun is
    lexically gendered; adjective premodifiers become unary predicates."""
    out: list[Struct] = []
    if node.get("proper") or node.get("pron_subtype"):
        gendered = False
    else:
        gendered = ref.gender in ("male", "female")
    if gendered:
        out.append(Struct("animate", (state.at(ref),)))
        out.append(Struct(ref.gender, (state.at(ref),)))
    for adjective in node.get("adjectives") or ():
        out.append(Struct(adjective, (state.at(ref),)))
    return out


def _event_features(state: _State, pred: GraphNode) -> Items:
    feats: list[Term] = []
    tense = pred.get("tense")
    if tense == "past":
        feats.append(Atom("past"))
    elif tense == "future":
        feats.append(Atom("future"))
    elif pred.get("habitual"):
        feats.append(Atom("general_habitual"))
    else:
        feats.append(Atom("present"))
    if pred.get("mult"):
        feats.append(Struct("times", (Num(pred.get("mult")),)))
    feats.append(Atom("main_verb"))
    return Items(tuple(feats))


def _event_functor(lemma: str) -> str:
    return verb_third_singular(lemma)


def _core_args(state: _State, pred_id: int) -> list[tuple[str, GraphNode]]:
    g = state.g
    out = []
    for label in ("subject", "object", "indirect_object"):
        for e in g.out_edges(pred_id, label):
            out.append((label, g.node(e.dst)))
    return out


def _event_clause(state: _State, pred: GraphNode, refs: list[EntityRef],
                  with_features: bool = True) -> Struct:
    args: list[Term] = [state.at(r) for r in refs]
    if with_features:
        args.append(_event_features(state, pred))
    return Struct(_event_functor(pred.label), tuple(args))


def _tense_constraint(state: _State, pred: GraphNode, explicit: bool) -> list[Struct]:
    """before/after(t, utterance) from tense, unless an explicit date
    adjunct already pinned the time or the time symbol is quantified."""
    if explicit or pred.get("tq"):
        return []
    t = state.sentence_time()
    tense = pred.get("tense")
    if tense == "past":
        return [Struct("before", (t, state.utterance.term()))]
    if tense == "future":
        return [Struct("after", (t, state.utterance.term()))]
    return []


def _temporal_clauses(state: _State, pred: GraphNode) -> tuple[list[Struct], bool]:
    """Clauses for explicit temporal adjuncts; reports whether an explicit
    before/after constraint replaced the tense anchor."""
    g = state.g
    out: list[Struct] = []
    explicit_anchor = False
    t = None
    for e in g.out_edges(pred.id, "adjunct_time"):
        tnode = g.node(e.dst)
        tokens = list(tnode.get("tokens") or ())
        prep = tnode.get("prep")
        if prep == "in" and len(tokens) == 2:
            tokens = ["in"] + tokens
        tense = pred.get("tense") or "past"
        ref = chronos.parse_time_expression(
            tokens, state.utterance.start, state.offset, tense
        )
        iv = ref.as_interval()
        t = state.sentence_time()
        if tnode.get("ptype") == "constraint":
            functor = {"before": "before", "after": "after", "until": "before"}[prep]
            out.append(Struct(functor, (t, iv.term())))
            explicit_anchor = True
        else:
            out.append(Struct("during", (t, iv.term())))
    return out, explicit_anchor


def _location_clauses(state: _State, host: GraphNode, manner: Term):
    g = state.g
    out, new_refs = [], []
    for e in g.out_edges(host.id):
        if not e.label.startswith("adjunct_") or e.label == "adjunct_time":
            continue
        prep = e.label[len("adjunct_"):]
        ref = state.entity(g.node(e.dst), role="oblique", prep=prep)
        functor = PREP_ROLES.get(prep, f"location_{prep}")
        out.append(Struct(functor, (manner, state.at(ref))))
        new_refs.append((g.node(e.dst), ref))
    return out, new_refs


def _postmod_clauses(state: _State, node: GraphNode, ref: EntityRef):
    g = state.g
    out, new_refs = [], []
    for e in g.out_edges(node.id):
        if not e.label.startswith("postmod_"):
            continue
        prep = e.label[len("postmod_"):]
        other = state.entity(g.node(e.dst), role="oblique", prep=prep)
        functor = PREP_ROLES.get(prep, f"location_{prep}")
        manner = Struct(ref.functor, (state.at(ref),))
        out.append(Struct(functor, (Items((manner,)), state.at(other))))
        new_refs.append((g.node(e.dst), other))
    return out, new_refs


def _possessor_clauses(state: _State, node: GraphNode, ref: EntityRef):
    g = state.g
    out, new_refs = [], []
    for e in g.out_edges(node.id, "possessor"):
        owner = state.entity(g.node(e.dst), role="possessor")
        out.append(Struct("possesses", (state.at(owner), state.at(ref))))
        new_refs.append((g.node(e.dst), owner))
    return out, new_refs


def _expand_conjunction(state: _State, node: GraphNode) -> list[GraphNode]:
    if not node.get("conj"):
        return [node]
    g = state.g
    left = g.node(g.out_edges(node.id, "conj_left")[0].dst)
    right = g.node(g.out_edges(node.id, "conj_right")[0].dst)
    return _expand_conjunction(state, left) + _expand_conjunction(state, right)


def _translate_clause_form(state: _State, pred: GraphNode) -> Form:
    clauses, _ = _translate_clause(state, pred)
    return Form(tuple(clauses))


def _translate_clause(state: _State, pred: GraphNode) -> tuple[list[Term], Optional[Term]]:
    """All clauses for one event clause; returns (clauses, main term)."""
    g = state.g
    arg_nodes: list[tuple[str, GraphNode]] = []
    for role, n in _core_args(state, pred.id):
        for member in _expand_conjunction(state, n):
            arg_nodes.append((role, member))
    refs = [state.entity(n, role=role) for role, n in arg_nodes]

    quantified = [r for r in refs if r.quantified]
    temporal, explicit_anchor = _temporal_clauses(state, pred)
    for r, (_, n) in zip(refs, arg_nodes):
        if n.kind == "wh":
            state.queried_var = r.skolem
    if pred.get("queried") == "temporal":
        state.queried_var = state.sentence_time()

    # conjoined arguments distribute: one event clause per combination of
    # conjunct choices across the argument roles
    import itertools as _it

    by_role: dict[str, list[EntityRef]] = {}
    for r, (role, n) in zip(refs, arg_nodes):
        by_role.setdefault(role, []).append(r)
    role_lists = [by_role[role] for role in ("subject", "object", "indirect_object")
                  if role in by_role]
    combos = [list(c) for c in _it.product(*role_lists)] if role_lists else [[]]

    copula = (pred.get("valence") or "").startswith("copula")
    events: list[Term] = []
    manners: list[Term] = []
    for combo in combos:
        manner: Term = Items((_event_clause(state, pred, combo, with_features=False),))
        if state.query_mode and copula:
            # the manner of a copula query is unconstrained: "is she in"
            # must match facts asserted with any event verb
            manner = state.alloc.fresh_query()
        manners.append(manner)
        ev = _event_clause(state, pred, combo)
        if pred.get("negated"):
            ev = neg(ev)
        events.append(ev)

    location: list[Struct] = []
    oblique: list = []
    seen_oblique: set[int] = set()
    for manner in manners:
        loc, obl = _location_clauses(state, pred, manner)
        location.extend(loc)
        for n2, r2 in obl:
            if n2.id not in seen_oblique:
                seen_oblique.add(n2.id)
                oblique.append((n2, r2))
    if pred.get("queried") == "locational":
        for clause in location:
            state.queried_var = clause.args[1].args[0]
    elif state.query_mode and copula and location and isinstance(manners[0], Var):
        if any(n.kind == "wh" for _, n in arg_nodes):
            state.queried_var = manners[0]  # "What is on the sign?"

    event = events[0]

    # expand every reachable entity exactly once (postmods and possessors
    # introduce further entities)
    emitted: set[int] = set()
    side_clauses: list[Term] = []

    def emit(node: GraphNode, ref: EntityRef, typing: bool):
        if node.id in emitted:
            return
        emitted.add(node.id)
        if node.get("bind_to_node") is not None:
            return  # clause-internal coreference: the antecedent types it
        if node.kind == "wh":
            if node.get("head"):
                side_clauses.append(_typing_clause(state, ref))
            return
        if state.query_mode and node.get("pron_subtype") == "indefinite":
            return  # indefinite pronouns query as bare existential variables
        side_clauses.extend(_unary_clauses(state, ref, node))
        if typing:
            side_clauses.append(_typing_clause(state, ref))
        pm, pm_refs = _postmod_clauses(state, node, ref)
        side_clauses.extend(pm)
        ps, ps_refs = _possessor_clauses(state, node, ref)
        side_clauses.extend(ps)
        count = node.get("count")
        if isinstance(count, int):
            side_clauses.append(Struct("card", (ref.skolem, Num(count))))
        elif isinstance(count, str):
            side_clauses.append(Struct("card", (ref.skolem, Atom(count))))
        for n2, r2 in pm_refs + ps_refs:
            emit(n2, r2, typing=True)

    if quantified:
        # typing predicates of every argument join the restrictor
        restrictor_parts = [_typing_clause(state, r) for r in refs]
        restrictor_parts += [_typing_clause(state, r) for _, r in oblique]
        bound = [r.skolem for r in quantified]
        if pred.get("tq"):
            bound.append(state.sentence_time())
        body = conj(events + location) if location or len(events) > 1 else event
        all_clause = all_of(bound, implies(conj(restrictor_parts), body))
        for r, (_, n) in zip(refs, arg_nodes):
            if not r.quantified:
                emit(n, r, typing=False)
        clauses = side_clauses + temporal
        clauses += _tense_constraint(state, pred, explicit_anchor)
        clauses.append(all_clause)
        return clauses, all_clause

    for r, (_, n) in zip(refs, arg_nodes):
        emit(n, r, typing=True)
    for n, r in oblique:
        emit(n, r, typing=True)
    clauses = side_clauses + temporal
    clauses += _tense_constraint(state, pred, explicit_anchor)
    clauses += location
    if not (state.query_mode and copula):
        # the copula event carries no content a stored fact could match
        clauses.extend(events)
    return clauses, event


def _translate_identity(state: _State, ident: GraphNode) -> Form:
    g = state.g
    pred = g.node(g.out_edges(ident.id, "clause")[0].dst)
    left = g.node(g.out_edges(ident.id, "left")[0].dst)
    right = g.node(g.out_edges(ident.id, "right")[0].dst)
    lref = state.entity(left, role="subject")
    rref = state.entity(right, role="object")
    clauses: list[Term] = []
    for node, ref in ((left, lref), (right, rref)):
        if node.kind != "wh":
            clauses.extend(_unary_clauses(state, ref, node))
            clauses.append(_typing_clause(state, ref))
            pm, pm_refs = _postmod_clauses(state, node, ref)
            clauses.extend(pm)
            for n2, r2 in pm_refs:
                clauses.append(_typing_clause(state, r2))
        else:
            state.queried_var = ref.skolem
    clauses.extend(_tense_constraint(state, pred, explicit=False))
    clauses.append(Struct("identical", (state.at(lref), state.at(rref))))
    return Form(tuple(clauses))


def _translate_conditional(state: _State, root: GraphNode) -> Form:
    g = state.g
    ante_pred = g.node(g.out_edges(root.id, "antecedent")[0].dst)
    cons_pred = g.node(g.out_edges(root.id, "consequent")[0].dst)
    state.sentence_time()  # one shared time symbol across both halves
    ante_clauses, ante_main = _translate_clause(state, ante_pred)
    cons_clauses, cons_main = _translate_clause(state, cons_pred)

    def side(clauses, main):
        rest = [c for c in clauses if c is not main and not (
            isinstance(c, Struct) and c.functor in ("before", "after"))]
        return conj(rest + [main]) if rest else main

    constraint = [c for c in ante_clauses + cons_clauses
                  if isinstance(c, Struct) and c.functor in ("before", "after")][:1]
    implication = implies(side(ante_clauses, ante_main), side(cons_clauses, cons_main))
    return Form(tuple(constraint + [implication]))


def _translate_report(state: _State, pred: GraphNode) -> Form:
    g = state.g
    subj = state.entity(g.node(g.out_edges(pred.id, "subject")[0].dst), role="subject")
    clauses: list[Term] = []
    clauses.extend(_unary_clauses(state, subj, g.node(subj.node_id)))
    clauses.append(_typing_clause(state, subj))
    args: list[Term] = [state.at(subj)]
    for e in g.out_edges(pred.id, "addressee"):
        addr = state.entity(g.node(e.dst), role="addressee")
        clauses.extend(_unary_clauses(state, addr, g.node(addr.node_id)))
        clauses.append(_typing_clause(state, addr))
        args.append(state.at(addr))
    # the complement is a self-contained proposition with its own time
    sub_state = _State(g, state.alloc, state.utterance, state.offset, state.query_mode)
    sub_state.entities = state.entities  # share entity bindings across clauses
    complement_pred = g.node(g.out_edges(pred.id, "complement")[0].dst)
    sub_clauses, _ = _translate_clause(sub_state, complement_pred)
    args.append(Items(tuple(sub_clauses)))
    args.append(_event_features(state, pred))
    clauses.extend(_tense_constraint(state, pred, explicit=False))
    clauses.append(Struct(_event_functor(pred.label), tuple(args)))
    return Form(tuple(clauses))


# ---------------------------------------------------------------------------
# the tells/perceive envelope


@dataclass(frozen=True)
class Envelope:
    teller: str
    utterance: Interval
    act: str       # assert | query | direct
    payload: Form
    teller_skolem: Var = Var("skc1")
    teller_space: Var = Var("s_1")

    def term(self) -> Struct:
        teller_at = at_term(self.teller_skolem, self.utterance.term(), self.teller_space)
        tells = Struct("tells", (
            Struct("teller", (teller_at, Atom(self.teller))),
            Items(tuple(self.payload.clauses)),
        ))
        return Struct("perceive", (Atom("cnl_sensor"), tells))


def envelope(form: Form, teller: str, act: str, utterance: Interval,
             alloc: Optional[SymbolAllocator] = None) -> Envelope:
    if not teller or not teller.strip():
        raise TranslationError("teller name must be non-empty")
    name = "_".join(teller.split())
    alloc = alloc or SymbolAllocator()
    skc, space = alloc.entity()
    return Envelope(teller=name, utterance=utterance, act=act, payload=form,
                    teller_skolem=skc, teller_space=space)
