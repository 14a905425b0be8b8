"""Deep structures: parse trees become graphs with resolved grammatical
functions; ambiguous readings are enumerated, ranked against a preference
profile, and held for user selection when tied."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

from .parser import Leaf, Node, QueryFocus, find_nodes, parse_query_focus


class ContractViolation(ValueError):
    pass


@dataclass(frozen=True)
class GraphNode:
    id: int
    kind: str        # entity | predicate | connective | identity | directive | time | wh
    label: str
    feats: tuple = ()

    def get(self, key, default=None):
        for k, v in self.feats:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class GraphEdge:
    src: int
    label: str
    dst: int


@dataclass(frozen=True)
class DeepGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    root: int
    sentence_type: str
    source_text: str = ""
    ambiguity: tuple = ()   # ((feature, value, site), ...)

    def node(self, nid: int) -> GraphNode:
        return self.nodes[nid]

    def out_edges(self, nid: int, label: Optional[str] = None) -> list[GraphEdge]:
        return [e for e in self.edges if e.src == nid and (label is None or e.label == label)]

    def in_edges(self, nid: int, label: Optional[str] = None) -> list[GraphEdge]:
        return [e for e in self.edges if e.dst == nid and (label is None or e.label == label)]

    def edge_set(self) -> frozenset:
        return frozenset((e.src, e.label, e.dst) for e in self.edges)

    def entities(self) -> list[GraphNode]:
        return [n for n in self.nodes if n.kind == "entity"]


class _Builder:
    def __init__(self, source_text: str):
        self.nodes: list[GraphNode] = []
        self.edges: list[GraphEdge] = []
        self.ambiguity: list[tuple] = []
        self.source_text = source_text

    def add_node(self, kind: str, label: str, **feats) -> int:
        nid = len(self.nodes)
        clean = tuple(sorted((k, v) for k, v in feats.items() if v is not None))
        self.nodes.append(GraphNode(nid, kind, label, clean))
        return nid

    def add_edge(self, src: int, label: str, dst: int):
        self.edges.append(GraphEdge(src, label, dst))

    def finish(self, root: int, sentence_type: str) -> DeepGraph:
        return DeepGraph(tuple(self.nodes), tuple(self.edges), root,
                         sentence_type, self.source_text, tuple(self.ambiguity))


def _vp_parts(vp: Node):
    """Unwrap the VP spine: innermost verb group, complements, adjuncts."""
    adjuncts: list[Node] = []
    mult = None
    while vp.children and isinstance(vp.children[0], Node) and vp.children[0].label == "VP":
        tail = vp.children[1]
        if isinstance(tail, Leaf):  # multiplicative cardinal
            mult = vp.get("mult")
        else:
            adjuncts.append(tail)
        vp = vp.children[0]
    vg = vp.children[0]
    complements = list(vp.children[1:])
    adjuncts.reverse()
    return vg, complements, adjuncts, mult if mult is not None else vp.get("mult")


def to_graph(tree: Node) -> DeepGraph:
    """Deterministic tree-to-graph transmutation.  Grammatical functions
    become edge labels; features are copied onto nodes."""
    if tree.label != "S":
        raise ContractViolation("to_graph expects a full sentence tree")
    b = _Builder(" ".join(l.text for l in _tree_leaves(tree)))
    stype = tree.get("sentence_type")
    core = tree.children[0]
    if stype == "declarative" and core.label == "COND":
        ante = _clause(b, core.children[1])
        cons = _clause(b, core.children[3])
        root = b.add_node("connective", "implication")
        b.add_edge(root, "antecedent", ante)
        b.add_edge(root, "consequent", cons)
    elif stype == "indirect":
        root = _indirect(b, core)
    elif stype == "directive":
        root = b.add_node("directive", "situation_report",
                          track_class=core.get("track_class"),
                          track_id=core.get("track_id"))
    elif stype == "interrogative":
        root = _interrogative(b, core)
    else:
        root = _clause(b, core)
    return b.finish(root, stype)


def _tree_leaves(t):
    if isinstance(t, Leaf):
        return [t]
    out = []
    for c in t.children:
        out.extend(_tree_leaves(c))
    return out


def _clause(b: _Builder, decl: Node) -> int:
    np_node, vp = decl.children[0], decl.children[1]
    vg, complements, adjuncts, mult = _vp_parts(vp)
    valence = vp.get("valence")
    pred = b.add_node("predicate", vg.get("lemma"),
                      tense=vg.get("tense"), habitual=vg.get("habitual"),
                      negated=vg.get("negated"), aktionsart=vg.get("aktionsart"),
                      valence=valence, mult=mult, tq=vg.get("tq"))
    subj = _entity(b, np_node)
    b.add_edge(pred, "subject", subj)
    if valence == "copula_np":
        other = _entity(b, complements[0])
        ident = b.add_node("identity", "identical")
        b.add_edge(ident, "left", subj)
        b.add_edge(ident, "right", other)
        b.add_edge(ident, "clause", pred)
        _attach_adjuncts(b, pred, subj, adjuncts)
        return ident
    if valence == "copula_pp":
        _attach_pp(b, pred, complements[0], site="vp")
    elif valence == "copula_adj":
        b.add_edge(pred, "predicative", b.add_node(
            "entity", complements[0].get("adjective"), kind_hint="adjective"))
    elif valence == "transitive":
        b.add_edge(pred, "object", _entity(b, complements[0]))
    elif valence == "ditransitive":
        b.add_edge(pred, "indirect_object", _entity(b, complements[0]))
        b.add_edge(pred, "object", _entity(b, complements[1]))
    elif valence == "ditransitive_to":
        b.add_edge(pred, "object", _entity(b, complements[0]))
        b.add_edge(pred, "indirect_object", _entity(b, complements[1].children[1]))
    _attach_adjuncts(b, pred, subj, adjuncts)
    return pred


def _attach_adjuncts(b: _Builder, pred: int, subj: int, adjuncts: Iterable[Node]):
    for adj in adjuncts:
        if adj.label == "PP":
            _attach_pp(b, pred, adj, site="vp")
        elif adj.label == "TEMP-PP":
            t = b.add_node("time", "phrase", prep=adj.get("prep"),
                           ptype=adj.get("ptype"), tokens=adj.get("time_tokens"))
            b.add_edge(pred, "adjunct_time", t)


def _attach_pp(b: _Builder, host: int, pp: Node, site: str):
    prep = pp.get("prep")
    ref = _entity(b, pp.children[1])
    b.add_edge(host, f"adjunct_{prep}" if site == "vp" else f"postmod_{prep}", ref)
    ref_head = b.nodes[ref].label
    b.ambiguity.append(("pp_attachment", site, (prep, ref_head)))


def _entity(b: _Builder, np_node: Node) -> int:
    """NP / NPC / ENP tree to an entity node (recursing into conjunction,
    genitives and postmodifiers)."""
    n = np_node
    while n.label in ("NP",):
        n = n.children[0]
    if n.label == "NPC":
        if len(n.children) == 3:
            left = _entity(b, n.children[0])
            right = _entity(b, n.children[2])
            conj = b.add_node("entity", "conjunction", number="plural", conj=True)
            b.add_edge(conj, "conj_left", left)
            b.add_edge(conj, "conj_right", right)
            shape = "left_nested" if b.nodes[left].get("conj") else (
                "right_nested" if b.nodes[right].get("conj") else "flat")
            if shape != "flat":
                members = tuple(_conj_members(b, conj))
                b.ambiguity.append(("conj_scope", shape, members))
            return conj
        return _entity(b, n.children[0])
    if n.label != "ENP":
        raise ContractViolation(f"unexpected NP structure {n.label}")
    ent = b.add_node("entity", n.get("head"),
                     number=n.get("number"), gender=n.get("gender"),
                     taxon=n.get("taxon"), definiteness=n.get("definiteness"),
                     quant=n.get("quant"), count=n.get("count"),
                     adjectives=n.get("adjectives") or (),
                     pron_subtype=n.get("pron_subtype"),
                     proper=n.get("definiteness") == "proper" or None,
                     genitive=n.get("genitive"))
    for child in n.children:
        if isinstance(child, Node) and child.label == "GEN-DET":
            possessor = _entity(b, child.children[0])
            b.add_edge(ent, "possessor", possessor)
        if isinstance(child, Node) and child.label == "NP2":
            for sub in child.children:
                if isinstance(sub, Node) and sub.label == "POSTMOD":
                    _attach_pp(b, ent, sub.children[0], site="np")
    return ent


def _conj_members(b: _Builder, nid: int) -> list[str]:
    node = b.nodes[nid]
    if not node.get("conj"):
        return [node.label]
    out = []
    for e in b.edges:
        if e.src == nid and e.label in ("conj_left", "conj_right"):
            out.extend(_conj_members(b, e.dst))
    return out


def _indirect(b: _Builder, core: Node) -> int:
    act = core.get("act_verb")
    subj = _entity(b, core.children[0])
    verb_leaf = core.children[1]
    pred = b.add_node("predicate", act, tense=verb_leaf.entry.features.tense,
                      valence="report", negated=False)
    b.add_edge(pred, "subject", subj)
    if act == "tell":
        b.add_edge(pred, "addressee", _entity(b, core.children[2]))
        complement = core.children[4]
    else:
        complement = core.children[3]
    b.add_edge(pred, "complement", _clause(b, complement))
    return pred


def _interrogative(b: _Builder, core: Node) -> int:
    queried = core.get("queried")
    binder = core.get("binder")
    ch = core.children

    def wh_entity():
        return b.add_node("wh", binder or "thing",
                          taxon="person" if binder == "person" else None)

    if queried in ("subject",) and core.get("copula"):
        # What is on the sign?
        pred = b.add_node("predicate", "be", tense=core.get("tense"),
                          valence="copula_pp", negated=False, queried="subject")
        wh = wh_entity()
        b.add_edge(pred, "subject", wh)
        _attach_pp(b, pred, ch[2], site="vp")
        return pred
    if queried == "subject":
        vp = ch[1]
        vg, complements, adjuncts, mult = _vp_parts(vp)
        pred = b.add_node("predicate", vg.get("lemma"), tense=vg.get("tense"),
                          negated=vg.get("negated"), valence=vp.get("valence"),
                          queried="subject", mult=mult)
        wh = wh_entity()
        b.add_edge(pred, "subject", wh)
        valence = vp.get("valence")
        if valence == "transitive":
            b.add_edge(pred, "object", _entity(b, complements[0]))
        elif valence == "ditransitive":
            b.add_edge(pred, "indirect_object", _entity(b, complements[0]))
            b.add_edge(pred, "object", _entity(b, complements[1]))
        elif valence == "ditransitive_to":
            b.add_edge(pred, "object", _entity(b, complements[0]))
            b.add_edge(pred, "indirect_object", _entity(b, complements[1].children[1]))
        _attach_adjuncts(b, pred, wh, adjuncts)
        return pred
    if queried in ("object", "predicate"):
        subj = _entity(b, ch[2])
        verb = ch[3]
        pred = b.add_node("predicate", verb.entry.lemma,
                          tense=ch[1].entry.features.tense, negated=False,
                          valence="transitive", queried=queried)
        b.add_edge(pred, "subject", subj)
        if queried == "object":
            b.add_edge(pred, "object", wh_entity())
        return pred
    if queried in ("temporal",) or (queried == "locational" and len(ch) == 4):
        subj = _entity(b, ch[2])
        vp = ch[3]
        vg, complements, adjuncts, mult = _vp_parts(vp)
        pred = b.add_node("predicate", vg.get("lemma"),
                          tense=ch[1].entry.features.tense,
                          negated=vg.get("negated"), valence=vp.get("valence"),
                          queried=queried, mult=mult)
        b.add_edge(pred, "subject", subj)
        valence = vp.get("valence")
        if valence == "transitive":
            b.add_edge(pred, "object", _entity(b, complements[0]))
        elif valence == "ditransitive":
            b.add_edge(pred, "indirect_object", _entity(b, complements[0]))
            b.add_edge(pred, "object", _entity(b, complements[1]))
        _attach_adjuncts(b, pred, subj, adjuncts)
        return pred
    if queried == "locational":
        # What region is she in?
        subj = _entity(b, ch[3])
        pred = b.add_node("predicate", "be", tense=core.get("tense"),
                          valence="copula_pp", negated=False, queried="locational")
        b.add_edge(pred, "subject", subj)
        wh = b.add_node("wh", "thing", head=core.get("queried_head"),
                        taxon=core.get("queried_taxon"))
        b.add_edge(pred, f"adjunct_{core.get('prep')}", wh)
        return pred
    if queried == "yes_no":
        if core.get("copula"):
            subj = _entity(b, ch[1])
            last = ch[2]
            if last.label == "PP":
                pred = b.add_node("predicate", "be", tense=core.get("tense"),
                                  valence="copula_pp", negated=False, queried="yes_no")
                b.add_edge(pred, "subject", subj)
                _attach_pp(b, pred, last, site="vp")
                return pred
            pred = b.add_node("predicate", "be", tense=core.get("tense"),
                              valence="copula_np", negated=False, queried="yes_no")
            b.add_edge(pred, "subject", subj)
            ident = b.add_node("identity", "identical")
            b.add_edge(ident, "left", subj)
            b.add_edge(ident, "right", _entity(b, last))
            b.add_edge(ident, "clause", pred)
            return ident
        subj = _entity(b, ch[1])
        vp = ch[2]
        vg, complements, adjuncts, mult = _vp_parts(vp)
        pred = b.add_node("predicate", vg.get("lemma"),
                          tense=ch[0].entry.features.tense,
                          negated=vg.get("negated"), valence=vp.get("valence"),
                          queried="yes_no", mult=mult)
        b.add_edge(pred, "subject", subj)
        valence = vp.get("valence")
        if valence == "transitive":
            b.add_edge(pred, "object", _entity(b, complements[0]))
        elif valence == "ditransitive":
            b.add_edge(pred, "indirect_object", _entity(b, complements[0]))
            b.add_edge(pred, "object", _entity(b, complements[1]))
        _attach_adjuncts(b, pred, subj, adjuncts)
        return pred
    raise ContractViolation(f"unhandled interrogative shape: {queried}")


# ---------------------------------------------------------------------------
# ranking and selection


@dataclass
class PreferenceProfile:
    """Ordered rules mapping ambiguity features to scores; the default
    (empty) profile scores everything 0, forcing explicit selection on
    genuine ambiguity."""

    rules: dict = field(default_factory=dict)  # (feature, value) -> float

    def score(self, g: DeepGraph) -> float:
        return sum(self.rules.get((feat, val), 0.0) for feat, val, _site in g.ambiguity)


@dataclass
class InterpretationSet:
    candidates: list[DeepGraph]
    paraphrases: list[str]
    status: str                 # unique | awaiting_selection
    origin: str = ""
    chosen: Optional[int] = None

    @property
    def top(self) -> DeepGraph:
        return self.candidates[0]


def rank(candidates: Sequence[DeepGraph], prefs: Optional[PreferenceProfile] = None) -> InterpretationSet:
    """Stable sort by preference score; ties among maxima leave the set
    awaiting user selection with one structure per reading."""
    if not candidates:
        raise ContractViolation("rank requires at least one candidate")
    prefs = prefs or PreferenceProfile()
    scored = sorted(
        ((prefs.score(g), -i, g) for i, g in enumerate(candidates)),
        key=lambda t: (-t[0], -t[1]),
    )
    ordered = [g for _, _, g in scored]
    top_score = scored[0][0]
    tied = [g for s, _, g in scored if s == top_score]
    status = "unique" if len(ordered) == 1 or len(tied) == 1 else "awaiting_selection"
    kept = ordered if status == "awaiting_selection" else ordered
    return InterpretationSet(
        candidates=kept,
        paraphrases=paraphrases(kept),
        status=status,
        origin=candidates[0].source_text,
        chosen=0 if status == "unique" else None,
    )


def select(iset: InterpretationSet, index: int) -> DeepGraph:
    if iset.status != "awaiting_selection":
        raise ContractViolation("selection on a set that is already unique")
    if not 0 <= index < len(iset.candidates):
        raise ContractViolation(f"candidate index {index} out of range")
    iset.chosen = index
    iset.status = "unique"
    chosen = iset.candidates[index]
    iset.candidates = [chosen] + [c for i, c in enumerate(iset.candidates) if i != index]
    iset.paraphrases = [iset.paraphrases[index]] + [
        p for i, p in enumerate(iset.paraphrases) if i != index
    ]
    iset.chosen = 0
    return chosen


def paraphrases(candidates: Sequence[DeepGraph]) -> list[str]:
    """Human-readable discrimination strings: verbalize only the ambiguity
    features on which the candidates disagree."""
    if len(candidates) == 1:
        return [candidates[0].source_text]
    sites: dict = {}
    for g in candidates:
        for feat, val, site in g.ambiguity:
            sites.setdefault((feat, site), set()).add(val)
    contested = {key for key, vals in sites.items() if len(vals) > 1}
    out = []
    for g in candidates:
        bits = []
        for feat, val, site in g.ambiguity:
            if (feat, site) not in contested:
                continue
            bits.append(_describe(g, feat, val, site))
        out.append("; ".join(bits) if bits else g.source_text)
    return out


def _describe(g: DeepGraph, feat: str, val: str, site) -> str:
    if feat == "pp_attachment":
        prep, ref_head = site
        if val == "vp":
            pred = next(n for n in g.nodes if n.kind == "predicate")
            return f"{pred.label} {prep} the {ref_head}"
        host = next(
            (n for n in g.nodes for e in g.out_edges(n.id, f"postmod_{prep}")
             if g.nodes[e.dst].label == ref_head),
            None,
        )
        head = host.label if host else "it"
        rel = "who is" if host is not None and host.get("taxon") == "person" else "which is"
        return f"the {head}, {rel} {prep} the {ref_head}"
    if feat == "conj_scope":
        members = list(site)
        if len(members) == 3:
            a, b_, c = members
            if val == "left_nested":
                return f"(({a} and {b_}) and {c})"
            return f"({a} and ({b_} and {c}))"
        if val == "left_nested":
            return f"(({' and '.join(members[:-1])}) and {members[-1]})"
        return f"({members[0]} and ({' and '.join(members[1:])}))"
    return f"{feat}={val}"
