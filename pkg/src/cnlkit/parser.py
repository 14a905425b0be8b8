"""Hand-crafted grammar over token streams: a context-free backbone with
feature unification, enumerated exhaustively so every licensed reading
surfaces.

Sentence types: declaratives (intransitive / transitive / ditransitive,
with temporal and locational adjuncts), interrogatives (subject, object,
predicate, temporal, locational, yes-no), the situation-report directive
template, and indirect speech with say/tell + that-clause.  Noun phrases
recurse through conjunction and genitive-s determiners; premodifier
sequences must respect adjective order.

Deliberate ambiguity sources: PP attachment (verb phrase vs object noun
phrase) and conjunction bracketing.  Everything else is factored to be
unambiguous; in particular the temporal quantifier "always" requires a
present-tense verb group, which pins the tense of ambiguous forms like
"read".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .lexicon import (
    AdjClass,
    FeatureBundle,
    LexEntry,
    Lexicon,
    POS,
    adjective_order_valid,
    taxon_is,
)
from .surface import Token, TokenStream




@dataclass(frozen=True)
class Leaf:
    label: str
    token: Token
    entry: Optional[LexEntry] = None

    @property
    def text(self) -> str:
        return self.token.text

    def signature(self):
        return (self.label, self.token.span, self.text,
                None if self.entry is None else (self.entry.pos.value, self.entry.features))


@dataclass(frozen=True)
class Node:
    label: str
    children: tuple[Union["Node", Leaf], ...]
    feats: tuple = ()  # sorted (key, value) pairs; values hashable

    def get(self, key, default=None):
        for k, v in self.feats:
            if k == key:
                return v
        return default

    def signature(self):
        return (self.label, self.feats, tuple(c.signature() for c in self.children))


def node(label: str, children, **feats) -> Node:
    clean = tuple(sorted((k, v) for k, v in feats.items() if v is not None))
    return Node(label, tuple(children), clean)


ParseTree = Node


def leaves(tree: Union[Node, Leaf]) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    out = []
    for c in tree.children:
        out.extend(leaves(c))
    return out


def find_nodes(tree: Union[Node, Leaf], label: str) -> list[Node]:
    out = []
    if isinstance(tree, Node):
        if tree.label == label:
            out.append(tree)
        for c in tree.children:
            out.extend(find_nodes(c, label))
    return out


def tree_text(tree: Union[Node, Leaf], indent: int = 0) -> str:
    """Indented bracketed debug form, stable for golden files."""
    pad = "  " * indent
    if isinstance(tree, Leaf):
        return f"{pad}({tree.label} {tree.text})"
    if all(isinstance(c, Leaf) for c in tree.children) and len(tree.children) == 1:
        child = tree.children[0]
        return f"{pad}({tree.label} ({child.label} {child.text}))"
    lines = [f"{pad}({tree.label}"]
    for c in tree.children:
        lines.append(tree_text(c, indent + 1))
    lines[-1] += ")"
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# terminals


@dataclass(frozen=True)
class Terminal:
    name: str
    pos: Optional[POS] = None
    lemma: Optional[str] = None
    text: Optional[str] = None
    kind: Optional[str] = None           # token kind requirement
    subtype: Optional[str] = None
    tense: Optional[str] = None
    temporal: Optional[str] = None
    taxon_under: Optional[str] = None
    title_slot: Optional[str] = None     # pre_nominal | post_nominal

    def match(self, token: Token, entries: tuple[LexEntry, ...]) -> list[Leaf]:
        if self.kind is not None and token.kind != self.kind:
            return []
        if self.text is not None and token.text != self.text:
            return []
        if self.kind in ("numeral", "time_literal"):
            return [Leaf(self.name, token)]
        if self.text is not None and self.pos is None:
            return [Leaf(self.name, token)]
        # positional constraints from acronym expansion bind only in the
        # matching title slot
        if token.position_constraint is not None and self.title_slot != token.position_constraint:
            return []
        out = []
        for e in entries:
            if self.pos is not None and e.pos != self.pos:
                continue
            if self.lemma is not None and e.lemma != self.lemma:
                continue
            if self.subtype is not None and e.features.subtype != self.subtype:
                continue
            if self.tense is not None and e.features.tense != self.tense:
                continue
            if self.temporal is not None and e.features.temporal != self.temporal:
                continue
            if self.taxon_under is not None and not taxon_is(e.features.taxon, self.taxon_under):
                continue
            out.append(Leaf(self.name, token, e))
        return out


DET = Terminal("DET", pos=POS.ARTICLE)
GEN = Terminal("GEN", pos=POS.ARTICLE, subtype="genitive")
N = Terminal("N", pos=POS.COMMON_NOUN)
PROPN = Terminal("PROP-N", pos=POS.PROPER_NOUN)
PRON = Terminal("PRON", pos=POS.PRONOUN)
ADJ = Terminal("ADJ", pos=POS.ADJECTIVE)
CARDW = Terminal("CARD", pos=POS.CARDINAL)
ORDW = Terminal("ORD", pos=POS.ORDINAL)
P = Terminal("P", pos=POS.PREPOSITION)
V = Terminal("V", pos=POS.MAIN_VERB)
AUX_DO = Terminal("AUX", pos=POS.AUXILIARY, subtype="do_support")
NEG = Terminal("NEG", pos=POS.AUXILIARY, subtype="negator")
TQ = Terminal("TQ", pos=POS.AUXILIARY, subtype="temporal_quantifier")
MODAL = Terminal("MODAL", pos=POS.MODAL)
CONJ_AND = Terminal("CONJ", pos=POS.CONJUNCTION, lemma="and")
IF = Terminal("IF", pos=POS.CONJUNCTION, lemma="if")
THEN = Terminal("THEN", pos=POS.CONJUNCTION, lemma="then")
THAT = Terminal("COMP", pos=POS.CONJUNCTION, lemma="that")
WH = Terminal("WH", pos=POS.WH_WORD)
TITLE_PRE = Terminal("TITLE", pos=POS.COMMON_NOUN, taxon_under="person", title_slot="pre_nominal")
TITLE_POST = Terminal("TITLE", pos=POS.COMMON_NOUN, title_slot="post_nominal")
CLOCK = Terminal("TIME", kind="time_literal")
NUMLIT = Terminal("NUMLIT", kind="numeral")
WEEKDAY = Terminal("WEEKDAY", pos=POS.PROPER_NOUN, temporal="weekday")
MONTH = Terminal("MONTH", pos=POS.PROPER_NOUN, temporal="month")
MERIDIEM = Terminal("MERIDIEM", pos=POS.COMMON_NOUN, temporal="meridiem")
OCLOCK = Terminal("OCLOCK", pos=POS.COMMON_NOUN, temporal="oclock")
DEICTIC = Terminal("DEICTIC", pos=POS.COMMON_NOUN, temporal="deictic")
UNIT = Terminal("UNIT", pos=POS.COMMON_NOUN, temporal="unit")
TERM_DOT = Terminal("PUNC", text=".")
TERM_Q = Terminal("PUNC", text="?")
TERM_BANG = Terminal("PUNC", text="!")


def _p(text: str) -> Terminal:
    return Terminal("P", pos=POS.PREPOSITION, lemma=text)


def _v(lemma: str, tense: Optional[str] = None) -> Terminal:
    return Terminal("V", pos=POS.MAIN_VERB, lemma=lemma, tense=tense)


# ---------------------------------------------------------------------------
# rules


@dataclass
class Rule:
    lhs: str
    rhs: tuple
    build: Callable[[list], Optional[Node]]
    name: str = ""


def _rules() -> list[Rule]:
    rules: list[Rule] = []

    def rule(lhs, rhs, build=None, name=""):
        if build is None:
            build = lambda ch: node(lhs, ch)
        rules.append(Rule(lhs, tuple(rhs), build, name or lhs))

    # ---- noun phrase core -------------------------------------------------

    def build_headnoun(ch):
        leaf = ch[0]
        f = leaf.entry.features
        return node("NHEAD", ch, number=f.number or "singular", gender=f.gender,
                    taxon=f.taxon, head=leaf.entry.lemma, mass=f.mass_count == "mass")

    rule("NHEAD", [N], build_headnoun)

    def build_adj(ch):
        leaf = ch[0]
        return node("ADJP", ch, order_class=leaf.entry.features.order_class,
                    adjective=leaf.entry.lemma)

    rule("ADJP", [ADJ], build_adj)

    # premodifier structure: an optional quantifier complement, then
    # adjectives; adjective sequences obey the class order
    def build_mod_single(ch):
        return node("MOD", ch, classes=(ch[0].get("order_class"),),
                    adjectives=(ch[0].get("adjective"),), count=None)

    rule("MOD", ["ADJP"], build_mod_single)

    def build_mod_chain(ch):
        first, rest = ch
        classes = (first.get("order_class"),) + rest.get("classes")
        if not adjective_order_valid([c for c in classes if c]):
            return None
        return node("MOD", [node("ADJUNCT", [first]), rest], classes=classes,
                    adjectives=(first.get("adjective"),) + rest.get("adjectives"),
                    count=rest.get("count"))

    rule("MOD", ["ADJP", "MOD"], build_mod_chain)

    def build_mod_quant(ch):
        card, rest = ch
        f = card.entry.features
        value = int(f.semantic_type) if f.semantic_type else None
        if f.subtype == "multiplicative":
            return None
        return node("MOD", [node("COMP", [card]), rest], classes=rest.get("classes"),
                    adjectives=rest.get("adjectives"),
                    count=value if value is not None else card.entry.lemma)

    rule("MOD", [CARDW, "MOD"], build_mod_quant)

    def build_quant_only(ch):
        card = ch[0]
        f = card.entry.features
        if f.subtype == "multiplicative":
            return None
        value = int(f.semantic_type) if f.semantic_type else None
        return node("MOD", [node("COMP", [card])], classes=(), adjectives=(),
                    count=value if value is not None else card.entry.lemma)

    rule("MOD", [CARDW], build_quant_only)

    def build_n2(ch, postmod=False):
        if len(ch) == 1:
            head = ch[0]
            mod = None
            pp = None
        elif ch[0].label == "MOD":
            mod = ch[0]
            head = ch[1]
            pp = ch[2] if len(ch) > 2 else None
        else:
            mod = None
            head = ch[0]
            pp = ch[1]
        count = mod.get("count") if mod else None
        number = head.get("number")
        if isinstance(count, int) and count > 1 and number != "plural":
            return None
        if isinstance(count, str) and number != "plural":
            return None  # several/many/few take plurals
        return node("NP2", ch, number=number, gender=head.get("gender"),
                    taxon=head.get("taxon"), head=head.get("head"),
                    mass=head.get("mass"), count=count,
                    adjectives=mod.get("adjectives") if mod else (),
                    has_postmod=pp is not None)

    rule("NP2", ["NHEAD"], build_n2)
    rule("NP2", ["MOD", "NHEAD"], build_n2)
    rule("NP2", ["NHEAD", "POSTMOD"], build_n2)
    rule("NP2", ["MOD", "NHEAD", "POSTMOD"], build_n2)

    def build_postmod(ch):
        pp = ch[0]
        if pp.get("ptype") != "loc":
            return None
        return node("POSTMOD", ch, prep=pp.get("prep"))

    rule("POSTMOD", ["PP"], build_postmod)

    def build_enp_det(ch):
        det, n2 = ch
        f = det.entry.features
        det_number = f.number
        if det_number and n2.get("number") and det_number != n2.get("number"):
            if not n2.get("mass"):
                return None
        subtype = f.subtype
        definiteness = {
            "definite": "definite", "indefinite": "indefinite",
            "universal": "universal", "existential": "existential",
            "demonstrative": "demonstrative",
        }.get(subtype, "definite")
        return node("ENP", ch, number=n2.get("number"), gender=n2.get("gender"),
                    taxon=n2.get("taxon"), head=n2.get("head"),
                    definiteness=definiteness, count=n2.get("count"),
                    adjectives=n2.get("adjectives"),
                    quant="universal" if subtype == "universal" else None)

    rule("ENP", [DET, "NP2"], build_enp_det)

    def build_enp_bare(ch):
        n2 = ch[0]
        if n2.get("number") != "plural" and not n2.get("mass") and n2.get("count") is None:
            return None  # bare singular count nouns are out
        return node("ENP", ch, number=n2.get("number"), gender=n2.get("gender"),
                    taxon=n2.get("taxon"), head=n2.get("head"),
                    definiteness="indefinite", count=n2.get("count"),
                    adjectives=n2.get("adjectives"),
                    quant="bare_plural" if n2.get("count") is None else None)

    rule("ENP", ["NP2"], build_enp_bare)

    def build_enp_propn(ch):
        main = next(c for c in ch if isinstance(c, Leaf) and c.label == "PROP-N")
        f = main.entry.features
        return node("ENP", ch, number=f.number or "singular", gender=f.gender,
                    taxon=f.taxon, head=main.entry.lemma, definiteness="proper")

    rule("ENP", [PROPN], build_enp_propn)
    rule("ENP", [TITLE_PRE, PROPN], build_enp_propn)
    rule("ENP", [PROPN, TITLE_POST], build_enp_propn)

    def build_enp_pron(ch):
        leaf = ch[0]
        f = leaf.entry.features
        return node("ENP", ch, number=f.number, gender=f.gender, taxon=f.taxon,
                    head=leaf.entry.lemma, definiteness="pronoun",
                    pron_subtype=f.subtype)

    rule("ENP", [PRON], build_enp_pron)

    # genitive determiners, recursive through NP: ((the sick woman) 's) house
    def build_gendet(ch):
        return node("GEN-DET", ch)

    rule("GEN-DET", ["NP", GEN], build_gendet)

    def build_enp_gen(ch):
        gendet, n2 = ch
        return node("ENP", ch, number=n2.get("number"), gender=n2.get("gender"),
                    taxon=n2.get("taxon"), head=n2.get("head"),
                    definiteness="definite", count=n2.get("count"),
                    adjectives=n2.get("adjectives"), genitive=True)

    rule("ENP", ["GEN-DET", "NP2"], build_enp_gen)

    def build_npc_leaf(ch):
        e = ch[0]
        return node("NPC", ch, **dict(e.feats))

    rule("NPC", ["ENP"], build_npc_leaf)

    def build_npc_conj(ch):
        left, _and, right = ch
        return node("NPC", ch, number="plural", conjoined=True,
                    taxon=None, gender=None, head=None, definiteness="conjoined")

    rule("NPC", ["NPC", CONJ_AND, "NPC"], build_npc_conj)

    def build_np(ch):
        return node("NP", ch, **dict(ch[0].feats))

    rule("NP", ["NPC"], build_np)

    # ---- prepositional phrases ---------------------------------------------

    def build_pp(ch):
        p, np = ch
        prep = p.entry.lemma
        if prep in ("to", "of"):
            return None  # datives and of-phrases have dedicated slots
        if taxon_is(np.get("taxon"), "time_unit"):
            return None  # temporal objects go through TEMP-PP
        return node("PP", ch, prep=prep, ptype="loc")

    rule("PP", [P, "NP"], build_pp)

    rule("PP-TO", [_p("to"), "NP"], lambda ch: node("PP-TO", ch, prep="to"))

    # temporal adjuncts
    def build_temp_pp(ch):
        p, tx = ch
        prep = p.entry.lemma
        if prep not in ("on", "in", "at", "during", "before", "after", "until", "from"):
            return None
        ptype = "constraint" if prep in ("before", "after", "until") else "temp"
        return node("TEMP-PP", ch, prep=prep, ptype=ptype,
                    time_tokens=tx.get("time_tokens"))

    rule("TEMP-PP", [P, "TIMEX"], build_temp_pp)

    def build_temp_fromto(ch):
        tokens = ("from",) + ch[1].get("time_tokens") + ("to",) + ch[3].get("time_tokens")
        return node("TEMP-PP", ch, prep="from", ptype="temp", time_tokens=tokens)

    rule("TEMP-PP", [_p("from"), "TIMEX", _p("to"), "TIMEX"], build_temp_fromto)

    def timex(ch, tokens=None):
        if tokens is None:
            tokens = tuple(l.text for l in sum((leaves(c) for c in ch), []))
        return node("TIMEX", ch, time_tokens=tokens)

    rule("TIMEX", [WEEKDAY], timex)
    rule("TIMEX", [MONTH], timex)
    rule("TIMEX", [CLOCK], timex)
    rule("TIMEX", [DEICTIC], timex)
    rule("TIMEX", [NUMLIT, MERIDIEM], timex)
    rule("TIMEX", [CARDW, OCLOCK], timex)
    rule("TIMEX", [Terminal("LAST", pos=POS.ADJECTIVE, lemma="last"), UNIT], timex)
    rule("TIMEX", [Terminal("NEXT", pos=POS.ADJECTIVE, lemma="next"), UNIT], timex)
    rule("TIMEX", [CARDW, UNIT], timex)  # "one month" under "in"
    # full date phrase: Monday the 2nd of June 2014 at 10:33:48 AM
    rule("TIMEX", [WEEKDAY, DET, NUMLIT, _p("of"), MONTH, NUMLIT], timex)
    rule("TIMEX", [WEEKDAY, DET, NUMLIT, _p("of"), MONTH, NUMLIT, _p("at"), CLOCK, MERIDIEM], timex)

    def build_temp_bare(ch):
        return node("TEMP-PP", ch, prep=None, ptype="temp",
                    time_tokens=ch[0].get("time_tokens"))

    rule("TEMP-NP", [Terminal("DEICTIC", pos=POS.COMMON_NOUN, temporal="deictic")], timex)
    rule("TEMP-PP", ["TEMP-NP"], build_temp_bare)

    # ---- verb groups --------------------------------------------------------

    def build_vg_finite(ch):
        leaf = ch[0]
        f = leaf.entry.features
        if f.tense not in ("present", "past"):
            return None
        return node("VG", ch, lemma=leaf.entry.lemma, tense=f.tense,
                    agreement=f.agreement, frame=f.frame, aktionsart=f.aktionsart,
                    negated=False, habitual=f.tense == "present")

    rule("VG", [V], build_vg_finite)

    def build_vg_aux(ch):
        aux = ch[0]
        verb = ch[-1]
        negated = any(isinstance(c, Leaf) and c.label == "NEG" for c in ch)
        tq = any(isinstance(c, Leaf) and c.label == "TQ" for c in ch)
        vf = verb.entry.features
        if vf.tense != "present" or vf.agreement != "plural":
            return None  # base form required after do-support
        af = aux.entry.features
        return node("VG", ch, lemma=verb.entry.lemma, tense=af.tense,
                    agreement=af.agreement, frame=vf.frame, aktionsart=vf.aktionsart,
                    negated=negated, habitual=af.tense == "present" or tq, tq=tq)

    rule("VG", [AUX_DO, V], build_vg_aux)
    rule("VG", [AUX_DO, NEG, V], build_vg_aux)
    rule("VG", [AUX_DO, TQ, V], build_vg_aux)
    rule("VG", [AUX_DO, NEG, TQ, V], build_vg_aux)

    def build_vg_tq(ch):
        _tq, verb = ch
        vf = verb.entry.features
        if vf.tense != "present":
            return None  # "always" pins the habitual present reading
        return node("VG", ch, lemma=verb.entry.lemma, tense="present",
                    agreement=vf.agreement, frame=vf.frame, aktionsart=vf.aktionsart,
                    negated=False, habitual=True, tq=True)

    rule("VG", [TQ, V], build_vg_tq)

    def build_vg_modal(ch):
        modal = ch[0]
        verb = ch[-1]
        vf = verb.entry.features
        if vf.tense != "present" or vf.agreement != "plural":
            return None
        negated = modal.entry.lemma == "cannot" or any(
            isinstance(c, Leaf) and c.label == "NEG" for c in ch
        )
        tense = "future" if modal.entry.lemma in ("will", "shall") else "present"
        return node("VG", ch, lemma=verb.entry.lemma, tense=tense, agreement=None,
                    frame=vf.frame, aktionsart=vf.aktionsart, negated=negated,
                    habitual=tense == "present", modal=modal.entry.lemma)

    rule("VG", [MODAL, V], build_vg_modal)
    rule("VG", [MODAL, NEG, V], build_vg_modal)

    VCOP = Terminal("VCOP", pos=POS.MAIN_VERB, lemma="be")

    def build_vcop(ch):
        leaf = ch[0]
        f = leaf.entry.features
        return node("VG", ch, lemma="be", tense=f.tense, agreement=f.agreement,
                    frame="copula", aktionsart="state", negated=False,
                    habitual=f.tense == "present")

    rule("VG-COP", [VCOP], build_vcop)

    # ---- verb phrases --------------------------------------------------------

    def vp(ch, frame_needed, **extra):
        vg = ch[0]
        if vg.get("frame") != frame_needed:
            return None
        return node("VP", ch, **{**dict(vg.feats), **extra})

    rule("VP", ["VG"], lambda ch: vp(ch, "intransitive", valence="intransitive"))
    rule("VP", ["VG", "NP"], lambda ch: vp(ch, "transitive", valence="transitive"))
    rule("VP", ["VG", "NP", "NP"], lambda ch: vp(ch, "ditransitive", valence="ditransitive"))
    rule("VP", ["VG", "NP", "PP-TO"], lambda ch: vp(ch, "ditransitive", valence="ditransitive_to"))

    def vp_copula(ch, valence):
        vg = ch[0]
        if vg.get("frame") != "copula":
            return None
        return node("VP", ch, **{**dict(vg.feats), "valence": valence})

    rule("VP", ["VG-COP", "NP"], lambda ch: vp_copula(ch, "copula_np"))
    rule("VP", ["VG-COP", "PP"], lambda ch: vp_copula(ch, "copula_pp"))
    rule("VP", ["VG-COP", "ADJP"], lambda ch: vp_copula(ch, "copula_adj"))

    def vp_adjunct(ch):
        inner, adjunct = ch
        return node("VP", ch, **dict(inner.feats))

    rule("VP", ["VP", "PP"], vp_adjunct, name="VP-loc-adjunct")
    rule("VP", ["VP", "TEMP-PP"], vp_adjunct, name="VP-temp-adjunct")

    def vp_mult(ch):
        inner, card = ch
        if card.entry.features.subtype != "multiplicative":
            return None
        return node("VP", ch, **{**dict(inner.feats),
                                 "mult": int(card.entry.features.semantic_type)})

    rule("VP", ["VP", CARDW], vp_mult, name="VP-mult")

    # ---- clauses ---------------------------------------------------------------

    def agree(np: Node, vg_feats: dict) -> bool:
        a = vg_feats.get("agreement")
        if a is None:
            return True
        n = np.get("number")
        if n is None:
            return True
        return (a == "third_singular") == (n == "singular")

    def build_decl(ch):
        np, vp_node = ch
        if not agree(np, dict(vp_node.feats)):
            return None
        return node("DECL", ch, tense=vp_node.get("tense"),
                    habitual=vp_node.get("habitual"), negated=vp_node.get("negated"))

    rule("DECL", ["NP", "VP"], build_decl)

    def build_cond(ch):
        return node("COND", ch, tense=ch[1].get("tense"))

    rule("COND", [IF, "DECL", THEN, "DECL"], build_cond)

    def build_indirect_say(ch):
        np, v, comp, decl = ch
        if v.entry.features.frame != "report" or v.entry.lemma != "say":
            return None
        return node("INDIRECT", ch, act_verb="say", tense=v.entry.features.tense)

    rule("INDIRECT", ["NP", V, THAT, "DECL"], build_indirect_say)

    def build_indirect_tell(ch):
        np, v, addressee, comp, decl = ch
        if v.entry.features.frame != "report" or v.entry.lemma != "tell":
            return None
        return node("INDIRECT", ch, act_verb="tell", tense=v.entry.features.tense)

    rule("INDIRECT", ["NP", V, "NP", THAT, "DECL"], build_indirect_tell)

    # directive template: Show <class-NP> situation report on <track-id>
    SHOW = Terminal("V", pos=POS.MAIN_VERB, lemma="show", tense="present")
    REPORT_N = Terminal("N", pos=POS.COMMON_NOUN, lemma="situation_report")
    CLASS_N = Terminal("N", pos=POS.COMMON_NOUN)

    def build_directive(ch):
        _show, class_n, _rep, _on, track = ch
        return node("DIRECTIVE", ch, track_class=class_n.entry.lemma,
                    track_id=track.entry.lemma)

    rule("DIRECTIVE", [SHOW, CLASS_N, REPORT_N, _p("on"), PROPN], build_directive)

    # ---- interrogatives ---------------------------------------------------------

    def build_int_subj(ch):
        wh, vp_node = ch
        sub = wh.entry.features.subtype
        if sub not in ("person", "thing"):
            return None
        if vp_node.get("agreement") not in (None, "third_singular"):
            return None  # wh-subjects agree like singulars
        if (vp_node.get("valence") or "").startswith("copula"):
            return None  # copula subject queries have a dedicated shape
        return node("INTERR", ch, queried="subject", binder=sub,
                    tense=vp_node.get("tense"), negated=vp_node.get("negated"))

    rule("INTERR", [WH, "VP"], build_int_subj)

    def build_int_obj(ch):
        wh, aux, np, verb = ch
        sub = wh.entry.features.subtype
        if sub not in ("person", "thing"):
            return None
        vf = verb.entry.features
        if vf.tense != "present" or vf.agreement != "plural":
            return None
        if not agree(np, {"agreement": aux.entry.features.agreement}):
            return None
        if vf.frame not in ("transitive", "ditransitive"):
            return None
        queried = "predicate" if verb.entry.lemma == "do" else "object"
        return node("INTERR", ch, queried=queried, binder=sub,
                    tense=aux.entry.features.tense, lemma=verb.entry.lemma)

    rule("INTERR", [WH, AUX_DO, "NP", V], build_int_obj)

    def build_int_adjunct(ch):
        wh, aux, np, vp_core = ch
        sub = wh.entry.features.subtype
        if sub not in ("time", "place"):
            return None
        if not agree(np, {"agreement": aux.entry.features.agreement}):
            return None
        if vp_core.get("tense") != "present" or vp_core.get("agreement") != "plural":
            return None
        return node("INTERR", ch, queried="temporal" if sub == "time" else "locational",
                    binder=sub, tense=aux.entry.features.tense)

    rule("INTERR", [WH, AUX_DO, "NP", "VP"], build_int_adjunct)

    def build_int_loc_cop(ch):
        wh, noun, cop, np, prep = ch
        if wh.entry.features.subtype not in ("thing", "which"):
            return None
        if not agree(np, {"agreement": cop.entry.features.agreement}):
            return None
        return node("INTERR", ch, queried="locational", binder="thing",
                    tense=cop.entry.features.tense, prep=prep.entry.lemma,
                    queried_taxon=noun.entry.features.taxon,
                    queried_head=noun.entry.lemma)

    rule("INTERR", [WH, N, VCOP, "NP", P], build_int_loc_cop)

    def build_int_subj_cop(ch):
        wh, cop, pp = ch
        if wh.entry.features.subtype not in ("person", "thing"):
            return None
        return node("INTERR", ch, queried="subject", binder=wh.entry.features.subtype,
                    tense=cop.entry.features.tense, copula=True)

    rule("INTERR", [WH, VCOP, "PP"], build_int_subj_cop)

    def build_yn(ch):
        aux, np, rest = ch
        if not agree(np, {"agreement": aux.entry.features.agreement}):
            return None
        if rest.get("tense") != "present" or rest.get("agreement") != "plural":
            return None
        return node("INTERR", ch, queried="yes_no", binder=None,
                    tense=aux.entry.features.tense)

    rule("INTERR", [AUX_DO, "NP", "VP"], build_yn)

    def build_yn_cop(ch):
        cop, np, rest = ch
        if not agree(np, {"agreement": cop.entry.features.agreement}):
            return None
        return node("INTERR", ch, queried="yes_no", binder=None,
                    tense=cop.entry.features.tense, copula=True)

    rule("INTERR", [VCOP, "NP", "PP"], build_yn_cop)
    rule("INTERR", [VCOP, "NP", "NP"], build_yn_cop)

    # ---- sentence wrappers --------------------------------------------------

    def s(ch, sentence_type):
        core = ch[0]
        return node("S", ch, sentence_type=sentence_type, **dict(core.feats))

    for core, stype, term in [
        ("DECL", "declarative", TERM_DOT),
        ("COND", "declarative", TERM_DOT),
        ("INDIRECT", "indirect", TERM_DOT),
        ("INTERR", "interrogative", TERM_Q),
        ("DIRECTIVE", "directive", TERM_DOT),
        ("DIRECTIVE", "directive", TERM_BANG),
    ]:
        rule("S", [core, term], (lambda st: lambda ch: s(ch, st))(stype))
    for core, stype in [
        ("DECL", "declarative"),
        ("COND", "declarative"),
        ("INDIRECT", "indirect"),
        ("INTERR", "interrogative"),
        ("DIRECTIVE", "directive"),
    ]:
        rule("S", [core], (lambda st: lambda ch: s(ch, st))(stype))

    return rules


GRAMMAR: list[Rule] = _rules()


# ---------------------------------------------------------------------------
# chart parser: exhaustive memoized descent over spans


class Parser:
    def __init__(self, lex: Lexicon, rules: Optional[list[Rule]] = None):
        self.lex = lex
        self.rules = rules if rules is not None else GRAMMAR
        self.by_lhs: dict[str, list[Rule]] = {}
        for r in self.rules:
            self.by_lhs.setdefault(r.lhs, []).append(r)

    def parse(self, ts: TokenStream, goal: str = "S") -> list[Node]:
        tokens = list(ts.tokens)
        n = len(tokens)
        if n == 0:
            return []
        entries = [
            self.lex.lookup(t.text, sentence_initial=t.sentence_initial)
            if t.kind in ("word", "folded_atom") else ()
            for t in tokens
        ]
        memo: dict = {}
        active: set = set()

        def terminal_leaves(term: Terminal, i: int) -> list[Leaf]:
            key = (id(term), i)
            if key not in memo:
                memo[key] = term.match(tokens[i], entries[i])
            return memo[key]

        def derive(sym, i: int, j: int) -> list[Node]:
            if isinstance(sym, Terminal):
                return terminal_leaves(sym, i) if j - i == 1 else []
            key = (sym, i, j)
            if key in memo:
                return memo[key]
            if key in active:
                return []  # grammar has no unary cycles; guard anyway
            active.add(key)
            results: list[Node] = []
            seen = set()
            for r in self.by_lhs.get(sym, ()):
                if len(r.rhs) > j - i:
                    continue
                for combo in self._splits(r.rhs, i, j, derive):
                    built = r.build(combo)
                    if built is not None:
                        sig = built.signature()
                        if sig not in seen:
                            seen.add(sig)
                            results.append(built)
            active.discard(key)
            memo[key] = results
            return results

        return derive(goal, 0, n)

    @staticmethod
    def _splits(rhs, i, j, derive):
        """All ways to realize rhs over [i, j) with nonempty segments."""
        def rec(idx, pos):
            remaining = len(rhs) - idx
            if remaining == 0:
                if pos == j:
                    yield []
                return
            sym = rhs[idx]
            if isinstance(sym, Terminal):
                ends = [pos + 1]
            else:
                ends = range(pos + 1, j - remaining + 2)
            for end in ends:
                if end > j:
                    continue
                heads = derive(sym, pos, end)
                if not heads:
                    continue
                for tail in rec(idx + 1, end):
                    for h in heads:
                        yield [h] + tail
        yield from rec(0, i)


def parse(ts: TokenStream, lex: Lexicon) -> list[Node]:
    return Parser(lex).parse(ts)


# ---------------------------------------------------------------------------
# query focus


@dataclass(frozen=True)
class QueryFocus:
    kind: str                      # subject | object | predicate | temporal | locational | yes_no
    binder: Optional[str] = None   # person | thing | time | place
    queried_taxon: Optional[str] = None
    queried_head: Optional[str] = None


class ContractViolation(ValueError):
    pass


def parse_query_focus(tree: Node) -> QueryFocus:
    if tree.get("sentence_type") != "interrogative":
        raise ContractViolation("query focus requested for a non-interrogative tree")
    interr = find_nodes(tree, "INTERR")[0]
    return QueryFocus(
        kind=interr.get("queried"),
        binder=interr.get("binder"),
        queried_taxon=interr.get("queried_taxon"),
        queried_head=interr.get("queried_head"),
    )
