"""Rule-based anaphora resolution scoped to paragraph discourse units.

A new paragraph opens a new discourse context: no binding ever crosses a
paragraph boundary.  Candidate antecedents must unify with the anaphor on
gender, animacy and number; compatible candidates are ranked by the
grammatical-role hierarchy (subject > direct object > oblique) and then
recency.  Reflexives bind clause-internally to the subject; reciprocals
need a plural antecedent; indefinite pronouns are quantified variables,
not anaphors; the generic verb "do" picks up the last event predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .deep import DeepGraph, GraphNode
from .lexicon import is_animate

ROLE_RANK = {"subject": 0, "object": 1, "indirect_object": 2, "oblique": 3,
             "possessor": 3, "addressee": 2}


class UnresolvedAnaphorError(ValueError):
    def __init__(self, message: str, anaphor: Optional[str] = None):
        self.anaphor = anaphor
        super().__init__(message)


@dataclass(frozen=True)
class Referent:
    skolem: str
    space: str
    functor: str
    gender: Optional[str]
    taxon: Optional[str]
    number: Optional[str]
    role: Optional[str]
    sentence_index: int
    paragraph_id: int


@dataclass(frozen=True)
class LastEvent:
    lemma: str
    subject_skolem: Optional[str]
    sentence_index: int


@dataclass
class DiscourseContext:
    paragraph_id: int = 0
    sentence_index: int = 0
    referents: list[Referent] = field(default_factory=list)
    last_event: Optional[LastEvent] = None

    def new_paragraph(self) -> "DiscourseContext":
        return DiscourseContext(paragraph_id=self.paragraph_id + 1,
                                sentence_index=self.sentence_index)


def anaphor_kind(node: GraphNode) -> Optional[str]:
    sub = node.get("pron_subtype")
    if sub in ("personal", "reflexive", "reciprocal", "indefinite", "demonstrative"):
        return sub
    if node.kind == "entity" and node.get("definiteness") == "demonstrative":
        return "demonstrative"
    return None


def _compatible(node: GraphNode, ref: Referent) -> bool:
    """Gender, animacy and number must unify (absent features unify)."""
    g1, g2 = node.get("gender"), ref.gender
    if g1 and g2 and g1 != g2:
        return False
    n1, n2 = node.get("number"), ref.number
    if n1 and n2 and n1 != n2:
        return False
    anim_needed = node.get("taxon")
    if node.get("gender") == "neuter" or (anim_needed and not is_animate(anim_needed)):
        if is_animate(ref.taxon):
            return False
    elif anim_needed and is_animate(anim_needed):
        if ref.taxon is not None and not is_animate(ref.taxon):
            return False
    return True


def _candidates(node: GraphNode, ctx: DiscourseContext) -> list[Referent]:
    pool = [r for r in ctx.referents if r.paragraph_id == ctx.paragraph_id]
    compatible = [r for r in pool if _compatible(node, r)]
    compatible.sort(key=lambda r: (ROLE_RANK.get(r.role, 4), -r.sentence_index))
    return compatible


def _bind(g: DeepGraph, node_id: int, ref: Referent, tag: str) -> DeepGraph:
    nodes = list(g.nodes)
    n = nodes[node_id]
    feats = dict(n.feats)
    feats["skolem"] = ref.skolem
    feats["space"] = ref.space
    feats["functor"] = ref.functor
    feats.setdefault("taxon", ref.taxon)
    feats.setdefault("gender", ref.gender)
    nodes[node_id] = GraphNode(n.id, n.kind, n.label,
                               tuple(sorted(feats.items(), key=lambda kv: kv[0])))
    ambiguity = g.ambiguity + ((("anaphor", f"{n.label}={ref.functor}", (tag, node_id)),))
    return replace(g, nodes=tuple(nodes), ambiguity=ambiguity)


def _clause_subject(g: DeepGraph, pron_id: int) -> Optional[GraphNode]:
    """The subject co-argument of the clause containing the pronoun."""
    for pred in g.nodes:
        if pred.kind != "predicate":
            continue
        args = {e.label: e.dst for e in g.out_edges(pred.id)}
        if pron_id in args.values():
            subj = args.get("subject")
            if subj is not None and subj != pron_id:
                return g.node(subj)
    return None


def resolve(g: DeepGraph, ctx: DiscourseContext) -> list[DeepGraph]:
    """Bind every anaphoric node; returns one graph per surviving reading
    (ties fork into multiple readings for user selection)."""
    variants = [g]
    for n in list(g.nodes):
        if n.kind != "entity":
            continue
        kind = anaphor_kind(n)
        if kind is None or kind == "indefinite":
            continue
        next_variants = []
        for variant in variants:
            node = variant.node(n.id)
            if node.get("skolem") is not None:
                next_variants.append(variant)
                continue
            if kind == "reflexive":
                subj = _clause_subject(variant, n.id)
                bound = None
                if subj is not None and subj.get("skolem"):
                    ref = _referent_of(ctx, subj.get("skolem"))
                    if ref and _compatible(node, ref):
                        bound = ref
                elif subj is not None:
                    # subject introduced in this same sentence: bind after
                    # its skolem exists, via a same-clause placeholder
                    next_variants.append(_bind_local(variant, n.id, subj.id))
                    continue
                if bound is None:
                    raise UnresolvedAnaphorError(
                        f"reflexive {node.label!r} has no compatible clause subject",
                        anaphor=node.label)
                next_variants.append(_bind(variant, n.id, bound, "reflexive"))
                continue
            if kind == "reciprocal":
                subj = _clause_subject(variant, n.id)
                if subj is None or (subj.get("number") != "plural" and not subj.get("conj")):
                    raise UnresolvedAnaphorError(
                        "reciprocal pronoun requires a plural clause subject",
                        anaphor=node.label)
                next_variants.append(_bind_local(variant, n.id, subj.id))
                continue
            if kind == "demonstrative":
                cands = [r for r in _candidates(node, ctx)
                         if r.functor == node.label
                         and ctx.sentence_index - r.sentence_index <= 2]
                if cands:
                    next_variants.append(_bind(variant, n.id, cands[0], "demonstrative"))
                else:
                    next_variants.append(variant)  # new discourse entity
                continue
            # personal pronouns
            cands = _candidates(node, ctx)
            if not cands:
                raise UnresolvedAnaphorError(
                    f"no compatible referent for {node.label!r} in this paragraph",
                    anaphor=node.label)
            best_rank = (ROLE_RANK.get(cands[0].role, 4), -cands[0].sentence_index)
            tied = [r for r in cands
                    if (ROLE_RANK.get(r.role, 4), -r.sentence_index) == best_rank]
            for r in tied:
                next_variants.append(_bind(variant, n.id, r, "personal"))
        variants = next_variants
    variants = [_resolve_definites(v, ctx) for v in variants]
    return variants


def _bind_local(g: DeepGraph, pron_id: int, subject_id: int) -> DeepGraph:
    """Mark a clause-internal binding; the translator reuses the subject's
    skolem once allocated."""
    nodes = list(g.nodes)
    n = nodes[pron_id]
    feats = dict(n.feats)
    feats["bind_to_node"] = subject_id
    nodes[pron_id] = GraphNode(n.id, n.kind, n.label,
                               tuple(sorted(feats.items(), key=lambda kv: kv[0])))
    return replace(g, nodes=tuple(nodes))


def _referent_of(ctx: DiscourseContext, skolem: str) -> Optional[Referent]:
    for r in ctx.referents:
        if r.skolem == skolem:
            return r
    return None


def _resolve_definites(g: DeepGraph, ctx: DiscourseContext) -> DeepGraph:
    """Definite noun phrases corefer with an existing same-type referent
    when one exists (familiarity); otherwise they introduce a new one."""
    out = g
    for n in g.nodes:
        if n.kind != "entity" or n.get("skolem") is not None:
            continue
        if n.get("pron_subtype") is not None:
            continue
        if n.get("definiteness") not in ("definite", "proper"):
            continue
        if n.get("quant"):
            continue
        matches = [r for r in ctx.referents
                   if r.paragraph_id == ctx.paragraph_id and r.functor == n.label]
        if matches:
            newest = max(matches, key=lambda r: r.sentence_index)
            out = _bind(out, n.id, newest, "definite")
    return out


def advance(ctx: DiscourseContext, translation, g: DeepGraph) -> DiscourseContext:
    """Record the sentence's referents and last event for later anaphora."""
    new_refs = list(ctx.referents)
    known = {r.skolem for r in new_refs}
    for node_id, ref in translation.entities.items():
        if ref.quantified or ref.skolem.name.startswith("q"):
            continue
        node = g.node(node_id)
        if node.kind != "entity":
            continue
        if ref.skolem.name in known:
            continue
        known.add(ref.skolem.name)
        new_refs.append(Referent(
            skolem=ref.skolem.name, space=ref.space.name, functor=ref.functor,
            gender=ref.gender, taxon=ref.taxon, number=ref.number,
            role=ref.role, sentence_index=ctx.sentence_index,
            paragraph_id=ctx.paragraph_id,
        ))
    last = ctx.last_event
    if translation.event_lemma:
        subject = next((r.skolem.name for r in translation.entities.values()
                        if r.role == "subject"), None)
        last = LastEvent(translation.event_lemma, subject, ctx.sentence_index)
    return DiscourseContext(
        paragraph_id=ctx.paragraph_id,
        sentence_index=ctx.sentence_index + 1,
        referents=new_refs,
        last_event=last,
    )
