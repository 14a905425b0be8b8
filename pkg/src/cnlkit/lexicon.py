"""Lexical database: word-forms with part-of-speech and feature bundles,
plus the acronym and alias sub-lexicons.

File formats (UTF-8, line-oriented, tab-separated, ``#`` comments):

    lexicon:  surface<TAB>lemma<TAB>pos<TAB>key=value;key=value
    acronyms: acronym<TAB>expansion words<TAB>position
    aliases:  word word ...<TAB>atom

Base entries are expanded through a small explicit inflection table
(noun plurals, verb 3sg/past) at load time; the table is auditable and
closed, which suits a controlled language.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional


class LexiconError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class POS(enum.Enum):
    COMMON_NOUN = "common_noun"
    PROPER_NOUN = "proper_noun"
    PRONOUN = "pronoun"
    MAIN_VERB = "main_verb"
    AUXILIARY = "auxiliary"
    MODAL = "modal"
    ADJECTIVE = "adjective"
    ARTICLE = "article"
    CARDINAL = "cardinal"
    ORDINAL = "ordinal"
    PREPOSITION = "preposition"
    CONJUNCTION = "conjunction"
    WH_WORD = "wh_word"
    DIRECTIONAL = "directional"


class AdjClass(enum.Enum):
    """The 19 modifier order classes.  Precedence (ascending position in
    the noun phrase) follows conventional English adjective-order
    typology; the inventory is fixed, the order is ours."""

    ORDINAL = "ordinal"
    NOUN = "noun"
    SUBJECTIVE = "subjective"
    EVALUATIVE = "evaluative"
    OBJECTIVE = "objective"
    AMPLIFIER = "amplifier"
    WEAK = "weak"
    SIZE = "size"
    GIRTH = "girth"
    HEIGHT = "height"
    SHAPE = "shape"
    AGE = "age"
    CENTURY = "century"
    PARTICIPLE = "participle"
    COLOUR = "colour"
    COMPASS = "compass"
    PROVENANCE = "provenance"
    RELIGION = "religion"
    DENOMINAL = "denominal"


ADJ_PRECEDENCE = {cls: i for i, cls in enumerate(AdjClass)}


def adjective_order_valid(classes: Iterable[AdjClass]) -> bool:
    """True iff the sequence is non-strictly increasing under the
    precedence order (equal classes may repeat)."""
    ranks = [ADJ_PRECEDENCE[c] for c in classes]
    return all(a <= b for a, b in zip(ranks, ranks[1:]))


# taxonomy: a shallow tree over noun senses, used for animacy, thematic
# roles and anaphora compatibility
TAXONOMY_PARENT = {
    "physical": "entity",
    "abstract": "entity",
    "animate": "physical",
    "person": "animate",
    "animal": "animate",
    "vehicle": "physical",
    "structure": "physical",
    "document": "physical",
    "region": "physical",
    "object": "physical",
    "time_unit": "abstract",
    "event": "abstract",
}


def taxon_ancestors(taxon: str) -> list[str]:
    out = [taxon]
    while taxon in TAXONOMY_PARENT:
        taxon = TAXONOMY_PARENT[taxon]
        out.append(taxon)
    return out


def taxon_is(taxon: Optional[str], ancestor: str) -> bool:
    return taxon is not None and ancestor in taxon_ancestors(taxon)


def is_animate(taxon: Optional[str]) -> bool:
    return taxon_is(taxon, "animate")


@dataclass(frozen=True)
class FeatureBundle:
    # noun features
    mass_count: Optional[str] = None          # mass | count
    number: Optional[str] = None              # singular | plural
    gender: Optional[str] = None              # male | female | neuter
    alienability: Optional[str] = None        # stored, no grammar rule consumes it
    dependencies: tuple[str, ...] = ()        # opaque tags
    taxon: Optional[str] = None
    temporal: Optional[str] = None            # weekday | month | deictic | unit | meridiem | oclock
    # verb features
    semantic_type: Optional[str] = None
    agreement: Optional[str] = None           # third_singular | plural
    tense: Optional[str] = None               # present | past | future
    aspect: Optional[str] = None
    mood: Optional[str] = None
    frame: Optional[str] = None               # intransitive | transitive | ditransitive | copula | report | directive
    semantic_frame: Optional[str] = None
    aktionsart: Optional[str] = None          # state | activity | accomplishment | achievement
    # adjective features
    usage: tuple[str, ...] = ()               # attributive | predicative | comparative | superlative
    order_class: Optional[AdjClass] = None
    # closed-class subtyping
    subtype: Optional[str] = None

    def merged(self, **kw) -> "FeatureBundle":
        vals = {k: getattr(self, k) for k in self.__dataclass_fields__}
        vals.update(kw)
        return FeatureBundle(**vals)


@dataclass(frozen=True)
class LexEntry:
    surface: str
    lemma: str
    pos: POS
    features: FeatureBundle = field(default_factory=FeatureBundle)

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise LexiconError(f"bad surface form {self.surface!r}")


@dataclass(frozen=True)
class AcronymEntry:
    acronym: str
    expansion: tuple[str, ...]
    position: str  # pre_nominal | post_nominal | free

    def __post_init__(self):
        if not self.expansion:
            raise LexiconError(f"acronym {self.acronym!r} has empty expansion")
        if self.position not in ("pre_nominal", "post_nominal", "free"):
            raise LexiconError(f"bad acronym position {self.position!r}")


@dataclass(frozen=True)
class AliasEntry:
    surface_sequence: tuple[str, ...]
    atom: str

    def __post_init__(self):
        if not self.surface_sequence:
            raise LexiconError("alias with empty surface sequence")
        if not self.atom or any(c.isspace() for c in self.atom):
            raise LexiconError(f"bad alias atom {self.atom!r}")


# ---------------------------------------------------------------------------
# inflection table


IRREGULAR_PLURALS = {
    "woman": "women", "man": "men", "child": "children", "person": "people",
    "foot": "feet", "tooth": "teeth", "mouse": "mice", "goose": "geese",
    "ox": "oxen", "sheep": "sheep", "deer": "deer", "fish": "fish",
    "aircraft": "aircraft", "series": "series", "species": "species",
    "criterion": "criteria", "analysis": "analyses", "crisis": "crises",
    "phenomenon": "phenomena", "life": "lives", "wife": "wives",
    "knife": "knives", "leaf": "leaves", "loaf": "loaves", "wolf": "wolves",
    "shelf": "shelves", "thief": "thieves", "half": "halves", "calf": "calves",
    "self": "selves", "datum": "data",
}

# lemma -> (past, past participle)
IRREGULAR_VERBS = {
    "be": ("was", "been"), "have": ("had", "had"), "do": ("did", "done"),
    "say": ("said", "said"), "go": ("went", "gone"), "get": ("got", "got"),
    "make": ("made", "made"), "know": ("knew", "known"),
    "think": ("thought", "thought"), "take": ("took", "taken"),
    "see": ("saw", "seen"), "come": ("came", "come"),
    "find": ("found", "found"), "give": ("gave", "given"),
    "tell": ("told", "told"), "become": ("became", "become"),
    "show": ("showed", "shown"), "leave": ("left", "left"),
    "feel": ("felt", "felt"), "put": ("put", "put"),
    "bring": ("brought", "brought"), "begin": ("began", "begun"),
    "keep": ("kept", "kept"), "hold": ("held", "held"),
    "write": ("wrote", "written"), "stand": ("stood", "stood"),
    "hear": ("heard", "heard"), "let": ("let", "let"),
    "mean": ("meant", "meant"), "set": ("set", "set"),
    "meet": ("met", "met"), "run": ("ran", "run"),
    "pay": ("paid", "paid"), "sit": ("sat", "sat"),
    "speak": ("spoke", "spoken"), "lie": ("lay", "lain"),
    "lead": ("led", "led"), "read": ("read", "read"),
    "grow": ("grew", "grown"), "lose": ("lost", "lost"),
    "fall": ("fell", "fallen"), "send": ("sent", "sent"),
    "build": ("built", "built"), "understand": ("understood", "understood"),
    "draw": ("drew", "drawn"), "break": ("broke", "broken"),
    "spend": ("spent", "spent"), "cut": ("cut", "cut"),
    "rise": ("rose", "risen"), "drive": ("drove", "driven"),
    "buy": ("bought", "bought"), "wear": ("wore", "worn"),
    "choose": ("chose", "chosen"), "seek": ("sought", "sought"),
    "throw": ("threw", "thrown"), "catch": ("caught", "caught"),
    "deal": ("dealt", "dealt"), "win": ("won", "won"),
    "forget": ("forgot", "forgotten"), "sleep": ("slept", "slept"),
    "fly": ("flew", "flown"), "eat": ("ate", "eaten"),
    "drink": ("drank", "drunk"), "swim": ("swam", "swum"),
    "sing": ("sang", "sung"), "ring": ("rang", "rung"),
    "fight": ("fought", "fought"), "hide": ("hid", "hidden"),
    "hit": ("hit", "hit"), "hang": ("hung", "hung"),
    "lend": ("lent", "lent"), "sell": ("sold", "sold"),
    "shoot": ("shot", "shot"), "shut": ("shut", "shut"),
    "steal": ("stole", "stolen"), "strike": ("struck", "struck"),
    "teach": ("taught", "taught"), "bear": ("bore", "borne"),
    "beat": ("beat", "beaten"), "bend": ("bent", "bent"),
    "bite": ("bit", "bitten"), "blow": ("blew", "blown"),
    "dig": ("dug", "dug"), "feed": ("fed", "fed"),
    "flee": ("fled", "fled"), "freeze": ("froze", "frozen"),
    "shake": ("shook", "shaken"), "shine": ("shone", "shone"),
    "sink": ("sank", "sunk"), "slide": ("slid", "slid"),
    "spin": ("spun", "spun"), "spread": ("spread", "spread"),
    "spring": ("sprang", "sprung"), "stick": ("stuck", "stuck"),
    "sting": ("stung", "stung"), "sweep": ("swept", "swept"),
    "wake": ("woke", "woken"), "weep": ("wept", "wept"),
    "wind": ("wound", "wound"), "ride": ("rode", "ridden"),
    "sail": ("sailed", "sailed"), "wave": ("waved", "waved"),
}

_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")


def pluralize(noun: str) -> str:
    if noun in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[noun]
    if noun.endswith("man") and not noun.endswith("human"):
        return noun[:-3] + "men"
    if noun.endswith("y") and len(noun) > 1 and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    if noun.endswith(_SIBILANT_ENDINGS) or noun.endswith("o"):
        return noun + "es"
    return noun + "s"


def verb_third_singular(lemma: str) -> str:
    if lemma == "be":
        return "is"
    if lemma == "have":
        return "has"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in "aeiou":
        return lemma[:-1] + "ies"
    if lemma.endswith(_SIBILANT_ENDINGS) or lemma.endswith("o"):
        return lemma + "es"
    return lemma + "s"


def verb_past(lemma: str) -> str:
    if lemma in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[lemma][0]
    if lemma.endswith("e"):
        return lemma + "d"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in "aeiou":
        return lemma[:-1] + "ied"
    return lemma + "ed"


def inflected_forms(entry: LexEntry) -> list[LexEntry]:
    """All word-forms derivable from a base entry via the table.

    Nouns with count sense and singular number get a plural form; main
    verbs in base present form get 3sg and past forms.  Entries that are
    already inflected (explicit tense/number) pass through unchanged.
    """
    f = entry.features
    out = [entry]
    if entry.pos == POS.COMMON_NOUN and entry.surface == entry.lemma:
        if f.mass_count != "mass" and (f.number or "singular") == "singular":
            plural = pluralize(entry.lemma)
            out.append(LexEntry(plural, entry.lemma, entry.pos, f.merged(number="plural")))
    if entry.pos == POS.MAIN_VERB and entry.surface == entry.lemma and f.tense in (None, "present"):
        base = entry.features.merged(tense="present", agreement="plural")
        out[0] = LexEntry(entry.surface, entry.lemma, entry.pos, base)
        third = verb_third_singular(entry.lemma)
        out.append(LexEntry(third, entry.lemma, entry.pos,
                            f.merged(tense="present", agreement="third_singular")))
        past = verb_past(entry.lemma)
        out.append(LexEntry(past, entry.lemma, entry.pos,
                            f.merged(tense="past", agreement=None)))
    return out


# ---------------------------------------------------------------------------
# feature parsing and pos-appropriateness

_NOUN_KEYS = {"mass_count", "number", "gender", "alienability", "deps", "taxon", "temporal", "subtype"}
_VERB_KEYS = {"semantic_type", "agreement", "tense", "aspect", "mood", "frame", "semantic_frame", "aktionsart"}
_ADJ_KEYS = {"usage", "class"}

ALLOWED_KEYS = {
    POS.COMMON_NOUN: _NOUN_KEYS,
    POS.PROPER_NOUN: _NOUN_KEYS,
    POS.PRONOUN: {"gender", "number", "taxon", "subtype"},
    POS.MAIN_VERB: _VERB_KEYS,
    POS.AUXILIARY: {"tense", "agreement", "subtype"},
    POS.MODAL: {"tense", "subtype"},
    POS.ADJECTIVE: _ADJ_KEYS,
    POS.ARTICLE: {"number", "subtype"},
    POS.CARDINAL: {"subtype", "value"},
    POS.ORDINAL: {"subtype", "value"},
    POS.PREPOSITION: {"subtype"},
    POS.CONJUNCTION: {"subtype"},
    POS.WH_WORD: {"subtype"},
    POS.DIRECTIONAL: {"subtype"},
}


def _parse_features(pos: POS, text: str, line_no: int) -> FeatureBundle:
    kw = {}
    if text.strip():
        for piece in text.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            if "=" not in piece:
                raise LexiconError(f"bad feature {piece!r}", line_no)
            key, value = piece.split("=", 1)
            key, value = key.strip(), value.strip()
            if key not in ALLOWED_KEYS[pos]:
                raise LexiconError(f"feature {key!r} not allowed on {pos.value}", line_no)
            if key == "class":
                try:
                    kw["order_class"] = AdjClass(value)
                except ValueError:
                    raise LexiconError(f"unknown adjective class {value!r}", line_no)
            elif key == "usage":
                kw["usage"] = tuple(value.split("|"))
            elif key == "deps":
                kw["dependencies"] = tuple(value.split("|"))
            elif key == "value":
                kw["semantic_type"] = value  # numeral value rides here
            else:
                kw[key] = value
    bundle = FeatureBundle(**{k: v for k, v in kw.items() if v is not None})
    if pos == POS.ADJECTIVE and bundle.order_class is None:
        raise LexiconError("adjective entry missing order class", line_no)
    if pos == POS.MAIN_VERB and bundle.aktionsart is None:
        raise LexiconError("main verb entry missing aktionsart", line_no)
    if pos == POS.MAIN_VERB and bundle.aktionsart not in (
        "state", "activity", "accomplishment", "achievement"
    ):
        raise LexiconError(f"bad aktionsart {bundle.aktionsart!r}", line_no)
    return bundle


# ---------------------------------------------------------------------------
# the lexicon proper


class Lexicon:
    """Immutable after load; safe for unrestricted concurrent reads."""

    def __init__(self, entries: Iterable[LexEntry]):
        self._by_surface: dict[str, tuple[LexEntry, ...]] = {}
        store: dict[str, list[LexEntry]] = {}
        for e in entries:
            store.setdefault(e.surface, []).append(e)
        self._by_surface = {k: tuple(v) for k, v in store.items()}

    def __len__(self) -> int:
        return sum(len(v) for v in self._by_surface.values())

    def __contains__(self, surface: str) -> bool:
        return surface in self._by_surface

    def entries(self) -> Iterable[LexEntry]:
        for group in self._by_surface.values():
            yield from group

    def lookup(self, surface: str, sentence_initial: bool = False) -> tuple[LexEntry, ...]:
        hits = list(self._by_surface.get(surface, ()))
        if sentence_initial and surface[:1].isupper():
            lowered = surface[0].lower() + surface[1:]
            for e in self._by_surface.get(lowered, ()):
                if e.pos != POS.PROPER_NOUN:  # proper nouns stay case-sensitive
                    hits.append(e)
        return tuple(hits)


def lookup(lex: Lexicon, surface: str, sentence_initial: bool = False) -> tuple[LexEntry, ...]:
    return lex.lookup(surface, sentence_initial)


def load_lexicon(source: str) -> Lexicon:
    """Parse lexicon file content; duplicate (surface, pos) lines rejected."""
    base_entries: list[LexEntry] = []
    seen: dict[tuple[str, str], int] = {}
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 4):
            raise LexiconError(f"expected 3 or 4 tab-separated fields, got {len(parts)}", line_no)
        surface, lemma, pos_text = parts[0].strip(), parts[1].strip(), parts[2].strip()
        try:
            pos = POS(pos_text)
        except ValueError:
            raise LexiconError(f"unknown part of speech {pos_text!r}", line_no)
        key = (surface, pos.value)
        if key in seen:
            raise LexiconError(
                f"duplicate entry {surface!r}/{pos.value} (first at line {seen[key]})", line_no
            )
        seen[key] = line_no
        features = _parse_features(pos, parts[3] if len(parts) == 4 else "", line_no)
        try:
            base_entries.append(LexEntry(surface, lemma, pos, features))
        except LexiconError as e:
            raise LexiconError(str(e), line_no)
    expanded: list[LexEntry] = []
    seen_forms: set[tuple] = set()
    for entry in base_entries:
        for form in inflected_forms(entry):
            key = (form.surface, form.pos.value, form.features)
            if key not in seen_forms:
                seen_forms.add(key)
                expanded.append(form)
    return Lexicon(expanded)


def load_acronyms(source: str) -> dict[str, AcronymEntry]:
    out: dict[str, AcronymEntry] = {}
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LexiconError("expected acronym<TAB>expansion<TAB>position", line_no)
        acronym, expansion, position = (p.strip() for p in parts)
        if acronym in out:
            raise LexiconError(f"duplicate acronym {acronym!r}", line_no)
        out[acronym] = AcronymEntry(acronym, tuple(expansion.split()), position)
    return out


def load_aliases(source: str, lex: Optional[Lexicon] = None) -> list[AliasEntry]:
    """Aliases sorted longest-first for longest-match folding.  When a
    lexicon is supplied, every alias atom must be lexicon-resident so
    folding can never introduce an out-of-vocabulary token."""
    out: list[AliasEntry] = []
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError("expected words<TAB>atom", line_no)
        words, atom = parts[0].split(), parts[1].strip()
        entry = AliasEntry(tuple(words), atom)
        if lex is not None and atom not in lex:
            raise LexiconError(f"alias atom {atom!r} is not in the lexicon", line_no)
        out.append(entry)
    out.sort(key=lambda e: -len(e.surface_sequence))
    return out


class LayeredLexicon(Lexicon):
    """A read-through overlay: session-local proper nouns (ingested track
    ids) on top of an immutable base lexicon."""

    def __init__(self, base: Lexicon):
        self._base = base
        self._extra: dict[str, tuple[LexEntry, ...]] = {}

    def __len__(self):
        return len(self._base) + sum(len(v) for v in self._extra.values())

    def __contains__(self, surface: str) -> bool:
        return surface in self._extra or surface in self._base

    def entries(self):
        yield from self._base.entries()
        for group in self._extra.values():
            yield from group

    def add_proper_noun(self, surface: str, taxon: str = "object"):
        if surface in self._extra:
            return
        entry = LexEntry(surface, surface, POS.PROPER_NOUN,
                         FeatureBundle(number="singular", taxon=taxon))
        self._extra[surface] = (entry,)

    def lookup(self, surface: str, sentence_initial: bool = False):
        hits = tuple(self._extra.get(surface, ()))
        return hits + self._base.lookup(surface, sentence_initial)


# ---------------------------------------------------------------------------
# packaged seed data


def _read_data(name: str) -> str:
    return resources.files("cnlkit").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def seed_lexicon() -> Lexicon:
    return load_lexicon(_read_data("lexicon.tsv"))


def seed_acronyms() -> dict[str, AcronymEntry]:
    return load_acronyms(_read_data("acronyms.tsv"))


def seed_aliases(lex: Optional[Lexicon] = None) -> list[AliasEntry]:
    return load_aliases(_read_data("aliases.tsv"), lex)
