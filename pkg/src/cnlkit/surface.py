"""Between raw text and parser-ready tokens: tokenization, alias folding,
acronym expansion, and pre-parse vocabulary/grammar feedback."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional, Sequence

from .lexicon import AcronymEntry, AliasEntry, Lexicon

WORD_KINDS = ("word", "folded_atom")


@dataclass(frozen=True)
class Token:
    text: str
    span: tuple[int, int]  # byte offsets into the original input
    kind: str = "word"     # word | numeral | time_literal | punctuation | folded_atom
    position_constraint: Optional[str] = None  # from acronym expansion
    sentence_initial: bool = False


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    source: str = ""

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]


@dataclass(frozen=True)
class InputDiagnostic:
    severity: str  # unknown_word | out_of_grammar
    span: tuple[int, int]
    message: str
    suggestions: tuple[str, ...] = ()


_TIME = r"\d{1,2}:\d{2}(?::\d{2})?"
_NUMERAL = r"\d+(?:st|nd|rd|th)?(?:\.\d+)?"
_WORD = r"'s|[A-Za-z][A-Za-z0-9_'\-]*"
_PUNCT = r"[.?!,;:()\"]"
_TOKEN_RE = re.compile(f"({_TIME})|({_NUMERAL})|({_WORD})|({_PUNCT})")


def _byte_offset(text: str, char_offset: int) -> int:
    return len(text[:char_offset].encode("utf-8"))


def tokenize(text: str) -> TokenStream:
    """Total: splits on whitespace and punctuation; clock patterns come out
    as single time_literal tokens; genitive 's becomes its own token."""
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        start, end = m.span()
        bstart, bend = _byte_offset(text, start), _byte_offset(text, end)
        piece = m.group(0)
        if m.group(1):
            tokens.append(Token(piece, (bstart, bend), "time_literal"))
        elif m.group(2):
            tokens.append(Token(piece, (bstart, bend), "numeral"))
        elif m.group(3):
            if piece.endswith("'s") and len(piece) > 2:
                head = piece[:-2]
                mid = _byte_offset(text, end - 2)
                tokens.append(Token(head, (bstart, mid), "word"))
                tokens.append(Token("'s", (mid, bend), "word"))
            elif piece.endswith("'") and len(piece) > 1:
                head = piece[:-1]
                mid = _byte_offset(text, end - 1)
                tokens.append(Token(head, (bstart, mid), "word"))
                tokens.append(Token("'", (mid, bend), "punctuation"))
            else:
                tokens.append(Token(piece, (bstart, bend), "word"))
        else:
            tokens.append(Token(piece, (bstart, bend), "punctuation"))
    return TokenStream(tuple(tokens), text)


TERMINATORS = {".", "?", "!"}


def segment(ts: TokenStream) -> list[TokenStream]:
    """Split a stream into sentences at terminator punctuation; the
    terminator stays with its sentence.  The first word-like token of each
    sentence is flagged for case-insensitive lookup."""
    sentences: list[TokenStream] = []
    current: list[Token] = []
    for tok in ts.tokens:
        current.append(tok)
        if tok.kind == "punctuation" and tok.text in TERMINATORS:
            sentences.append(_flag_initial(TokenStream(tuple(current), ts.source)))
            current = []
    if current:
        sentences.append(_flag_initial(TokenStream(tuple(current), ts.source)))
    return sentences


def _flag_initial(ts: TokenStream) -> TokenStream:
    toks = list(ts.tokens)
    for i, t in enumerate(toks):
        if t.kind in WORD_KINDS:
            toks[i] = replace(t, sentence_initial=True)
            break
    return TokenStream(tuple(toks), ts.source)


def split_paragraphs(text: str) -> list[list[str]]:
    """Blank-line-separated paragraphs, each a list of sentence strings."""
    paragraphs: list[list[str]] = []
    for block in re.split(r"\n\s*\n", text):
        if not block.strip():
            continue
        sentences = [_stream_text(s) for s in segment(tokenize(block))]
        paragraphs.append([s for s in sentences if s])
    return paragraphs


def _stream_text(ts: TokenStream) -> str:
    if not ts.tokens:
        return ""
    return " ".join(t.text for t in ts.tokens)


def fold_aliases(ts: TokenStream, aliases: Sequence[AliasEntry]) -> TokenStream:
    """Longest-match, left-to-right replacement of alias sequences by their
    atoms; ties broken leftmost.  Idempotent."""
    tokens = list(ts.tokens)
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        matched = None
        for alias in aliases:  # sorted longest-first at load time
            n = len(alias.surface_sequence)
            window = tokens[i:i + n]
            if len(window) == n and tuple(t.text for t in window) == alias.surface_sequence:
                matched = (alias, n)
                break
        if matched:
            alias, n = matched
            span = (tokens[i].span[0], tokens[i + n - 1].span[1])
            out.append(Token(alias.atom, span, "folded_atom",
                             sentence_initial=tokens[i].sentence_initial))
            i += n
        else:
            out.append(tokens[i])
            i += 1
    return TokenStream(tuple(out), ts.source)


def expand_acronyms(ts: TokenStream, acronyms: dict[str, AcronymEntry]) -> TokenStream:
    """Each acronym token becomes its expansion tokens; every expansion
    token carries the positional constraint for the parser to enforce."""
    out: list[Token] = []
    for tok in ts.tokens:
        entry = acronyms.get(tok.text) if tok.kind == "word" else None
        if entry is None:
            out.append(tok)
            continue
        constraint = None if entry.position == "free" else entry.position
        for j, word in enumerate(entry.expansion):
            out.append(Token(word, tok.span, "word",
                             position_constraint=constraint,
                             sentence_initial=tok.sentence_initial and j == 0))
    return TokenStream(tuple(out), ts.source)


def preprocess(ts: TokenStream, aliases, acronyms) -> TokenStream:
    """Alias folding, acronym expansion, then one more folding pass so that
    expansions which spell out a known multi-word unit fold to its atom."""
    return fold_aliases(expand_acronyms(fold_aliases(ts, aliases), acronyms), aliases)


def precheck(
    ts: TokenStream,
    lex: Lexicon,
    parse_fn: Optional[Callable[[TokenStream], int]] = None,
) -> list[InputDiagnostic]:
    """One unknown_word diagnostic per out-of-vocabulary token; if all
    tokens are known but no parse exists, a single out_of_grammar
    diagnostic.  Empty list means the parse can proceed."""
    diagnostics: list[InputDiagnostic] = []
    for tok in ts.tokens:
        if tok.kind in ("punctuation", "numeral", "time_literal"):
            continue
        if not lex.lookup(tok.text, sentence_initial=tok.sentence_initial):
            diagnostics.append(InputDiagnostic(
                severity="unknown_word",
                span=tok.span,
                message=f"unknown word {tok.text!r}",
                suggestions=_suggest(tok.text, lex),
            ))
    if diagnostics:
        return diagnostics
    if parse_fn is not None and ts.tokens and parse_fn(ts) == 0:
        span = (ts.tokens[0].span[0], ts.tokens[-1].span[1])
        diagnostics.append(InputDiagnostic(
            severity="out_of_grammar",
            span=span,
            message="sentence is outside the controlled grammar",
        ))
    return diagnostics


def _suggest(word: str, lex: Lexicon, limit: int = 3) -> tuple[str, ...]:
    """Cheap suggestions: same first letter and near length."""
    lowered = word.lower()
    out = []
    for entry in lex.entries():
        s = entry.surface
        if s[:1].lower() == lowered[:1] and abs(len(s) - len(word)) <= 1:
            if _edit_distance_le1(lowered, s.lower()):
                out.append(s)
                if len(out) >= limit:
                    break
    return tuple(dict.fromkeys(out))


def _edit_distance_le1(a: str, b: str) -> bool:
    if a == b:
        return True
    if abs(len(a) - len(b)) > 1:
        return False
    if len(a) > len(b):
        a, b = b, a
    # a is shorter or equal
    for i in range(len(b)):
        if len(a) == len(b):
            if a[:i] + a[i + 1:] == b[:i] + b[i + 1:]:
                return True
        else:
            if a[:i] + b[i] + a[i:] == b:
                return True
    return len(a) != len(b) and a == b[:-1]
