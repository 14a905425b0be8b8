"""Tokenization, alias folding, acronym expansion, precheck."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnlkit.surface import (
    InputDiagnostic,
    TokenStream,
    expand_acronyms,
    fold_aliases,
    precheck,
    preprocess,
    segment,
    split_paragraphs,
    tokenize,
)


def test_tokenize_simple_sentence():
    ts = tokenize("The boy slept on Monday.")
    assert ts.texts() == ["The", "boy", "slept", "on", "Monday", "."]
    assert ts.tokens[-1].kind == "punctuation"


def test_tokenize_empty():
    assert len(tokenize("")) == 0


def test_tokenize_time_literals():
    ts = tokenize("from 12:00 to 13:00")
    assert ts.texts() == ["from", "12:00", "to", "13:00"]
    kinds = [t.kind for t in ts.tokens]
    assert kinds == ["word", "time_literal", "word", "time_literal"]


def test_tokenize_seconds_literal():
    ts = tokenize("at 13:59:59 precisely")
    assert "13:59:59" in ts.texts()


def test_genitive_split():
    ts = tokenize("The sick woman's house")
    assert ts.texts() == ["The", "sick", "woman", "'s", "house"]


def test_track_id_single_token():
    ts = tokenize("on MR41_PAN-EAV now")
    assert "MR41_PAN-EAV" in ts.texts()


def test_spans_non_overlapping_and_ordered():
    text = "The woman's car, at 13:00, stood."
    ts = tokenize(text)
    spans = [t.span for t in ts.tokens]
    for i in range(len(spans) - 1):
        assert spans[i][1] <= spans[i + 1][0]
    joined = "".join(text.encode()[a:b].decode() for a, b in spans)
    assert joined == text.replace(" ", "")


@given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=0x2FF), max_size=60))
@settings(max_examples=100, deadline=None)
def test_tokenize_total_and_span_invariant(text):
    ts = tokenize(text)
    spans = [t.span for t in ts.tokens]
    for i in range(len(spans) - 1):
        assert spans[i][1] <= spans[i + 1][0]


def test_fold_becker_bender(aliases):
    ts = tokenize("Becker Bender air force base")
    out = fold_aliases(ts, aliases)
    assert out.texts() == ["becker_bender_AFB"]
    assert out.tokens[0].kind == "folded_atom"


def test_fold_contraction(aliases):
    out = fold_aliases(tokenize("can't"), aliases)
    assert out.texts() == ["cannot"]


def test_fold_identity_on_non_alias(aliases):
    out = fold_aliases(tokenize("house"), aliases)
    assert out.texts() == ["house"]


def test_fold_idempotent(aliases):
    ts = tokenize("Andrew White saw the Prime Minister near Becker Bender air force base")
    once = fold_aliases(ts, aliases)
    twice = fold_aliases(once, aliases)
    assert once == twice


def test_expand_acronym_dr(acronyms):
    out = expand_acronyms(tokenize("Dr Smith"), acronyms)
    assert out.texts() == ["doctor", "Smith"]
    assert out.tokens[0].position_constraint == "pre_nominal"


def test_expand_idempotent(acronyms):
    ts = tokenize("Dr Smith slept")
    once = expand_acronyms(ts, acronyms)
    assert expand_acronyms(once, acronyms) == once


def test_expansion_after_aliasing_folds_again(aliases, acronyms):
    # AFB expands to words that spell a known multi-word unit
    out = preprocess(tokenize("Becker Bender AFB"), aliases, acronyms)
    assert out.texts() == ["becker_bender_AFB"]


def test_dr_smith_parses_like_doctor_smith(parser, pipe):
    t1 = parser.parse(pipe("Dr Smith slept."))
    t2 = parser.parse(pipe("doctor Smith slept."))
    assert len(t1) == len(t2) == 1

    def shape(node):
        if hasattr(node, "children"):
            return (node.label, tuple(shape(c) for c in node.children))
        return node.label

    assert shape(t1[0]) == shape(t2[0])


def test_post_nominal_acronym_position_enforced(parser, pipe, lex):
    ok = pipe("Smith PhD slept.")
    assert precheck(ok, lex, parse_fn=lambda ts: len(parser.parse(ts))) == []
    bad = pipe("PhD Smith slept.")
    diags = precheck(bad, lex, parse_fn=lambda ts: len(parser.parse(ts)))
    assert [d.severity for d in diags] == ["out_of_grammar"]


def test_precheck_unknown_word(pipe, lex):
    diags = precheck(pipe("The florgle slept."), lex)
    assert len(diags) == 1
    assert diags[0].severity == "unknown_word"
    assert "florgle" in diags[0].message


def test_precheck_grammatical_sentence_empty(pipe, lex, parser):
    diags = precheck(pipe("The boy slept on Monday."), lex,
                     parse_fn=lambda ts: len(parser.parse(ts)))
    assert diags == []


def test_precheck_out_of_grammar(pipe, lex, parser):
    diags = precheck(pipe("Slept boy the."), lex,
                     parse_fn=lambda ts: len(parser.parse(ts)))
    assert [d.severity for d in diags] == ["out_of_grammar"]


def test_precheck_empty_iff_parse_exists(pipe, lex, parser):
    from conftest import CORPUS

    for text, _ in CORPUS:
        processed = pipe(text)
        diags = precheck(processed, lex, parse_fn=lambda ts: len(parser.parse(ts)))
        has_parse = len(parser.parse(processed)) > 0
        assert (diags == []) == has_parse, text


def test_folding_never_introduces_oov(aliases, lex):
    for alias in aliases:
        assert alias.atom in lex


def test_segment_splits_sentences():
    streams = segment(tokenize("The boy slept. The woman stood."))
    assert len(streams) == 2
    assert streams[0].texts()[-1] == "."
    assert streams[1].tokens[0].sentence_initial


def test_split_paragraphs():
    paragraphs = split_paragraphs("The boy slept.\n\nThe woman stood. She slept.")
    assert len(paragraphs) == 2
    assert len(paragraphs[1]) == 2


def test_unknown_word_suggestions(pipe, lex):
    diags = precheck(pipe("The womam slept."), lex)
    assert diags[0].severity == "unknown_word"
    assert "woman" in diags[0].suggestions
