#!/usr/bin/env python3
"""Run the whole example corpus through the pipeline and print, for each
sentence, its parse count, logical form, and the regenerated English.

    python3 scripts/run_corpus.py
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cnlkit.chronos import Interval, Timestamp
from cnlkit.deep import rank, to_graph
from cnlkit.effector import generate, validate_roundtrip
from cnlkit.lexicon import seed_acronyms, seed_aliases, seed_lexicon
from cnlkit.parser import Parser
from cnlkit.surface import preprocess, segment, tokenize
from cnlkit.terms import SymbolAllocator, print_form
from cnlkit.translate import translate

UTTERANCE = Interval.point(Timestamp(2014, 6, 2, 1, 3, 48))
OFFSET = 9 * 60 + 30

CORPUS = [
    "The woman stood in the house.",
    "The boy slept on Monday.",
    "The woman in the car read the message on the sign.",
    "The woman gave the man the document.",
    "Women stand.",
    "All women always read all documents.",
    "If all women did not see the car then all women did not see the driver.",
    "The woman did not read the document.",
    "Andrew White is the Prime Minister.",
    "Michael said that the woman read the document.",
    "Michael told Kerry that the woman read the document.",
    "The old man from Blueland slept.",
    "The old man and the woman slept.",
    "Several friendly women stood in the house.",
    "Some ancient old men slept.",
    "The sick woman 's house stood in the region.",
    "Dale 's car stood in the region.",
]


def main() -> int:
    lex = seed_lexicon()
    aliases = seed_aliases(lex)
    acronyms = seed_acronyms()
    parser = Parser(lex)
    t0 = time.perf_counter()
    for text in CORPUS:
        stream = preprocess(segment(tokenize(text))[0], aliases, acronyms)
        trees = parser.parse(stream)
        print(f"\nI: {text}   [{len(trees)} parse(s)]")
        for i, tree in enumerate(trees):
            tr = translate(to_graph(tree), None, UTTERANCE,
                           alloc=SymbolAllocator(), offset_minutes=OFFSET)
            print(f"C{i}: {print_form(tr.form)}")
            out = generate(tr.form, lex, OFFSET, aliases)
            ok = validate_roundtrip(tr.form, lex, UTTERANCE, OFFSET, aliases, acronyms)
            print(f"O{i}: {out}   [round-trip {'ok' if ok else 'FAILED'}]")
    print(f"\ndone in {time.perf_counter() - t0:.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
