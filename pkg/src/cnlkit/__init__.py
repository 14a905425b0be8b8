"""cnlkit: a bidirectional controlled-English engine.

Restricted English in, functor-argument logic terms out; a session
knowledge base answers queries over what was asserted, and the generator
renders logical forms back as English validated by the same grammar.
"""

from .chronos import AllenRelation, Interval, TimeRef, Timestamp, allen_relation
from .deep import DeepGraph, InterpretationSet, PreferenceProfile, rank, select, to_graph
from .effector import generate, validate_roundtrip
from .kb import FactStore, TrackRecord, answer, assert_form, ingest_tracks, situation_report
from .lexicon import (
    AcronymEntry,
    AdjClass,
    AliasEntry,
    FeatureBundle,
    LexEntry,
    Lexicon,
    POS,
    adjective_order_valid,
    load_acronyms,
    load_aliases,
    load_lexicon,
    lookup,
    seed_acronyms,
    seed_aliases,
    seed_lexicon,
)
from .parser import ParseTree, Parser, parse, parse_query_focus
from .session import Session
from .surface import InputDiagnostic, TokenStream, expand_acronyms, fold_aliases, precheck, tokenize
from .terms import Form, alpha_equal, matches_golden, print_form, print_term, read_form, read_term
from .translate import Envelope, envelope, translate

__version__ = "0.1.0"
