"""Term reading/printing, alpha-equality, golden-form matching."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnlkit.terms import (
    Atom,
    Form,
    Items,
    Num,
    Struct,
    SymbolAllocator,
    TermError,
    Var,
    alpha_equal,
    matches_golden,
    print_form,
    print_term,
    read_form,
    read_term,
)

WOMAN_STOOD = (
    "animate(@(skc2,t_4,s_2)),"
    "female(@(skc2,t_4,s_2)),"
    "before(t_4,invl(timestamp(2014,6,2,1,3,48),timestamp(2014,6,2,1,3,48))),"
    "location_in([stands(@(skc2,t_4,s_2))],@(skc3,t_4,s_3)),"
    "woman(@(skc2,t_4,s_2),[animate,definite,singular,...]),"
    "house(@(skc3,t_4,s_3),[definite,singular,prep(in)]),"
    "stands(@(skc2,t_4,s_2),[past,...])"
)

WOMEN_STAND = (
    "all([skc2],(woman(@(skc2,t_3,s_2),[female,plural,...])"
    "=>stands(@(skc2,t_3,s_2),[general_habitual,...])))"
)


def test_read_paper_shapes():
    f = read_form(WOMAN_STOOD)
    assert len(f) == 7
    woman = f.clauses[4]
    assert isinstance(woman, Struct) and woman.functor == "woman"
    at = woman.args[0]
    assert isinstance(at, Struct) and at.functor == "@" and len(at.args) == 3


def test_read_two_arg_predicate():
    t = read_term("woman(@(skc2,t_4,s_2),[definite])")
    assert isinstance(t, Struct)
    assert len(t.args) == 2


def test_read_error_position():
    with pytest.raises(TermError) as e:
        read_term("woman(@(skc2,t_4)")
    assert e.value.position is not None


def test_identical_brackets_roundtrip():
    s = "identical[@(skc6,t_10,s_6),@(skc7,t_10,s_7)]"
    t = read_term(s)
    assert isinstance(t, Struct) and t.functor == "identical"
    assert print_term(t) == s


def test_print_read_identity_on_paper_corpus():
    for text in [WOMAN_STOOD, WOMEN_STAND]:
        f = read_form(text)
        assert print_form(f) == text
        assert read_form(print_form(f)) == f


def test_quoted_atoms():
    t = read_term("track_id(@(skc1,t_1,s_1),'MR41_PAN-EAV')")
    assert print_term(t) == "track_id(@(skc1,t_1,s_1),'MR41_PAN-EAV')"


def test_floats():
    t = read_term("position(@(skc1,t_1,s_1),latlon(-12.5,130.25))")
    assert print_term(t) == "position(@(skc1,t_1,s_1),latlon(-12.5,130.25))"


# --- alpha-equality -------------------------------------------------------


def rename_form(text: str, mapping: dict) -> Form:
    out = text
    for old, new in mapping.items():
        out = out.replace(old, "\0" + new + "\0")
    return read_form(out.replace("\0", ""))


def brute_force_alpha(a: Form, b: Form) -> bool:
    """Independent oracle: enumerate all family-respecting bijections over
    the symbols of `a`, all clause orderings via set equality of prints."""

    def symbols(f: Form):
        syms = set()

        def walk(t):
            if isinstance(t, Var):
                syms.add(t.name)
            elif isinstance(t, Struct):
                for x in t.args:
                    walk(x)
            elif isinstance(t, Items):
                for x in t.items:
                    walk(x)

        for c in f.clauses:
            walk(c)
        return syms

    def by_family(names):
        fams = {"skc": [], "t": [], "s": [], "q": []}
        for n in sorted(names):
            fams[Var(n).family].append(n)
        return fams

    sa, sb = by_family(symbols(a)), by_family(symbols(b))
    if any(len(sa[f]) != len(sb[f]) for f in sa):
        return False

    def clause_sets(f: Form, mapping):
        def walk(t):
            if isinstance(t, Var):
                return Var(mapping.get(t.name, t.name))
            if isinstance(t, Struct):
                return Struct(t.functor, tuple(walk(x) for x in t.args))
            if isinstance(t, Items):
                if all(isinstance(x, Atom) for x in t.items):
                    return Items(tuple(sorted(t.items, key=lambda x: x.name)))
                return Items(tuple(walk(x) for x in t.items))
            return t

        return frozenset(print_term(walk(c)) for c in f.clauses)

    target = clause_sets(b, {})
    fam_perms = [
        list(itertools.permutations(sb[fam])) for fam in ("skc", "t", "s", "q")
    ]
    fam_names = [sa[fam] for fam in ("skc", "t", "s", "q")]
    for combo in itertools.product(*fam_perms):
        mapping = {}
        for names, perm in zip(fam_names, combo):
            mapping.update(dict(zip(names, perm)))
        if clause_sets(a, mapping) == target:
            return True
    return False


def test_alpha_reflexive():
    f = read_form(WOMAN_STOOD)
    assert alpha_equal(f, f)


def test_alpha_renamed_matches_oracle():
    base = read_form(WOMEN_STAND)
    renamed = rename_form(WOMEN_STAND, {"skc2": "skc9", "t_3": "t_7", "s_2": "s_9"})
    assert alpha_equal(base, renamed)
    assert brute_force_alpha(base, renamed)


def test_alpha_different_functors():
    a = read_form(WOMEN_STAND)
    b = read_form("woman(@(skc81,t_22,s_81),[definite]),~reads(@(skc81,t_22,s_81),[past])")
    assert not alpha_equal(a, b)
    assert not brute_force_alpha(a, b)


def test_alpha_rejects_non_bijective_renaming():
    a = read_form("sees(@(skc1,t_1,s_1),@(skc2,t_1,s_2),[past])")
    b = read_form("sees(@(skc1,t_1,s_1),@(skc1,t_1,s_1),[past])")
    assert not alpha_equal(a, b)
    assert not brute_force_alpha(a, b)


def test_alpha_matches_brute_force_on_small_forms():
    cases = [
        "woman(@(skc1,t_1,s_1),[female,singular])",
        "woman(@(skc2,t_4,s_2),[female,singular])",
        "woman(@(skc1,t_1,s_1),[female,singular]),house(@(skc2,t_1,s_2),[definite])",
        "house(@(skc9,t_2,s_9),[definite]),woman(@(skc8,t_2,s_8),[female,singular])",
        "reads(@(skc1,t_1,s_1),@(skc2,t_1,s_2),[past])",
        "reads(@(skc2,t_1,s_2),@(skc1,t_1,s_1),[past])",
    ]
    forms = [read_form(c) for c in cases]
    for a, b in itertools.product(forms, repeat=2):
        assert alpha_equal(a, b) == brute_force_alpha(a, b), (a, b)


def test_alpha_clause_order_insensitive():
    a = read_form("woman(@(skc1,t_1,s_1),[female]),house(@(skc2,t_1,s_2),[definite])")
    b = read_form("house(@(skc5,t_9,s_5),[definite]),woman(@(skc4,t_9,s_4),[female])")
    assert alpha_equal(a, b)


def test_alpha_bound_variables_scope_locally():
    # the same bound name may recur in sibling scopes without forcing a
    # global identification (free t_/s_ symbols still map globally)
    a = read_form(
        "all([skc1],woman(@(skc1,t_1,s_1),[])=>stands(@(skc1,t_1,s_1),[])),"
        "all([skc2],man(@(skc2,t_1,s_2),[])=>sleeps(@(skc2,t_1,s_2),[]))"
    )
    b = read_form(
        "all([skc81],woman(@(skc81,t_9,s_81),[])=>stands(@(skc81,t_9,s_81),[])),"
        "all([skc81],man(@(skc81,t_9,s_84),[])=>sleeps(@(skc81,t_9,s_84),[]))"
    )
    assert alpha_equal(a, b)


# --- golden matching ------------------------------------------------------


def test_golden_feature_superset_tolerated():
    golden = read_form("woman(@(skc2,t_3,s_2),[female,plural,...])")
    candidate = read_form("woman(@(skc5,t_1,s_5),[animate,female,indefinite,plural,common_noun])")
    assert matches_golden(candidate, golden)
    missing = read_form("woman(@(skc5,t_1,s_5),[animate,plural])")
    assert not matches_golden(missing, golden)


def test_golden_extra_candidate_clauses_tolerated():
    golden = read_form(
        "woman(@(skc81,t_22,s_81),[definite,...]),"
        "document(@(skc07,t_22,s_07),[definite,...]),"
        "~reads(@(skc81,t_22,s_81),@(skc07,t_22,s_07),[past,...])"
    )
    candidate = read_form(
        "woman(@(skc1,t_1,s_1),[animate,female,definite,singular]),"
        "animate(@(skc1,t_1,s_1)),"
        "female(@(skc1,t_1,s_1)),"
        "document(@(skc2,t_1,s_2),[definite,singular]),"
        "before(t_1,invl(timestamp(2014,6,2,1,3,48),timestamp(2014,6,2,1,3,48))),"
        "~reads(@(skc1,t_1,s_1),@(skc2,t_1,s_2),[past,main_verb])"
    )
    assert matches_golden(candidate, golden)


def test_golden_elided_trailing_feature_list():
    golden = read_form("~sees(@(skc81,t_81,s_81),@(skc82,t_81,s_82))")
    candidate = read_form("~sees(@(skc1,t_1,s_1),@(skc2,t_1,s_2),[past,main_verb])")
    assert matches_golden(candidate, golden)


def test_golden_requires_all_golden_clauses():
    golden = read_form(
        "woman(@(skc1,t_1,s_1),[female]),stands(@(skc1,t_1,s_1),[past])"
    )
    candidate = read_form("woman(@(skc1,t_1,s_1),[female])")
    assert not matches_golden(candidate, golden)


def test_golden_bare_ellipsis_list_matches_anything():
    golden = read_form("car(@(skc82,t_81,s_82),[...])")
    candidate = read_form("car(@(skc4,t_2,s_4),[definite,singular])")
    assert matches_golden(candidate, golden)


# --- property tests -------------------------------------------------------

atoms = st.sampled_from(["woman", "house", "car", "stands", "reads", "past", "definite"])
variables = st.sampled_from(["skc1", "skc2", "t_1", "t_2", "s_1", "s_2"])


@st.composite
def small_terms(draw, depth=2):
    if depth == 0:
        kind = draw(st.integers(0, 2))
        if kind == 0:
            return Atom(draw(atoms))
        if kind == 1:
            return Var(draw(variables))
        return Num(draw(st.integers(-5, 5)))
    functor = draw(atoms)
    nargs = draw(st.integers(1, 3))
    args = tuple(draw(small_terms(depth=depth - 1)) for _ in range(nargs))
    return Struct(functor, args)


@st.composite
def small_forms(draw):
    n = draw(st.integers(1, 3))
    return Form(tuple(draw(small_terms()) for _ in range(n)))


@given(small_forms())
@settings(max_examples=60, deadline=None)
def test_print_read_roundtrip_property(f):
    assert read_form(print_form(f)) == f


@given(small_forms(), small_forms(), small_forms())
@settings(max_examples=40, deadline=None)
def test_alpha_equivalence_relation(a, b, c):
    assert alpha_equal(a, a)
    if alpha_equal(a, b):
        assert alpha_equal(b, a)
    if alpha_equal(a, b) and alpha_equal(b, c):
        assert alpha_equal(a, c)


def test_symbol_allocator_pairs_entity_indices():
    alloc = SymbolAllocator()
    skc, space = alloc.entity()
    assert skc.name == "skc1" and space.name == "s_1"
    skc2, space2 = alloc.entity()
    assert skc2.name == "skc2" and space2.name == "s_2"
    t = alloc.fresh_time()
    assert t.name == "t_1"
