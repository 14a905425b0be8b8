"""Functor-argument logic terms and their textual form.

The term language is small and fixed:

    term  := atom | number | var | atom '(' args ')' | '[' args ']'
           | '@(' args ')' | '~' term | '(' term '=>' term ')'
           | '(' term '&' term ... ')' | 'identical[' args ']'

Atoms are snake_case or CamelCase identifiers, or single-quoted strings for
anything else (track ids with hyphens, etc.).  Variables are the reserved
shapes ``skcN`` (entity skolems), ``t_N`` (times), ``s_N`` (spaces) and
``qN`` (query-internal).  Whitespace is insignificant outside quotes.
Printing is canonical: no whitespace at all.

Entity occurrences are ternary at-terms ``@(label,time,space)``.  A full
sentence meaning is a :class:`Form` - a conjunction of clauses.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

Number = Union[int, float]

VAR_RE = re.compile(r"(skc\d+|t_\d+|s_\d+|q\d+)$")
ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")
PLAIN_ATOM_RE = ATOM_RE  # atoms needing no quotes


class TermError(ValueError):
    """Raised for malformed term text or ill-formed term construction."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Num:
    value: Number

    def __repr__(self):
        return f"Num({self.value!r})"


@dataclass(frozen=True)
class Var:
    name: str

    @property
    def family(self) -> str:
        """skc / t / s / q - renamings must stay within a family."""
        if self.name.startswith("skc"):
            return "skc"
        if self.name.startswith("t_"):
            return "t"
        if self.name.startswith("s_"):
            return "s"
        return "q"

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class Struct:
    functor: str
    args: tuple["Term", ...]

    def __repr__(self):
        return f"Struct({self.functor!r}, {self.args!r})"


@dataclass(frozen=True)
class Items:
    """A bracketed list ``[a,b,c]``; used for feature lists, manner lists
    and the variable list of an ``all`` form."""

    items: tuple["Term", ...]

    def __repr__(self):
        return f"Items({self.items!r})"


Term = Union[Atom, Num, Var, Struct, Items]

ELLIPSIS = Atom("...")


def at_term(label: Term, time: Term, space: Term) -> Struct:
    return Struct("@", (label, time, space))


def is_at_term(t: Term) -> bool:
    return isinstance(t, Struct) and t.functor == "@" and len(t.args) == 3


def conj(parts: Iterable[Term]) -> Term:
    parts = list(parts)
    if not parts:
        raise TermError("empty conjunction")
    if len(parts) == 1:
        return parts[0]
    return Struct("&", tuple(parts))


def implies(antecedent: Term, consequent: Term) -> Struct:
    return Struct("=>", (antecedent, consequent))


def neg(t: Term) -> Struct:
    return Struct("~", (t,))


def all_of(variables: Iterable[Var], body: Term) -> Struct:
    return Struct("all", (Items(tuple(variables)), body))


@dataclass(frozen=True)
class Form:
    """A conjunction of clauses - the meaning of one sentence."""

    clauses: tuple[Term, ...]

    def __iter__(self) -> Iterator[Term]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


# ---------------------------------------------------------------------------
# printing


def print_term(t: Term) -> str:
    if isinstance(t, Atom):
        return _print_atom(t.name)
    if isinstance(t, Num):
        return repr(t.value) if isinstance(t.value, float) else str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Items):
        return "[" + ",".join(print_term(x) for x in t.items) + "]"
    if isinstance(t, Struct):
        if t.functor == "~":
            return "~" + print_term(t.args[0])
        if t.functor == "=>":
            return "(" + print_term(t.args[0]) + "=>" + print_term(t.args[1]) + ")"
        if t.functor == "&":
            return "(" + "&".join(print_term(a) for a in t.args) + ")"
        if t.functor == "identical":
            return "identical[" + ",".join(print_term(a) for a in t.args) + "]"
        args = ",".join(print_term(a) for a in t.args)
        if t.functor == "@":
            return "@(" + args + ")"
        return _print_atom(t.functor) + "(" + args + ")"
    raise TermError(f"not a term: {t!r}")


def print_form(f: Form) -> str:
    return ",".join(print_term(c) for c in f.clauses)


def _print_atom(name: str) -> str:
    if name == "...":
        return name
    if PLAIN_ATOM_RE.match(name) and not VAR_RE.match(name):
        return name
    return "'" + name.replace("'", "\\'") + "'"


# ---------------------------------------------------------------------------
# reading


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> TermError:
        return TermError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def try_take(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def read_name(self) -> str:
        self.skip_ws()
        m = re.match(r"[A-Za-z][A-Za-z0-9_]*", self.text[self.pos:])
        if not m:
            raise self.error("expected a name")
        self.pos += m.end()
        return m.group(0)

    def read_term(self) -> Term:
        left = self.read_operand()
        # infix chains: => (binary, right assoc) and & (n-ary)
        if self.try_take("=>"):
            right = self.read_term()
            return Struct("=>", (left, right))
        if self.peek() == "&":
            parts = [left]
            while self.try_take("&"):
                parts.append(self.read_operand())
            return Struct("&", tuple(parts))
        return left

    def read_operand(self) -> Term:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "~":
            self.pos += 1
            return Struct("~", (self.read_operand(),))
        if ch == "(":
            self.pos += 1
            inner = self.read_term()
            self.expect(")")
            return inner
        if ch == "[":
            return self.read_items()
        if ch == "@":
            self.pos += 1
            self.expect("(")
            args = self.read_args(")")
            if len(args) != 3:
                raise self.error("@-terms take exactly 3 arguments")
            return Struct("@", tuple(args))
        if ch == "'":
            return Atom(self.read_quoted())
        if self.text.startswith("...", self.pos):
            self.pos += 3
            return ELLIPSIS
        if ch.isdigit() or ch == "-":
            return self.read_number()
        name = self.read_name()
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            self.pos += 1
            args = self.read_args(")")
            return Struct(name, tuple(args))
        if self.pos < len(self.text) and self.text[self.pos] == "[" and name == "identical":
            self.pos += 1
            args = self.read_args("]")
            return Struct("identical", tuple(args))
        if VAR_RE.match(name):
            return Var(name)
        return Atom(name)

    def read_items(self) -> Items:
        self.expect("[")
        if self.peek() == "]":
            self.pos += 1
            return Items(())
        args = self.read_args("]")
        return Items(tuple(args))

    def read_args(self, close: str) -> list[Term]:
        args = [self.read_term()]
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                raise self.error(f"expected {close!r}")
            if self.text[self.pos] == ",":
                self.pos += 1
                args.append(self.read_term())
            elif self.text[self.pos] == close:
                self.pos += 1
                return args
            else:
                raise self.error(f"expected ',' or {close!r}")

    def read_quoted(self) -> str:
        self.expect("'")
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\" and self.pos + 1 < len(self.text):
                out.append(self.text[self.pos + 1])
                self.pos += 2
                continue
            if ch == "'":
                self.pos += 1
                return "".join(out)
            out.append(ch)
            self.pos += 1
        raise self.error("unterminated quoted atom")

    def read_number(self) -> Num:
        m = re.match(r"-?\d+(\.\d+)?", self.text[self.pos:])
        if not m:
            raise self.error("expected a number")
        self.pos += m.end()
        text = m.group(0)
        return Num(float(text) if "." in text else int(text))


def read_term(text: str) -> Term:
    r = _Reader(text)
    t = r.read_term()
    r.skip_ws()
    if r.pos != len(r.text):
        raise r.error("trailing input after term")
    return t


def read_form(text: str) -> Form:
    """Read a comma-separated conjunction of clauses; a trailing '.' is ok."""
    text = text.strip()
    if text.endswith("."):
        text = text[:-1]
    r = _Reader(text)
    clauses = [r.read_term()]
    while r.try_take(","):
        clauses.append(r.read_term())
    r.skip_ws()
    if r.pos != len(r.text):
        raise r.error("trailing input after form")
    return Form(tuple(clauses))


# ---------------------------------------------------------------------------
# alpha-equality

# Renaming is bijective per variable family (skc<->skc, t<->t, s<->s).
# Variables bound by an `all` list are matched positionally within their
# scope; free variables through a single global bijection.  Clause order is
# insignificant.


class _Match:
    def __init__(self, feature_superset: bool):
        self.fwd: dict[str, str] = {}
        self.bwd: dict[str, str] = {}
        self.feature_superset = feature_superset

    def bind(self, a: Var, b: Var) -> bool:
        if a.family != b.family:
            return False
        if self.feature_superset and a.family == "s":
            # golden texts simplify skolem numbering, which breaks the
            # pairing of space symbols across scopes; spaces are opaque,
            # so golden matching only requires the family to agree
            return True
        if self.fwd.get(a.name, b.name) != b.name:
            return False
        if self.bwd.get(b.name, a.name) != a.name:
            return False
        self.fwd[a.name] = b.name
        self.bwd[b.name] = a.name
        return True

    def snapshot(self):
        return dict(self.fwd), dict(self.bwd)

    def restore(self, snap):
        self.fwd, self.bwd = snap


def _is_feature_list(t: Items) -> bool:
    return all(
        isinstance(x, Atom)
        or (isinstance(x, Struct) and not any(isinstance(a, (Struct, Items)) for a in x.args))
        for x in t.items
    )


def _match_terms(a: Term, b: Term, m: _Match, env: list[tuple[str, str]]) -> bool:
    """Can `a` be renamed onto `b`?  env holds bound-variable pairs."""
    if isinstance(a, Var) and isinstance(b, Var):
        for (na, nb) in reversed(env):
            if na == a.name or nb == b.name:
                return na == a.name and nb == b.name
        return m.bind(a, b)
    if type(a) is not type(b):
        return False
    if isinstance(a, Atom):
        return a.name == b.name
    if isinstance(a, Num):
        return a.value == b.value
    if isinstance(a, Items):
        return _match_items(a, b, m, env)
    if isinstance(a, Struct):
        if a.functor != b.functor:
            return False
        if a.functor == "all" and len(a.args) == 2 and len(b.args) == 2:
            return _match_all(a, b, m, env)
        if m.feature_superset and len(a.args) == len(b.args) + 1:
            # tolerate a trailing feature list the golden side elided
            extra = a.args[-1]
            if isinstance(extra, Items) and _is_feature_list(extra):
                return all(
                    _match_terms(x, y, m, env) for x, y in zip(a.args[:-1], b.args)
                )
        if len(a.args) != len(b.args):
            return False
        return all(_match_terms(x, y, m, env) for x, y in zip(a.args, b.args))
    return False


def _match_all(a: Struct, b: Struct, m: _Match, env: list[tuple[str, str]]) -> bool:
    avars, abody = a.args
    bvars, bbody = b.args
    if not isinstance(avars, Items) or not isinstance(bvars, Items):
        return False
    if len(avars.items) != len(bvars.items):
        return False
    pairs = []
    for va, vb in zip(avars.items, bvars.items):
        if not isinstance(va, Var) or not isinstance(vb, Var) or va.family != vb.family:
            return False
        pairs.append((va.name, vb.name))
    return _match_terms(abody, bbody, m, env + pairs)


def _match_items(a: Items, b: Items, m: _Match, env) -> bool:
    # A golden-side list of plain features compares as a set; with
    # feature_superset it may also be a subset of the candidate's, and a
    # bare [...] matches anything.
    if _is_feature_list(a) and _is_feature_list(b):
        aset = {print_term(x) for x in a.items if x != ELLIPSIS}
        bset = {print_term(x) for x in b.items if x != ELLIPSIS}
        has_ellipsis = ELLIPSIS in a.items or ELLIPSIS in b.items
        if m.feature_superset:
            return aset >= bset  # golden (b) features all present in candidate
        if has_ellipsis:
            return aset >= bset or bset >= aset
        return aset == bset
    if len(a.items) != len(b.items):
        return False
    return all(_match_terms(x, y, m, env) for x, y in zip(a.items, b.items))


def _term_shape(t: Term) -> str:
    """Coarse signature used to prune the clause-matching search."""
    if isinstance(t, Struct):
        return f"{t.functor}/{len(t.args)}"
    return type(t).__name__


def _match_clause_seq(
    cand: list[Term], golden: list[Term], m: _Match, require_onto: bool
) -> bool:
    """Injectively match every golden clause to a distinct candidate clause.

    With require_onto, the match must also exhaust the candidate clauses
    (a bijection).
    """
    if require_onto and len(cand) != len(golden):
        return False

    def step(gi: int, used: set[int]) -> bool:
        if gi == len(golden):
            return not require_onto or len(used) == len(cand)
        g = golden[gi]
        for ci, c in enumerate(cand):
            if ci in used:
                continue
            if _term_shape(c) != _term_shape(g) and not m.feature_superset:
                continue
            snap = m.snapshot()
            if _match_terms(c, g, m, []):
                if step(gi + 1, used | {ci}):
                    return True
            m.restore(snap)
        return False

    return step(0, set())


def alpha_equal(a: Form, b: Form) -> bool:
    """True iff a consistent bijective renaming of skc/t/s symbols maps
    `a` onto `b`, insensitive to clause order."""
    m = _Match(feature_superset=False)
    return _match_clause_seq(list(a.clauses), list(b.clauses), m, require_onto=True)


def matches_golden(candidate: Form, golden: Form) -> bool:
    """Embedding check against a printed golden form.

    Every golden clause must map onto a distinct candidate clause under a
    consistent renaming.  Feature lists tolerate supersets (golden texts
    elide features with '...'), trailing feature lists may be elided
    entirely, and the candidate may carry extra clauses that the golden
    text omitted.
    """
    m = _Match(feature_superset=True)
    return _match_clause_seq(list(candidate.clauses), list(golden.clauses), m, require_onto=False)


# ---------------------------------------------------------------------------
# symbol allocation


class SymbolAllocator:
    """Monotone per-session counters for fresh skc / t_ / s_ / q symbols."""

    def __init__(self):
        self._counts = {"skc": 0, "t": 0, "s": 0, "q": 0}

    def _next(self, family: str) -> int:
        self._counts[family] += 1
        return self._counts[family]

    def fresh_skolem(self) -> Var:
        return Var(f"skc{self._next('skc')}")

    def fresh_time(self) -> Var:
        return Var(f"t_{self._next('t')}")

    def fresh_space(self) -> Var:
        return Var(f"s_{self._next('s')}")

    def fresh_query(self) -> Var:
        return Var(f"q{self._next('q')}")

    def entity(self) -> tuple[Var, Var]:
        """A skolem and its space symbol, allocated with the same index."""
        n = self._next("skc")
        self._counts["s"] = max(self._counts["s"], n)
        return Var(f"skc{n}"), Var(f"s_{n}")
