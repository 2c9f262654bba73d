"""
Propositional formulas over event-occurrence and exogenous atoms.

Grammar (loosest binding first)::

    iff     := imp ('<->' imp)*          left-associative
    imp     := or ('->' imp)?            right-associative
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | '(' iff ')' | leaf
    leaf    := 'true' | 'false' | 'occ(' ID ')' | NAME

Trace predicates reuse the same connectives with the leaves
``first(ID)``, ``occurs(ID)`` and ``before(ID, ID)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

from pescf.core import PrimeEventStructure
from pescf.errors import AtomLimitExceeded, ParseError, UnknownAtom, UnknownEvent

DEFAULT_MAX_ATOMS = 24


# ---------------------------------------------------------------------- #
# Syntax
# ---------------------------------------------------------------------- #


@dataclass(frozen=True, order=True)
class Atom:
    """``kind`` is ``"occ"`` for event occurrence, ``"exo"`` otherwise."""

    kind: str
    name: str

    def __str__(self) -> str:
        return f"occ({self.name})" if self.kind == "occ" else self.name


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Not:
    arg: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return format_formula(self)


# trace-predicate leaves
@dataclass(frozen=True)
class First:
    event: str

    def __str__(self) -> str:
        return f"first({self.event})"


@dataclass(frozen=True)
class Occurs:
    event: str

    def __str__(self) -> str:
        return f"occurs({self.event})"


@dataclass(frozen=True)
class Before:
    first: str
    second: str

    def __str__(self) -> str:
        return f"before({self.first}, {self.second})"


Formula = Union[Atom, Const, Not, And, Or, Implies, Iff, First, Occurs, Before]

_BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def occ(event: str) -> Atom:
    return Atom("occ", event)


def exo(name: str) -> Atom:
    return Atom("exo", name)


def conj(*parts: Formula) -> Formula:
    if not parts:
        return Const(True)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 6)


def format_formula(f: Formula) -> str:
    """Render with the minimum parentheses needed to parse back identically."""
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        return "!" + (f"({inner})" if _prec(f.arg) < 5 else inner)
    op = _BINARY.get(type(f))
    if op is None:
        return str(f)
    p = _prec(f)
    left, right = format_formula(f.left), format_formula(f.right)
    right_assoc = isinstance(f, Implies)
    if _prec(f.left) < p or (right_assoc and _prec(f.left) == p):
        left = f"({left})"
    if _prec(f.right) < p or (not right_assoc and _prec(f.right) == p):
        right = f"({right})"
    return f"{left} {op} {right}"


# ---------------------------------------------------------------------- #
# Parsing
# ---------------------------------------------------------------------- #

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|!|&|\||\(|\)|,)|(?P<id>[A-Za-z0-9_.:']+(?:-(?!>)[A-Za-z0-9_.:']+)*))"
)


def _tokenize(text: str, line: int | None) -> list[str]:
    tokens: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at column {pos + 1}", line)
        tokens.append(m.group("op") or m.group("id"))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, leaf: Callable[[_Parser], Formula], line: int | None) -> None:
        self.tokens = _tokenize(text, line)
        self.pos = 0
        self.leaf = leaf
        self.line = line

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input" + (f", expected {expected!r}" if expected else ""), self.line)
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}", self.line)
        self.pos += 1
        return tok

    def ident(self) -> str:
        tok = self.take()
        if not re.fullmatch(r"[A-Za-z0-9_.:'\-]+", tok):
            raise ParseError(f"expected identifier, got {tok!r}", self.line)
        return tok

    def parse(self) -> Formula:
        if not self.tokens:
            raise ParseError("empty formula", self.line)
        f = self.iff()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.line)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            self.take(")")
            return f
        if tok in ("true", "false"):
            self.take()
            return Const(tok == "true")
        return self.leaf(self)


def _call(p: _Parser, arity: int) -> list[str]:
    p.take("(")
    args = [p.ident()]
    for _ in range(arity - 1):
        p.take(",")
        args.append(p.ident())
    p.take(")")
    return args


def parse_formula(text: str, es: PrimeEventStructure | None = None, *, line: int | None = None) -> Formula:
    """Parse a belief formula.

    With ``es`` given, ``occ(ID)`` must name an event of ``es`` and bare
    names must be declared exogenous atoms; otherwise any atom is accepted.

    Raises:
        ParseError: malformed text.
        UnknownAtom: undeclared atom.
    """

    def leaf(p: _Parser) -> Formula:
        name = p.ident()
        if name == "occ" and p.peek() == "(":
            (event,) = _call(p, 1)
            if es is not None and event not in es:
                raise UnknownAtom(f"occ({event})", line)
            return Atom("occ", event)
        if p.peek() == "(":
            raise ParseError(f"unknown operator {name!r}", line)
        if es is not None and name not in es.exogenous_atoms:
            raise UnknownAtom(name, line)
        return Atom("exo", name)

    return _Parser(text, leaf, line).parse()


def parse_trace_predicate(text: str, es: PrimeEventStructure | None = None, *, line: int | None = None) -> Formula:
    """Parse a predicate over traces built from first/occurs/before."""

    def check(event: str) -> str:
        if es is not None and event not in es:
            raise UnknownEvent(event, line)
        return event

    def leaf(p: _Parser) -> Formula:
        name = p.ident()
        if p.peek() != "(":
            raise ParseError(f"expected first(..), occurs(..) or before(..,..), got {name!r}", line)
        if name == "first":
            return First(check(_call(p, 1)[0]))
        if name == "occurs":
            return Occurs(check(_call(p, 1)[0]))
        if name == "before":
            a, b = _call(p, 2)
            return Before(check(a), check(b))
        raise ParseError(f"unknown predicate {name!r}", line)

    return _Parser(text, leaf, line).parse()


# ---------------------------------------------------------------------- #
# Semantics
# ---------------------------------------------------------------------- #


def atoms(formulas: Formula | Iterable[Formula]) -> set[Atom]:
    if isinstance(formulas, (Atom, Const, Not, And, Or, Implies, Iff, First, Occurs, Before)):
        formulas = [formulas]
    out: set[Atom] = set()
    stack = list(formulas)
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            out.add(f)
        elif isinstance(f, Not):
            stack.append(f.arg)
        elif isinstance(f, (And, Or, Implies, Iff)):
            stack.extend((f.left, f.right))
    return out


def evaluate(f: Formula, leaf: Callable[[Formula], bool | None]) -> bool | None:
    """Kleene three-valued evaluation; ``leaf`` may answer ``None`` (unknown)."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        v = evaluate(f.arg, leaf)
        return None if v is None else not v
    if isinstance(f, And):
        a = evaluate(f.left, leaf)
        if a is False:
            return False
        b = evaluate(f.right, leaf)
        if b is False:
            return False
        return True if a and b else None
    if isinstance(f, Or):
        a = evaluate(f.left, leaf)
        if a is True:
            return True
        b = evaluate(f.right, leaf)
        if b is True:
            return True
        return False if a is False and b is False else None
    if isinstance(f, Implies):
        a = evaluate(f.left, leaf)
        if a is False:
            return True
        b = evaluate(f.right, leaf)
        if b is True:
            return True
        return False if a is True and b is False else None
    if isinstance(f, Iff):
        a = evaluate(f.left, leaf)
        b = evaluate(f.right, leaf)
        if a is None or b is None:
            return None
        return a == b
    return leaf(f)


def holds(f: Formula, assignment: Mapping[Atom, bool]) -> bool | None:
    return evaluate(f, assignment.get)


def find_model(
    formulas: Iterable[Formula], *, max_atoms: int = DEFAULT_MAX_ATOMS
) -> dict[Atom, bool] | None:
    """A satisfying assignment for all ``formulas``, or ``None``.

    Backtracking over atoms in sorted order; a branch is cut as soon as
    some formula evaluates to false under the partial assignment.
    """
    formulas = list(formulas)
    universe = sorted(atoms(formulas))
    if len(universe) > max_atoms:
        raise AtomLimitExceeded(f"{len(universe)} atoms exceed the limit of {max_atoms}")
    assignment: dict[Atom, bool] = {}

    def search(i: int, pending: list[Formula]) -> bool:
        still: list[Formula] = []
        for f in pending:
            v = holds(f, assignment)
            if v is False:
                return False
            if v is None:
                still.append(f)
        if not still:
            return True
        atom = universe[i]
        for value in (True, False):
            assignment[atom] = value
            if search(i + 1, still):
                return True
        del assignment[atom]
        return False

    if not search(0, formulas):
        return None
    return {a: assignment.get(a, False) for a in universe}


def satisfiable(formulas: Iterable[Formula], *, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    return find_model(formulas, max_atoms=max_atoms) is not None


def entails(premises: Iterable[Formula], conclusion: Formula, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Classical consequence: premises plus the negated conclusion is unsatisfiable."""
    return not satisfiable([*premises, Not(conclusion)], max_atoms=max_atoms)


def eval_trace_predicate(pred: Formula, trace: Iterable[str], es: PrimeEventStructure | None = None) -> bool:
    """Evaluate a trace predicate on a concrete trace.

    Raises:
        UnknownEvent: with ``es`` given, for events the model lacks.
    """
    steps = list(trace)
    index = {e: i for i, e in enumerate(steps)}

    def leaf(f: Formula) -> bool:
        if isinstance(f, First):
            if es is not None:
                es.check(f.event)
            return bool(steps) and steps[0] == f.event
        if isinstance(f, Occurs):
            if es is not None:
                es.check(f.event)
            return f.event in index
        if isinstance(f, Before):
            if es is not None:
                es.check(f.first)
                es.check(f.second)
            return f.first in index and f.second in index and index[f.first] < index[f.second]
        raise TypeError(f"not a trace predicate: {f}")

    result = evaluate(pred, leaf)
    assert result is not None
    return result
