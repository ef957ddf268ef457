"""Formula syntax: AST types, text grammar, derived-operator expansion.

Concrete grammar (whitespace insensitive)::

    state := "true" | ident | "!" state | state "&" state | state "|" state
           | state "->" state | state "<->" state | "(" state ")"
           | ("Po" | "Ne") "[" path "]"
    path  := "X" state | state "U" state | state "U<=" nat state
           | "G" state | "G<=" nat state | "F" state

Precedence, tightest first: ``!``, ``&``, ``|``, ``->``, ``<->``.  ``&``, ``|``
and ``<->`` associate to the left, ``->`` to the right.  ``true`` and the
operator letters ``Po Ne X U G F`` are reserved words.

The core connectives are truth, atoms, conjunction, negation and Po over the
path operators X, U, bounded U, G and bounded G.  Everything else
(``|  ->  <->  F  Ne[...]``) is sugar removed by :func:`expand_derived`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ONE, ZERO, format_poss, poss


class StateFormula:
    """Base class for state formulas."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)  # type: ignore[arg-type]


class PathFormula:
    """Base class for path formulas (only valid under Po[...] / Ne[...])."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_path(self)  # type: ignore[arg-type]


@dataclass(frozen=True)
class TrueLiteral(StateFormula):
    pass


TRUE = TrueLiteral()


@dataclass(frozen=True)
class Atom(StateFormula):
    name: str


@dataclass(frozen=True)
class Not(StateFormula):
    operand: StateFormula


@dataclass(frozen=True)
class And(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass(frozen=True)
class Or(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass(frozen=True)
class Implies(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass(frozen=True)
class Iff(StateFormula):
    left: StateFormula
    right: StateFormula


@dataclass(frozen=True)
class Po(StateFormula):
    path: PathFormula


@dataclass(frozen=True)
class Ne(StateFormula):
    path: PathFormula


@dataclass(frozen=True)
class Next(PathFormula):
    operand: StateFormula


@dataclass(frozen=True)
class Until(PathFormula):
    left: StateFormula
    right: StateFormula


@dataclass(frozen=True)
class BoundedUntil(PathFormula):
    left: StateFormula
    right: StateFormula
    bound: int

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("step bound must be non-negative")


@dataclass(frozen=True)
class Always(PathFormula):
    operand: StateFormula


@dataclass(frozen=True)
class BoundedAlways(PathFormula):
    operand: StateFormula
    bound: int

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("step bound must be non-negative")


@dataclass(frozen=True)
class Eventually(PathFormula):
    operand: StateFormula


class ParseError(ValueError):
    """Formula or interval text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_KEYWORDS = {"true", "Po", "Ne", "X", "U", "G", "F"}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|<=|[!&|()\[\],]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        start = match.start(match.lastgroup)  # type: ignore[arg-type]
        if match.group("nat") is not None:
            tokens.append(("nat", match.group("nat"), start))
        elif match.group("ident") is not None:
            word = match.group("ident")
            kind = word if word in _KEYWORDS else "ident"
            tokens.append((kind, word, start))
        else:
            tokens.append((match.group("op"), match.group("op"), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> tuple[str, str, int]:
        token = self.peek()
        if token[0] != kind:
            raise ParseError(
                f"expected {kind!r} but found {token[1] or 'end of input'!r}", token[2]
            )
        return self.advance()

    def parse_state(self) -> StateFormula:
        return self.parse_iff()

    def parse_iff(self) -> StateFormula:
        node = self.parse_implies()
        while self.peek()[0] == "<->":
            self.advance()
            node = Iff(node, self.parse_implies())
        return node

    def parse_implies(self) -> StateFormula:
        node = self.parse_or()
        if self.peek()[0] == "->":
            self.advance()
            return Implies(node, self.parse_implies())
        return node

    def parse_or(self) -> StateFormula:
        node = self.parse_and()
        while self.peek()[0] == "|":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> StateFormula:
        node = self.parse_unary()
        while self.peek()[0] == "&":
            self.advance()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> StateFormula:
        if self.peek()[0] == "!":
            self.advance()
            return Not(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> StateFormula:
        kind, value, position = self.peek()
        if kind == "true":
            self.advance()
            return TRUE
        if kind == "ident":
            self.advance()
            return Atom(value)
        if kind == "(":
            self.advance()
            node = self.parse_state()
            self.expect(")")
            return node
        if kind in ("Po", "Ne"):
            self.advance()
            self.expect("[")
            path = self.parse_path()
            self.expect("]")
            return Po(path) if kind == "Po" else Ne(path)
        raise ParseError(f"expected a formula but found {value or 'end of input'!r}", position)

    def parse_bound(self) -> int:
        token = self.expect("nat")
        return int(token[1])

    def parse_path(self) -> PathFormula:
        kind = self.peek()[0]
        if kind == "X":
            self.advance()
            return Next(self.parse_state())
        if kind == "G":
            self.advance()
            if self.peek()[0] == "<=":
                self.advance()
                bound = self.parse_bound()
                return BoundedAlways(self.parse_state(), bound)
            return Always(self.parse_state())
        if kind == "F":
            self.advance()
            return Eventually(self.parse_state())
        left = self.parse_state()
        self.expect("U")
        if self.peek()[0] == "<=":
            self.advance()
            bound = self.parse_bound()
            return BoundedUntil(left, self.parse_state(), bound)
        return Until(left, self.parse_state())


def parse_formula(text: str) -> StateFormula:
    """Parse *text* into a state-formula AST."""
    parser = _Parser(text)
    node = parser.parse_state()
    kind, value, position = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing input {value!r}", position)
    return node


_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}
_ATOMIC = 6


def _prec(f: StateFormula) -> int:
    return _PRECEDENCE.get(type(f), _ATOMIC)


def _fmt(f: StateFormula, parent: int, right_side: bool) -> str:
    p = _prec(f)
    text = _fmt_node(f)
    # Left-associative chains reparse only when the right child is unwrapped;
    # the mirror holds for the right-associative "->".
    needs = p < parent or (
        p == parent
        and (
            (right_side and type(f) in (And, Or, Iff))
            or (not right_side and type(f) is Implies)
        )
    )
    return f"({text})" if needs else text


def _fmt_node(f: StateFormula) -> str:
    if isinstance(f, TrueLiteral):
        return "true"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _fmt(f.operand, _PRECEDENCE[Not], False)
    if isinstance(f, And):
        return f"{_fmt(f.left, 4, False)} & {_fmt(f.right, 4, True)}"
    if isinstance(f, Or):
        return f"{_fmt(f.left, 3, False)} | {_fmt(f.right, 3, True)}"
    if isinstance(f, Implies):
        return f"{_fmt(f.left, 2, False)} -> {_fmt(f.right, 2, True)}"
    if isinstance(f, Iff):
        return f"{_fmt(f.left, 1, False)} <-> {_fmt(f.right, 1, True)}"
    if isinstance(f, Po):
        return f"Po[{format_path(f.path)}]"
    if isinstance(f, Ne):
        return f"Ne[{format_path(f.path)}]"
    raise TypeError(f"not a state formula: {f!r}")


def _fmt_operand(f: StateFormula) -> str:
    # Operands of path operators read better bracketed when they are binary.
    if isinstance(f, (And, Or, Implies, Iff)):
        return f"({_fmt_node(f)})"
    return _fmt_node(f)


def format_path(p: PathFormula) -> str:
    if isinstance(p, Next):
        return f"X {_fmt_operand(p.operand)}"
    if isinstance(p, Until):
        return f"{_fmt_operand(p.left)} U {_fmt_operand(p.right)}"
    if isinstance(p, BoundedUntil):
        return f"{_fmt_operand(p.left)} U<={p.bound} {_fmt_operand(p.right)}"
    if isinstance(p, Always):
        return f"G {_fmt_operand(p.operand)}"
    if isinstance(p, BoundedAlways):
        return f"G<={p.bound} {_fmt_operand(p.operand)}"
    if isinstance(p, Eventually):
        return f"F {_fmt_operand(p.operand)}"
    raise TypeError(f"not a path formula: {p!r}")


def format_formula(f: StateFormula) -> str:
    """Render an AST; ``parse_formula`` inverts this exactly."""
    return _fmt_node(f)


def expand_derived(f: StateFormula) -> StateFormula:
    """Rewrite sugar into the core connectives.

    Boolean sugar goes through De Morgan; ``F`` becomes ``true U``; every
    ``Ne[...]`` becomes negated ``Po[...]`` forms over the dualized path
    formula.  The result contains only truth, atoms, conjunction, negation and
    Po over X / U / bounded U / G / bounded G, and the function is idempotent.
    """
    if isinstance(f, (TrueLiteral, Atom)):
        return f
    if isinstance(f, Not):
        return Not(expand_derived(f.operand))
    if isinstance(f, And):
        return And(expand_derived(f.left), expand_derived(f.right))
    if isinstance(f, Or):
        return Not(And(Not(expand_derived(f.left)), Not(expand_derived(f.right))))
    if isinstance(f, Implies):
        return expand_derived(Or(Not(f.left), f.right))
    if isinstance(f, Iff):
        return And(
            expand_derived(Implies(f.left, f.right)),
            expand_derived(Implies(f.right, f.left)),
        )
    if isinstance(f, Po):
        return Po(_expand_path(f.path))
    if isinstance(f, Ne):
        return expand_derived(_rewrite_necessity(f.path))
    raise TypeError(f"not a state formula: {f!r}")


def _expand_path(p: PathFormula) -> PathFormula:
    if isinstance(p, Next):
        return Next(expand_derived(p.operand))
    if isinstance(p, Until):
        return Until(expand_derived(p.left), expand_derived(p.right))
    if isinstance(p, BoundedUntil):
        return BoundedUntil(expand_derived(p.left), expand_derived(p.right), p.bound)
    if isinstance(p, Always):
        return Always(expand_derived(p.operand))
    if isinstance(p, BoundedAlways):
        return BoundedAlways(expand_derived(p.operand), p.bound)
    if isinstance(p, Eventually):
        return Until(TRUE, expand_derived(p.operand))
    raise TypeError(f"not a path formula: {p!r}")


def _rewrite_necessity(p: PathFormula) -> StateFormula:
    """Necessity of a path event as negated possibility of its dual."""
    if isinstance(p, Next):
        return Not(Po(Next(Not(p.operand))))
    if isinstance(p, Until):
        na, nb = Not(p.left), Not(p.right)
        return And(Not(Po(Until(nb, And(na, nb)))), Not(Po(Always(na))))
    if isinstance(p, BoundedUntil):
        na, nb = Not(p.left), Not(p.right)
        return And(
            Not(Po(BoundedUntil(nb, And(na, nb), p.bound))),
            Not(Po(BoundedAlways(na, p.bound))),
        )
    if isinstance(p, Always):
        return Not(Po(Eventually(Not(p.operand))))
    if isinstance(p, Eventually):
        return Not(Po(Always(Not(p.operand))))
    if isinstance(p, BoundedAlways):
        # Dual of the bounded-G by the same pattern: a truncated "eventually".
        return Not(Po(BoundedUntil(TRUE, Not(p.operand), p.bound)))
    raise TypeError(f"not a path formula: {p!r}")


def is_core(f: StateFormula) -> bool:
    """True when *f* contains no sugared connective."""
    if isinstance(f, (TrueLiteral, Atom)):
        return True
    if isinstance(f, Not):
        return is_core(f.operand)
    if isinstance(f, And):
        return is_core(f.left) and is_core(f.right)
    if isinstance(f, Po):
        p = f.path
        if isinstance(p, Next):
            return is_core(p.operand)
        if isinstance(p, (Until, BoundedUntil)):
            return is_core(p.left) and is_core(p.right)
        if isinstance(p, (Always, BoundedAlways)):
            return is_core(p.operand)
        return False
    return False


def formula_size(f: StateFormula) -> int:
    """Number of subformulas of a core formula.

    Atoms and truth count 1; negation and the unary path operators add 1;
    conjunction and the until forms add 1 to the sum of their operands.
    """
    if isinstance(f, (TrueLiteral, Atom)):
        return 1
    if isinstance(f, Not):
        return formula_size(f.operand) + 1
    if isinstance(f, And):
        return formula_size(f.left) + formula_size(f.right) + 1
    if isinstance(f, Po):
        p = f.path
        if isinstance(p, Next):
            return formula_size(p.operand) + 1
        if isinstance(p, (Always, BoundedAlways)):
            return formula_size(p.operand) + 1
        if isinstance(p, (Until, BoundedUntil)):
            return formula_size(p.left) + formula_size(p.right) + 1
    raise ValueError(f"formula is not in core form (run expand_derived first): {f}")


@dataclass(frozen=True)
class Interval:
    """Nonempty subinterval of [0,1] with rational bounds and open/closed ends."""

    lower: Fraction
    upper: Fraction
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self) -> None:
        if not (ZERO <= self.lower <= self.upper <= ONE):
            raise ValueError(f"interval bounds must satisfy 0 <= lower <= upper <= 1: {self}")
        if self.lower == self.upper and not (self.lower_closed and self.upper_closed):
            raise ValueError(f"empty interval: {self}")

    def contains(self, value: Fraction) -> bool:
        if value < self.lower or value > self.upper:
            return False
        if value == self.lower and not self.lower_closed:
            return False
        if value == self.upper and not self.upper_closed:
            return False
        return True

    @staticmethod
    def parse(text: str) -> "Interval":
        """Parse ``[u,v]``, ``(u,v]``, ``[u,v)`` or ``(u,v)``."""
        stripped = text.strip()
        if len(stripped) < 2 or stripped[0] not in "([" or stripped[-1] not in ")]":
            raise ParseError(f"malformed interval {text!r}", 0)
        body = stripped[1:-1].split(",")
        if len(body) != 2:
            raise ParseError(f"interval needs exactly two bounds: {text!r}", 0)
        try:
            lower, upper = poss(body[0].strip()), poss(body[1].strip())
            return Interval(lower, upper, stripped[0] == "[", stripped[-1] == "]")
        except ValueError as exc:
            raise ParseError(f"malformed interval {text!r}: {exc}", 0) from None

    def __str__(self) -> str:
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f"{left}{format_poss(self.lower)},{format_poss(self.upper)}{right}"
