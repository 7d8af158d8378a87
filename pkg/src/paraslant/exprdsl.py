"""A small expression language for immersion components and vector fields.

Grammar, loosest binding first::

    expr     := term (("+" | "-") term)*
    term     := power (("*" | "/") power)*
    power    := unary ("^" exponent)*
    unary    := "-" unary | primary
    primary  := NUMBER | NAME | FUNC "(" expr ")" | "(" expr ")"
    exponent := ["-"] INTEGER | "(" ["-"] INTEGER ")"

Unary minus binds tighter than ``^``, so ``-u^2`` is ``(-u)^2``.  There is no
implicit multiplication: ``au1`` is a single (probably unknown) name.
``pi`` is predefined unless declared otherwise.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import InputError, JetDivisionByZero, JetDomainError, JetError, ParaslantError
from .jets import Jet3, apply_univariate, combine, lift_constant, lift_variable

__all__ = [
    "Literal",
    "ConstRef",
    "VarRef",
    "Unary",
    "Binary",
    "Pow",
    "Expr",
    "ParseError",
    "UnknownNameError",
    "FUNCTIONS",
    "parse",
    "to_text",
    "eval_jet",
    "evaluate",
    "free_names",
]

FUNCTIONS = frozenset({"cosh", "sinh", "cos", "sin", "exp", "sqrt"})
PREDEFINED = {"pi": math.pi}


@dataclass(frozen=True)
class Literal:
    value: float
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class ConstRef:
    name: str
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class VarRef:
    name: str
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a name in FUNCTIONS
    arg: "Expr"
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    op: str  # add, sub, mul, div
    left: "Expr"
    right: "Expr"
    offset: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    offset: int = field(default=0, compare=False, repr=False)


Expr = Union[Literal, ConstRef, VarRef, Unary, Binary, Pow]


class ParseError(ParaslantError, ValueError):
    code = "parse-error"

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found!r}")


class UnknownNameError(ParseError):
    code = "unknown-name"

    def __init__(self, offset: int, name: str):
        super().__init__(offset, "a declared name", name)
        self.name = name
        self.args = (f"at offset {offset}: unknown name {name!r}",)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(pos, "a number, name or operator", text[pos])
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, variables: frozenset, constants: frozenset):
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables
        self.constants = constants

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _fail(self, expected: str):
        t = self.tok
        raise ParseError(t.offset, expected, t.text or "end of input")

    def _accept(self, text: str) -> _Tok | None:
        t = self.tok
        if t.kind == "op" and t.text == text:
            self.i += 1
            return t
        return None

    def _expect(self, text: str) -> _Tok:
        t = self._accept(text)
        if t is None:
            self._fail(repr(text))
        return t

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self._fail("an operator or end of input")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while True:
            t = self._accept("+") or self._accept("-")
            if t is None:
                return left
            op = "add" if t.text == "+" else "sub"
            left = Binary(op, left, self.term(), t.offset)

    def term(self) -> Expr:
        left = self.power()
        while True:
            t = self._accept("*") or self._accept("/")
            if t is None:
                return left
            op = "mul" if t.text == "*" else "div"
            left = Binary(op, left, self.power(), t.offset)

    def power(self) -> Expr:
        base = self.unary()
        while True:
            t = self._accept("^")
            if t is None:
                return base
            base = Pow(base, self.exponent(), t.offset)

    def exponent(self) -> int:
        paren = self._accept("(") is not None
        sign = -1 if self._accept("-") else 1
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self._fail("an integer exponent")
        self.i += 1
        if paren:
            self._expect(")")
        return sign * int(t.text)

    def unary(self) -> Expr:
        t = self._accept("-")
        if t is not None:
            return Unary("neg", self.unary(), t.offset)
        return self.primary()

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            value = float(t.text)
            if not math.isfinite(value):
                self._fail("a finite number")
            self.i += 1
            return Literal(value, t.offset)
        if t.kind == "name":
            self.i += 1
            if t.text in FUNCTIONS:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Unary(t.text, arg, t.offset)
            if t.text in self.variables:
                return VarRef(t.text, t.offset)
            if t.text in self.constants or t.text in PREDEFINED:
                return ConstRef(t.text, t.offset)
            raise UnknownNameError(t.offset, t.text)
        if self._accept("(") is not None:
            e = self.expr()
            self._expect(")")
            return e
        self._fail("a number, name or '('")


def parse(text: str, variables: Iterable[str] = (), constants: Iterable[str] = ()) -> Expr:
    """Parse ``text`` into an AST.

    Names in ``variables`` become :class:`VarRef`, names in ``constants``
    (and ``pi``) become :class:`ConstRef`; anything else is an
    :class:`UnknownNameError`.
    """
    variables = frozenset(variables)
    constants = frozenset(constants)
    clash = (variables | constants) & FUNCTIONS
    if clash:
        raise InputError(f"names shadow built-in functions: {sorted(clash)}")
    if variables & constants:
        raise InputError(f"names declared both variable and constant: {sorted(variables & constants)}")
    if not text or not text.strip():
        raise ParseError(len(text), "an expression", "end of input")
    return _Parser(text, variables, constants).parse()


_BIN_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/"}


def to_text(e: Expr) -> str:
    """Fully parenthesised rendering; ``parse(to_text(e))`` reproduces ``e``."""
    if isinstance(e, Literal):
        return repr(float(e.value))
    if isinstance(e, (ConstRef, VarRef)):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            return f"(-{to_text(e.arg)})"
        return f"{e.op}({to_text(e.arg)})"
    if isinstance(e, Binary):
        return f"({to_text(e.left)} {_BIN_SYMBOL[e.op]} {to_text(e.right)})"
    if isinstance(e, Pow):
        return f"({to_text(e.base)}^{e.exponent})"
    raise TypeError(f"not an expression node: {e!r}")


def free_names(e: Expr) -> set[str]:
    """Variable and constant names of ``e``, without predefined ones like ``pi``."""
    if isinstance(e, VarRef) or (isinstance(e, ConstRef) and e.name not in PREDEFINED):
        return {e.name}
    if isinstance(e, Unary):
        return free_names(e.arg)
    if isinstance(e, Binary):
        return free_names(e.left) | free_names(e.right)
    if isinstance(e, Pow):
        return free_names(e.base)
    return set()


def _annotate(err: JetError, offset: int) -> JetError:
    if getattr(err, "offset", None) is not None:
        return err
    new = type(err)(f"{err} (at offset {offset})")
    new.offset = offset
    return new


def eval_jet(
    e: Expr,
    variable_values: Mapping[str, float],
    constant_values: Mapping[str, float] | None = None,
) -> Jet3:
    """Order-3 jet of ``e`` with respect to the variables, in mapping order."""
    constant_values = constant_values or {}
    index = {name: i for i, name in enumerate(variable_values)}
    m = len(index)
    lifted: dict[str, Jet3] = {}

    def go(node: Expr) -> Jet3:
        try:
            if isinstance(node, Literal):
                return lift_constant(node.value, m)
            if isinstance(node, VarRef):
                if node.name not in index:
                    raise InputError(f"variable {node.name!r} is not bound")
                if node.name not in lifted:
                    lifted[node.name] = lift_variable(index[node.name], variable_values[node.name], m)
                return lifted[node.name]
            if isinstance(node, ConstRef):
                if node.name in constant_values:
                    return lift_constant(constant_values[node.name], m)
                if node.name in PREDEFINED:
                    return lift_constant(PREDEFINED[node.name], m)
                raise InputError(f"constant {node.name!r} is not bound")
            if isinstance(node, Unary):
                a = go(node.arg)
                if node.op == "neg":
                    return combine("neg", a, a)
                return apply_univariate(node.op, a)
            if isinstance(node, Binary):
                return combine(node.op, go(node.left), go(node.right))
            if isinstance(node, Pow):
                return apply_univariate("pow", go(node.base), node.exponent)
        except JetError as err:
            raise _annotate(err, node.offset) from None
        raise TypeError(f"not an expression node: {node!r}")

    return go(e)


def evaluate(e: Expr, values: Mapping[str, float] | None = None) -> float:
    """Float value of ``e``; variables and constants alike are read from ``values``."""
    values = values or {}

    def go(node: Expr) -> float:
        if isinstance(node, Literal):
            return node.value
        if isinstance(node, (VarRef, ConstRef)):
            if node.name in values:
                return float(values[node.name])
            if node.name in PREDEFINED:
                return PREDEFINED[node.name]
            raise InputError(f"name {node.name!r} is not bound")
        if isinstance(node, Unary):
            a = go(node.arg)
            if node.op == "neg":
                return -a
            if node.op == "sqrt" and not a > 0.0:
                raise _annotate(JetDomainError(f"sqrt of non-positive value {a!r}"), node.offset)
            return getattr(math, node.op)(a)
        if isinstance(node, Binary):
            a, b = go(node.left), go(node.right)
            if node.op == "div" and b == 0.0:
                raise _annotate(JetDivisionByZero("division by zero"), node.offset)
            if node.op == "add":
                return a + b
            if node.op == "sub":
                return a - b
            return a * b if node.op == "mul" else a / b
        if isinstance(node, Pow):
            a = go(node.base)
            if a == 0.0 and node.exponent < 0:
                raise _annotate(JetDivisionByZero("zero raised to a negative power"), node.offset)
            return a ** node.exponent
        raise TypeError(f"not an expression node: {node!r}")

    return float(go(e))
