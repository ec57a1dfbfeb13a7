"""A small infix expression language for immersion components.

Grammar (standard precedence, ^ binds tightest, integer exponents only):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | power
    power   := atom ('^' ['-'] INTEGER)?
    atom    := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

Identifiers are the coordinates u and v, declared parameter names, or
the function names sin, cos, sinh, cosh, exp, sqrt, log.  The AST is a
tree of frozen dataclasses with structural equality, and serialization
is canonical: parse(serialize(ast)) == ast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Optional, Union

from . import jets
from .jets import Jet

__all__ = [
    "Expr",
    "Const",
    "Coord",
    "Param",
    "Unary",
    "BinOp",
    "Pow",
    "UnaryFn",
    "BinFn",
    "ParseError",
    "UnknownIdentifier",
    "ArityError",
    "parse_expression",
    "serialize_expression",
    "eval_jet",
    "eval_float",
    "free_identifiers",
]

FUNCTION_NAMES = ("sin", "cos", "sinh", "cosh", "exp", "sqrt", "log")


class ParseError(Exception):
    """Syntax failure, carrying a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownIdentifier(ParseError):
    """An identifier that is not u, v, a declared parameter, or a function."""


class ArityError(ParseError):
    """A function used without its single parenthesized argument."""


class UnaryFn(Enum):
    NEG = "neg"
    SIN = "sin"
    COS = "cos"
    SINH = "sinh"
    COSH = "cosh"
    EXP = "exp"
    SQRT = "sqrt"
    LOG = "log"


class BinFn(Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"


@dataclass(frozen=True, slots=True)
class Const:
    value: float


@dataclass(frozen=True, slots=True)
class Coord:
    name: str  # "u" or "v"


@dataclass(frozen=True, slots=True)
class Param:
    name: str


@dataclass(frozen=True, slots=True)
class Unary:
    fn: UnaryFn
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class BinOp:
    fn: BinFn
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True, slots=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Const, Coord, Param, Unary, BinOp, Pow]


# -- lexer --------------------------------------------------------------

_OPS = "+-*/^(),"


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "number" | "ident" | one of _OPS | "end"
    text: str
    line: int
    column: int


def _tokens(text: str, line0: int = 1, col0: int = 1) -> Iterator[_Token]:
    line, col = line0, col0
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                seen_dot = seen_dot or text[j] == "."
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tok = text[i:j]
            col += j - i
            i = j
            yield _Token("number", tok, line, start_col)
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tok = text[i:j]
            col += j - i
            i = j
            yield _Token("ident", tok, line, start_col)
            continue
        if ch in _OPS:
            i += 1
            col += 1
            yield _Token(ch, ch, line, start_col)
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    yield _Token("end", "", line, col)


class _Parser:
    def __init__(self, text: str, params: Optional[frozenset],
                 line0: int, col0: int):
        self._toks = list(_tokens(text, line0, col0))
        self._pos = 0
        self._params = params

    @property
    def _cur(self) -> _Token:
        return self._toks[self._pos]

    def _advance(self) -> _Token:
        t = self._cur
        self._pos += 1
        return t

    def _expect(self, kind: str) -> _Token:
        if self._cur.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {self._cur.text or 'end of input'!r}",
                self._cur.line, self._cur.column)
        return self._advance()

    def parse(self) -> Expr:
        e = self._expr()
        if self._cur.kind != "end":
            raise ParseError(f"unexpected trailing {self._cur.text!r}",
                             self._cur.line, self._cur.column)
        return e

    def _expr(self) -> Expr:
        e = self._term()
        while self._cur.kind in ("+", "-"):
            op = self._advance()
            rhs = self._term()
            e = BinOp(BinFn.ADD if op.kind == "+" else BinFn.SUB, e, rhs)
        return e

    def _term(self) -> Expr:
        e = self._factor()
        while self._cur.kind in ("*", "/"):
            op = self._advance()
            rhs = self._factor()
            e = BinOp(BinFn.MUL if op.kind == "*" else BinFn.DIV, e, rhs)
        return e

    def _factor(self) -> Expr:
        if self._cur.kind == "-":
            self._advance()
            return Unary(UnaryFn.NEG, self._factor())
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._cur.kind != "^":
            return base
        caret = self._advance()
        negate = False
        if self._cur.kind == "-":
            self._advance()
            negate = True
        tok = self._cur
        if tok.kind != "number" or not _is_integer_literal(tok.text):
            raise ParseError("exponent must be an integer literal",
                             caret.line, caret.column)
        self._advance()
        exponent = int(tok.text)
        return Pow(base, -exponent if negate else exponent)

    def _atom(self) -> Expr:
        tok = self._cur
        if tok.kind == "number":
            self._advance()
            return Const(float(tok.text))
        if tok.kind == "(":
            self._advance()
            e = self._expr()
            self._expect(")")
            return e
        if tok.kind == "ident":
            self._advance()
            name = tok.text
            if name in FUNCTION_NAMES:
                if self._cur.kind != "(":
                    raise ArityError(
                        f"function {name!r} requires one parenthesized argument",
                        tok.line, tok.column)
                self._advance()
                arg = self._expr()
                if self._cur.kind == ",":
                    raise ArityError(
                        f"function {name!r} takes exactly one argument",
                        self._cur.line, self._cur.column)
                self._expect(")")
                return Unary(UnaryFn(name), arg)
            if name in ("u", "v"):
                return Coord(name)
            if self._params is not None and name not in self._params:
                raise UnknownIdentifier(f"unknown identifier {name!r}",
                                        tok.line, tok.column)
            return Param(name)
        raise ParseError(
            f"expected a value, found {tok.text or 'end of input'!r}",
            tok.line, tok.column)


def _is_integer_literal(text: str) -> bool:
    return text.isdigit()


def parse_expression(text: str, params: Optional[Mapping | frozenset] = None,
                     line0: int = 1, col0: int = 1) -> Expr:
    """Parse one expression.

    When ``params`` is given, identifiers other than u, v, the function
    names, and the listed parameters raise UnknownIdentifier with their
    source position.  ``line0``/``col0`` offset reported positions so
    expressions embedded in larger files point at the right place.
    """
    declared = None if params is None else frozenset(params)
    return _Parser(text, declared, line0, col0).parse()


# -- serialization -------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return 1 if e.fn in (BinFn.ADD, BinFn.SUB) else 2
    if isinstance(e, Unary) and e.fn is UnaryFn.NEG:
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _fmt_const(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def serialize_expression(e: Expr) -> str:
    """Canonical text form; parses back to an equal AST."""
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Coord):
        return e.name
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Unary):
        if e.fn is UnaryFn.NEG:
            inner = serialize_expression(e.arg)
            if _prec(e.arg) < 3 or isinstance(e.arg, Unary) and e.arg.fn is UnaryFn.NEG:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{e.fn.value}({serialize_expression(e.arg)})"
    if isinstance(e, BinOp):
        lhs = serialize_expression(e.lhs)
        rhs = serialize_expression(e.rhs)
        my = _prec(e)
        if _prec(e.lhs) < my:
            lhs = f"({lhs})"
        # Right operand needs parens at equal precedence too: '-' and '/'
        # are left-associative, and a leading '-' in rhs must not fuse.
        if _prec(e.rhs) <= my:
            rhs = f"({rhs})"
        return f"{lhs} {e.fn.value} {rhs}"
    if isinstance(e, Pow):
        base = serialize_expression(e.base)
        if _prec(e.base) <= 4:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    raise TypeError(f"not an expression node: {e!r}")  # pragma: no cover


# -- evaluation ----------------------------------------------------------

def free_identifiers(e: Expr) -> frozenset[str]:
    """Coordinate and parameter names appearing in the expression."""
    out: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, (Coord, Param)):
            out.add(node.name)
        elif isinstance(node, Unary):
            stack.append(node.arg)
        elif isinstance(node, BinOp):
            stack.append(node.lhs)
            stack.append(node.rhs)
        elif isinstance(node, Pow):
            stack.append(node.base)
    return frozenset(out)


def _jet_or_float(jet_fn, float_fn):
    # subtrees with no u/v dependence evaluate to bare floats
    def apply(a):
        return jet_fn(a) if isinstance(a, Jet) else float_fn(a)
    return apply


_JET_FNS = {
    UnaryFn.SIN: _jet_or_float(jets.sin, math.sin),
    UnaryFn.COS: _jet_or_float(jets.cos, math.cos),
    UnaryFn.SINH: _jet_or_float(jets.sinh, math.sinh),
    UnaryFn.COSH: _jet_or_float(jets.cosh, math.cosh),
    UnaryFn.EXP: _jet_or_float(jets.exp, math.exp),
    UnaryFn.SQRT: _jet_or_float(jets.sqrt, math.sqrt),
    UnaryFn.LOG: _jet_or_float(jets.log, math.log),
}

_FLOAT_FNS = {
    UnaryFn.SIN: math.sin,
    UnaryFn.COS: math.cos,
    UnaryFn.SINH: math.sinh,
    UnaryFn.COSH: math.cosh,
    UnaryFn.EXP: math.exp,
    UnaryFn.SQRT: math.sqrt,
    UnaryFn.LOG: math.log,
}


def _eval(e: Expr, env: Mapping[str, object], fns: Mapping) -> object:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, (Coord, Param)):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"unbound identifier {e.name!r}") from None
    if isinstance(e, Unary):
        arg = _eval(e.arg, env, fns)
        if e.fn is UnaryFn.NEG:
            return -arg
        return fns[e.fn](arg)
    if isinstance(e, BinOp):
        lhs = _eval(e.lhs, env, fns)
        rhs = _eval(e.rhs, env, fns)
        if e.fn is BinFn.ADD:
            return lhs + rhs
        if e.fn is BinFn.SUB:
            return lhs - rhs
        if e.fn is BinFn.MUL:
            return lhs * rhs
        return lhs / rhs
    if isinstance(e, Pow):
        return _eval(e.base, env, fns) ** e.exponent
    raise TypeError(f"not an expression node: {e!r}")  # pragma: no cover


def eval_jet(e: Expr, u: Jet, v: Jet, params: Mapping[str, float]) -> Jet:
    """Evaluate in jet arithmetic; constants are widened to the jet order."""
    env = {"u": u, "v": v, **params}
    out = _eval(e, env, _JET_FNS)
    if isinstance(out, Jet):
        return out
    return Jet.constant(float(out), u.order)


def eval_float(e: Expr, u: float, v: float, params: Mapping[str, float]) -> float:
    """Plain float evaluation, used by the finite-difference oracle."""
    env = {"u": float(u), "v": float(v), **params}
    out = _eval(e, env, _FLOAT_FNS)
    return float(out)
