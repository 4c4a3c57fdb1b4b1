"""A small expression language for user-defined means.

Grammar (precedence low to high, all binary operators left-associative):

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' atom)*
    atom    := NUMBER | 'x' | 'y' | NAME '(' args ')' | '(' sum ')'

so '^' binds tighter than unary minus: -x^2 parses as -(x^2).  Known
functions: exp, log, sqrt (one argument) and pow, min, max (two).  The
only variables are x and y.  '×' and '÷' are accepted as aliases for
'*' and '/'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

from .core import Interval, MeanLabError, TwoPlaceFunction

__all__ = [
    "ParseError",
    "EvaluationError",
    "Num",
    "Var",
    "Unary",
    "Binary",
    "Call",
    "parse_mean_expr",
    "evaluate",
    "unparse",
    "mean_from_expression",
]

_FUNCTIONS = {"exp": 1, "log": 1, "sqrt": 1, "pow": 2, "min": 2, "max": 2}
_VARIABLES = ("x", "y")


class ParseError(MeanLabError):
    """Positioned parse failure with the set of expected tokens."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...]):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col
        self.expected = expected


class EvaluationError(MeanLabError):
    """Runtime evaluation failure (division by zero, log of a
    non-positive number, overflow, ...)."""


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]


Node = Union[Num, Var, Unary, Binary, Call]


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM, NAME, OP, LPAREN, RPAREN, COMMA, END
    text: str
    line: int
    col: int


_ALIASES = {"×": "*", "÷": "/"}


def _tokenize(source: str) -> Iterator[_Token]:
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (source[j].isdigit() or (source[j] == "." and not seen_dot)):
                if source[j] == ".":
                    seen_dot = True
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    while k < n and source[k].isdigit():
                        k += 1
                    j = k
            text = source[i:j]
            col += j - i
            i = j
            yield _Token("NUM", text, line, start_col)
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            col += j - i
            i = j
            yield _Token("NAME", text, line, start_col)
            continue
        ch = _ALIASES.get(ch, ch)
        if ch in "+-*/^":
            yield _Token("OP", ch, line, start_col)
        elif ch == "(":
            yield _Token("LPAREN", ch, line, start_col)
        elif ch == ")":
            yield _Token("RPAREN", ch, line, start_col)
        elif ch == ",":
            yield _Token("COMMA", ch, line, start_col)
        else:
            raise ParseError(
                f"unexpected character {source[i]!r}", line, start_col, ("token",)
            )
        i += 1
        col += 1
    yield _Token("END", "", line, col)


class _Parser:
    def __init__(self, source: str):
        self.tokens = list(_tokenize(source))
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def _fail(self, expected: tuple[str, ...]) -> ParseError:
        tok = self.cur
        got = tok.text if tok.kind != "END" else "end of input"
        return ParseError(
            f"expected {' or '.join(expected)}, found {got!r}",
            tok.line,
            tok.col,
            expected,
        )

    def _expect(self, kind: str, expected: tuple[str, ...]) -> _Token:
        if self.cur.kind != kind:
            raise self._fail(expected)
        return self._advance()

    def parse(self) -> Node:
        node = self.sum()
        if self.cur.kind != "END":
            raise self._fail(("operator", "end of input"))
        return node

    def sum(self) -> Node:
        node = self.product()
        while self.cur.kind == "OP" and self.cur.text in "+-":
            op = self._advance().text
            node = Binary(op, node, self.product())
        return node

    def product(self) -> Node:
        node = self.unary()
        while self.cur.kind == "OP" and self.cur.text in "*/":
            op = self._advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.cur.kind == "OP" and self.cur.text == "-":
            self._advance()
            return Unary("-", self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        while self.cur.kind == "OP" and self.cur.text == "^":
            self._advance()
            node = Binary("^", node, self.atom())
        return node

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "NUM":
            self._advance()
            return Num(float(tok.text))
        if tok.kind == "NAME":
            self._advance()
            if tok.text in _VARIABLES:
                return Var(tok.text)
            if tok.text in _FUNCTIONS:
                arity = _FUNCTIONS[tok.text]
                self._expect("LPAREN", ("'('",))
                args = [self.sum()]
                while self.cur.kind == "COMMA":
                    self._advance()
                    args.append(self.sum())
                self._expect("RPAREN", ("')'", "','"))
                if len(args) != arity:
                    raise ParseError(
                        f"{tok.text} takes {arity} argument(s), got {len(args)}",
                        tok.line,
                        tok.col,
                        (f"{arity} argument(s)",),
                    )
                return Call(tok.text, tuple(args))
            raise ParseError(
                f"unknown identifier {tok.text!r}; variables are x, y and "
                f"functions are {', '.join(sorted(_FUNCTIONS))}",
                tok.line,
                tok.col,
                ("x", "y", "function name"),
            )
        if tok.kind == "LPAREN":
            self._advance()
            node = self.sum()
            self._expect("RPAREN", ("')'",))
            return node
        raise self._fail(("number", "variable", "function", "'('"))


def parse_mean_expr(source: str) -> Node:
    """Parse an expression over x and y into an AST, or raise a
    positioned ParseError."""
    return _Parser(source).parse()


def evaluate(node: Node, x: float, y: float) -> float:
    """Evaluate the AST at (x, y).  Domain problems raise
    EvaluationError instead of crashing."""
    try:
        v = _eval(node, x, y)
    except ZeroDivisionError:
        raise EvaluationError(f"division by zero at ({x!r}, {y!r})") from None
    except OverflowError:
        raise EvaluationError(f"overflow at ({x!r}, {y!r})") from None
    except ValueError as exc:
        raise EvaluationError(f"{exc} at ({x!r}, {y!r})") from None
    if isinstance(v, complex) or not math.isfinite(v):
        raise EvaluationError(f"non-finite result at ({x!r}, {y!r})")
    return v


def _eval(node: Node, x: float, y: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x if node.name == "x" else y
    if isinstance(node, Unary):
        return -_eval(node.operand, x, y)
    if isinstance(node, Binary):
        l = _eval(node.left, x, y)
        r = _eval(node.right, x, y)
        if node.op == "+":
            return l + r
        if node.op == "-":
            return l - r
        if node.op == "*":
            return l * r
        if node.op == "/":
            return l / r
        return _pow(l, r)
    fn = node.name
    args = [_eval(a, x, y) for a in node.args]
    if fn == "exp":
        return math.exp(args[0])
    if fn == "log":
        if args[0] <= 0.0:
            raise ValueError(f"log of non-positive {args[0]!r}")
        return math.log(args[0])
    if fn == "sqrt":
        if args[0] < 0.0:
            raise ValueError(f"sqrt of negative {args[0]!r}")
        return math.sqrt(args[0])
    if fn == "pow":
        return _pow(args[0], args[1])
    if fn == "min":
        return min(args)
    return max(args)


def _pow(base: float, exponent: float) -> float:
    if base < 0.0 and exponent != int(exponent):
        raise ValueError(f"fractional power of negative {base!r}")
    if base == 0.0 and exponent < 0.0:
        raise ZeroDivisionError
    return base**exponent


_PRECEDENCE = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY_PRECEDENCE = 30


def unparse(node: Node) -> str:
    """Render the AST back to source; reparsing yields an identical AST."""
    return _unparse(node, 0)


def _unparse(node: Node, parent_prec: int) -> str:
    if isinstance(node, Num):
        return repr(node.value)  # repr round-trips doubles exactly
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}({', '.join(_unparse(a, 0) for a in node.args)})"
    if isinstance(node, Unary):
        inner = _unparse(node.operand, _UNARY_PRECEDENCE)
        text = f"-{inner}"
        return f"({text})" if parent_prec > _UNARY_PRECEDENCE else text
    prec = _PRECEDENCE[node.op]
    # Left-associative everywhere: the right child needs parens at equal
    # precedence, the left does not.
    left = _unparse(node.left, prec)
    right = _unparse(node.right, prec + 1)
    text = f"{left} {node.op} {right}"
    return f"({text})" if parent_prec > prec else text


def mean_from_expression(source: str, iv: Interval) -> TwoPlaceFunction:
    """Wrap a parsed expression as a two-place function on `iv`."""
    ast = parse_mean_expr(source)

    def fn(x: float, y: float) -> float:
        return evaluate(ast, x, y)

    return TwoPlaceFunction(iv, fn, f"expr:{source}", "expression")
