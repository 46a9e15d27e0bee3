"""Polynomial expression parsing and canonical printing.

Grammar (recursive descent, no implicit multiplication):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | var | '(' expr ')' | '-' base
    rational := int ('/' posint)?
    var      := 'x' | 'y' | 'y' digit

Errors carry a 1-based column.  Printing is the inverse: parsing a
printed polynomial yields an equal polynomial.  Derivations are written
as deriv{ x: <poly>, y: <poly> } or deriv{ x: <poly>, y1: ..., yn: ... };
every declared variable needs an entry (0 is allowed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .derivation import Derivation
from .mpoly import MultiPoly

MAX_EXPONENT = 10**6

VAR_NAMES = ("x", "y") + tuple(f"y{i}" for i in range(1, 10))
_VAR_ORDER = {name: i for i, name in enumerate(VAR_NAMES)}


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


# -- AST --------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


Ast = Lit | Var | BinOp | Pow | Neg


# -- lexer ------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # 'int', 'var', 'op'
    text: str
    column: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(_Token("int", src[i:j], col))
            i = j
            continue
        if ch == "y" and i + 1 < len(src) and src[i + 1].isdigit():
            name = src[i : i + 2]
            if name not in _VAR_ORDER:
                raise ParseError(f"unknown variable {name!r}", col)
            tokens.append(_Token("var", name, col))
            i += 2
            continue
        if ch in ("x", "y"):
            tokens.append(_Token("var", ch, col))
            i += 1
            continue
        if ch in "+-*^()/":
            tokens.append(_Token("op", ch, col))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", col)
    return tokens


# -- parser -----------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], length: int):
        self.tokens = tokens
        self.pos = 0
        self.end_column = length + 1

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end_column)
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}", tok.column)
        return tok

    def parse_expr(self) -> Ast:
        node = self.parse_term()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "+-":
                self.next()
                node = BinOp(tok.text, node, self.parse_term())
            else:
                return node

    def parse_term(self) -> Ast:
        node = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text == "*":
                self.next()
                node = BinOp("*", node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> Ast:
        node = self.parse_base()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.next()
            exp_tok = self.next()
            if exp_tok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", exp_tok.column)
            exponent = int(exp_tok.text)
            if exponent > MAX_EXPONENT:
                raise ParseError(f"exponent exceeds {MAX_EXPONENT}", exp_tok.column)
            return Pow(node, exponent)
        return node

    def parse_base(self) -> Ast:
        tok = self.next()
        if tok.kind == "int":
            value = Fraction(int(tok.text))
            nxt = self.peek()
            if nxt is not None and nxt.kind == "op" and nxt.text == "/":
                self.next()
                den_tok = self.next()
                if den_tok.kind != "int" or int(den_tok.text) == 0:
                    raise ParseError("denominator must be a positive integer", den_tok.column)
                value = Fraction(int(tok.text), int(den_tok.text))
            return Lit(value)
        if tok.kind == "var":
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "op" and tok.text == "-":
            return Neg(self.parse_base())
        raise ParseError(f"unexpected token {tok.text!r}", tok.column)


def parse_ast(src: str) -> Ast:
    parser = _Parser(_tokenize(src), len(src))
    node = parser.parse_expr()
    leftover = parser.peek()
    if leftover is not None:
        raise ParseError(f"unexpected token {leftover.text!r}", leftover.column)
    return node


def ast_variables(node: Ast) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, BinOp):
        return ast_variables(node.left) | ast_variables(node.right)
    if isinstance(node, Pow):
        return ast_variables(node.base)
    if isinstance(node, Neg):
        return ast_variables(node.operand)
    return set()


def lower_ast(node: Ast, variables: tuple[str, ...]) -> MultiPoly:
    if isinstance(node, Lit):
        return MultiPoly.constant(variables, node.value)
    if isinstance(node, Var):
        if node.name not in variables:
            raise ParseError(f"unknown variable {node.name!r} in this context", 1)
        return MultiPoly.var(variables, node.name)
    if isinstance(node, BinOp):
        left = lower_ast(node.left, variables)
        right = lower_ast(node.right, variables)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        return lower_ast(node.base, variables) ** node.exponent
    if isinstance(node, Neg):
        return -lower_ast(node.operand, variables)
    raise TypeError(f"not an AST node: {node!r}")


def sort_variables(names) -> tuple[str, ...]:
    return tuple(sorted(names, key=lambda n: _VAR_ORDER[n]))


def parse_poly(src: str, variables: tuple[str, ...] | None = None) -> MultiPoly:
    """Parse an expression; ambient variables default to those it uses."""
    node = parse_ast(src)
    if variables is None:
        used = ast_variables(node)
        variables = sort_variables(used) if used else ("x",)
    return lower_ast(node, variables)


# -- printing ----------------------------------------------------------


def _format_monomial(variables: tuple[str, ...], exps: tuple[int, ...]) -> str:
    factors = []
    for name, e in zip(variables, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def _format_unsigned(coeff: Fraction, mono: str, force_coeff: bool) -> str:
    coeff = abs(coeff)
    if not mono:
        return str(coeff)
    if coeff == 1 and not force_coeff:
        return mono
    return f"{coeff}*{mono}"


def poly_to_str(p: MultiPoly) -> str:
    """Canonical rendering, decreasing graded-lex; reparses to an equal value.

    A leading negative term always prints its coefficient explicitly
    ("-1*x^2"), because "-x^2" would reparse as (-x)^2 under the grammar.
    """
    if p.is_zero():
        return "0"
    parts = []
    for idx, (exps, coeff) in enumerate(p.sorted_terms()):
        mono = _format_monomial(p.variables, exps)
        if idx == 0:
            if coeff < 0:
                parts.append("-" + _format_unsigned(coeff, mono, force_coeff=True))
            else:
                parts.append(_format_unsigned(coeff, mono, force_coeff=False))
        else:
            sign = " + " if coeff > 0 else " - "
            parts.append(sign + _format_unsigned(coeff, mono, force_coeff=False))
    return "".join(parts)


# -- derivations ---------------------------------------------------------


def parse_derivation(src: str) -> Derivation:
    """Parse deriv{ v1: <poly>, ..., vn: <poly> } over the declared variables."""
    text = src.strip()
    if not text.startswith("deriv"):
        raise ParseError("derivation must start with 'deriv'", 1)
    rest = text[len("deriv"):].lstrip()
    offset = len(src) - len(src.lstrip())
    if not rest.startswith("{") or not rest.endswith("}"):
        raise ParseError("derivation body must be enclosed in braces", offset + 6)
    body = rest[1:-1]
    entries: list[tuple[str, str]] = []
    depth = 0
    current = ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            entries.append(_split_entry(current, src))
            current = ""
        else:
            current += ch
    if current.strip():
        entries.append(_split_entry(current, src))
    if not entries:
        raise ParseError("derivation needs at least one variable entry", 1)
    seen: dict[str, str] = {}
    for name, expr_src in entries:
        if name not in _VAR_ORDER:
            raise ParseError(f"unknown variable {name!r}", src.index(name) + 1)
        if name in seen:
            raise ParseError(f"duplicate variable {name!r}", src.rindex(name) + 1)
        seen[name] = expr_src
    variables = sort_variables(seen)
    images = []
    for name in variables:
        node = parse_ast(seen[name])
        for used in ast_variables(node):
            if used not in variables:
                raise ParseError(
                    f"variable {used!r} is not declared by this derivation",
                    src.index(used) + 1,
                )
        images.append(lower_ast(node, variables))
    return Derivation(variables, tuple(images))


def _split_entry(chunk: str, src: str) -> tuple[str, str]:
    if ":" not in chunk:
        raise ParseError("each entry must look like 'var: polynomial'", src.index(chunk.strip()[:1]) + 1 if chunk.strip() else 1)
    name, expr_src = chunk.split(":", 1)
    return name.strip(), expr_src.strip()
