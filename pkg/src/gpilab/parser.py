"""Text syntax for generalized polynomials.

Grammar::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" nat)?
    atom   := var | coeff | int | "(" expr ")"
    var    := "X" nat? | "Y" | "Z" | "x" | "xinv"
    coeff  := basis-name | "[" int ("," int)* "]"

Multiplication must be written with ``*``; juxtaposition is an error.
``X`` and ``X1`` are the same variable, ``Y``/``Z`` alias ``X2``/``X3``.
``x`` and ``xinv`` are only available in solver templates.  An integer
n stands for n times the unity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import FiniteAlgebra
from .ncpoly import GenPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\],]))")


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column = line, col


@dataclass
class ExprAst:
    kind: str  # sum, product, power, neg, variable, coeff, int
    children: list = field(default_factory=list)
    value: object = None
    span: tuple = (0, 0)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, template):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.template = template

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("name", "num") or tok[1] in ("(", "["):
                raise ParseError("missing '*' (juxtaposition is not multiplication)", self.text, tok[2])
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return node

    def expr(self):
        start = self.peek()[2]
        children = []
        if self.peek()[1] == "-":
            self.take()
            children.append(ExprAst("neg", [self.term()], span=(start, self.peek()[2])))
        else:
            children.append(self.term())
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            children.append(t if op == "+" else ExprAst("neg", [t], span=t.span))
        if len(children) == 1:
            return children[0]
        return ExprAst("sum", children, span=(start, self.peek()[2]))

    def term(self):
        start = self.peek()[2]
        factors = [self.factor()]
        while self.peek()[1] == "*":
            self.take()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return ExprAst("product", factors, span=(start, self.peek()[2]))

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            caret = self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent after '^' must be a non-negative integer", self.text, caret[2])
            return ExprAst("power", [base], int(tok[1]), span=(base.span[0], tok[2] + len(tok[1])))
        return base

    def atom(self):
        kind, val, pos = self.take()
        span = (pos, pos + len(val))
        if kind == "num":
            return ExprAst("int", value=int(val), span=span)
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if val == "[":
            nums = []
            while True:
                tok = self.take()
                if tok[0] != "num":
                    raise ParseError("coefficient vectors hold non-negative integers", self.text, tok[2])
                nums.append(int(tok[1]))
                if self.peek()[1] == ",":
                    self.take()
                    continue
                end = self.expect("]")
                return ExprAst("coeff", value=nums, span=(pos, end[2] + 1))
        if kind == "name":
            var = self._variable(val, pos)
            if var is not None:
                return ExprAst("variable", value=var, span=span)
            return ExprAst("coeff", value=val, span=span)
        raise ParseError(f"expected a variable, coefficient or '(', found {val or 'end of input'!r}", self.text, pos)

    def _variable(self, name, pos):
        if name in ("x", "xinv"):
            if not self.template:
                raise ParseError(f"{name!r} is reserved for solver templates", self.text, pos)
            return 0 if name == "x" else 1
        m = re.fullmatch(r"X(\d*)", name)
        if m or name in ("Y", "Z"):
            if self.template:
                raise ParseError("template expressions use x and xinv only", self.text, pos)
            if name == "Y":
                return 1
            if name == "Z":
                return 2
            digits = m.group(1)
            if digits == "":
                return 0
            if int(digits) < 1:
                raise ParseError("variables are numbered from X1", self.text, pos)
            return int(digits) - 1
        return None


def parse_ast(text: str, template: bool = False) -> ExprAst:
    return _Parser(text, template).parse()


def _max_var(node):
    if node.kind == "variable":
        return node.value
    return max([_max_var(c) for c in node.children], default=-1)


def lower(node: ExprAst, A: FiniteAlgebra, m: int, text: str = "") -> GenPoly:
    k = node.kind
    if k == "int":
        return GenPoly.constant(A.scalar(node.value), num_vars=m)
    if k == "variable":
        return GenPoly.variable(A, node.value, m)
    if k == "coeff":
        if isinstance(node.value, list):
            if len(node.value) != A.dim:
                raise ParseError(f"coefficient vector needs {A.dim} entries", text, node.span[0])
            return GenPoly.constant(A.element(node.value), num_vars=m)
        if node.value not in A.basis:
            raise ParseError(f"unknown basis name {node.value!r}", text, node.span[0])
        return GenPoly.constant(A.basis_element(node.value), num_vars=m)
    if k == "neg":
        return -lower(node.children[0], A, m, text)
    if k == "sum":
        out = GenPoly.zero(A, m)
        for c in node.children:
            out = out + lower(c, A, m, text)
        return out
    if k == "product":
        out = lower(node.children[0], A, m, text)
        for c in node.children[1:]:
            out = out * lower(c, A, m, text)
        return out
    if k == "power":
        return lower(node.children[0], A, m, text) ** node.value
    raise ValueError(f"unknown node kind {k}")


def parse_expr(text: str, A: FiniteAlgebra, m: int | None = None, template: bool = False) -> GenPoly:
    """Parse ``text`` into a canonical GenPoly over A.

    ``m`` fixes the number of variables; by default it is the largest
    variable index used (at least 1).  Template mode always has the two
    variables x and xinv.
    """
    node = parse_ast(text, template)
    used = _max_var(node) + 1
    if template:
        m = 2
    elif m is None:
        m = max(used, 1)
    elif used > m:
        raise ValueError(f"expression uses X{used} but only {m} variable(s) were declared")
    return lower(node, A, m, text)


def format_poly(G: GenPoly, template: bool = False) -> str:
    return G.to_string(["x", "xinv"] if template else None)
