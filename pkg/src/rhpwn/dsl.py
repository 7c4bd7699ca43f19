"""Expression DSL for algebra elements: parser, evaluator, and renderers.

Grammar (element-valued; scalars only ever multiply generator expressions):

    expr      := ['-'] term (('+'|'-') term)*
    term      := (scalar '*')* postfixed
    postfixed := primary ('^*')*
    primary   := atom | '[' expr ',' expr ']' | '(' expr ')'
    atom      := ('B'|'Bh') '[' int ',' int ']' ['@' label]
    label     := ['~'] name | '(' ['~'] name ('*' ['~'] name)* ')'
    scalar    := int ['/' int] | 'i' | '(' signed complex rational ')'

B atoms are RHPWN generators, Bh atoms are w-infinity generators, '^*' is the
involution, '[x, y]' the bracket, and '~' marks a conjugated test-function
factor. Complex scalars with two parts must be parenthesized, e.g.
(1/2-3/4*i)*B[2,1].
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import lie
from .lie import AlgebraKind, Element, element_to_json
from .scalars import CScalar
from .stepfn import FnSymbol, StepFn


class ParseError(ValueError):
    """Syntax or domain diagnostic with byte offset and expected-token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        detail = f"at byte {offset}: {message}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<starpost>\^\*)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[\[\](),+\-*/@~])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            kind = m.lastgroup if m.lastgroup != "punct" else m.group()
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class AtomNode:
    kind: AlgebraKind
    n: int
    k: int
    label: Optional[FnSymbol]


@dataclass(frozen=True)
class BracketNode:
    a: "DslExpr"
    b: "DslExpr"


@dataclass(frozen=True)
class StarNode:
    a: "DslExpr"


@dataclass(frozen=True)
class ScaleNode:
    c: CScalar
    a: "DslExpr"


@dataclass(frozen=True)
class AddNode:
    a: "DslExpr"
    b: "DslExpr"


@dataclass(frozen=True)
class SubNode:
    a: "DslExpr"
    b: "DslExpr"


DslExpr = Union[AtomNode, BracketNode, StarNode, ScaleNode, AddNode, SubNode]

_ATOM_KINDS = {"B": AlgebraKind.RHPWN, "Bh": AlgebraKind.WINFINITY}


class _Parser:
    def __init__(self, text: str, relaxed: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.relaxed = relaxed

    def peek(self, ahead: int = 0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self):
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, expected: tuple[str, ...]):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], expected)
        return self.advance()

    # expr := ['-'] term (('+'|'-') term)*
    def parse_expr(self) -> DslExpr:
        if self.peek()[0] == "-":
            self.advance()
            node: DslExpr = ScaleNode(CScalar.of(-1), self.parse_term())
        else:
            node = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.parse_term()
            node = AddNode(node, rhs) if op == "+" else SubNode(node, rhs)
        return node

    # term := (scalar '*')* postfixed
    def parse_term(self) -> DslExpr:
        scalars = []
        while True:
            tok = self.peek()
            if tok[0] == "int" or (tok[0] == "name" and tok[1] == "i"):
                scalars.append(self._parse_bare_scalar())
                self.expect("*", ("*",))
            elif tok[0] == "(" and self._paren_is_scalar():
                scalars.append(self._parse_paren_scalar())
                self.expect("*", ("*",))
            else:
                break
        node = self.parse_postfixed()
        for c in reversed(scalars):
            node = ScaleNode(c, node)
        return node

    def parse_postfixed(self) -> DslExpr:
        node = self.parse_primary()
        while self.peek()[0] == "starpost":
            self.advance()
            node = StarNode(node)
        return node

    def parse_primary(self) -> DslExpr:
        tok = self.peek()
        if tok[0] == "name" and tok[1] in _ATOM_KINDS:
            return self.parse_atom()
        if tok[0] == "[":
            self.advance()
            a = self.parse_expr()
            self.expect(",", (",",))
            b = self.parse_expr()
            self.expect("]", ("]",))
            return BracketNode(a, b)
        if tok[0] == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")", (")",))
            return node
        raise ParseError(
            f"unexpected token {tok[1]!r}", tok[2], ("B", "Bh", "[", "(")
        )

    def parse_atom(self) -> AtomNode:
        name_tok = self.advance()
        kind = _ATOM_KINDS[name_tok[1]]
        self.expect("[", ("[",))
        n = self._parse_signed_int()
        self.expect(",", (",",))
        k = self._parse_signed_int()
        close = self.expect("]", ("]",))
        label = None
        if self.peek()[0] == "@":
            self.advance()
            label = self._parse_label()
        if not self.relaxed and not lie.in_domain(kind, n, k):
            raise ParseError(
                f"index ({n}, {k}) outside the {kind.value} family "
                "(pass --relaxed to admit it)",
                name_tok[2],
            )
        del close
        return AtomNode(kind, n, k, label)

    def _parse_signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        tok = self.expect("int", ("integer",))
        return sign * int(tok[1])

    def _parse_label(self) -> FnSymbol:
        if self.peek()[0] == "(":
            self.advance()
            factors = [self._parse_label_factor()]
            while self.peek()[0] == "*":
                self.advance()
                factors.append(self._parse_label_factor())
            self.expect(")", (")",))
            return FnSymbol(tuple(sorted(factors)), True)
        return FnSymbol((self._parse_label_factor(),), True)

    def _parse_label_factor(self) -> str:
        prefix = ""
        if self.peek()[0] == "~":
            self.advance()
            prefix = "~"
        tok = self.expect("name", ("test-function name",))
        return prefix + tok[1]

    # -- scalar literals -----------------------------------------------------

    def _parse_rational(self) -> Fraction:
        tok = self.expect("int", ("integer",))
        num = int(tok[1])
        if self.peek()[0] == "/":
            self.advance()
            den_tok = self.expect("int", ("integer",))
            if int(den_tok[1]) == 0:
                raise ParseError("zero denominator", den_tok[2])
            return Fraction(num, int(den_tok[1]))
        return Fraction(num)

    def _parse_bare_scalar(self) -> CScalar:
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "i":
            self.advance()
            return CScalar(Fraction(0), Fraction(1))
        value = self._parse_rational()
        # A bare rational followed by *i would be ambiguous with scalar
        # chaining, so imaginary parts ride through 'i' as its own factor
        # or through a parenthesized literal.
        return CScalar(value)

    def _paren_is_scalar(self) -> bool:
        # Lookahead after '(': an optional sign followed by an integer or the
        # imaginary unit can only start a scalar literal if the whole group
        # parses as one; try it and roll back otherwise.
        save = self.pos
        try:
            self._parse_paren_scalar()
            return True
        except ParseError:
            return False
        finally:
            self.pos = save

    def _parse_paren_scalar(self) -> CScalar:
        self.expect("(", ("(",))
        value = self._parse_signed_part()
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.advance()[0] == "-" else 1
            part = self._parse_part()
            if not part.im or (value.im and part.im):
                tok = self.peek()
                raise ParseError("malformed complex literal", tok[2])
            value = value + part * sign
        self.expect(")", (")",))
        return value

    def _parse_signed_part(self) -> CScalar:
        sign = 1
        if self.peek()[0] == "-":
            self.advance()
            sign = -1
        return self._parse_part() * sign

    def _parse_part(self) -> CScalar:
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "i":
            self.advance()
            return CScalar(Fraction(0), Fraction(1))
        value = self._parse_rational()
        if self.peek()[0] == "*":
            save = self.pos
            self.advance()
            nxt = self.peek()
            if nxt[0] == "name" and nxt[1] == "i":
                self.advance()
                return CScalar(Fraction(0), value)
            self.pos = save
        return CScalar(value)


def parse(text: str, relaxed: bool = False) -> DslExpr:
    """Parse a DSL expression, or raise ParseError with offset diagnostics."""
    parser = _Parser(text, relaxed)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], ("end of input",))
    return node


def evaluate(ast: DslExpr) -> Element:
    """Evaluate an AST to a canonical algebra element."""
    if isinstance(ast, AtomNode):
        return lie.basis(ast.kind, ast.n, ast.k, ast.label, relaxed=True)
    if isinstance(ast, BracketNode):
        return lie.bracket(evaluate(ast.a), evaluate(ast.b))
    if isinstance(ast, StarNode):
        return lie.involution(evaluate(ast.a))
    if isinstance(ast, ScaleNode):
        return evaluate(ast.a).scaled(ast.c)
    if isinstance(ast, AddNode):
        return evaluate(ast.a) + evaluate(ast.b)
    if isinstance(ast, SubNode):
        return evaluate(ast.a) - evaluate(ast.b)
    raise TypeError(f"not a DSL node: {ast!r}")


# -- rendering ----------------------------------------------------------------

def _scalar_text(c: CScalar) -> tuple[int, str]:
    """Return (sign, body) where body multiplies a generator from the left."""
    if not c.im:
        sign = 1 if c.re > 0 else -1
        mag = abs(c.re)
        return sign, "" if mag == 1 else f"{mag}*"
    if not c.re:
        return 1, f"({c.im}*i)*"
    im_sign = "+" if c.im > 0 else "-"
    return 1, f"({c.re}{im_sign}{abs(c.im)}*i)*"


def _label_text(label) -> str:
    if label is None:
        return ""
    if isinstance(label, StepFn):
        pieces = ";".join(f"{a},{b},{v.re},{v.im}" for a, b, v in label.pieces)
        return f"@step[{pieces}]"
    if len(label.factors) == 1:
        return f"@{label.factors[0]}"
    return "@(" + "*".join(label.factors) + ")"


def _generator_text(g: lie.Generator) -> str:
    head = "B" if g.kind is AlgebraKind.RHPWN else "Bh"
    return f"{head}[{g.n},{g.k}]{_label_text(g.label)}"


def render_text(x: Element) -> str:
    if x.is_zero:
        return "0"
    chunks = []
    for idx, (g, c) in enumerate(x.terms):
        sign, body = _scalar_text(c)
        body += _generator_text(g)
        if idx == 0:
            chunks.append(("-" if sign < 0 else "") + body)
        else:
            chunks.append((" - " if sign < 0 else " + ") + body)
    return "".join(chunks)


def _frac_latex(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\tfrac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _scalar_latex(c: CScalar) -> tuple[int, str]:
    if not c.im:
        sign = 1 if c.re > 0 else -1
        mag = abs(c.re)
        return sign, "" if mag == 1 else _frac_latex(mag) + "\\,"
    if not c.re:
        return 1, f"({_frac_latex(c.im)}\\,i)\\,"
    im_sign = "+" if c.im > 0 else "-"
    return 1, f"({_frac_latex(c.re)}{im_sign}{_frac_latex(abs(c.im))}\\,i)\\,"


def _label_latex(label) -> str:
    if label is None:
        return ""
    if isinstance(label, StepFn):
        return "(\\chi)"
    rendered = [
        f"\\overline{{{f[1:]}}}" if f.startswith("~") else f for f in label.factors
    ]
    return "(" + " ".join(rendered) + ")"


def render_latex(x: Element) -> str:
    if x.is_zero:
        return "0"
    hat = x.kind is not AlgebraKind.RHPWN
    chunks = []
    for idx, (g, c) in enumerate(x.terms):
        sign, body = _scalar_latex(c)
        head = "\\hat{B}" if hat else "B"
        body += f"{head}^{{{g.n}}}_{{{g.k}}}{_label_latex(g.label)}"
        if idx == 0:
            chunks.append(("-" if sign < 0 else "") + body)
        else:
            chunks.append((" - " if sign < 0 else " + ") + body)
    return "".join(chunks)


def render(x: Element, fmt: str = "text") -> str:
    """Deterministic rendering of a canonical element."""
    if fmt == "text":
        return render_text(x)
    if fmt == "json":
        return json.dumps(element_to_json(x), sort_keys=True)
    if fmt == "latex":
        return render_latex(x)
    raise ValueError(f"unknown format {fmt!r}")
