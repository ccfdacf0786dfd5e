"""Quiver files, the expression grammar, and canonical printing.

Quiver file::

    # comment
    vertices: v1 v2
    arrow a : v1 -> v2
    special v1 a

Expressions::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := scalar | atom | '(' expr ')'
    atom   := 'e(' vertex ')' | arrow | arrow "'"
    scalar := integer ['/' positive-integer]

``b * a`` applies ``a`` first; ``a'`` is the ghost of ``a``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .free import Element, PathAlgebra
from .quiver import IDENT, Quiver, QuiverError, Word, validate, word_key
from .tensors import TensorElement


class ParseError(ValueError):
    """A syntax or name error, carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, col: int = 1, source: str = "<expr>"):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        super().__init__(f"{source}:{line}:{col}: {message}")


# quiver files

_ARROW = re.compile(r"arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*\Z")
_SPECIAL = re.compile(r"special\s+(\S+)\s+(\S+)\s*\Z")


def parse_quiver(text: str, source: str = "<quiver>") -> Quiver:
    vertices = None
    arrows = []
    special = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        col = len(raw) - len(raw.lstrip()) + 1
        if not line or line.startswith("#"):
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise ParseError("second 'vertices:' line", lineno, col, source)
            vertices = line[len("vertices:"):].replace(",", " ").split()
            continue
        m = _ARROW.match(line)
        if m:
            for name in m.groups():
                if not IDENT.match(name):
                    raise ParseError(f"invalid identifier {name!r}", lineno,
                                     raw.index(name) + 1, source)
            arrows.append(m.groups())
            continue
        m = _SPECIAL.match(line)
        if m:
            v, a = m.groups()
            if v in special:
                raise ParseError(f"second special arrow for {v!r}", lineno, col, source)
            special[v] = a
            continue
        raise ParseError(f"cannot parse line: {line!r}", lineno, col, source)
    if vertices is None:
        raise ParseError("missing 'vertices:' line", 1, 1, source)
    try:
        return validate({"vertices": vertices, "arrows": arrows, "special": special})
    except QuiverError as e:
        raise ParseError(str(e), 1, 1, source) from None


def load_quiver(path) -> Quiver:
    path = Path(path)
    return parse_quiver(path.read_text(encoding="utf-8"), str(path))


def print_quiver(q: Quiver) -> str:
    lines = ["vertices: " + " ".join(q.vertices)]
    for a in q.arrows:
        lines.append(f"arrow {a.name} : {a.source} -> {a.target}")
    for v in q.vertices:
        if v in q.special:
            lines.append(f"special {v} {q.special[v]}")
    return "\n".join(lines) + "\n"


# expressions

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/()']))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            skip = len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[pos + skip]!r}", 1, pos + skip + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start + 1))
        pos = m.end()
    toks.append(("end", "", len(src) + 1))
    return toks


class _Parser:
    def __init__(self, src: str, alg: PathAlgebra):
        self.toks = _tokenize(src)
        self.i = 0
        self.alg = alg
        self.q = alg.quiver

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, v, col = self.take()
        if v != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", 1, col)

    def expr(self) -> Element:
        neg = False
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            neg = True
        x = self.term()
        if neg:
            x = -x
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> Element | Fraction:
        x = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            y = self.factor()
            x = _times(x, y)
        if not isinstance(x, Element):
            x = self.alg.scalar(x)
        return x

    def factor(self):
        kind, v, col = self.take()
        if kind == "num":
            n = int(v)
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                k2, d, c2 = self.take()
                if k2 != "num":
                    raise ParseError("malformed scalar: expected a denominator", 1, c2)
                if int(d) == 0:
                    raise ParseError("malformed scalar: zero denominator", 1, c2)
                return Fraction(n, int(d))
            return n
        if kind == "op" and v == "(":
            x = self.expr()
            self.expect(")")
            return x
        if kind == "id":
            if v == "e" and self.peek()[1] == "(":
                self.take()
                k2, name, c2 = self.take()
                if k2 != "id":
                    raise ParseError("expected a vertex name", 1, c2)
                if name not in self.q.vertices:
                    raise ParseError(f"unknown vertex {name!r}", 1, c2)
                self.expect(")")
                return self.alg.vertex(name)
            if not self.q.has_arrow(v):
                raise ParseError(f"unknown arrow {v!r}", 1, col)
            ghost = False
            if self.peek()[0] == "op" and self.peek()[1] == "'":
                self.take()
                ghost = True
            return self.alg.letter(v, ghost)
        raise ParseError(f"unexpected {v or 'end of input'!r}", 1, col)


def _times(x, y):
    if isinstance(x, Element):
        return x * y
    if isinstance(y, Element):
        return y.alg.scale(y, x)
    return Fraction(x) * Fraction(y)


def parse_expr(src: str, alg: PathAlgebra) -> Element:
    """Parse into ``alg`` (use the free algebra to keep words unreduced)."""
    p = _Parser(src, alg)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 1, 1)
    x = p.expr()
    kind, v, col = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {v!r}", 1, col)
    return x


# printing

def print_word(w: Word) -> str:
    if not w.letters:
        return f"e({w.source})"
    return " * ".join(str(l) for l in reversed(w.letters))


def _coef_str(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _terms_str(items) -> str:
    parts = []
    for body, c in items:
        neg = c < 0
        mag = -c if neg else c
        text = body if mag == 1 else f"{_coef_str(mag)} * {body}"
        if not parts:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts) if parts else "0"


def print_canonical(x: Element) -> str:
    F = x.alg.field
    items = [(print_word(w), F.signed(x.terms[w])) for w in sorted(x.terms, key=word_key)]
    return _terms_str(items)


def print_tensor(t: TensorElement) -> str:
    F = t.alg.field
    items = [(" (x) ".join(print_word(w) for w in k), F.signed(t.terms[k])) for k in t.keys()]
    return _terms_str(items)


def print_value(x) -> str:
    if isinstance(x, TensorElement):
        return print_tensor(x)
    return print_canonical(x)

