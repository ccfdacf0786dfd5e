"""The path algebra of the double quiver, and the element type shared with L."""

from __future__ import annotations

from typing import Iterable, Mapping

from .linalg import QQ, Field
from .quiver import Letter, Quiver, Word, vertex_word, word_key


def add_into(acc: dict, terms: Mapping, scale, field: Field) -> None:
    """``acc += scale * terms`` in place, dropping zeros."""
    for k, c in terms.items():
        v = field(acc.get(k, 0) + scale * c)
        if v == 0:
            acc.pop(k, None)
        else:
            acc[k] = v


class Element:
    """A finite linear combination of words, tied to the algebra that made it."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "PathAlgebra", terms: Mapping[Word, object]):
        self.alg = alg
        self.terms = dict(terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, w: Word):
        return self.terms.get(w, 0)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=word_key)

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.alg is not self.alg:
                raise ValueError("elements of different algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        add_into(acc, other.terms, 1, self.alg.field)
        return Element(self.alg, acc)

    __radd__ = __add__

    def __neg__(self):
        F = self.alg.field
        return Element(self.alg, {w: F(-c) for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        add_into(acc, other.terms, -1, self.alg.field)
        return Element(self.alg, acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.multiply(self, other)
        return self.alg.scale(self, other)

    def __rmul__(self, other):
        return self.alg.scale(self, other)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg is other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        from .textio import print_canonical
        return f"<{print_canonical(self)}>"


class PathAlgebra:
    """The free algebra k(double Q): words multiply by concatenation or give zero."""

    def __init__(self, quiver: Quiver, field: Field = QQ):
        self.quiver = quiver
        self.field = field

    def __repr__(self):
        return f"{type(self).__name__}({len(self.quiver.vertices)} vertices, {self.field.name})"

    # construction

    def element(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]]) -> Element:
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict = {}
        F = self.field
        for w, c in terms:
            v = F(acc.get(w, 0) + F(c))
            if v == 0:
                acc.pop(w, None)
            else:
                acc[w] = v
        return self._wrap(acc)

    def _wrap(self, terms: dict) -> Element:
        return Element(self, terms)

    def zero(self) -> Element:
        return Element(self, {})

    def vertex(self, v: str) -> Element:
        if v not in self.quiver.vertices:
            raise KeyError(v)
        return Element(self, {vertex_word(v): 1})

    def one_sum(self, vertices: Iterable[str]) -> Element:
        return self.element((vertex_word(v), 1) for v in vertices)

    def letter(self, name: str, ghost: bool = False) -> Element:
        l = Letter(name, ghost)
        return self.word(self.quiver.letter_word(l))

    def word(self, w: Word) -> Element:
        return self._wrap({w: 1})

    def scalar(self, c) -> Element:
        """``c`` times the sum of all vertex idempotents."""
        return self.scale(self.one_sum(self.quiver.vertices), c)

    def scale(self, x: Element, c) -> Element:
        F = self.field
        c = F(c)
        if c == 0:
            return self.zero()
        return Element(self, {w: F(v * c) for w, v in x.terms.items()})

    # products

    def multiply_words(self, u: Word, v: Word) -> dict:
        """``u * v`` (``v`` applied first) as a term dictionary."""
        w = self.quiver.concat(u, v)
        return {} if w is None else {w: 1}

    def multiply(self, x: Element, y: Element) -> Element:
        F = self.field
        acc: dict = {}
        for u, a in x.terms.items():
            for v, b in y.terms.items():
                prod = self.multiply_words(u, v)
                if prod:
                    add_into(acc, prod, a * b, F)
        return Element(self, acc)


def local_unit_action(x: Element) -> tuple[set[str], set[str]]:
    """Vertices J_L, J_R with (sum e_j, j in J_L) x = x = x (sum e_j, j in J_R)."""
    return {w.target for w in x.terms}, {w.source for w in x.terms}


def degree_split(x: Element) -> dict[int, Element]:
    parts: dict[int, dict] = {}
    for w, c in x.terms.items():
        parts.setdefault(w.degree, {})[w] = c
    return {d: Element(x.alg, t) for d, t in sorted(parts.items())}


def is_homogeneous(x: Element) -> bool:
    return len({w.degree for w in x.terms}) <= 1


def in_path_subalgebra(x: Element) -> bool:
    """True when no ghost letter occurs, i.e. x lies in kQ."""
    return all(w.is_path for w in x.terms)
