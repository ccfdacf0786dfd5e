"""Tensor powers of L over the vertex ring S, kept fully expanded.

A simple tensor ``x (x) y`` is stored as the pair of normal words
``(x, y)`` with ``source(x) == target(y)``; that shared vertex is the gluing
vertex.  Pairs that do not glue are zero, which is exactly
``L (x)_S L = sum_i L e_i (x)_k e_i L``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

from .free import Element, add_into
from .leavitt import LeavittAlgebra
from .quiver import Word, vertex_word, word_key


class TensorError(ValueError):
    pass


def glued(words: Sequence[Word]) -> bool:
    return all(words[j].source == words[j + 1].target for j in range(len(words) - 1))


def gluing_vertices(words: Sequence[Word]) -> tuple[str, ...]:
    return tuple(w.source for w in words[:-1])


class TensorElement:
    """A sum of glued simple tensors of fixed arity over a Leavitt algebra."""

    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg: LeavittAlgebra, arity: int, terms: Mapping[tuple, object] | None = None):
        if arity < 2:
            raise TensorError("tensor arity must be at least 2")
        self.alg = alg
        self.arity = arity
        self.terms = dict(terms or {})

    def _check(self, other: "TensorElement"):
        if not isinstance(other, TensorElement) or other.arity != self.arity or other.alg is not self.alg:
            raise TensorError("incompatible tensors")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, other.terms, 1, self.alg.field)
        return TensorElement(self.alg, self.arity, acc)

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, other.terms, -1, self.alg.field)
        return TensorElement(self.alg, self.arity, acc)

    def __neg__(self):
        F = self.alg.field
        return TensorElement(self.alg, self.arity, {k: F(-c) for k, c in self.terms.items()})

    def __mul__(self, c):
        F = self.alg.field
        c = F(c)
        if c == 0:
            return TensorElement(self.alg, self.arity)
        return TensorElement(self.alg, self.arity, {k: F(v * c) for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return (self.alg is other.alg and self.arity == other.arity
                    and self.terms == other.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def keys(self) -> list[tuple]:
        return sorted(self.terms, key=lambda k: tuple(word_key(w) for w in k))

    def gluings(self) -> set[tuple[str, ...]]:
        return {gluing_vertices(k) for k in self.terms}

    def __repr__(self):
        from .textio import print_tensor
        return f"<{print_tensor(self)}>"


def zero(alg: LeavittAlgebra, arity: int) -> TensorElement:
    return TensorElement(alg, arity)


def tensor(*factors: Element) -> TensorElement:
    """The simple tensor of the given elements, expanded and canonicalized."""
    if len(factors) < 2:
        raise TensorError("need at least two factors")
    alg = factors[0].alg
    return tensor_canonicalize(alg, [(1, factors)])


def tensor_canonicalize(alg: LeavittAlgebra,
                        raw: Iterable[tuple[object, Sequence[Element]]]) -> TensorElement:
    """Expand ``sum c * (x_0 (x) ... (x) x_{n-1})`` over normal monomials.

    Factors may be free or Leavitt elements; each is normalized first.
    Monomial tuples that do not glue are dropped.
    """
    F = alg.field
    acc: dict = {}
    arity = None
    for c, factors in raw:
        if arity is None:
            arity = len(factors)
        elif len(factors) != arity:
            raise TensorError("mixed arities in one tensor")
        parts = []
        for x in factors:
            if x.alg is not alg:
                x = alg.normal_form(x)
            parts.append(list(x.terms.items()))
        for combo in product(*parts):
            words = tuple(w for w, _ in combo)
            if not glued(words):
                continue
            coef = c
            for _, a in combo:
                coef = coef * a
            add_into(acc, {words: 1}, coef, F)
    if arity is None:
        raise TensorError("cannot infer arity of an empty sum; use zero()")
    return TensorElement(alg, arity, acc)


def from_words(alg: LeavittAlgebra, words: Sequence[Word], coef=1) -> TensorElement:
    """A single glued tuple of normal words (checked)."""
    words = tuple(words)
    for w in words:
        if not alg.is_normal_word(w):
            raise TensorError(f"factor {w} is not in normal form")
    if not glued(words):
        raise TensorError("factors do not glue")
    c = alg.field(coef)
    return TensorElement(alg, len(words), {words: c} if c != 0 else {})


def bimodule_act(left: Element | None, t: TensorElement, right: Element | None) -> TensorElement:
    """``left * t * right``; ``None`` stands for the identity."""
    alg = t.alg
    F = alg.field
    acc: dict = {}
    lterms = None if left is None else list(alg.normal_form(left).terms.items())
    rterms = None if right is None else list(alg.normal_form(right).terms.items())
    mul = alg.multiply_words
    for key, c in t.terms.items():
        first, last = key[0], key[-1]
        middle = key[1:-1]
        if lterms is None:
            lefts = [(first, 1)]
        else:
            lefts = []
            for u, a in lterms:
                for w, b in mul(u, first).items():
                    lefts.append((w, a * b))
        if not lefts:
            continue
        if rterms is None:
            rights = [(last, 1)]
        else:
            rights = []
            for v, a in rterms:
                for w, b in mul(last, v).items():
                    rights.append((w, a * b))
        for lw, lc in lefts:
            for rw, rc in rights:
                if t.arity == 2:
                    newkey = (lw, rw)
                else:
                    newkey = (lw,) + middle + (rw,)
                add_into(acc, {newkey: 1}, c * lc * rc, F)
    return TensorElement(alg, t.arity, acc)


def act_words(t: TensorElement, left: Word | None, right: Word | None) -> TensorElement:
    """Monomial version of :func:`bimodule_act` (words must be normal)."""
    alg = t.alg
    F = alg.field
    acc: dict = {}
    mul = alg.multiply_words
    for key, c in t.terms.items():
        lefts = {key[0]: 1} if left is None else mul(left, key[0])
        if not lefts:
            continue
        rights = {key[-1]: 1} if right is None else mul(key[-1], right)
        for lw, lc in lefts.items():
            for rw, rc in rights.items():
                newkey = (lw,) + key[1:-1] + (rw,) if t.arity > 2 else (lw, rw)
                add_into(acc, {newkey: 1}, c * lc * rc, F)
    return TensorElement(alg, t.arity, acc)


def mult_map(t: TensorElement) -> Element:
    """The multiplication map L (x)_S L -> L."""
    if t.arity != 2:
        raise TensorError("mult_map needs arity 2")
    alg = t.alg
    acc: dict = {}
    for (x, y), c in t.terms.items():
        add_into(acc, alg.multiply_words(x, y), c, alg.field)
    return Element(alg, acc)


def multiply_adjacent(t: TensorElement, j: int) -> TensorElement:
    """Multiply factors ``j`` and ``j+1`` together."""
    alg = t.alg
    F = alg.field
    acc: dict = {}
    for key, c in t.terms.items():
        for w, b in alg.multiply_words(key[j], key[j + 1]).items():
            add_into(acc, {key[:j] + (w,) + key[j + 2:]: 1}, c * b, F)
    return TensorElement(alg, t.arity - 1, acc) if t.arity > 2 else _as_element(alg, acc)


def _as_element(alg, acc):
    return Element(alg, {k[0]: c for k, c in acc.items()})


def p_project(t: TensorElement, strict: bool = False) -> TensorElement:
    """The component of an arity-2 tensor glued at regular vertices.

    With ``strict=True`` a nonzero component at a sink raises TensorError.
    """
    if t.arity != 2:
        raise TensorError("p_project needs arity 2")
    q = t.alg.quiver
    keep = {}
    for key, c in t.terms.items():
        if q.is_regular(key[0].source):
            keep[key] = c
        elif strict:
            raise TensorError(f"component glued at sink {key[0].source!r}")
    return TensorElement(t.alg, 2, keep)


def is_p_element(t: TensorElement) -> bool:
    q = t.alg.quiver
    return t.arity == 2 and all(q.is_regular(k[0].source) for k in t.terms)


def p_generator(alg: LeavittAlgebra, v: str) -> TensorElement:
    """``e_v (x) e_v`` in P; ``v`` must be regular."""
    if not alg.quiver.is_regular(v):
        raise TensorError(f"{v!r} is not a regular vertex")
    e = vertex_word(v)
    return TensorElement(alg, 2, {(e, e): 1})


def unit_tensor(alg: LeavittAlgebra, v: str, arity: int = 2) -> TensorElement:
    e = vertex_word(v)
    return TensorElement(alg, arity, {(e,) * arity: 1})


def glued_pairs(left: Iterable[Word], right: Iterable[Word] | None = None,
                regular_only: bool = False, quiver=None) -> list[tuple[Word, Word]]:
    """All glued pairs from two word lists, in canonical order."""
    right = list(left) if right is None else list(right)
    by_target: dict[str, list[Word]] = {}
    for w in right:
        by_target.setdefault(w.target, []).append(w)
    out = []
    for u in left:
        if regular_only and not quiver.is_regular(u.source):
            continue
        for w in by_target.get(u.source, ()):
            out.append((u, w))
    out.sort(key=lambda k: (word_key(k[0]), word_key(k[1])))
    return out
