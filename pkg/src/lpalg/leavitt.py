"""Leavitt path algebras as the free double-quiver algebra modulo Cuntz-Krieger.

Rewrite rules, read in application order:

* R1: a ghost ``b'`` followed by a real ``a`` (the product ``a * b'``) becomes
  ``e(t(a))`` when ``a == b`` and 0 otherwise.
* R2: the special arrow ``g`` at a regular vertex ``i`` followed by ``g'``
  (the product ``g' * g``) becomes ``e(i) - sum(x' * x)`` over the other
  arrows ``x`` leaving ``i``.

Irreducible words have the shape ``ghost-path * real-path`` with no special
pair at the junction; they form a basis of L.
"""

from __future__ import annotations

from typing import Callable, Iterable, NamedTuple

from .free import Element, PathAlgebra, add_into
from .linalg import QQ, Field
from .quiver import Letter, Quiver, Word, star, vertex_word, word_key

DEFAULT_FUEL = 10**6


class NormalizationError(RuntimeError):
    """Raised when rewriting runs out of fuel."""


class Relation(NamedTuple):
    name: str
    element: Element  # in the free algebra


class Redex(NamedTuple):
    position: int  # index of the first letter of the pair, application order
    rule: str  # "R1" or "R2"


class LeavittAlgebra(PathAlgebra):
    """L_k(Q); every element it hands out is in normal form."""

    def __init__(self, quiver: Quiver, field: Field = QQ, fuel: int = DEFAULT_FUEL):
        super().__init__(quiver, field)
        self.free = PathAlgebra(quiver, field)
        self.fuel = fuel
        self._word_nf: dict[Word, dict] = {}
        self._mul_cache: dict[tuple[Word, Word], dict] = {}
        self._others = {}
        for v in quiver.regular_vertices:
            g = quiver.special[v]
            self._others[v] = tuple(
                Letter(a.name) for a in sorted(quiver.out_arrows(v), key=lambda a: a.name)
                if a.name != g)

    def _wrap(self, terms: dict) -> Element:
        return Element(self, self._normalize_terms(terms))

    # rewriting system

    def is_normal_word(self, w: Word) -> bool:
        return not self.redexes(w)

    def redexes(self, w: Word) -> list[Redex]:
        q = self.quiver
        found = []
        ls = w.letters
        for j in range(len(ls) - 1):
            x, y = ls[j], ls[j + 1]
            if x.ghost and not y.ghost:
                found.append(Redex(j, "R1"))
            elif (not x.ghost and y.ghost and x.arrow == y.arrow and q.is_special(x)):
                found.append(Redex(j, "R2"))
        return found

    def rewrite_at(self, w: Word, pos: int) -> dict:
        """Apply the rule whose left side starts at ``pos``; returns a term dict."""
        ls = w.letters
        x, y = ls[pos], ls[pos + 1]
        before, after = ls[:pos], ls[pos + 2:]
        q = self.quiver
        if x.ghost and not y.ghost:
            if x.arrow != y.arrow:
                return {}
            return {_join(q, before, after, q.target(y)): 1}
        if not x.ghost and y.ghost and x.arrow == y.arrow and q.is_special(x):
            i = q.source(x)
            out = {_join(q, before, after, i): 1}
            for o in self._others[i]:
                out[_join(q, before + (o, o.star()), after, i)] = -1
            return out
        raise ValueError(f"no redex at position {pos}")

    def normalize_by_rewriting(self, x: Element, pick: Callable | None = None,
                               fuel: int | None = None) -> Element:
        """Normalize by explicit rewriting.

        ``pick(word, redexes)`` chooses which redex to fire; the default is the
        leftmost one, R1 before R2 at equal position.
        """
        F = self.field
        fuel = self.fuel if fuel is None else fuel
        todo = dict(x.terms)
        done: dict = {}
        steps = 0
        while todo:
            w, c = todo.popitem()
            rs = self.redexes(w)
            if not rs:
                add_into(done, {w: c}, 1, F)
                continue
            steps += 1
            if steps > fuel:
                raise NormalizationError("rewriting did not terminate within the fuel bound")
            r = pick(w, rs) if pick is not None else rs[0]
            for nw, nc in self.rewrite_at(w, r.position).items():
                add_into(todo, {nw: nc}, c, F)
        return Element(self, done)

    # normal forms

    def _append(self, w: Word, l: Letter, out: dict, scale) -> int:
        """Add ``scale * nf(l * w)`` to ``out`` for a normal word ``w``.

        Returns the number of rewrite steps used.
        """
        q = self.quiver
        F = self.field
        if w.target != q.source(l):
            return 0
        ls = w.letters
        last = ls[-1] if ls else None
        if l.ghost:
            if last is not None and not last.ghost and last.arrow == l.arrow and q.is_special(last):
                i = q.source(last)
                before = ls[:-1]
                src = w.source
                add_into(out, {Word(before, src, i): 1}, scale, F)
                for o in self._others[i]:
                    add_into(out, {Word(before + (o, o.star()), src, i): 1}, -scale, F)
                return 1
        elif last is not None and last.ghost:
            if last.arrow != l.arrow:
                return 1
            before = ls[:-1]
            add_into(out, {Word(before, w.source, q.target(l)): 1}, scale, F)
            return 1
        add_into(out, {Word(ls + (l,), w.source, q.target(l)): 1}, scale, F)
        return 0

    def _fold(self, start: dict, letters: Iterable[Letter]) -> dict:
        F = self.field
        cur = start
        steps = 0
        for l in letters:
            nxt: dict = {}
            for w, c in cur.items():
                steps += self._append(w, l, nxt, c)
            if steps > self.fuel:
                raise NormalizationError("normalization did not terminate within the fuel bound")
            cur = nxt
            if not cur:
                break
        return cur

    def normal_form_word(self, w: Word) -> dict:
        cached = self._word_nf.get(w)
        if cached is None:
            cached = self._fold({vertex_word(w.source): 1}, w.letters)
            self._word_nf[w] = cached
        return cached

    def _normalize_terms(self, terms) -> dict:
        acc: dict = {}
        F = self.field
        for w, c in terms.items():
            if len(w.letters) < 2:
                add_into(acc, {w: 1}, c, F)
            else:
                add_into(acc, self.normal_form_word(w), c, F)
        return acc

    def normal_form(self, x: Element) -> Element:
        """The normal form of a free or Leavitt element, as an element of L."""
        if x.alg is self:
            return x
        if x.alg.quiver != self.quiver:
            raise ValueError("element of a different quiver")
        return Element(self, self._normalize_terms({w: self.field(c) for w, c in x.terms.items()}))

    def equal(self, x: Element, y: Element) -> bool:
        return not self._normalize_terms(_difference(x, y, self.field))

    def multiply_words(self, u: Word, v: Word) -> dict:
        """nf(u * v) for normal words, ``v`` applied first."""
        if u.source != v.target:
            return {}
        key = (u, v)
        cached = self._mul_cache.get(key)
        if cached is None:
            if not u.letters:
                cached = {v: 1}
            elif not v.letters:
                cached = {u: 1}
            else:
                cached = self._fold({v: 1}, u.letters)
            self._mul_cache[key] = cached
        return cached

    def multiply(self, x: Element, y: Element) -> Element:
        if x.alg is not self:
            x = self.normal_form(x)
        if y.alg is not self:
            y = self.normal_form(y)
        return super().multiply(x, y)

    # relations and basis

    def relations(self) -> list[Relation]:
        return cuntz_krieger_relations(self.free)

    def basis_up_to(self, n: int) -> list[Word]:
        return normal_basis(self.quiver, n)

    def commutator(self, x: Element, y: Element) -> Element:
        return x * y - y * x


def _join(q: Quiver, before: tuple, after: tuple, vertex: str) -> Word:
    ls = before + after
    if not ls:
        return Word((), vertex, vertex)
    return Word(ls, q.source(ls[0]), q.target(ls[-1]))


def _difference(x: Element, y: Element, field: Field) -> dict:
    acc = dict(x.terms)
    add_into(acc, y.terms, -1, field)
    return acc


def cuntz_krieger_relations(free: PathAlgebra, drop: tuple[str, str] | None = None) -> list[Relation]:
    """CK1 for every pair of arrows with a common source, then CK2 per regular vertex.

    ``drop=(vertex, arrow)`` omits one summand from that vertex's CK2 relation;
    it only exists to mutate the relation set in tests.
    """
    q = free.quiver
    rels = []
    for v in q.vertices:
        outs = sorted(q.out_arrows(v), key=lambda a: a.name)
        for a in outs:
            for b in outs:
                # a * b'  (b' applied first)
                w = q.word([Letter(b.name, True), Letter(a.name)])
                terms = {w: 1}
                if a.name == b.name:
                    terms[vertex_word(a.target)] = -1
                rels.append(Relation(f"CK1({a.name},{b.name})", free.element(terms)))
    for v in q.regular_vertices:
        terms = {vertex_word(v): -1}
        for a in q.out_arrows(v):
            if drop is not None and drop == (v, a.name):
                continue
            terms[q.word([Letter(a.name), Letter(a.name, True)])] = 1
        rels.append(Relation(f"CK2({v})", free.element(terms)))
    return rels


def is_normal_monomial(q: Quiver, w: Word) -> bool:
    """Predicate form of the basis shape, independent of the rewriting code."""
    ls = w.letters
    k = 0
    while k < len(ls) and not ls[k].ghost:
        k += 1
    if any(not l.ghost for l in ls[k:]):
        return False
    if 0 < k < len(ls):
        real, gh = ls[k - 1], ls[k]
        if real.arrow == gh.arrow and q.special.get(q.source(real)) == real.arrow:
            return False
    return True


def normal_basis(q: Quiver, n: int) -> list[Word]:
    """All normal monomials of length <= n, canonically ordered.

    A monomial is ``gamma' * eta``: a real path ``eta`` followed by the ghost
    of a real path ``gamma`` ending where ``eta`` ends.
    """
    paths = q.paths(n)
    by_target: dict[str, list[Word]] = {}
    for p in paths:
        by_target.setdefault(p.target, []).append(p)
    out = []
    for eta in paths:
        for gamma in by_target[eta.target]:
            if len(eta) + len(gamma) > n:
                continue
            if eta.letters and gamma.letters:
                a, b = eta.letters[-1], gamma.letters[-1]
                if a == b and q.is_special(a):
                    continue
                out.append(Word(eta.letters + star(gamma).letters, eta.source, gamma.source))
            elif gamma.letters:
                out.append(star(gamma))
            elif eta.letters:
                out.append(eta)
            elif eta.source == gamma.source:
                out.append(eta)
    return sorted(set(out), key=word_key)


def full_basis(q: Quiver) -> list[Word]:
    """The whole basis of a finite-dimensional L (acyclic quiver).

    Raises ValueError if the enumeration does not stabilise, which happens
    exactly when the quiver has an oriented cycle.
    """
    bound = 2 * len(q.vertices)
    basis = normal_basis(q, bound)
    if any(len(w) > 2 * (len(q.vertices) - 1) for w in basis):
        raise ValueError("basis enumeration does not stabilise: the quiver has a cycle")
    return basis
