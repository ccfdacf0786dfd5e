"""Derivations given by their values on letters and extended by Leibniz.

Targets are either L itself or an arity-2 tensor space over L.  A
derivation is evaluated on elements of L only after the Cuntz-Krieger
relations have been checked to die under it (:func:`check_descends`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .free import Element, PathAlgebra, add_into
from .leavitt import LeavittAlgebra, Relation
from .quiver import Letter, Word, vertex_word
from .tensors import TensorElement, act_words, p_project, zero as tensor_zero

Value = Union[Element, TensorElement]


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorValues:
    """Values on every letter of the double quiver; vertices go to 0.

    ``target`` is ``"algebra"`` or ``"tensor"``.
    """

    alg: LeavittAlgebra
    target: str
    values: Mapping[Letter, Value]

    def __post_init__(self):
        if self.target not in ("algebra", "tensor"):
            raise DerivationError(f"unknown target {self.target!r}")
        q = self.alg.quiver
        for l in q.letters():
            if l not in self.values:
                raise DerivationError(f"no value given for letter {l}")
        for l, v in self.values.items():
            lo, hi = _support(v)
            if not lo <= {q.target(l)} or not hi <= {q.source(l)}:
                raise DerivationError(
                    f"value of {l} must lie in e({q.target(l)}) M e({q.source(l)})")

    def zero(self) -> Value:
        if self.target == "algebra":
            return self.alg.zero()
        return tensor_zero(self.alg, 2)


def _support(v: Value) -> tuple[set, set]:
    if isinstance(v, Element):
        return {w.target for w in v.terms}, {w.source for w in v.terms}
    return {k[0].target for k in v.terms}, {k[-1].source for k in v.terms}


@dataclass(frozen=True)
class Certificate:
    """Proof-by-computation that every relation is killed."""

    relations: tuple[str, ...]


@dataclass(frozen=True)
class Violation:
    relation: str
    value: Value


def _act(value: Value, left: Word | None, right: Word | None) -> Value:
    if isinstance(value, TensorElement):
        return act_words(value, left, right)
    alg = value.alg
    acc: dict = {}
    F = alg.field
    for w, c in value.terms.items():
        lw = {w: 1} if left is None else alg.multiply_words(left, w)
        for x, a in lw.items():
            rw = {x: 1} if right is None else alg.multiply_words(x, right)
            add_into(acc, rw, c * a, F)
    return Element(alg, acc)


def _nf_terms(alg: LeavittAlgebra, letters: tuple) -> list:
    if not letters:
        return [(None, 1)]
    q = alg.quiver
    w = Word(letters, q.source(letters[0]), q.target(letters[-1]))
    return list(alg.normal_form_word(w).items())


def _word_value(v: GeneratorValues, w: Word) -> dict:
    """Sum over positions j of (letters after j) * v(letter j) * (letters before j)."""
    alg = v.alg
    F = alg.field
    acc: dict = {}
    ls = w.letters
    for j, l in enumerate(ls):
        val = v.values[l]
        if not val.terms:
            continue
        rights = _nf_terms(alg, ls[:j])
        for lw, lc in _nf_terms(alg, ls[j + 1:]):
            for rw, rc in rights:
                add_into(acc, _act(val, lw, rw).terms, lc * rc, F)
    return acc


def leibniz_extend(v: GeneratorValues, x: Element, certificate: Certificate | None = None,
                   _cache: dict | None = None) -> Value:
    """Evaluate the derivation determined by ``v`` on ``x``.

    ``x`` may live in the free algebra, or in L when a certificate is given.
    """
    alg = v.alg
    if isinstance(x.alg, LeavittAlgebra):
        if certificate is None:
            raise DerivationError("evaluating on L requires a descent certificate")
    elif not isinstance(x.alg, PathAlgebra) or x.alg.quiver != alg.quiver:
        raise DerivationError("element of a different quiver")
    F = alg.field
    acc: dict = {}
    for w, c in x.terms.items():
        if not w.letters:
            continue
        if _cache is not None:
            wv = _cache.get(w)
            if wv is None:
                wv = _cache[w] = _word_value(v, w)
        else:
            wv = _word_value(v, w)
        add_into(acc, wv, c, F)
    if v.target == "algebra":
        return Element(alg, acc)
    return TensorElement(alg, 2, acc)


def check_descends(v: GeneratorValues, relations: list[Relation] | None = None):
    """A Certificate if every relation maps to 0, else the list of Violations."""
    rels = v.alg.relations() if relations is None else relations
    bad = []
    for r in rels:
        val = leibniz_extend(v, r.element)
        if val.terms:
            bad.append(Violation(r.name, val))
    if bad:
        return bad
    return Certificate(tuple(r.name for r in rels))


class Derivation:
    """A certified derivation L -> M."""

    def __init__(self, values: GeneratorValues, certificate: Certificate):
        if not isinstance(certificate, Certificate):
            raise DerivationError("a derivation needs a descent certificate")
        self.values = values
        self.certificate = certificate
        self._cache: dict = {}

    @classmethod
    def certify(cls, values: GeneratorValues, relations=None) -> "Derivation":
        res = check_descends(values, relations)
        if not isinstance(res, Certificate):
            names = ", ".join(b.relation for b in res)
            raise DerivationError(f"values do not kill the relations: {names}")
        return cls(values, res)

    @property
    def alg(self) -> LeavittAlgebra:
        return self.values.alg

    def __call__(self, x: Element) -> Value:
        alg = self.alg
        if x.alg is not alg:
            x = alg.normal_form(x)
        return leibniz_extend(self.values, x, self.certificate, self._cache)

    def on_letter(self, l: Letter) -> Value:
        return self.values.values[l]


def universal_delta(x: Element) -> TensorElement:
    """Delta(a) = a (x) e_i - e_j (x) a for a in e_j L e_i."""
    alg = x.alg
    if not isinstance(alg, LeavittAlgebra):
        raise DerivationError("universal_delta takes an element of L")
    acc: dict = {}
    F = alg.field
    for w, c in x.terms.items():
        if not w.letters:
            continue
        add_into(acc, {(w, vertex_word(w.source)): 1, (vertex_word(w.target), w): -1}, c, F)
    return TensorElement(alg, 2, acc)


def d_values(alg: LeavittAlgebra) -> GeneratorValues:
    """D(a) = a (x) e(s(a)),  D(a') = -e(s(a)) (x) a'."""
    q = alg.quiver
    vals = {}
    for a in q.arrows:
        real, gh = Letter(a.name), Letter(a.name, True)
        e = vertex_word(a.source)
        vals[real] = TensorElement(alg, 2, {(q.letter_word(real), e): 1})
        vals[gh] = TensorElement(alg, 2, {(e, q.letter_word(gh)): alg.field(-1)})
    return GeneratorValues(alg, "tensor", vals)


class CanonicalDerivation(Derivation):
    """D : L -> P, certified against the relations at construction."""

    def __init__(self, alg: LeavittAlgebra):
        v = d_values(alg)
        res = check_descends(v)
        if not isinstance(res, Certificate):
            raise DerivationError("D does not kill the Cuntz-Krieger relations")
        super().__init__(v, res)

    def __call__(self, x: Element) -> TensorElement:
        return p_project(super().__call__(x), strict=True)


def canonical_derivation(alg: LeavittAlgebra) -> CanonicalDerivation:
    """The (cached) derivation D of ``alg``."""
    d = alg.__dict__.get("_canonical_derivation")
    if d is None:
        d = alg._canonical_derivation = CanonicalDerivation(alg)
    return d


def derivation_D(x: Element) -> TensorElement:
    return canonical_derivation(x.alg)(x)


def _component_map(alg: LeavittAlgebra, components: Mapping[str, Value]) -> Callable:
    q = alg.quiver
    for v, c in components.items():
        if not q.is_regular(v):
            raise DerivationError(f"component at {v!r}: not a regular vertex")
        lo, hi = _support(c)
        if not lo <= {v} or not hi <= {v}:
            raise DerivationError(f"component at {v!r} must lie in e({v}) M e({v})")
    kinds = {type(c) for c in components.values()}
    if len(kinds) > 1:
        raise DerivationError("components must all lie in the same bimodule")

    def f(p: TensorElement) -> Value | None:
        out = None
        F = alg.field
        acc: dict = {}
        for (u, w), c in p.terms.items():
            comp = components.get(u.source)
            if comp is None:
                continue
            val = _act(comp, u if u.letters else None, w if w.letters else None)
            add_into(acc, val.terms, c, F)
            out = val
        if out is None:
            return None
        if isinstance(out, TensorElement):
            return TensorElement(alg, out.arity, acc)
        return Element(alg, acc)

    return f


def derivation_from_components(alg: LeavittAlgebra, components: Mapping[str, Value]) -> Derivation:
    """The derivation x -> f(D(x)) where f is the bimodule map e_i (x) e_i -> c(i).

    Components must sit in e_i M e_i for regular i; missing ones are 0.  The
    result is certified because it factors through D.
    """
    f = _component_map(alg, components)
    D = canonical_derivation(alg)
    target = "algebra"
    for c in components.values():
        if isinstance(c, TensorElement):
            if c.arity != 2:
                raise DerivationError("tensor components must have arity 2")
            target = "tensor"
    vals = {}
    for l in alg.quiver.letters():
        val = f(D.on_letter(l))
        if val is None:
            val = alg.zero() if target == "algebra" else tensor_zero(alg, 2)
        vals[l] = val
    gv = GeneratorValues(alg, target, vals)
    return Derivation(gv, D.certificate)
