"""Seeded random elements and tensors for the randomized checks."""

from __future__ import annotations

import random

from .free import Element
from .leavitt import LeavittAlgebra
from .quiver import Word
from .tensors import TensorElement

COEFFS = (-2, -1, 1, 2, 3)


class Sampler:
    def __init__(self, alg: LeavittAlgebra, seed: int = 0, max_len: int = 3, max_terms: int = 3):
        self.alg = alg
        self.rng = random.Random(seed)
        self.max_terms = max_terms
        self.basis = alg.basis_up_to(max_len)
        self.by_source: dict[str, list[Word]] = {}
        self.by_target: dict[str, list[Word]] = {}
        for w in self.basis:
            self.by_source.setdefault(w.source, []).append(w)
            self.by_target.setdefault(w.target, []).append(w)
        q = alg.quiver
        self.regular = list(q.regular_vertices)

    def coeff(self):
        return self.rng.choice(COEFFS)

    def element(self) -> Element:
        rng = self.rng
        k = rng.randint(1, self.max_terms)
        return self.alg.element((rng.choice(self.basis), self.coeff()) for _ in range(k))

    def _chain(self, arity: int, first_source: str | None = None) -> tuple[Word, ...]:
        rng = self.rng
        if first_source is None:
            first = rng.choice(self.basis)
        else:
            first = rng.choice(self.by_source[first_source])
        ws = [first]
        for _ in range(arity - 1):
            ws.append(rng.choice(self.by_target[ws[-1].source]))
        return tuple(ws)

    def tensor(self, arity: int) -> TensorElement:
        k = self.rng.randint(1, self.max_terms)
        terms: dict = {}
        F = self.alg.field
        for _ in range(k):
            key = self._chain(arity)
            terms[key] = F(terms.get(key, 0) + self.coeff())
        return TensorElement(self.alg, arity, {k: c for k, c in terms.items() if c != 0})

    def p_element(self) -> TensorElement:
        """A random element of P (pairs glued at regular vertices)."""
        if not self.regular:
            return TensorElement(self.alg, 2)
        k = self.rng.randint(1, self.max_terms)
        terms: dict = {}
        F = self.alg.field
        for _ in range(k):
            v = self.rng.choice(self.regular)
            key = self._chain(2, first_source=v)
            terms[key] = F(terms.get(key, 0) + self.coeff())
        return TensorElement(self.alg, 2, {k: c for k, c in terms.items() if c != 0})
