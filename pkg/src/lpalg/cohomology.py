"""HH^0 (the center) and HH^1 of L through the length-one resolution.

Applying Hom_{L-L}(-, L) to the resolution gives, after evaluating bimodule
maps on the generators e_i (x) e_i,

    Phi : sum_{i} e_i L e_i  ->  sum_{j regular} e_j L e_j,
    (m_i) -> (m_j - sum_{s(a)=j} a' m_{t(a)} a).

Its kernel is the center and its cokernel is HH^1.  HH^n vanishes for n >= 2
because the resolution has length one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivations import Derivation, derivation_from_components
from .free import Element, add_into
from .leavitt import LeavittAlgebra, full_basis, normal_basis
from .linalg import Matrix, kernel_basis, rref, solve_many
from .quiver import Letter, Word


@dataclass
class CenterReport:
    bound: int | str
    basis: list[Element]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class HH1Report:
    source_dim: int
    target_dim: int
    rank: int
    kernel_dim: int
    outer_basis: list[dict[str, Element]]

    @property
    def dimension(self) -> int:
        return self.target_dim - self.rank


def generators(alg: LeavittAlgebra) -> list[Element]:
    q = alg.quiver
    return [alg.vertex(v) for v in q.vertices] + [alg.word(q.letter_word(l)) for l in q.letters()]


def _basis_for(alg: LeavittAlgebra, bound) -> list[Word]:
    if bound == "full":
        return full_basis(alg.quiver)
    if not isinstance(bound, int) or bound < 0:
        raise ValueError("bound must be a non-negative integer or 'full'")
    return normal_basis(alg.quiver, bound)


def center(alg: LeavittAlgebra, bound: int | str = "full") -> CenterReport:
    """The center intersected with the span of normal monomials of length <= bound.

    Commuting with every generator is the same as being central, so the
    answer is exact for each bound, not an approximation.
    """
    basis = _basis_for(alg, bound)
    gens = generators(alg)
    row_index: dict = {}
    cols = []
    F = alg.field
    for w in basis:
        z = alg.word(w)
        col: dict = {}
        for gi, g in enumerate(gens):
            for u, c in (z * g - g * z).terms.items():
                col[row_index.setdefault((gi, u), len(row_index))] = c
        cols.append(col)
    m = Matrix.from_columns(len(row_index), cols, F)
    out = []
    for vec in kernel_basis(m):
        out.append(alg.element((basis[j], c) for j, c in enumerate(vec) if c != 0))
    return CenterReport(bound, out)


def loop_spaces(alg: LeavittAlgebra, vertices) -> list[tuple[str, Word]]:
    """Basis of sum_v e_v L e_v over the given vertices (finite case)."""
    basis = full_basis(alg.quiver)
    return [(v, w) for v in vertices for w in basis if w.source == v and w.target == v]


def phi_matrix(alg: LeavittAlgebra) -> tuple[Matrix, list, list]:
    """The matrix of Phi with its source and target bases."""
    q = alg.quiver
    src = loop_spaces(alg, q.vertices)
    tgt = loop_spaces(alg, q.regular_vertices)
    tidx = {k: i for i, k in enumerate(tgt)}
    F = alg.field
    cols = []
    for i, w in src:
        col: dict = {}
        if q.is_regular(i):
            add_into(col, {tidx[(i, w)]: 1}, 1, F)
        for a in q.in_arrows(i):
            j = a.source
            real = q.letter_word(Letter(a.name))
            gh = q.letter_word(Letter(a.name, True))
            for x, c in alg.multiply_words(w, real).items():
                for y, d in alg.multiply_words(gh, x).items():
                    add_into(col, {tidx[(j, y)]: 1}, -c * d, F)
        cols.append(col)
    return Matrix.from_columns(len(tgt), cols, F), src, tgt


def hh1(alg: LeavittAlgebra) -> HH1Report:
    """dim HH^1 = dim coker Phi, for finite acyclic quivers.

    ``outer_basis`` lists target basis vectors spanning a complement of the
    image, i.e. components of representatives of the outer derivations.
    """
    m, src, tgt = phi_matrix(alg)
    n = m.ncols
    rows = [dict(r) for r in m.rows]
    for k in range(len(tgt)):
        rows[k][n + k] = 1
    _, _, pivots = rref(Matrix(len(tgt), n + len(tgt), rows, alg.field))
    r = sum(1 for p in pivots if p < n)
    outer = [{tgt[p - n][0]: alg.word(tgt[p - n][1])} for p in pivots if p >= n]
    return HH1Report(len(src), len(tgt), r, len(src) - r, outer)


@dataclass
class OuterWitness:
    derivation: Derivation
    inner: bool
    implementing: Element | None


def outer_derivation_witness(alg: LeavittAlgebra, components: dict[str, Element]) -> OuterWitness:
    """Build d = f o D from components and decide whether d is inner.

    When inner, ``implementing`` is z with d(x) = x z - z x.
    """
    d = derivation_from_components(alg, components)
    m, src, tgt = phi_matrix(alg)
    tidx = {k: i for i, k in enumerate(tgt)}
    rhs: dict = {}
    for v, c in components.items():
        for w, a in alg.normal_form(c).terms.items():
            rhs[tidx[(v, w)]] = a
    sol = solve_many(m, [rhs])[0]
    if sol is None:
        return OuterWitness(d, False, None)
    z = alg.element((src[j][1], c) for j, c in sol.items())
    return OuterWitness(d, True, z)


def center_via_phi(alg: LeavittAlgebra) -> list[Element]:
    """ker Phi read back as elements of L (finite acyclic quivers)."""
    m, src, _ = phi_matrix(alg)
    return [alg.element((src[j][1], c) for j, c in enumerate(vec) if c != 0)
            for vec in kernel_basis(m)]

