"""Chain maps around the length-one resolution of L and their verifiers.

    0 -> P --partial--> L (x)_S L --m--> L -> 0,   P = sum_{i regular} L e_i (x) e_i L

with ``partial(e_i (x) e_i) = e_i (x) e_i - sum_{s(a)=i} a' (x) a``, compared
against the relative bar resolution through ``iota`` and ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .derivations import canonical_derivation, d_values, leibniz_extend, universal_delta
from .free import Element, PathAlgebra, add_into
from .leavitt import LeavittAlgebra, Relation, full_basis, normal_basis
from .linalg import Matrix, kernel_basis, rank, solve_many
from .quiver import Letter, Quiver, Word, word_key
from .sampling import Sampler
from .tensors import (TensorElement, TensorError, act_words, bimodule_act, glued_pairs,
                      is_p_element, mult_map, multiply_adjacent, p_generator, p_project)


def bar_differential(n: int, t: TensorElement) -> TensorElement:
    """d_n(a_0 (x) ... (x) a_{n+1}) = sum_i (-1)^i a_0 (x) .. a_i a_{i+1} .. (x) a_{n+1}."""
    if n < 1:
        raise ValueError("bar differential index must be >= 1")
    if t.arity != n + 2:
        raise TensorError(f"d_{n} takes arity {n + 2}, got {t.arity}")
    acc: dict = {}
    F = t.alg.field
    for i in range(n + 1):
        add_into(acc, multiply_adjacent(t, i).terms, -1 if i % 2 else 1, F)
    return TensorElement(t.alg, n + 1, acc)


def _arrow_pairs(q: Quiver, v: str) -> list[tuple[Word, Word]]:
    return [(q.letter_word(Letter(a.name, True)), q.letter_word(Letter(a.name)))
            for a in sorted(q.out_arrows(v), key=lambda a: a.name)]


def partial_map(p: TensorElement, sign: int = -1) -> TensorElement:
    """The resolution map P -> L (x)_S L.

    ``sign`` multiplies the arrow sum; anything but -1 is a deliberately
    broken map, used to show the verifiers catch it.
    """
    if not is_p_element(p):
        raise TensorError("partial_map takes an element of P")
    alg = p.alg
    q = alg.quiver
    F = alg.field
    mul = alg.multiply_words
    acc: dict = dict(p.terms)
    for (u, w), c in p.terms.items():
        for ghost_w, real_w in _arrow_pairs(q, u.source):
            for x, a in mul(u, ghost_w).items():
                for y, b in mul(real_w, w).items():
                    add_into(acc, {(x, y): 1}, sign * c * a * b, F)
    return TensorElement(alg, 2, {k: c for k, c in acc.items() if c != 0})


def iota_map(p: TensorElement) -> TensorElement:
    """P -> L^{(x)3}, e_i (x) e_i -> sum_{s(a)=i} a' (x) a (x) e_i."""
    if not is_p_element(p):
        raise TensorError("iota_map takes an element of P")
    alg = p.alg
    q = alg.quiver
    F = alg.field
    acc: dict = {}
    for (u, w), c in p.terms.items():
        for ghost_w, real_w in _arrow_pairs(q, u.source):
            for x, a in alg.multiply_words(u, ghost_w).items():
                add_into(acc, {(x, real_w, w): 1}, c * a, F)
    return TensorElement(alg, 3, acc)


def pi_map(t: TensorElement) -> TensorElement:
    """L^{(x)3} -> P, a_0 (x) a_1 (x) a_2 -> a_0 D(a_1) a_2."""
    if t.arity != 3:
        raise TensorError("pi_map takes arity 3")
    alg = t.alg
    D = canonical_derivation(alg)
    F = alg.field
    acc: dict = {}
    for (x, y, z), c in t.terms.items():
        dy = D(alg.word(y))
        part = act_words(dy, x if x.letters else None, z if z.letters else None)
        add_into(acc, part.terms, c, F)
    return p_project(TensorElement(alg, 2, acc), strict=True)


# path algebra kQ: 0 -> kQ (x)_S kQ_1 (x)_S kQ --delta--> kQ (x)_S kQ --m--> kQ -> 0

def path_algebra_delta(free: PathAlgebra, terms: dict) -> dict:
    """delta(x (x) a (x) y) = x a (x) y - x (x) a y on ghost-free words.

    ``terms`` maps ``(x, arrow_word, y)`` to coefficients; the result maps
    pairs ``(x', y')`` to coefficients.
    """
    q = free.quiver
    F = free.field
    acc: dict = {}
    for (x, a, y), c in terms.items():
        if not (x.is_path and a.is_path and y.is_path):
            raise ValueError("path_algebra_delta takes ghost-free words")
        if len(a) != 1:
            raise ValueError("the middle factor must be an arrow")
        if x.source != a.target or a.source != y.target:
            continue
        xa = q.concat(x, a)
        ay = q.concat(a, y)
        add_into(acc, {(xa, y): 1}, c, F)
        add_into(acc, {(x, ay): 1}, -c, F)
    return acc


@dataclass
class ExactnessReport:
    dims: tuple[int, ...]
    ranks: dict[str, int]
    injective: bool
    surjective: bool
    middle_exact: bool
    composite_zero: bool
    euler: int

    @property
    def exact(self) -> bool:
        return self.injective and self.surjective and self.middle_exact and self.composite_zero


def path_algebra_exactness(free: PathAlgebra) -> ExactnessReport:
    """Exactness of the path-algebra resolution of kQ for an acyclic quiver."""
    q = free.quiver
    if not q.is_acyclic():
        raise ValueError("kQ is infinite-dimensional: the quiver has a cycle")
    F = free.field
    paths = sorted(q.paths(len(q.vertices)), key=word_key)
    arrows = [q.letter_word(Letter(a.name)) for a in sorted(q.arrows, key=lambda a: a.name)]
    triples = [(x, a, y) for a in arrows for x in paths for y in paths
               if x.source == a.target and a.source == y.target]
    pairs = glued_pairs(paths)
    pidx = {k: i for i, k in enumerate(pairs)}
    lidx = {w: i for i, w in enumerate(paths)}
    delta_cols = []
    for t in triples:
        img = path_algebra_delta(free, {t: 1})
        delta_cols.append({pidx[k]: c for k, c in img.items()})
    m_cols = []
    for x, y in pairs:
        m_cols.append({lidx[q.concat(x, y)]: 1})
    dm = Matrix.from_columns(len(pairs), delta_cols, F)
    mm = Matrix.from_columns(len(paths), m_cols, F)
    return _exactness(dm, mm, (len(triples), len(pairs), len(paths)))


def _exactness(left: Matrix, right: Matrix, dims: tuple[int, int, int]) -> ExactnessReport:
    rl, rr = rank(left), rank(right)
    composite_zero = (right @ left).is_zero()
    return ExactnessReport(
        dims=dims,
        ranks={"left": rl, "right": rr},
        injective=rl == dims[0],
        surjective=rr == dims[2],
        middle_exact=composite_zero and dims[1] - rr == rl,
        composite_zero=composite_zero,
        euler=dims[0] - dims[1] + dims[2],
    )


def partial_matrix(alg: LeavittAlgebra, p_basis, ll_index: dict, sign: int = -1) -> Matrix:
    cols = []
    for pair in p_basis:
        img = partial_map(TensorElement(alg, 2, {pair: 1}), sign)
        cols.append({ll_index[k]: c for k, c in img.terms.items()})
    return Matrix.from_columns(len(ll_index), cols, alg.field)


def mult_matrix(alg: LeavittAlgebra, ll_basis, l_index: dict) -> Matrix:
    cols = []
    for x, y in ll_basis:
        cols.append({l_index[w]: c for w, c in alg.multiply_words(x, y).items()})
    return Matrix.from_columns(len(l_index), cols, alg.field)


def verify_exactness_finite(alg: LeavittAlgebra, sign: int = -1) -> ExactnessReport:
    """Exactness of 0 -> P -> L (x)_S L -> L -> 0 on full bases (acyclic quivers)."""
    q = alg.quiver
    basis = full_basis(q)
    ll = glued_pairs(basis)
    p = glued_pairs(basis, regular_only=True, quiver=q)
    ll_index = {k: i for i, k in enumerate(ll)}
    l_index = {w: i for i, w in enumerate(basis)}
    dm = partial_matrix(alg, p, ll_index, sign)
    mm = mult_matrix(alg, ll, l_index)
    return _exactness(dm, mm, (len(p), len(ll), len(basis)))


@dataclass
class TruncatedReport:
    max_len: int
    slack: int
    ll_dim: int
    p_dim: int
    kernel_dim: int
    solved: int
    unsolved: int
    preimages: list = field(default_factory=list, repr=False)


def _block(pair: tuple[Word, Word]) -> tuple:
    u, w = pair
    return (u.target, w.source, u.degree + w.degree)


def verify_exactness_truncated(alg: LeavittAlgebra, max_len: int, slack: int = 2,
                               keep_preimages: bool = False) -> TruncatedReport:
    """Evidence for ker m = im partial on length-truncated spaces.

    The kernel of m on pairs of total length <= max_len is computed exactly;
    each kernel vector is then solved against partial restricted to P-pairs
    of total length <= max_len + slack.  Unsolved vectors are inconclusive,
    not a refutation.
    """
    if max_len < 0 or slack < 0:
        raise ValueError("max_len and slack must be non-negative")
    q = alg.quiver
    F = alg.field
    top = max_len + slack
    basis = normal_basis(q, top)
    ll_small = [k for k in glued_pairs([w for w in basis if len(w) <= max_len])
                if len(k[0]) + len(k[1]) <= max_len]
    p_pairs = [k for k in glued_pairs(basis, regular_only=True, quiver=q)
               if len(k[0]) + len(k[1]) <= top]

    blocks: dict[tuple, tuple[list, list]] = {}
    for k in ll_small:
        blocks.setdefault(_block(k), ([], []))[0].append(k)
    for k in p_pairs:
        blocks.setdefault(_block(k), ([], []))[1].append(k)

    kernel_dim = solved = 0
    preimages = []
    for key in sorted(blocks, key=repr):
        lls, ps = blocks[key]
        if not lls:
            continue
        l_index: dict = {}
        m_cols = []
        for x, y in lls:
            col = {}
            for w, c in alg.multiply_words(x, y).items():
                col[l_index.setdefault(w, len(l_index))] = c
            m_cols.append(col)
        mm = Matrix.from_columns(len(l_index), m_cols, F)
        kernel = kernel_basis(mm)
        if not kernel:
            continue
        kernel_dim += len(kernel)
        row_index: dict = {}
        rhs = []
        for vec in kernel:
            rhs.append({row_index.setdefault(lls[j], len(row_index)): c
                        for j, c in enumerate(vec) if c != 0})
        cols = []
        for pair in ps:
            img = partial_map(TensorElement(alg, 2, {pair: 1}))
            cols.append({row_index.setdefault(k, len(row_index)): c for k, c in img.terms.items()})
        dm = Matrix.from_columns(len(row_index), cols, F)
        for vec, sol in zip(kernel, solve_many(dm, rhs)):
            if sol is None:
                continue
            solved += 1
            if keep_preimages:
                x = TensorElement(alg, 2, {lls[j]: c for j, c in enumerate(vec) if c != 0})
                y = TensorElement(alg, 2, {ps[j]: c for j, c in sol.items()})
                preimages.append((x, y))
    return TruncatedReport(max_len, slack, len(ll_small), len(p_pairs), kernel_dim,
                           solved, kernel_dim - solved, preimages)


# identity checks

@dataclass
class ChainMapReport:
    name: str
    holds: bool
    checked: int = 0
    witness: object = None
    detail: str = ""


CHECK_NAMES = (
    "D_kills_relations",
    "partial_D_equals_delta",
    "partial_equals_d1_iota",
    "pi_d2_zero",
    "pi_iota_identity",
    "m_partial_zero",
    "leibniz_D",
)


def _fmt(x) -> str:
    from .textio import print_canonical, print_tensor
    if isinstance(x, TensorElement):
        return print_tensor(x)
    if isinstance(x, Element):
        return print_canonical(x)
    return str(x)


def verify_identities(alg: LeavittAlgebra, seed: int = 0, samples: int = 1000,
                      partial: Callable[[TensorElement], TensorElement] | None = None,
                      relations: list[Relation] | None = None) -> list[ChainMapReport]:
    """Machine-check the identities that make the resolution diagram commute.

    ``partial`` and ``relations`` replace the real map and relation set; they
    exist so tests can confirm that broken inputs are caught.
    """
    partial = partial or partial_map
    q = alg.quiver
    D = canonical_derivation(alg)
    sampler = Sampler(alg, seed)
    reports = []

    def run(name, cases, check):
        n = 0
        for case in cases:
            n += 1
            bad = check(case)
            if bad is not None:
                return reports.append(ChainMapReport(name, False, n, case, bad))
        reports.append(ChainMapReport(name, True, n))

    # D kills every relation
    rels = alg.relations() if relations is None else relations
    values = d_values(alg)

    def kills(r: Relation):
        val = leibniz_extend(values, r.element)
        return None if val.is_zero() else f"D({r.name}) = {_fmt(val)}"

    run(CHECK_NAMES[0], rels, kills)

    gens = [alg.vertex(v) for v in q.vertices] + [alg.word(q.letter_word(l)) for l in q.letters()]

    def elements():
        yield from gens
        for _ in range(samples):
            yield sampler.element()

    def pd_delta(x):
        lhs, rhs = partial(D(x)), universal_delta(x)
        return None if lhs == rhs else f"partial(D(x)) = {_fmt(lhs)}; Delta(x) = {_fmt(rhs)}"

    run(CHECK_NAMES[1], elements(), pd_delta)

    p_gens = [p_generator(alg, v) for v in q.regular_vertices]

    def p_elements():
        yield from p_gens
        for _ in range(samples):
            yield sampler.p_element()

    def d1_iota(p):
        lhs, rhs = partial(p), bar_differential(1, iota_map(p))
        return None if lhs == rhs else f"partial(p) = {_fmt(lhs)}; d1(iota(p)) = {_fmt(rhs)}"

    run(CHECK_NAMES[2], p_elements(), d1_iota)

    def four_tensors():
        for _ in range(samples):
            yield sampler.tensor(4)

    def pi_d2(t):
        val = pi_map(bar_differential(2, t))
        return None if val.is_zero() else f"pi(d2(t)) = {_fmt(val)}"

    run(CHECK_NAMES[3], four_tensors(), pi_d2)

    def pi_iota(p):
        val = pi_map(iota_map(p))
        return None if val == p else f"pi(iota(p)) = {_fmt(val)}"

    run(CHECK_NAMES[4], p_elements(), pi_iota)

    def m_partial(p):
        val = mult_map(partial(p))
        return None if val.is_zero() else f"m(partial(p)) = {_fmt(val)}"

    run(CHECK_NAMES[5], p_elements(), m_partial)

    def pairs():
        for g in gens:
            yield (g, sampler.element())
        for _ in range(samples):
            yield (sampler.element(), sampler.element())

    def leibniz(xy):
        x, y = xy
        lhs = D(x * y)
        rhs = bimodule_act(None, D(x), y) + bimodule_act(x, D(y), None)
        return None if lhs == rhs else f"D(xy) = {_fmt(lhs)}; D(x)y + xD(y) = {_fmt(rhs)}"

    run(CHECK_NAMES[6], pairs(), leibniz)
    return reports


def mutated_partial(p: TensorElement) -> TensorElement:
    """partial with the sign of the arrow sum flipped."""
    return partial_map(p, sign=1)
