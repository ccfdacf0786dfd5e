from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lpalg import QQ, Matrix, PrimeField, field_from_spec
from lpalg.linalg import kernel_basis, rank, rref, solve, solve_many

GF7 = PrimeField(7)


def test_identity_rank():
    assert rank(Matrix.identity(2)) == 2


def test_proportional_rows():
    assert rank(Matrix.from_dense([[1, 2], [2, 4]])) == 1


def test_solve_identity():
    assert solve(Matrix.identity(3), [1, 2, 3]) == [1, 2, 3]


def test_zero_matrix_inconsistent():
    assert solve(Matrix.from_dense([[0, 0], [0, 0]]), [1, 0]) is None


def test_kernel_of_identity_empty():
    assert kernel_basis(Matrix.identity(3)) == []


def test_kernel_of_row():
    (v,) = kernel_basis(Matrix.from_dense([[1, 1]]))
    assert v in ([1, -1], [-1, 1])


def test_rref_rationals():
    r, k, piv = rref(Matrix.from_dense([[2, 4], [1, 3]]))
    assert k == 2 and piv == [0, 1]
    assert r.to_dense() == [[1, 0], [0, 1]]


def test_fractions_stay_exact():
    x = solve(Matrix.from_dense([[3, 0], [0, 7]]), [1, 1])
    assert x == [Fraction(1, 3), Fraction(1, 7)]


def test_prime_field_arithmetic():
    assert GF7(10) == 3
    assert GF7.div(1, 3) == 5
    assert rank(Matrix.from_dense([[1, 2], [3, 6]], GF7)) == 1
    # 7 kills this minor
    assert rank(Matrix.from_dense([[1, 0], [0, 7]], GF7)) == 1
    assert rank(Matrix.from_dense([[1, 0], [0, 7]])) == 2


def test_field_spec():
    assert field_from_spec("q") is QQ or field_from_spec("q") == QQ
    assert field_from_spec("gf:32003").p == 32003
    for bad in ("gf:4", "gf:x", "r"):
        with pytest.raises(ValueError):
            field_from_spec(bad)


def test_solve_many_independent_rhs():
    m = Matrix.from_dense([[1, 0], [0, 0]])
    sols = solve_many(m, [{0: 2}, {1: 1}, {}])
    assert sols[0] == {0: 2}
    assert sols[1] is None
    assert sols[2] == {}


small = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=100, deadline=None)
@given(small)
def test_rank_nullity(rows):
    m = Matrix.from_dense(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == 4
    for v in ker:
        assert all(c == 0 for c in m.apply(v))


@settings(max_examples=100, deadline=None)
@given(small, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_finds_image(rows, x):
    m = Matrix.from_dense(rows)
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@settings(max_examples=100, deadline=None)
@given(small)
def test_rank_agrees_across_fields_on_small_entries(rows):
    # entries this small give minors well below 32003
    assert rank(Matrix.from_dense(rows)) == rank(Matrix.from_dense(rows, PrimeField(32003)))
