from fractions import Fraction

import pytest

from lpalg import PrimeField
from lpalg.sampling import Sampler
from lpalg.textio import (ParseError, load_quiver, parse_expr, parse_quiver, print_canonical,
                          print_quiver)

from conftest import QUIVER_DIR, leavitt


def test_parse_keeps_free_words(rose2):
    x = parse_expr("a' * a - e(v)", rose2.free)
    assert len(x) == 2
    assert print_canonical(rose2.normal_form(x)) == "-b' * b"


def test_parse_fractions(rose2):
    x = parse_expr("2/3 * a + (-1) * b", rose2.free)
    q = rose2.quiver
    coeffs = sorted(x.terms.values())
    assert coeffs == [-1, Fraction(2, 3)]


def test_print_fraction(rose2):
    assert print_canonical(rose2.normal_form(parse_expr("2/3 * a - 1/2 * b'", rose2.free))) == \
        "2/3 * a - 1/2 * b'"


@pytest.mark.parametrize("src,col", [("a * c", 5), ("a +", 4), ("e(w)", 3), ("a ** b", 4),
                                     ("(a", 3), ("1/0 * a", 3), ("", 1), ("a $ b", 3)])
def test_parse_errors(rose2, src, col):
    with pytest.raises(ParseError) as info:
        parse_expr(src, rose2.free)
    assert info.value.col == col
    assert "\n" not in str(info.value)


def test_print_zero(rose2):
    assert print_canonical(rose2.zero()) == "0"


def test_print_rose2_ck2(rose2):
    assert print_canonical(rose2.normal_form(parse_expr("a' * a", rose2.free))) == "e(v) - b' * b"


def test_scalar_means_sum_of_units(a2):
    assert parse_expr("3", a2.free) == parse_expr("3 * e(v1) + 3 * e(v2)", a2.free)


@pytest.mark.parametrize("name", ["rose2", "a3", "sink_parallel"])
def test_round_trip(name):
    alg = leavitt(name)
    s = Sampler(alg, seed=17, max_len=4, max_terms=4)
    for _ in range(500):
        x = s.element()
        assert alg.normal_form(parse_expr(print_canonical(x), alg.free)) == x


def test_round_trip_prime_field():
    alg = leavitt("rose2", PrimeField(32003))
    s = Sampler(alg, seed=3)
    for _ in range(200):
        x = s.element()
        assert alg.normal_form(parse_expr(print_canonical(x), alg.free)) == x


@pytest.mark.parametrize("path", sorted(QUIVER_DIR.glob("*.quiver")), ids=lambda p: p.stem)
def test_quiver_file_round_trip(path):
    q = load_quiver(path)
    assert parse_quiver(print_quiver(q)) == q


@pytest.mark.parametrize("text,line", [
    ("arrow a : v -> v\n", 1),
    ("vertices: v\nvertices: w\n", 2),
    ("vertices: v\narrow a v v\n", 2),
    ("vertices: v\narrow a : v -> w\n", 1),
    ("vertices: v\narrow 1a : v -> v\n", 2),
])
def test_quiver_file_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_quiver(text, "q.quiver")
    assert info.value.line == line
    assert str(info.value).startswith("q.quiver:")
