import pytest

from lpalg import QQ
from lpalg.free import PathAlgebra
from lpalg.leavitt import cuntz_krieger_relations
from lpalg.linalg import kernel_basis, rank, solve
from lpalg.resolution import (CHECK_NAMES, bar_differential, iota_map, mutated_partial,
                              partial_map, path_algebra_delta, path_algebra_exactness,
                              pi_map, verify_exactness_finite, verify_exactness_truncated,
                              verify_identities)
from lpalg.sampling import Sampler
from lpalg.tensors import (TensorError, bimodule_act, mult_map, p_generator, tensor,
                           unit_tensor)

from conftest import ex, leavitt


def T(alg, *srcs):
    return tensor(*(ex(alg, s) for s in srcs))


def test_d1_formula(rose2):
    t = T(rose2, "a", "b'", "b")
    assert bar_differential(1, t) == T(rose2, "a * b'", "b") - T(rose2, "a", "b' * b")
    assert bar_differential(1, unit_tensor(rose2, "v", 3)).is_zero()


def test_bar_arity_checked(rose2):
    with pytest.raises(TensorError):
        bar_differential(1, unit_tensor(rose2, "v", 2))
    with pytest.raises(ValueError):
        bar_differential(0, unit_tensor(rose2, "v", 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bar_squares_to_zero(n):
    alg = leavitt("rose2")
    s = Sampler(alg, seed=n)
    for _ in range(200):
        t = s.tensor(n + 3)
        assert bar_differential(n, bar_differential(n + 1, t)).is_zero()


def test_partial_examples(a2, rose2):
    assert partial_map(p_generator(a2, "v1")) == unit_tensor(a2, "v1") - T(a2, "a'", "a")
    assert partial_map(p_generator(rose2, "v")) == \
        unit_tensor(rose2, "v") - T(rose2, "a'", "a") - T(rose2, "b'", "b")
    assert mult_map(partial_map(p_generator(a2, "v1"))).is_zero()


def test_partial_rejects_non_p(a2):
    with pytest.raises(TensorError):
        partial_map(unit_tensor(a2, "v2"))


def test_iota_examples(a2, rose2):
    assert iota_map(p_generator(a2, "v1")) == T(a2, "a'", "a", "e(v1)")
    assert iota_map(p_generator(rose2, "v")) == \
        T(rose2, "a'", "a", "e(v)") + T(rose2, "b'", "b", "e(v)")


def test_pi_examples(rose2):
    assert pi_map(iota_map(p_generator(rose2, "v"))) == p_generator(rose2, "v")
    assert pi_map(unit_tensor(rose2, "v", 3)).is_zero()


@pytest.mark.parametrize("name", ["rose2", "sink_parallel"])
def test_maps_are_bimodule_maps(name):
    alg = leavitt(name)
    s = Sampler(alg, seed=21)
    for _ in range(100):
        l, r, p = s.element(), s.element(), s.p_element()
        lpr = bimodule_act(l, p, r)
        assert iota_map(lpr) == bimodule_act(l, iota_map(p), r)
        assert partial_map(lpr) == bimodule_act(l, partial_map(p), r)


def test_path_algebra_delta_on_generator(a2):
    k = PathAlgebra(a2.quiver, QQ)
    q = a2.quiver
    a = q.letter_word(q.letters()[0])
    e1, e2 = q.word([], "v1"), q.word([], "v2")
    assert path_algebra_delta(k, {(e2, a, e1): 1}) == {(a, e1): 1, (e2, a): -1}


@pytest.mark.parametrize("name,dims", [("a2", (1, 4, 3)), ("a3", (4, 10, 6)),
                                       ("two_a2", (2, 8, 6)), ("sink_parallel", (2, 6, 4))])
def test_path_algebra_resolution_exact(name, dims):
    rep = path_algebra_exactness(PathAlgebra(leavitt(name).quiver, QQ))
    assert rep.dims == dims
    assert rep.exact and rep.euler == 0


@pytest.mark.parametrize("name", ["rose2", "a2", "single", "sink_parallel"])
def test_all_checks_hold(name):
    reps = verify_identities(leavitt(name), seed=1, samples=100)
    assert [r.name for r in reps] == list(CHECK_NAMES)
    assert all(r.holds for r in reps)


@pytest.mark.parametrize("name", ["rose2", "a2", "loop"])
def test_sign_flip_is_caught(name):
    reps = {r.name: r for r in verify_identities(leavitt(name), samples=20,
                                                 partial=mutated_partial)}
    r = reps["partial_D_equals_delta"]
    assert not r.holds
    # the first failing case is an arrow
    assert len(r.witness.terms) == 1 and len(next(iter(r.witness.terms))) == 1


def test_dropped_ck2_arrow_is_caught(rose2):
    rels = cuntz_krieger_relations(rose2.free, drop=("v", "b"))
    reps = {r.name: r for r in verify_identities(rose2, samples=10, relations=rels)}
    assert not reps["D_kills_relations"].holds
    assert reps["D_kills_relations"].witness.name.startswith("CK2(v)")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matrix_algebra_exactness(n):
    rep = verify_exactness_finite(leavitt(f"a{n}"))
    assert rep.dims == ((n - 1) * n * n, n ** 3, n * n)
    assert rep.exact and rep.injective and rep.euler == 0


def test_a2_exactness_details(a2):
    rep = verify_exactness_finite(a2)
    assert rep.dims == (4, 8, 4) and rep.ranks == {"left": 4, "right": 4}


def test_single_vertex_exactness():
    rep = verify_exactness_finite(leavitt("single"))
    assert rep.dims == (0, 1, 1) and rep.exact


def test_mutated_sign_breaks_exactness(a2):
    assert not verify_exactness_finite(a2, sign=1).exact


@pytest.mark.parametrize("name,n", [("loop", 4), ("rose2", 3), ("sink_parallel", 3)])
def test_truncated_exactness(name, n):
    rep = verify_exactness_truncated(leavitt(name), n, slack=2)
    assert rep.unsolved == 0 and rep.solved == rep.kernel_dim > 0


def test_truncated_zero_length(rose2):
    rep = verify_exactness_truncated(rose2, 0, slack=0)
    assert rep.kernel_dim == 0 and rep.unsolved == 0


def test_truncated_slack_zero_suffices(rose2):
    # -sum a D(b) already gives a preimage of the same total length
    assert verify_exactness_truncated(rose2, 3, slack=0).unsolved == 0


def test_truncated_preimages_are_correct(loop):
    rep = verify_exactness_truncated(loop, 3, slack=2, keep_preimages=True)
    for kv, pre in rep.preimages:
        assert partial_map(pre) == kv
