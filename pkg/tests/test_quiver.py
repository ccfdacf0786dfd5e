import pytest

from lpalg import Letter, QuiverError, validate
from lpalg.quiver import double_quiver, ghost, star


def test_single_vertex_is_a_sink():
    q = validate({"vertices": ["v"], "arrows": []})
    assert q.regular_vertices == ()
    assert q.sinks == ("v",)
    assert q.letters() == []


def test_a2_special_is_only_arrow():
    q = validate({"vertices": ["v1", "v2"], "arrows": [("a", "v1", "v2")]})
    assert q.regular_vertices == ("v1",)
    assert q.special == {"v1": "a"}


def test_default_special_is_least_name():
    q = validate({"vertices": ["v"], "arrows": [("b", "v", "v"), ("a", "v", "v")]})
    assert q.special["v"] == "a"


def test_double_quiver_swaps_endpoints():
    q = validate({"vertices": ["v1", "v2"], "arrows": [("a", "v1", "v2")]})
    dq = double_quiver(q)
    assert dq[Letter("a")] == ("v1", "v2")
    assert dq[Letter("a", True)] == ("v2", "v1")


def test_rose2_has_four_loop_letters():
    q = validate({"vertices": ["v"], "arrows": [("a", "v", "v"), ("b", "v", "v")]})
    dq = double_quiver(q)
    assert len(dq) == 4
    assert all(st == ("v", "v") for st in dq.values())


def test_ghost_of_path():
    q = validate({"vertices": ["v"], "arrows": [("a", "v", "v"), ("b", "v", "v")]})
    ba = q.word([Letter("a"), Letter("b")])
    g = ghost(ba)
    assert g.letters == (Letter("b", True), Letter("a", True))
    assert star(g) == ba
    e = q.word([], "v")
    assert ghost(e) == e


def test_ghost_rejects_ghost_letters():
    q = validate({"vertices": ["v"], "arrows": [("a", "v", "v")]})
    with pytest.raises(QuiverError):
        ghost(q.word([Letter("a", True)]))


@pytest.mark.parametrize("raw", [
    {"vertices": ["v", "v"], "arrows": []},
    {"vertices": ["v"], "arrows": [("a", "v", "w")]},
    {"vertices": ["v"], "arrows": [("a", "v", "v"), ("a", "v", "v")]},
    {"vertices": ["v", "w"], "arrows": [("a", "v", "w")], "special": {"w": "a"}},
    {"vertices": ["v", "w"], "arrows": [("a", "v", "w"), ("b", "w", "w")], "special": {"v": "b"}},
    {"vertices": ["v"], "arrows": [], "special": {"v": "a"}},
])
def test_invalid_quivers(raw):
    with pytest.raises(QuiverError):
        validate(raw)


def test_word_checks_composability():
    q = validate({"vertices": ["v1", "v2"], "arrows": [("a", "v1", "v2")]})
    with pytest.raises(QuiverError):
        q.word([Letter("a"), Letter("a")])
    w = q.word([Letter("a"), Letter("a", True)])
    assert (w.source, w.target) == ("v1", "v1")
    assert w.degree == 0


def test_acyclicity_and_components():
    q = validate({"vertices": ["v1", "v2", "w1", "w2"],
                  "arrows": [("a", "v1", "v2"), ("b", "w1", "w2")]})
    assert q.is_acyclic()
    assert len(q.components()) == 2
    r = validate({"vertices": ["v"], "arrows": [("a", "v", "v")]})
    assert not r.is_acyclic()
