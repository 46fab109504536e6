import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import oracle_paths, random_quiver, random_walk
from ontoquiver.errors import CyclicQuiver, InvalidMorphism, NonComposable, PathQuiverMismatch, UnknownVertex
from ontoquiver.fincat import category_from_generators, check_functor, monoid_category, terminal_category, underlying_graph
from ontoquiver.paths import (
    Path,
    all_paths,
    compose_paths,
    enumerate_paths,
    extend_to_functor,
    id_path,
    is_complete_bound,
    make_path,
    path_category,
    path_from_dict,
    path_graph,
    path_in_quiver,
    restrict_to_graph,
)
from ontoquiver.quiver import GraphMorphism, build_quiver, is_acyclic

A2 = build_quiver(["1", "2"], [("a", "1", "2")])
A3 = build_quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
LOOP = build_quiver(["1"], [("l", "1", "1")])


def test_id_path():
    e = id_path(A2, "1")
    assert e.source == e.target == e.at == "1" and e.is_identity
    assert compose_paths(e, e) == e
    with pytest.raises(UnknownVertex):
        id_path(A2, "3")


def test_compose_in_a3():
    a, b = make_path(A3, ["a"]), make_path(A3, ["b"])
    ab = compose_paths(b, a)
    assert ab.arrows == ("a", "b") and (ab.source, ab.target) == ("1", "3")
    assert compose_paths(ab, id_path(A3, "1")) == ab
    assert compose_paths(id_path(A3, "3"), ab) == ab
    with pytest.raises(NonComposable):
        compose_paths(a, b)


def test_make_path_validation():
    with pytest.raises(PathQuiverMismatch):
        make_path(A3, ["b", "a"])
    with pytest.raises(PathQuiverMismatch):
        make_path(A3, ["z"])
    with pytest.raises(PathQuiverMismatch):
        make_path(A3, [])
    assert make_path(A3, [], at="2") == id_path(A3, "2")
    assert path_in_quiver(A3, Path("1", "3", ("a", "b")))
    assert not path_in_quiver(A3, Path("1", "2", ("a", "b")))


def test_path_json_and_ids():
    ab = make_path(A3, ["a", "b"])
    assert ab.to_dict() == {"arrows": ["a", "b"]}
    assert id_path(A3, "2").to_dict() == {"at": "2"}
    assert path_from_dict(A3, ab.to_dict()) == ab
    assert path_from_dict(A3, {"at": "2"}) == id_path(A3, "2")
    assert ab.id == "path:1:a|b"


def test_enumerate_examples():
    assert [p.arrows for p in enumerate_paths(A3, "1", "3", 5)] == [("a", "b")]
    loops = enumerate_paths(LOOP, "1", "1", 3)
    assert [p.arrows for p in loops] == [(), ("l",), ("l", "l"), ("l", "l", "l")]
    for n in range(6):
        assert len(enumerate_paths(A2, "2", "1", n)) == 0


def test_enumerate_errors():
    with pytest.raises(UnknownVertex):
        enumerate_paths(A2, "1", "9", 2)
    with pytest.raises(ValueError):
        enumerate_paths(A2, "1", "2", -1)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4))
def test_enumerate_matches_dfs_oracle(seed, max_len):
    rng = random.Random(seed)
    q = random_quiver(rng, 4, 6)
    for i in q.vertex_ids:
        for j in q.vertex_ids:
            got = [p.arrows for p in enumerate_paths(q, i, j, max_len)]
            assert got == oracle_paths(q, i, j, max_len)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_bound_at_arrow_count_is_saturated_for_acyclic(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, 5, 6, acyclic=True)
    n = len(q.arrows)
    assert is_complete_bound(q, n)
    for i in q.vertex_ids:
        for j in q.vertex_ids:
            assert enumerate_paths(q, i, j, n) == enumerate_paths(q, i, j, n + 3)


def test_completeness_flag():
    assert is_complete_bound(A3, 2)
    assert not is_complete_bound(A3, 1)
    assert not is_complete_bound(LOOP, 100)


def test_path_graph_examples():
    g = path_graph(A3, 2)
    assert len(g.vertices) == 3 and len(g.arrows) == 6
    assert g.has_arrow("path:1:a|b") and g.arrow("path:1:a|b").label == "a|b"
    assert len(path_graph(A3, 0).arrows) == 3
    assert all(a.src == a.tgt for a in path_graph(A3, 0).arrows)
    g = path_graph(LOOP, 2)
    assert len(g.vertices) == 1 and len(g.arrows) == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_path_graph_count(seed, n):
    q = random_quiver(random.Random(seed), 4, 5)
    total = sum(len(enumerate_paths(q, i, j, n)) for i in q.vertex_ids for j in q.vertex_ids)
    assert len(path_graph(q, n).arrows) == total


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_associativity_property(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, 6, 10)
    p = random_walk(rng, q, rng.choice(q.vertex_ids), 3)
    r = random_walk(rng, q, p.target, 3)
    s = random_walk(rng, q, r.target, 3)
    assert compose_paths(s, compose_paths(r, p)) == compose_paths(compose_paths(s, r), p)


def test_path_category_of_a3():
    c = path_category(A3)
    assert len(c.objects) == 3 and len(c.morphisms) == 6
    assert c.compose["path:2:b", "path:1:a"] == "path:1:a|b"
    with pytest.raises(CyclicQuiver):
        path_category(LOOP)


# -- extension along the free construction -------------------------------------------


CHAIN = category_from_generators("XY", [("u", "X", "Y")])
IDEMPOTENT = monoid_category(["e", "s"], {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "s"})


def test_extend_single_generator():
    m = GraphMorphism(A2, underlying_graph(CHAIN), {"1": "X", "2": "Y"}, {"a": "u"})
    F = extend_to_functor(A2, CHAIN, m)
    assert check_functor(F)
    assert F.morphism_map["path:1:a"] == "u"
    assert F.morphism_map["path:1:"] == "id_X" and F.morphism_map["path:2:"] == "id_Y"
    assert restrict_to_graph(F, A2) == m


def test_extend_without_arrows():
    q = build_quiver(["p", "r"])
    m = GraphMorphism(q, underlying_graph(CHAIN), {"p": "Y", "r": "Y"}, {})
    F = extend_to_functor(q, CHAIN, m)
    assert check_functor(F)
    assert set(F.morphism_map.values()) == {"id_Y"}


def test_extend_into_idempotent_monoid():
    m = GraphMorphism(A3, underlying_graph(IDEMPOTENT), {v: "x" for v in "123"}, {"a": "s", "b": "s"})
    F = extend_to_functor(A3, IDEMPOTENT, m)
    assert check_functor(F)
    assert F.morphism_map["path:1:a|b"] == "s"


def test_extend_errors():
    term = terminal_category()
    ug = underlying_graph(term)
    with pytest.raises(CyclicQuiver):
        extend_to_functor(LOOP, term, GraphMorphism(LOOP, ug, {"1": "*"}, {"l": "id_*"}))
    bad = GraphMorphism(A2, underlying_graph(CHAIN), {"1": "Y", "2": "X"}, {"a": "u"})
    with pytest.raises(InvalidMorphism):
        extend_to_functor(A2, CHAIN, bad)


def test_all_paths_sorted():
    ps = all_paths(A3, 3)
    assert [len(p) for p in ps] == sorted(len(p) for p in ps)
    assert is_acyclic(A3) and len(ps) == 6
