import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import F2, F5, random_matrix, random_quiver, random_representation, random_scalar, random_walk
from ontoquiver.errors import CyclicQuiver, MixedEndpoints, PathQuiverMismatch, QuiverMismatch, ShapeMismatch
from ontoquiver.linalg import QQ, Matrix
from ontoquiver.linrep import (
    LinComb,
    RepMorphism,
    Representation,
    algebra_action,
    check_rep_morphism,
    compose_rep_morphisms,
    direct_sum,
    direct_sum_maps,
    dumps_representation,
    eval_lincomb,
    eval_path,
    hom_space,
    identity_rep_morphism,
    is_exact_representation,
    path_algebra_basis,
    representation,
    representation_from_dict,
    representation_to_dict,
    validate_representation,
    zero_representation,
)
from ontoquiver.paths import Path, compose_paths, id_path, make_path
from ontoquiver.quiver import build_quiver

A2 = build_quiver(["1", "2"], [("a", "1", "2")])
A3 = build_quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
KRONECKER = build_quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
LOOP = build_quiver(["1"], [("l", "1", "1")])


def rep_a2(x, field=QQ):
    return representation(A2, {"1": 1, "2": 1}, {"a": [[x]]}, field)


def mat(*rows, field=QQ):
    return Matrix.from_rows(field, rows)


# -- validation and evaluation --------------------------------------------------------


def test_validate_examples():
    assert validate_representation(rep_a2(1))
    bad = Representation(A2, {"1": 1, "2": 1}, {"a": mat([1], [1])})
    assert not validate_representation(bad)
    assert validate_representation(zero_representation(A2))
    assert not validate_representation(Representation(A2, {"1": 1}, {"a": mat([1])}))


def test_eval_identity_path():
    q = build_quiver(["v"])
    m = representation(q, {"v": 3}, {})
    assert eval_path(m, id_path(q, "v")) == Matrix.identity(QQ, 3)


def test_eval_product_in_a3():
    m = representation(A3, {"1": 1, "2": 1, "3": 1}, {"a": [[2]], "b": [[3]]})
    assert eval_path(m, make_path(A3, ["a", "b"])) == mat([6])


def test_eval_order_is_path_order():
    m = representation(A3, {"1": 2, "2": 2, "3": 2}, {"a": [[1, 1], [0, 1]], "b": [[0, 1], [1, 0]]})
    p = make_path(A3, ["a", "b"])
    assert eval_path(m, p) == m.mats["b"] @ m.mats["a"]
    assert eval_path(m, p) != m.mats["a"] @ m.mats["b"]


def test_eval_rejects_foreign_path():
    with pytest.raises(PathQuiverMismatch):
        eval_path(rep_a2(1), Path("1", "3", ("a", "b")))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, F5]))
def test_functoriality_property(seed, field):
    rng = random.Random(seed)
    q = random_quiver(rng, 4, 6)
    m = random_representation(rng, q, field)
    p = random_walk(rng, q, rng.choice(q.vertex_ids), 3)
    r = random_walk(rng, q, p.target, 3)
    assert eval_path(m, compose_paths(r, p)) == eval_path(m, r) @ eval_path(m, p)


def test_lincomb_examples():
    m = representation(KRONECKER, {"1": 1, "2": 1}, {"a": [[1]], "b": [[2]]})
    a, b = make_path(KRONECKER, ["a"]), make_path(KRONECKER, ["b"])
    assert eval_lincomb(m, LinComb("1", "2", [(1, a), (1, b)])) == mat([3])
    assert eval_lincomb(m, LinComb("1", "2", [])) == mat([0])
    assert eval_lincomb(m, LinComb("1", "2", [(2, a), (-2, a)])).is_zero()
    with pytest.raises(MixedEndpoints):
        eval_lincomb(m, LinComb("1", "1", [(1, a)]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, F5]))
def test_lincomb_is_linear(seed, field):
    rng = random.Random(seed)
    m = random_representation(rng, KRONECKER, field)
    a, b = make_path(KRONECKER, ["a"]), make_path(KRONECKER, ["b"])
    c1, c2, d1, d2 = (random_scalar(rng, field) for _ in range(4))
    x = eval_lincomb(m, LinComb("1", "2", [(c1, a), (c2, b)]))
    y = eval_lincomb(m, LinComb("1", "2", [(d1, a), (d2, b)]))
    both = eval_lincomb(m, LinComb("1", "2", [(c1 + d1, a), (c2 + d2, b)]))
    assert both == x + y


# -- morphisms and hom spaces -----------------------------------------------------------


def test_check_rep_morphism_examples():
    m1, m2 = rep_a2(1), rep_a2(2)
    assert check_rep_morphism(identity_rep_morphism(m1), m1, m1)
    assert not check_rep_morphism(RepMorphism({"1": mat([1]), "2": mat([1])}), m1, m2)
    assert not check_rep_morphism(RepMorphism({"1": mat([2]), "2": mat([1])}), m1, m2)
    assert check_rep_morphism(RepMorphism({"1": mat([1]), "2": mat([2])}), m1, m2)


def test_check_rep_morphism_errors():
    with pytest.raises(QuiverMismatch):
        check_rep_morphism(RepMorphism({}), rep_a2(1), representation(A3, {"1": 0, "2": 0, "3": 0}, {"a": [], "b": []}))
    with pytest.raises(QuiverMismatch):
        check_rep_morphism(RepMorphism({}), rep_a2(1), rep_a2(1, F5))
    with pytest.raises(ShapeMismatch):
        check_rep_morphism(RepMorphism({"1": mat([1, 0]), "2": mat([1])}), rep_a2(1), rep_a2(1))


def test_hom_space_examples():
    h = hom_space(rep_a2(1), rep_a2(1))
    assert h.dimension == 1
    (f,) = h.basis
    assert f.maps["1"] == f.maps["2"]
    left = representation(A2, {"1": 1, "2": 0}, {"a": []})
    right = representation(A2, {"1": 0, "2": 1}, {"a": [[]]})
    assert hom_space(left, right).dimension == 0
    for target in (rep_a2(1), rep_a2(0), left, right):
        assert hom_space(zero_representation(A2), target).dimension == 0


def test_hom_space_over_f2_agrees_with_count():
    m = rep_a2(1, F2)
    count = 0
    for x in (0, 1):
        for y in (0, 1):
            count += check_rep_morphism(RepMorphism({"1": mat([x], field=F2), "2": mat([y], field=F2)}), m, m)
    assert 2 ** hom_space(m, m).dimension == count == 2


def test_endomorphisms_of_loop_rep_commute_with_the_loop():
    m = representation(LOOP, {"1": 2}, {"l": [[0, 1], [0, 0]]})
    h = hom_space(m, m)
    # the centralizer of a 2x2 nilpotent Jordan block is 2-dimensional
    assert h.dimension == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, F5]))
def test_hom_basis_combinations_pass(seed, field):
    rng = random.Random(seed)
    q = random_quiver(rng, 3, 4)
    m1, m2 = random_representation(rng, q, field, 2), random_representation(rng, q, field, 2)
    h = hom_space(m1, m2)
    assert len(h.basis) == h.dimension
    for f in h.basis:
        assert check_rep_morphism(f, m1, m2)
    if h.basis:
        combo = h.basis[0].scale(random_scalar(rng, field))
        for f in h.basis[1:]:
            combo = combo + f.scale(random_scalar(rng, field))
        assert check_rep_morphism(combo, m1, m2)


def test_composition_of_morphisms():
    m1, m2 = rep_a2(1), rep_a2(2)
    f = RepMorphism({"1": mat([1]), "2": mat([2])})
    g = identity_rep_morphism(m2)
    assert check_rep_morphism(compose_rep_morphisms(g, f), m1, m2)


# -- direct sums ------------------------------------------------------------------------


def test_direct_sum_examples():
    m = rep_a2(3)
    assert direct_sum(m, zero_representation(A2)) == m
    s = direct_sum(rep_a2(1), rep_a2(2))
    assert s.dims == {"1": 2, "2": 2}
    assert s.mats["a"] == mat([1, 0], [0, 2])


def test_direct_sum_structure_maps():
    m1, m2 = rep_a2(1), rep_a2(2)
    s = direct_sum(m1, m2)
    i1, i2, p1, p2 = direct_sum_maps(m1, m2)
    assert check_rep_morphism(i1, m1, s) and check_rep_morphism(i2, m2, s)
    assert check_rep_morphism(p1, s, m1) and check_rep_morphism(p2, s, m2)
    assert compose_rep_morphisms(p1, i1) == identity_rep_morphism(m1)
    assert compose_rep_morphisms(p2, i1).maps["1"].is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_is_additive(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, 3, 3)
    m1, m2, p = (random_representation(rng, q, F5, 2) for _ in range(3))
    assert hom_space(direct_sum(m1, m2), p).dimension == hom_space(m1, p).dimension + hom_space(m2, p).dimension


# -- path algebra -----------------------------------------------------------------------


def test_path_algebra_bases():
    assert [p.arrows for p in path_algebra_basis(A2)] == [(), (), ("a",)]
    assert len(path_algebra_basis(A3)) == 6
    single = build_quiver(["1"])
    assert path_algebra_basis(single) == [Path("1", "1", ())]
    with pytest.raises(CyclicQuiver):
        path_algebra_basis(LOOP)


def test_algebra_action_on_a2():
    m = rep_a2(1)
    h = algebra_action(A2, m)
    e1, e2, a = id_path(A2, "1"), id_path(A2, "2"), make_path(A2, ["a"])
    assert h[e1] == mat([1, 0], [0, 0])
    assert h[e2] == mat([0, 0], [0, 1])
    assert h[a] == mat([0, 0], [1, 0])
    assert h[a] @ h[e1] == h[a]
    assert h[e1] + h[e2] == Matrix.identity(QQ, 2)


def test_algebra_action_on_zero_rep():
    h = algebra_action(A2, zero_representation(A2))
    assert all(x.shape == (0, 0) for x in h.values())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_identity_paths_sum_to_identity(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, 4, 4, acyclic=True)
    m = random_representation(rng, q, QQ, 2)
    h = algebra_action(q, m)
    total = Matrix.zero(QQ, m.total_dim, m.total_dim)
    for v in q.vertex_ids:
        total = total + h[id_path(q, v)]
    assert total == Matrix.identity(QQ, m.total_dim)


def test_exactness_examples():
    assert is_exact_representation(A2, rep_a2(1))
    assert not is_exact_representation(A2, zero_representation(A2))
    assert not is_exact_representation(A2, rep_a2(0))
    with pytest.raises(CyclicQuiver):
        is_exact_representation(LOOP, representation(LOOP, {"1": 1}, {"l": [[1]]}))


def _random_invertible(rng, field, n):
    while True:
        g = random_matrix(rng, field, n, n)
        if g.rank() == n:
            return g


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, F5]))
def test_exactness_invariant_under_base_change(seed, field):
    rng = random.Random(seed)
    q = random_quiver(rng, 3, 3, acyclic=True)
    m = random_representation(rng, q, field, 2)
    g = {v: _random_invertible(rng, field, m.dims[v]) for v in q.vertex_ids}
    conj = Representation(q, m.dims, {a.id: g[a.tgt] @ m.mats[a.id] @ g[a.src].inverse() for a in q.arrows}, field)
    assert check_rep_morphism(RepMorphism(g), m, conj)
    assert is_exact_representation(q, m) == is_exact_representation(q, conj)


# -- JSON -------------------------------------------------------------------------------


def test_json_round_trip():
    m = representation(A3, {"1": 1, "2": 0, "3": 2}, {"a": [], "b": [[], []]})
    assert representation_from_dict(A3, representation_to_dict(m)) == m
    r = representation(A2, {"1": 1, "2": 1}, {"a": [[Fraction(1, 3)]]})
    data = representation_to_dict(r)
    assert data == {"field": "Q", "dims": {"1": 1, "2": 1}, "mats": {"a": [["1/3"]]}}
    assert representation_from_dict(A2, data) == r
    f = rep_a2(4, F5)
    assert representation_from_dict(A2, representation_to_dict(f)) == f
    assert '"p": 5' in dumps_representation(f)
