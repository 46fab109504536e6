import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import F2, F5, random_matrix
from ontoquiver.errors import ShapeMismatch
from ontoquiver.linalg import QQ, FpElement, Matrix, PrimeField, block_diag, field_from_json


def test_fp_arithmetic():
    a, b = F5(3), F5(4)
    assert a + b == 2 and a * b == 2 and a - b == 4 and -a == 2
    assert a / b == F5(2)  # 4^-1 = 4, 3*4 = 12 = 2
    assert a.inverse() * a == 1
    with pytest.raises(ZeroDivisionError):
        F5(0).inverse()
    with pytest.raises(ValueError):
        FpElement(1, 5) + FpElement(1, 7)


def test_canonical_forms():
    assert F5(-1).value == 4 and F5("2/3") == F5(4)  # 3^-1 = 2 in F_5
    assert QQ("6/4") == Fraction(3, 2) and QQ("6/4").denominator == 2
    assert QQ(-3).denominator == 1
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(TypeError):
        F5(0.5)
    with pytest.raises(ValueError):
        PrimeField(4)


def test_field_json():
    assert field_from_json(QQ.to_json()) == QQ
    assert field_from_json(F5.to_json()) == F5
    with pytest.raises(ValueError):
        field_from_json({"field": "R"})


@settings(max_examples=200)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.sampled_from([2, 3, 5, 7, 11]))
def test_fp_field_axioms(x, y, z, p):
    k = PrimeField(p)
    a, b, c = k(x), k(y), k(z)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + k.zero == a and a * k.one == a
    if a:
        assert a * a.inverse() == k.one


def test_zero_sized_shapes():
    z = Matrix.zero(QQ, 0, 3)
    assert z.shape == (0, 3)
    assert (Matrix.zero(QQ, 2, 0) @ z).shape == (2, 3)
    assert (Matrix.zero(QQ, 2, 0) @ z).is_zero()
    assert (z @ Matrix.zero(QQ, 3, 4)).shape == (0, 4)
    assert Matrix.identity(QQ, 0).shape == (0, 0)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        Matrix(QQ, 2, 2, [1, 2, 3])
    with pytest.raises(ShapeMismatch):
        Matrix.from_rows(QQ, [[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        Matrix.zero(QQ, 2, 3) @ Matrix.zero(QQ, 2, 3)
    with pytest.raises(ShapeMismatch):
        Matrix.zero(QQ, 2, 3) + Matrix.zero(QQ, 3, 2)


def test_immutable():
    m = Matrix.identity(QQ, 2)
    with pytest.raises(AttributeError):
        m.rows = 3


def test_product_and_transpose():
    a = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    b = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    assert a @ b == Matrix.from_rows(QQ, [[2, 1], [4, 3]])
    assert (a @ b).transpose() == b.transpose() @ a.transpose()
    assert a.scale(Fraction(1, 2)) == Matrix.from_rows(QQ, [["1/2", 1], ["3/2", 2]])
    assert a - a == Matrix.zero(QQ, 2, 2)


def _rank_brute_force(m: Matrix, p: int) -> int:
    """|row space| = p^rank, counted by enumerating all combinations."""
    rows = m.row_lists()
    span = {tuple(0 for _ in range(m.cols))}
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        span.add(tuple(sum(c * int(r[j]) for c, r in zip(coeffs, rows)) % p for j in range(m.cols)))
    r = 0
    while p**r < len(span):
        r += 1
    assert p**r == len(span)
    return r


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_rank_matches_span_count(seed, p):
    rng = random.Random(seed)
    k = PrimeField(p)
    m = random_matrix(rng, k, rng.randint(0, 3), rng.randint(0, 4))
    assert m.rank() == _rank_brute_force(m, p)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, F5]))
def test_rank_nullity(seed, k):
    rng = random.Random(seed)
    m = random_matrix(rng, k, rng.randint(0, 4), rng.randint(0, 4))
    null = m.nullspace()
    assert m.rank() + len(null) == m.cols
    for v in null:
        assert (m @ v).is_zero()


def _det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_inverse_against_determinant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    m = random_matrix(rng, QQ, n, n)
    if _det(m.row_lists()) == 0:
        assert m.rank() < n
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m.rank() == n
        assert m @ m.inverse() == Matrix.identity(QQ, n)


def test_block_diag():
    a = Matrix.from_rows(QQ, [[1]])
    b = Matrix.from_rows(QQ, [[2]])
    assert block_diag(QQ, [a, b]) == Matrix.from_rows(QQ, [[1, 0], [0, 2]])
    assert block_diag(QQ, [a, Matrix.zero(QQ, 0, 0)]) == a
    assert block_diag(F2, [Matrix.zero(F2, 1, 0), Matrix.zero(F2, 0, 2)]).shape == (1, 2)


def test_json_entries():
    m = Matrix.from_rows(QQ, [["1/2", 3]])
    assert m.to_json() == [["1/2", 3]]
    assert Matrix.from_rows(F5, [[7]]).to_json() == [[2]]
