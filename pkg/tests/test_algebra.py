import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpilab.algebra import (AlgebraError, BudgetExceeded, FiniteAlgebra, build_algebra, center, centralizer,
                            enumerate_units, inv, mul, power, product_algebra, span_rank, standard_algebra)


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def as_matrix(x, n):
    return np.array(x.coords).reshape(n, n)


coords4 = st.lists(st.integers(0, 2), min_size=4, max_size=4)


@given(coords4, coords4)
def test_matrix_product_matches_integer_matrices(m2f3, a, b):
    x, y = m2f3.element(a), m2f3.element(b)
    expect = (np.array(a).reshape(2, 2) @ np.array(b).reshape(2, 2)) % 3
    assert np.array_equal(as_matrix(x * y, 2), expect)


def test_basis_products(m2f3):
    e11, e12 = m2f3("e11"), m2f3("e12")
    assert mul(e11, e12) == e12
    assert mul(e12, e11).is_zero()
    assert power(e11 + e12, 7) == e11 + e12
    assert str(m2f3.one) == "e11 + e22"


def test_field_arithmetic(gf9):
    t = gf9("t")
    assert t * t == 2
    assert inv(t) == 2 * t
    assert power(t, 4) == 1
    assert str(gf9.one) == "1"


@pytest.mark.parametrize("p,k", [(2, 1), (3, 2), (5, 1), (2, 3), (7, 1)])
def test_field_axioms(p, k):
    F = standard_algebra("field", p=p, k=k)
    q = p**k
    elems = F.elements()
    assert all(power(x, q) == x for x in elems)
    units = enumerate_units(F)
    assert len(units) == q - 1
    assert any(all(power(u, d) != 1 for d in range(1, q - 1)) for u in units)  # cyclic group


@pytest.mark.parametrize("n,p,k", [(2, 2, 1), (2, 3, 1), (2, 5, 1), (2, 2, 2), (3, 2, 1)])
def test_unit_counts_match_gl_order(n, p, k):
    A = standard_algebra("matrix", p=p, k=k, n=n)
    assert len(enumerate_units(A)) == gl_order(n, p**k)


def test_unit_counts_small(gf9, f2xf2):
    assert len(enumerate_units(gf9)) == 8
    assert len(enumerate_units(standard_algebra("field", p=2))) == 1
    assert len(enumerate_units(f2xf2)) == 1


def test_inverse_both_sides(m2f3):
    for x in m2f3.elements():
        y = inv(x)
        if y is None:
            assert round(np.linalg.det(as_matrix(x, 2))) % 3 == 0
        else:
            assert x * y == 1 and y * x == 1


def test_centralizer_and_center(m2f3, gf9):
    cent = centralizer(m2f3, [m2f3("e11")])
    assert span_rank(cent) == 2
    assert {str(x) for x in cent} >= {"e11", "e22"}
    assert span_rank(center(m2f3)) == 1
    assert span_rank(center(gf9)) == 2


def test_reducible_modulus_rejected():
    with pytest.raises(AlgebraError):
        standard_algebra("field", p=3, k=2, modulus=[2, 0, 1])


def test_descriptor_round_trip(tmp_path, m2f3):
    path = tmp_path / "m2f3.json"
    path.write_text(json.dumps(m2f3.to_descriptor()))
    B = build_algebra(str(path))
    assert np.array_equal(B.mul_table, m2f3.mul_table)
    assert B.basis == m2f3.basis


def test_invalid_descriptors():
    good = {"p": 3, "dim": 1, "basis": ["1"], "mul_table": [[[1]]], "one": [1]}
    build_algebra(good)
    with pytest.raises(AlgebraError):
        build_algebra({**good, "p": 4})
    with pytest.raises(AlgebraError):
        build_algebra({**good, "one": [2]})
    with pytest.raises(AlgebraError):
        build_algebra({k: v for k, v in good.items() if k != "mul_table"})
    # a*a = 1 + a over F_2 is GF(4), a valid table
    FiniteAlgebra(2, ["1", "a"], [[[1, 0], [0, 1]], [[0, 1], [1, 1]]], [1, 0])


def test_nonassociative_rejected():
    T = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        T[0, i, i] = T[i, 0, i] = 1
    T[1, 1, 2] = 1
    T[1, 2, 1] = 1
    T[2, 1, 0] = 1
    with pytest.raises(AlgebraError):
        FiniteAlgebra(3, ["1", "a", "b"], T, [1, 0, 0])


def test_budget(m2f3):
    big = standard_algebra("matrix", p=7, n=3)  # 7^9 elements
    with pytest.raises(BudgetExceeded):
        big.all_coords()
    with pytest.raises(BudgetExceeded):
        m2f3.all_coords(budget=10)


def test_index_order(m2f3):
    coords = m2f3.all_coords()
    assert coords[1].tolist() == [0, 0, 0, 1]
    assert all(m2f3.index_of(c) == i for i, c in enumerate(coords))


def test_product_algebra():
    A = product_algebra(3, 2)
    u1, u2 = A("u1"), A("u2")
    assert (u1 * u2).is_zero() and u1 * u1 == u1
    assert len(enumerate_units(A)) == 4


@settings(max_examples=50, deadline=None)
@given(coords4, coords4, coords4)
def test_left_right_matrices(m2f3, a, b, x):
    A = m2f3
    L, R = A.left_matrix(A.element(a)), A.right_matrix(A.element(b))
    expect = A.element(a) * A.element(x) * A.element(b)
    assert A.element(L @ R @ np.array(x)) == expect
