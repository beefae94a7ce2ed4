import itertools
import json

import numpy as np
import pytest

from gpilab.algebra import power, product_algebra, standard_algebra
from gpilab.identities import fi_residual
from gpilab.maps import AdditiveMap
from gpilab.ncpoly import GenPoly
from gpilab.numtheory import find_P_nonroot
from gpilab.solver import (DecompositionError, compile_template, elementary_decomposition, gfi_template,
                           inverse_derivation_template, power_template, power_template_single, primitive_root,
                           recompose, solve, template_from_json, theorem2_filter, units_additively_generate)


def field(q):
    for p in (2, 3, 5, 7, 11, 13):
        k = round(np.log(q) / np.log(p))
        if p**k == q:
            return standard_algebra("field", p=p, k=k)
    raise ValueError(q)


def all_maps(A):
    d = A.dim
    for entries in itertools.product(range(A.p), repeat=d * d):
        yield AdditiveMap(A, np.array(entries).reshape(d, d))


@pytest.mark.parametrize("q,n", [(2, 1), (2, 3), (3, 4), (3, 5), (3, 6), (4, 4), (4, 3), (5, 6), (5, 3)])
def test_solution_set_equals_brute_force(q, n):
    A = field(q)
    space = solve(power_template(A, n))
    maps = list(all_maps(A))
    found = {(f, g) for f in maps for g in maps if fi_residual(A, f, g, n).holds}
    assert len(found) == A.p**space.dimension
    assert all(space.contains([f, g]) == ((f, g) in found) for f in maps for g in maps)


def test_golden_field_solutions(gf5, gf9):
    I5 = AdditiveMap.identity(gf5)
    assert solve(power_template(gf5, 6)).contains([I5, I5])
    frob = AdditiveMap.frobenius(gf9)
    assert solve(power_template(gf9, 12)).contains([AdditiveMap.identity(gf9), frob])
    F2 = field(2)
    for n in (1, 3, 4):
        assert solve(power_template(F2, n)).contains([AdditiveMap.identity(F2)] * 2)


@pytest.mark.parametrize("p,r,l,m", [(3, 2, 0, 1), (3, 2, 1, 1), (3, 3, 1, 2), (5, 2, 0, 1), (3, 3, 0, 2)])
def test_frobenius_pair_family(p, r, l, m):
    A = standard_algebra("field", p=p, k=r)
    n = p**l + p**m
    space = solve(power_template(A, n))
    rng = np.random.default_rng(n)
    Fl, Fm = AdditiveMap.frobenius(A, l), AdditiveMap.frobenius(A, m)
    for _ in range(4):
        alpha, beta = (A.element(rng.integers(0, p, size=r)) for _ in range(2))
        La, Lb = A.left_matrix(alpha), A.left_matrix(beta)
        f = AdditiveMap(A, La @ Fl.matrix + Lb @ Fm.matrix)
        g = AdditiveMap(A, La @ Fm.matrix + Lb @ Fl.matrix)
        assert space.contains([f, g])


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25, 27])
def test_solutions_obey_one_point_relation(q):
    # on a division ring every solution obeys f(b) = (1 + b^n - (1 - b)^n) f(1) - g(b)
    A = field(q)
    for n in range(2, 14):
        space = solve(power_template(A, n))
        for f, g in space.basis:
            f1 = f(A.one)
            for b in A.elements():
                assert f(b) == (1 + power(b, n) - power(1 - b, n)) * f1 - g(b)


@pytest.mark.parametrize("A", [field(7), field(5), field(9), standard_algebra("matrix", p=3, n=2),
                               standard_algebra("matrix", p=5, n=2)], ids=str)
def test_scaling_filter_forces_zero(A):
    assert units_additively_generate(A)
    for n in range(1, 12):
        if theorem2_filter(A.p, n).forces_zero:
            assert solve(power_template(A, n)).dimension == 0


def test_scaling_filter_on_product_algebra_by_brute_force():
    # F3 x F3 has a non-field center, so the solver cannot compile templates for it;
    # enumerate all pairs of additive maps instead
    A = product_algebra(3, 2)
    assert units_additively_generate(A)
    assert theorem2_filter(3, 3).forces_zero
    maps = list(all_maps(A))
    sols = [(f, g) for f in maps for g in maps if fi_residual(A, f, g, 3).holds]
    assert sols == [(maps[0], maps[0])] and maps[0].is_zero()


def test_solver_needs_field_center(f2xf2):
    from gpilab.ncpoly import CanonError

    with pytest.raises(CanonError):
        solve(power_template(f2xf2, 3))


def test_scaling_filter_values():
    r = theorem2_filter(7, 4)
    assert r.forces_zero and r.k == 2 and r.value == 2 * (2**2 - 1) % 7
    r = theorem2_filter(5, 4)  # 2^2 = 4 != 1 mod 5
    assert r.forces_zero and r.k == 2
    r = theorem2_filter(7, 5)  # 2^3 = 1 mod 7, so a primitive root is needed
    assert r.forces_zero and r.k == primitive_root(7) == 3
    assert not theorem2_filter(5, 6).forces_zero
    assert theorem2_filter(5, 6).to_json() == {"result": "inconclusive", "k": None, "value": None}


def test_primitive_roots():
    for p in (3, 5, 7, 11, 13, 101):
        g = primitive_root(p)
        assert len({pow(g, e, p) for e in range(p - 1)}) == p - 1


def test_units_generate(f2xf2, m2f2):
    assert not units_additively_generate(f2xf2)
    assert units_additively_generate(m2f2)


def test_cubic_identity_vanishes_on_m2f3(m2f3):
    assert solve(power_template(m2f3, 3)).dimension == 0


def test_right_multiplication_family_n2(m2f3):
    space = solve(power_template(m2f3, 2))
    for q in m2f3.basis_elements():
        T = AdditiveMap.left_right(m2f3, m2f3.one, q)
        assert space.contains([T, T])
    assert space.dimension == solve(power_template(m2f3, 2)).dimension


@pytest.mark.parametrize("q", [9, 25, 27])
def test_nonroot_of_P_kills_single_unknown(q):
    A = field(q)
    seen = 0
    for n in range(3, 30):
        if (n - 2) % (A.p - 1):
            continue
        if find_P_nonroot(n, A.p, q) is not None:
            seen += 1
            assert solve(power_template_single(A, n)).dimension == 0
    assert seen > 0


def test_compile_shape(gf5, m2f3):
    sys5 = compile_template(power_template(gf5, 6))
    assert sys5.matrix.shape == (4, 2)
    sys = compile_template(power_template(m2f3, 3))
    assert sys.matrix.shape == (48 * 4, 2 * 16)


def test_template_json_matches_builtin(gf9):
    data = {"unknowns": 2, "domain": "units",
            "terms": [{"L": "1", "slot": 0, "arg": "x", "R": "1"},
                      {"L": "-x^4", "slot": 1, "arg": "xinv", "R": "1"}],
            "rhs": "0"}
    a = solve(template_from_json(json.dumps(data), gf9))
    b = solve(power_template(gf9, 4))
    assert a.dimension == b.dimension
    assert all(a.contains(list(t)) for t in b.basis)


def test_inverse_derivation(m2f3):
    # every basis pair satisfies f(x) x^-1 + x g(x^-1) = 0 on units
    space = solve(inverse_derivation_template(m2f3))
    for f, g in space.basis:
        for x in m2f3.elements():
            y = x.inverse()
            if y is not None:
                assert f(x) * y + x * g(y) == 0


def test_inhomogeneous_identity(m2f3, gf9):
    X = GenPoly.variable(m2f3)
    space = solve(gfi_template(m2f3, [X], X * X))
    I = AdditiveMap.identity(m2f3)
    assert space.particular is not None and space.contains([I])
    # every solution is elementary on a central simple algebra
    for (f,) in space.basis:
        assert recompose(m2f3, elementary_decomposition(m2f3, f)) == f
    # on GF(9), x f(x) = x^4 is solved by the Frobenius, which is not elementary over GF(9)
    Y = GenPoly.variable(gf9)
    frob = AdditiveMap.frobenius(gf9)
    field_space = solve(gfi_template(gf9, [Y], Y**4))
    assert field_space.contains([frob])
    with pytest.raises(DecompositionError):
        elementary_decomposition(gf9, frob)


def test_inconsistent_identity(gf9):
    Y = GenPoly.variable(gf9)
    space = solve(gfi_template(gf9, [GenPoly.zero(gf9)], Y * Y))
    assert not space.consistent
    assert space.to_json()["consistent"] is False


def test_decomposition_round_trip(m2f3):
    rng = np.random.default_rng(0)
    for _ in range(20):
        T = AdditiveMap(m2f3, rng.integers(0, 3, size=(4, 4)))
        pairs = elementary_decomposition(m2f3, T)
        assert len(pairs) <= 16
        assert recompose(m2f3, pairs) == T
    transpose = AdditiveMap.from_images(m2f3, ["e11", "e21", "e12", "e22"])
    assert recompose(m2f3, elementary_decomposition(m2f3, transpose)) == transpose
    with pytest.raises(DecompositionError):
        elementary_decomposition(m2f3, transpose, max_terms=2)


def test_solution_json(gf5):
    out = solve(power_template(gf5, 6)).to_json()
    assert out == {"dimension": 1, "basis": [[[[1]], [[1]]]]}


@pytest.mark.parametrize("A,n", [(standard_algebra("matrix", p=2, n=2), 3), (standard_algebra("matrix", p=2, n=2), 4),
                                 (field(9), 4), (field(27), 4)], ids=str)
def test_hua_expansion_on_single_unknown_solutions(A, n):
    # f(x) = -x^n f(x^-1) together with Hua's identity gives, for admissible a, b,
    # f(a - aba) = (a - aba)^n (a^-n - u^-n) f(a) - (a - aba)^n u^-n b^-n f(b),  u = b^-1 - a
    space = solve(power_template_single(A, n))
    assert space.dimension > 0
    units = [x for x in A.elements() if x.inverse() is not None]
    for (f,) in space.basis:
        for a, b in itertools.product(units, repeat=2):
            u = b.inverse() - a
            if u.inverse() is None or (a.inverse() + u.inverse()).inverse() is None:
                continue
            c = a - a * b * a
            ui = u.inverse()
            rhs = power(c, n) * (power(a.inverse(), n) - power(ui, n)) * f(a)
            rhs = rhs - power(c, n) * power(ui, n) * power(b.inverse(), n) * f(b)
            assert f(c) == rhs
