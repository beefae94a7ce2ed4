from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpilab.algebra import standard_algebra
from gpilab.fpoly import FpPoly
from gpilab.numtheory import (HypothesisError, binom_mod_p, classify_case, find_P_nonroot, lemma3_data, poly_P,
                              poly_P_case1_form, poly_Q)

odd_primes = [3, 5, 7, 11]


@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_lucas_matches_factorials(k, t, p):
    assert binom_mod_p(k, t, p) == comb(k, t) % p


def test_binom_examples():
    assert binom_mod_p(14, 2, 3) == 1
    assert binom_mod_p(7, 4, 3) == 2
    assert binom_mod_p(3, 5, 7) == 0
    with pytest.raises(ValueError):
        binom_mod_p(4, 2, 6)


def admissible(k, p):
    if k <= 1 or k % p == 0:
        return False
    j = k - 1
    while j % p == 0:
        j //= p
    return j != 1


@pytest.mark.parametrize("p", odd_primes)
def test_residue_never_vanishes(p):
    for k in range(2, 301):
        if not admissible(k, p):
            with pytest.raises(HypothesisError):
                lemma3_data(k, p)
            continue
        m, r = lemma3_data(k, p)
        assert (k - 1) % p**m == 0 and (k - 1) % p ** (m + 1)
        assert r == comb(k, p**m + 1) % p != 0


def test_residue_examples():
    assert lemma3_data(7, 3) == (1, 2)
    assert lemma3_data(14, 3) == (0, 1)
    with pytest.raises(HypothesisError, match="p\\^0"):
        lemma3_data(2, 3)
    with pytest.raises(HypothesisError):
        lemma3_data(6, 3)


def expand_sign_polynomial(n, p):
    # direct integer expansion, reduced at the end
    coeffs = [0] * (n + 1)
    for t in range(n + 1):
        coeffs[t] += comb(n, t) * (1 + (-1) ** t)
    coeffs[n] -= 2
    coeffs[0] -= 2
    return FpPoly(coeffs, p)


def test_sign_polynomial_examples():
    assert poly_P(6, 5).is_zero()
    P = poly_P(14, 3)
    assert not P.is_zero() and P.coeff(2) == 2


@pytest.mark.parametrize("p", odd_primes)
def test_sign_polynomial_by_case(p):
    for n in range(3, 201):
        if (n - 2) % (p - 1):
            continue
        P = poly_P(n, p)
        assert P == expand_sign_polynomial(n, p)
        c = classify_case(n, p)
        if c.case == "I":
            assert not P.is_zero()
            assert P == poly_P_case1_form(c.k, c.l, p)
        else:
            assert P.is_zero()


@pytest.mark.parametrize("p", odd_primes)
def test_classification_rebuilds_n(p):
    for n in range(3, 10_001):
        if (n - 2) % (p - 1):
            with pytest.raises(HypothesisError):
                classify_case(n, p)
            continue
        c = classify_case(n, p)
        assert c.rebuild() == n
        if c.case == "I":
            assert c.k > 1 and c.k % p and admissible(c.k, p)
        else:
            assert (c.l, c.m) != (0, 0)


def test_classify_examples():
    assert classify_case(14, 3).to_json() == {"case": "I", "l": 0, "k": 14}
    assert classify_case(6, 5).to_json() == {"case": "II", "l": 0, "m": 1}
    assert classify_case(18, 3).to_json() == {"case": "II", "l": 2, "m": 0}
    for bad in ((2, 3), (5, 3), (4, 2)):
        with pytest.raises(HypothesisError):
            classify_case(*bad)


def test_frobenius_sum_on_matrix_units(m2f3):
    Q = poly_Q(3, 1, 1, m2f3)
    e11, e12 = m2f3("e11"), m2f3("e12")
    assert Q(e11, e12) == 2 * e12
    assert Q.degree == 9
    assert poly_Q(3, 0, 1, m2f3)(e11, e12) == e12


@pytest.mark.parametrize("p,r,l,m", [(3, 2, 0, 1), (3, 2, 1, 1), (5, 2, 0, 1), (3, 1, 1, 1)])
def test_frobenius_sum_vanishes_on_fields(p, r, l, m):
    # additivity of Frobenius makes Q a functional identity on every finite field
    from gpilab.identities import is_gpi

    A = standard_algebra("field", p=p, k=r)
    assert is_gpi(poly_Q(p, l, m, A)).holds


def test_frobenius_sum_characteristic_mismatch(m2f3):
    with pytest.raises(ValueError):
        poly_Q(5, 1, 1, m2f3)


def test_sign_polynomial_nonroots():
    assert find_P_nonroot(14, 3, 3) is None
    assert find_P_nonroot(14, 3, 9) is None  # P vanishes as a function on GF(9)
    d = find_P_nonroot(14, 3, 27)
    assert d is not None and not poly_P(14, 3)(d).is_zero()
    assert find_P_nonroot(6, 5, 25) is None
