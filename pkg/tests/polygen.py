"""Seeded random generalized polynomials for property tests."""

import numpy as np

from gpilab.ncpoly import GenMonomial, GenPoly


def random_element(A, rng):
    return A.element(rng.integers(0, A.p, size=A.dim))


def random_poly(A, rng, num_vars=1, max_degree=3, max_terms=4):
    terms = []
    for _ in range(rng.integers(1, max_terms + 1)):
        deg = int(rng.integers(0, max_degree + 1))
        word = tuple(int(v) for v in rng.integers(0, num_vars, size=deg))
        coeffs = tuple(random_element(A, rng) for _ in range(deg + 1))
        terms.append(GenMonomial(coeffs, word))
    return GenPoly.from_terms(A, num_vars, terms)


def random_homogeneous(A, rng, degree, max_terms=3):
    terms = [GenMonomial(tuple(random_element(A, rng) for _ in range(degree + 1)), (0,) * degree)
             for _ in range(rng.integers(1, max_terms + 1))]
    return GenPoly.from_terms(A, 1, terms)


def random_points(A, rng, num_vars, n):
    return [rng.integers(0, A.p, size=(n, A.dim)) for _ in range(num_vars)]


def naive_eval(A, terms, values):
    """Evaluate a list of GenMonomials term by term, with no canonical form involved."""
    total = A.zero
    for mono in terms:
        prod = mono.coeffs[0]
        for k, v in enumerate(mono.vars):
            prod = prod * values[v] * mono.coeffs[k + 1]
        total = total + prod
    return total
