"""Binomials mod p, the special polynomials P and Q, and exponent classification.

Throughout, the exponent analysis concerns f(x) = x^n g(x^-1) in odd
characteristic p with n > 2 and (p - 1) | (n - 2).  Such n split into

* Case I:  n = p^l k with gcd(p, k) = 1, k > 1 and k - 1 not a power of p;
* Case II: n = p^(l+m) + p^l with (l, m) != (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import AlgebraError, FiniteAlgebra, is_prime, standard_algebra
from .fpoly import FpPoly
from .ncpoly import GenPoly


class HypothesisError(ValueError):
    """Inputs violate the stated hypotheses of a construction."""


def _require_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def base_digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def binom_mod_p(k: int, t: int, p: int) -> int:
    """C(k, t) mod p as the product of digitwise binomials in base p."""
    _require_prime(p)
    if k < 0 or t < 0:
        raise ValueError("binomial arguments must be non-negative")
    if t > k:
        return 0
    result = 1
    while k or t:
        k, kd = divmod(k, p)
        t, td = divmod(t, p)
        if td > kd:
            return 0
        result = result * comb(kd, td) % p
    return result


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_power_exponent(n: int, p: int) -> int | None:
    """e with n = p^e, or None."""
    if n < 1:
        return None
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def lemma3_data(k: int, p: int) -> tuple[int, int]:
    """(m, C(k, p^m + 1) mod p) with m the largest integer such that p^m | k - 1.

    Requires k > 1, p an odd prime, gcd(p, k) = 1 and k - 1 not a
    non-negative power of p; under those hypotheses the residue is nonzero,
    which is asserted.
    """
    _require_prime(p)
    if p == 2:
        raise HypothesisError("p must be odd")
    if k <= 1:
        raise HypothesisError("k must be > 1")
    if k % p == 0:
        raise HypothesisError(f"gcd(p, k) != 1: {p} divides {k}")
    e = p_power_exponent(k - 1, p)
    if e is not None:
        raise HypothesisError(f"k - 1 = {k - 1} is a power of p ({p}^{e}); note 1 = p^0")
    m = valuation(k - 1, p)
    residue = binom_mod_p(k, p**m + 1, p)
    assert residue != 0, f"C({k}, {p**m + 1}) vanishes mod {p}"
    return m, residue


def poly_P(n: int, p: int) -> FpPoly:
    """(1 + X)^n + (1 - X)^n - 2 X^n - 2 over F_p, coefficientwise via Lucas."""
    _require_prime(p)
    coeffs = [0] * (n + 1)
    for t in range(n + 1):
        c = binom_mod_p(n, t, p)
        if c:
            coeffs[t] = c * (1 + (-1) ** t)
    coeffs[n] -= 2
    coeffs[0] -= 2
    return FpPoly(coeffs, p)


def poly_P_case1_form(k: int, l: int, p: int) -> FpPoly:
    """2 * sum over even t in [2, k-2] of C(k, t) X^(p^l t)."""
    coeffs: dict[int, int] = {}
    for t in range(2, k - 1, 2):
        coeffs[p**l * t] = 2 * comb(k, t)
    deg = max(coeffs, default=0)
    return FpPoly([coeffs.get(i, 0) for i in range(deg + 1)], p)


def poly_Q(p: int, l: int, m: int, target: FiniteAlgebra) -> GenPoly:
    """Q(X, Y) = (X+Y)^a + (X+Y)^b - (X^a + X^b) - (Y^a + Y^b), a = p^l, b = p^(l+m).

    A formal element of target{X, Y} with coefficients +-1.
    """
    if target.p != p:
        raise AlgebraError(f"target algebra has characteristic {target.p}, expected {p}")
    X, Y = GenPoly.variable(target, 0, 2), GenPoly.variable(target, 1, 2)
    a, b = p**l, p ** (l + m)
    S = X + Y
    Sa = S**a
    Sb = Sa ** (b // a)
    return (Sa + Sb) - (X**a + X**b) - (Y**a + Y**b)


@dataclass(frozen=True)
class CaseParams:
    n: int
    p: int
    case: str
    l: int
    k: int | None = None
    m: int | None = None

    def rebuild(self) -> int:
        if self.case == "I":
            return self.p**self.l * self.k
        return self.p ** (self.l + self.m) + self.p**self.l

    def to_json(self) -> dict:
        out = {"case": self.case, "l": self.l}
        if self.case == "I":
            out["k"] = self.k
        else:
            out["m"] = self.m
        return out


def check_ddagger(n: int, p: int):
    _require_prime(p)
    if p <= 2:
        raise HypothesisError("condition requires p > 2")
    if n <= 2:
        raise HypothesisError("condition requires n > 2")
    if (n - 2) % (p - 1):
        raise HypothesisError(f"condition requires (p - 1) | (n - 2); {p - 1} does not divide {n - 2}")


def classify_case(n: int, p: int) -> CaseParams:
    check_ddagger(n, p)
    l = valuation(n, p)
    k = n // p**l
    e = p_power_exponent(k - 1, p)
    if e is None:
        params = CaseParams(n, p, "I", l, k=k)
    else:
        params = CaseParams(n, p, "II", l, m=e)
    assert params.rebuild() == n
    return params


def find_P_nonroot(n: int, p: int, q: int):
    """First element of GF(q), in lexicographic coordinate order, with P(d) != 0."""
    r = p_power_exponent(q, p)
    if r is None or r < 1:
        raise ValueError(f"q = {q} is not a positive power of p = {p}")
    P = poly_P(n, p)
    if P.is_zero():
        return None
    F = standard_algebra("field", p=p, k=r)
    for d in F.elements():
        if not P(d).is_zero():
            return d
    return None
