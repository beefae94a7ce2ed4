"""Dense univariate polynomials over a prime field."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


def _trim(coeffs, p):
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True, init=False)
class FpPoly:
    """Polynomial over F_p with coefficients stored constant term first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple
    p: int

    def __init__(self, coeffs, p: int):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "coeffs", _trim(coeffs, p))

    @classmethod
    def monomial(cls, degree: int, p: int, c: int = 1) -> "FpPoly":
        return cls([0] * degree + [c], p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def nonzero_terms(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def _check(self, other):
        if isinstance(other, int):
            return FpPoly([other], self.p)
        if other.p != self.p:
            raise ValueError("polynomials over different prime fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpPoly([-c for c in self.coeffs], self.p)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return FpPoly([], self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(out, self.p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = FpPoly([1], self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        lead_inv = pow(other.coeffs[-1], -1, p)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quot = [0] * max(dq + 1, 0)
        for shift in range(dq, -1, -1):
            c = rem[shift + len(other.coeffs) - 1] * lead_inv % p
            quot[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = (rem[shift + j] - c * b) % p
        return FpPoly(quot, p), FpPoly(rem, p)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be an int or an algebra element."""
        if isinstance(x, int):
            acc = 0
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % self.p
            return acc
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_neg(self) -> "FpPoly":
        """P(-X)."""
        return FpPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.p)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mon:
                parts.append(str(c))
            else:
                parts.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(parts)


def is_irreducible(f: FpPoly) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    if f.degree < 1:
        return False
    p = f.p
    for d in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = FpPoly(list(tail) + [1], p)
            if (f % g).is_zero():
                return False
    return True


def default_modulus(p: int, k: int) -> FpPoly:
    """First monic irreducible of degree k, lexicographic in (c_0, ..., c_{k-1})."""
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    for tail in itertools.product(range(p), repeat=k):
        f = FpPoly(list(tail) + [1], p)
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible polynomial found")  # impossible for prime p
