"""Finite-dimensional unital associative algebras over a prime field.

An algebra is fixed by its structure constants: ``mul[i, j]`` is the
coordinate vector of ``basis[i] * basis[j]``.  Elements are coordinate
vectors over F_p.  Matrix algebras and finite fields are both presented
this way, as F_p-algebras, so every additive map on them is F_p-linear.

None of the finite algebras here is a noncommutative division ring
(there is none), so matrix algebras serve as stand-ins whose unit group
is a proper subset of the nonzero elements.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _linalg
from .fpoly import FpPoly, default_modulus, is_irreducible

UNIT_BUDGET = 2**24


class AlgebraError(ValueError):
    """Invalid algebra data or mixing elements of different algebras."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class FiniteAlgebra:
    """Unital associative algebra over F_p given by structure constants.

    Associativity and the unity are checked exhaustively on basis triples
    at construction; instances are immutable afterwards.
    """

    def __init__(self, p, basis, mul_table, one, name=None):
        p = int(p)
        if not is_prime(p):
            raise AlgebraError(f"characteristic {p} is not prime")
        basis = tuple(str(b) for b in basis)
        d = len(basis)
        if d < 1:
            raise AlgebraError("dimension must be >= 1")
        if len(set(basis)) != d:
            raise AlgebraError("basis labels must be distinct")
        T = np.asarray(mul_table, dtype=np.int64)
        if T.shape != (d, d, d):
            raise AlgebraError(f"mul_table must have shape ({d}, {d}, {d}), got {T.shape}")
        if ((T < 0) | (T >= p)).any():
            raise AlgebraError(f"mul_table entries must lie in [0, {p})")
        one_v = np.asarray(one, dtype=np.int64)
        if one_v.shape != (d,):
            raise AlgebraError(f"unity must have length {d}")
        one_v %= p
        T.setflags(write=False)
        self.p = p
        self.dim = d
        self.basis = basis
        self.mul_table = T
        self.name = name
        self._one = tuple(int(c) for c in one_v)
        self._check_associative()
        self._check_unity()

    def _check_associative(self):
        T, p = self.mul_table, self.p
        # (e_i e_j) e_k and e_i (e_j e_k), coordinates indexed [i, j, k, out]
        left = np.einsum("ijm,mkn->ijkn", T, T) % p
        right = np.einsum("jkm,imn->ijkn", T, T) % p
        bad = np.argwhere((left != right).any(axis=3))
        if bad.size:
            i, j, k = (int(t) for t in bad[0])
            b = self.basis
            raise AlgebraError(f"multiplication is not associative on basis triple ({b[i]}, {b[j]}, {b[k]})")

    def _check_unity(self):
        one = np.array(self._one)
        eye = np.eye(self.dim, dtype=np.int64)
        left = np.einsum("i,ijk->jk", one, self.mul_table) % self.p
        right = np.einsum("j,ijk->ik", one, self.mul_table) % self.p
        if not (np.array_equal(left, eye) and np.array_equal(right, eye)):
            raise AlgebraError("declared unity is not a two-sided identity on the basis")

    # -- elements -----------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def __call__(self, spec) -> "AlgebraElement":
        """``A("e12")``, ``A(3)`` (scalar multiple of 1) or ``A([1, 0, 2, 0])``."""
        if isinstance(spec, AlgebraElement):
            if spec.algebra is not self:
                raise AlgebraError("element belongs to another algebra")
            return spec
        if isinstance(spec, str):
            return self.basis_element(spec)
        if isinstance(spec, (int, np.integer)):
            return self.scalar(int(spec))
        return self.element(spec)

    def basis_element(self, which) -> "AlgebraElement":
        i = self.basis.index(which) if isinstance(which, str) else int(which)
        v = [0] * self.dim
        v[i] = 1
        return AlgebraElement(self, v)

    def basis_elements(self) -> list["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [0] * self.dim)

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self._one)

    def scalar(self, n: int) -> "AlgebraElement":
        return AlgebraElement(self, [n * c for c in self._one])

    @property
    def size(self) -> int:
        return self.p**self.dim

    def check_budget(self, count: int, budget: int | None = None):
        budget = UNIT_BUDGET if budget is None else budget
        if count > budget:
            raise BudgetExceeded(f"{count} elements exceed the enumeration budget {budget}")

    def index_of(self, coords) -> int:
        idx = 0
        for c in coords:
            idx = idx * self.p + int(c) % self.p
        return idx

    def coords_of_indices(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = np.zeros(idx.shape + (self.dim,), dtype=np.int64)
        rest = idx.copy()
        for i in range(self.dim - 1, -1, -1):
            out[..., i] = rest % self.p
            rest //= self.p
        return out

    def all_coords(self, budget: int | None = None) -> np.ndarray:
        """Every element's coordinates, lexicographic (first coordinate slowest)."""
        self.check_budget(self.size, budget)
        return self.coords_of_indices(np.arange(self.size))

    def elements(self, budget: int | None = None) -> list["AlgebraElement"]:
        return [AlgebraElement._raw(self, row) for row in self.all_coords(budget)]

    # -- vectorised arithmetic --------------------------------------------

    def mul_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Products of coordinate arrays of shape (..., d), broadcasting."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        La = np.tensordot(a, self.mul_table, axes=([-1], [0]))  # (..., j, k)
        return np.einsum("...j,...jk->...k", b, La) % self.p

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of x -> a x acting on coordinate columns."""
        a = np.asarray(_coords(a), dtype=np.int64)
        return (np.tensordot(a, self.mul_table, axes=([0], [0])).T) % self.p

    def right_matrix(self, b) -> np.ndarray:
        """Matrix of x -> x b acting on coordinate columns."""
        b = np.asarray(_coords(b), dtype=np.int64)
        return (np.tensordot(b, self.mul_table, axes=([0], [1])).T) % self.p

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.transpose(1, 0, 2)))

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        """For each element index, the index of its inverse or -1."""
        n = self.size
        self.check_budget(n)
        out = np.full(n, -1, dtype=np.int64)
        one = np.array(self._one)
        chunk = 1 << 14
        for start in range(0, n, chunk):
            idx = np.arange(start, min(n, start + chunk))
            coords = self.coords_of_indices(idx)
            Ls = np.einsum("ni,ijk->nkj", coords, self.mul_table) % self.p
            invs, ok = _linalg.batch_inverse(Ls, self.p)
            xs = np.einsum("nkj,j->nk", invs, one) % self.p
            weights = self.p ** np.arange(self.dim - 1, -1, -1)
            out[idx[ok]] = (xs[ok] * weights).sum(axis=1)
        out.setflags(write=False)
        return out

    # -- descriptors --------------------------------------------------------

    def to_descriptor(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "basis": list(self.basis),
            "mul_table": self.mul_table.tolist(),
            "one": list(self._one),
        }

    def __repr__(self):
        tag = self.name or f"dim {self.dim}"
        return f"FiniteAlgebra({tag} over F_{self.p})"


def _coords(x):
    return x.coords if isinstance(x, AlgebraElement) else x


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Coordinate vector of an element of a FiniteAlgebra."""

    algebra: FiniteAlgebra
    coords: tuple

    def __init__(self, algebra: FiniteAlgebra, coords):
        coords = tuple(int(c) % algebra.p for c in coords)
        if len(coords) != algebra.dim:
            raise AlgebraError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def _raw(cls, algebra, row):
        obj = object.__new__(cls)
        object.__setattr__(obj, "algebra", algebra)
        object.__setattr__(obj, "coords", tuple(int(c) for c in row))
        return obj

    @property
    def vec(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def _lift(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise AlgebraError("elements belong to different algebras")
            return other
        if isinstance(other, (int, np.integer)):
            return self.algebra.scalar(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.algebra, [int(other) * a for a in self.coords])
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.algebra, [int(other) * a for a in self.coords])
        return NotImplemented

    def __pow__(self, n: int):
        return power(self, n)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.algebra.scalar(int(other))
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def inverse(self) -> "AlgebraElement | None":
        return inv(self)

    def is_unit(self) -> bool:
        return inv(self) is not None

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)}>"


def format_element(a: AlgebraElement) -> str:
    parts = []
    for c, label in zip(a.coords, a.algebra.basis):
        if not c:
            continue
        if label == "1":
            parts.append(str(c))
        else:
            parts.append(label if c == 1 else f"{c}*{label}")
    return " + ".join(parts) if parts else "0"


# -- construction ------------------------------------------------------------


def build_algebra(descriptor) -> FiniteAlgebra:
    """Validate a descriptor mapping (or JSON path) and build the algebra.

    The descriptor is ``{"p", "dim", "basis", "mul_table", "one"}`` with
    ``mul_table[i][j]`` the coordinates of ``basis[i] * basis[j]``.
    """
    if isinstance(descriptor, (str, Path)):
        descriptor = json.loads(Path(descriptor).read_text())
    try:
        p = int(descriptor["p"])
        basis = descriptor["basis"]
        table = descriptor["mul_table"]
        one = descriptor["one"]
    except KeyError as exc:
        raise AlgebraError(f"descriptor is missing field {exc}") from None
    dim = int(descriptor.get("dim", len(basis)))
    if dim != len(basis):
        raise AlgebraError(f"dim={dim} but {len(basis)} basis labels given")
    if not is_prime(p):
        raise AlgebraError(f"characteristic {p} is not prime")
    rows = np.asarray(table, dtype=object)
    if rows.shape != (dim, dim, dim):
        raise AlgebraError(f"mul_table must be {dim}x{dim} with length-{dim} entries")
    reduced = [[[int(c) % p for c in entry] for entry in row] for row in table]
    return FiniteAlgebra(p, basis, reduced, [int(c) % p for c in one], name=descriptor.get("name"))


def _as_modulus(modulus, p, k) -> FpPoly:
    if modulus is None:
        return default_modulus(p, k)
    f = modulus if isinstance(modulus, FpPoly) else FpPoly(modulus, p)
    if f.degree != k:
        raise AlgebraError(f"modulus has degree {f.degree}, expected {k}")
    f = f * pow(f.coeffs[-1], -1, p)
    if not is_irreducible(f):
        raise AlgebraError(f"modulus {f} is reducible over F_{p}")
    return f


def _power_label(r: int) -> str:
    return "" if r == 0 else ("t" if r == 1 else f"t{r}")


def _field_tables(p, k, f):
    """Structure constants of F_p[t]/(f) in the basis 1, t, ..., t^(k-1)."""
    T = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            r = FpPoly.monomial(i + j, p) % f
            for m in range(k):
                T[i, j, m] = r.coeff(m)
    return T


def standard_algebra(kind: str, *, p: int, k: int = 1, n: int | None = None, modulus=None) -> FiniteAlgebra:
    """GF(p^k) (``kind="field"``) or M_n(GF(p^k)) (``kind="matrix"``) as an F_p-algebra.

    ``modulus`` is a coefficient list (constant term first) or FpPoly of
    degree k; if omitted, the lexicographically first monic irreducible
    polynomial is used.
    """
    if not is_prime(p):
        raise AlgebraError(f"characteristic {p} is not prime")
    if k < 1:
        raise AlgebraError("extension degree k must be >= 1")
    f = _as_modulus(modulus, p, k)
    F = _field_tables(p, k, f)
    q = p**k
    if kind == "field":
        labels = ["1"] + [_power_label(r) for r in range(1, k)]
        one = [1] + [0] * (k - 1)
        return FiniteAlgebra(p, labels, F, one, name=f"GF({q})")
    if kind != "matrix":
        raise AlgebraError(f"unknown algebra kind {kind!r}")
    if n is None or n < 1:
        raise AlgebraError("matrix algebras need n >= 1")
    sep = "_" if n >= 10 else ""
    index = list(itertools.product(range(n), range(n), range(k)))
    labels = [f"e{i + 1}{sep}{j + 1}{_power_label(r)}" for i, j, r in index]
    pos = {t: a for a, t in enumerate(index)}
    d = len(index)
    T = np.zeros((d, d, d), dtype=np.int64)
    for (i, j, r), a in pos.items():
        for (j2, l, s), b in pos.items():
            if j != j2:
                continue
            for u in range(k):
                T[a, b, pos[(i, l, u)]] = F[r, s, u]
    one = [1 if (i == j and r == 0) else 0 for i, j, r in index]
    name = f"M{n}(F{p})" if k == 1 else f"M{n}(GF({q}))"
    return FiniteAlgebra(p, labels, T, one, name=name)


def product_algebra(p: int, copies: int) -> FiniteAlgebra:
    """F_p x ... x F_p with componentwise product."""
    T = np.zeros((copies, copies, copies), dtype=np.int64)
    for i in range(copies):
        T[i, i, i] = 1
    return FiniteAlgebra(p, [f"u{i + 1}" for i in range(copies)], T, [1] * copies, name=f"F{p}^{copies}")


# -- operations ----------------------------------------------------------------


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if not isinstance(b, AlgebraElement) or a.algebra is not b.algebra:
        raise AlgebraError("elements belong to different algebras")
    A = a.algebra
    return AlgebraElement._raw(A, A.mul_coords(a.vec, b.vec))


def inv(a: AlgebraElement) -> AlgebraElement | None:
    """Two-sided inverse, or None for non-units.

    Solves a x = 1 by elimination on the left-multiplication matrix and
    confirms x a = 1.
    """
    A = a.algebra
    x = _linalg.solve(A.left_matrix(a), np.array(A.one.coords), A.p)
    if x is None:
        return None
    x = AlgebraElement(A, x)
    if mul(x, a) != A.one:
        return None
    return x


def power(a: AlgebraElement, n: int) -> AlgebraElement:
    if n < 0:
        raise ValueError("exponent must be non-negative; invert explicitly")
    result, base = a.algebra.one, a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def enumerate_units(A: FiniteAlgebra, budget: int | None = None) -> list[AlgebraElement]:
    """All invertible elements in lexicographic coordinate order."""
    A.check_budget(A.size, budget)
    idx = np.nonzero(A.inverse_indices >= 0)[0]
    return [AlgebraElement._raw(A, row) for row in A.coords_of_indices(idx)]


def unit_coords(A: FiniteAlgebra, budget: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of all units and of their inverses, lexicographic."""
    A.check_budget(A.size, budget)
    idx = np.nonzero(A.inverse_indices >= 0)[0]
    return A.coords_of_indices(idx), A.coords_of_indices(A.inverse_indices[idx])


def centralizer(A: FiniteAlgebra, S) -> list[AlgebraElement]:
    """F_p-basis (reduced echelon) of {a : a s = s a for all s in S}."""
    S = list(S)
    if not S:
        raise AlgebraError("centralizer needs at least one element; use center() for Z(A)")
    blocks = []
    for s in S:
        if s.algebra is not A:
            raise AlgebraError("element belongs to another algebra")
        blocks.append((A.left_matrix(s) - A.right_matrix(s)) % A.p)
    basis = _linalg.nullspace(np.vstack(blocks), A.p)
    return [AlgebraElement(A, row) for row in basis]


def center(A: FiniteAlgebra) -> list[AlgebraElement]:
    return centralizer(A, A.basis_elements())


def span_rank(elements) -> int:
    elements = list(elements)
    if not elements:
        return 0
    A = elements[0].algebra
    return _linalg.rank(np.array([e.coords for e in elements]), A.p)
