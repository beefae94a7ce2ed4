"""Additive maps of a finite algebra, as matrices over F_p.

In characteristic p an additive map of an F_p-space is F_p-linear, so a
d x d matrix acting on coordinate columns captures every additive map.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, AlgebraError, FiniteAlgebra


@dataclass(frozen=True, eq=False)
class AdditiveMap:
    algebra: FiniteAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        d = self.algebra.dim
        M = np.array(self.matrix, dtype=np.int64) % self.algebra.p
        if M.shape != (d, d):
            raise AlgebraError(f"additive map matrix must be {d}x{d}")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, A: FiniteAlgebra) -> "AdditiveMap":
        return cls(A, np.eye(A.dim, dtype=np.int64))

    @classmethod
    def zero(cls, A: FiniteAlgebra) -> "AdditiveMap":
        return cls(A, np.zeros((A.dim, A.dim), dtype=np.int64))

    @classmethod
    def from_images(cls, A: FiniteAlgebra, images) -> "AdditiveMap":
        """The map sending basis element i to ``images[i]``."""
        return cls(A, np.array([A(v).coords for v in images], dtype=np.int64).T)

    @classmethod
    def from_function(cls, A: FiniteAlgebra, fn) -> "AdditiveMap":
        """Extend ``fn`` linearly from its values on the basis."""
        return cls.from_images(A, [fn(e) for e in A.basis_elements()])

    @classmethod
    def frobenius(cls, A: FiniteAlgebra, j: int = 1) -> "AdditiveMap":
        """x -> x^(p^j); additive only when A is commutative."""
        if not A.is_commutative:
            raise AlgebraError("x -> x^(p^j) is not additive on a noncommutative algebra")
        q = A.p**j
        return cls.from_function(A, lambda e: e**q)

    @classmethod
    def left_right(cls, A: FiniteAlgebra, a, b) -> "AdditiveMap":
        """x -> a x b."""
        return cls(A, A.left_matrix(A(a)) @ A.right_matrix(A(b)))

    @classmethod
    def elementary(cls, A: FiniteAlgebra, pairs) -> "AdditiveMap":
        """x -> sum_i a_i x b_i."""
        M = np.zeros((A.dim, A.dim), dtype=np.int64)
        for a, b in pairs:
            M = M + A.left_matrix(A(a)) @ A.right_matrix(A(b))
        return cls(A, M)

    # -- behaviour -------------------------------------------------------------

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self.algebra:
            raise AlgebraError("argument from a different algebra")
        return self.algebra.element(self.matrix @ x.vec)

    def apply_coords(self, xs: np.ndarray) -> np.ndarray:
        """Apply to an (N, d) array of coordinates."""
        return (np.asarray(xs, dtype=np.int64) @ self.matrix.T) % self.algebra.p

    def _other(self, other) -> "AdditiveMap":
        if not isinstance(other, AdditiveMap) or other.algebra is not self.algebra:
            raise AlgebraError("additive maps on different algebras")
        return other

    def __add__(self, other):
        return AdditiveMap(self.algebra, self.matrix + self._other(other).matrix)

    def __sub__(self, other):
        return AdditiveMap(self.algebra, self.matrix - self._other(other).matrix)

    def __neg__(self):
        return AdditiveMap(self.algebra, -self.matrix)

    def __mul__(self, n: int):
        return AdditiveMap(self.algebra, int(n) * self.matrix)

    __rmul__ = __mul__

    def compose(self, other: "AdditiveMap") -> "AdditiveMap":
        """self after other."""
        return AdditiveMap(self.algebra, self.matrix @ self._other(other).matrix)

    def __matmul__(self, other):
        return self.compose(other)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __eq__(self, other):
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        return other.algebra is self.algebra and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((id(self.algebra), self.matrix.tobytes()))

    def flat(self) -> np.ndarray:
        """Row-major entries, the solver's unknown ordering."""
        return self.matrix.reshape(-1).copy()

    def to_rows(self) -> list:
        return self.matrix.tolist()

    def __repr__(self):
        return f"AdditiveMap({self.matrix.tolist()})"


def named_map(A: FiniteAlgebra, name: str) -> AdditiveMap:
    """Resolve ``id``, ``zero``, ``neg``, ``frob`` or ``frobJ`` (x -> x^(p^J))."""
    name = name.strip()
    if name == "id":
        return AdditiveMap.identity(A)
    if name in ("zero", "0"):
        return AdditiveMap.zero(A)
    if name == "neg":
        return -AdditiveMap.identity(A)
    if name.startswith("frob"):
        j = int(name[4:] or 1)
        return AdditiveMap.frobenius(A, j)
    raise ValueError(f"unknown map name {name!r} (expected id, zero, neg, frob, frobJ)")
