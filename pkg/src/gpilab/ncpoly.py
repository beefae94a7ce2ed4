"""Generalized polynomials A{X_1, ..., X_m} over a finite algebra A.

A monomial ``a_1 X_{v_1} a_2 ... a_s X_{v_s} a_{s+1}`` lives in the block
of its variable word ``(v_1, ..., v_s)``.  Inside a block, the free product
over the center Z = Z(A) is the tensor power A (x)_Z ... (x)_Z A, so each
block is stored in coordinates: every coefficient slot is expanded in a
fixed basis ``b_0 = 1, b_1, ...`` of A as a Z-module, and the resulting
multi-index table carries values in Z.  Two term lists are equal in the
free product exactly when these tables agree, which gives a decidable
normal form as long as Z is a field.

The table is kept sparse: ``canon[(word, idx)] = z`` with ``idx`` the
tuple of module-basis indices (one per slot) and ``z`` the coordinate
tuple of a nonzero center element.
"""

from __future__ import annotations

import itertools
import json
import weakref
from dataclasses import dataclass

import numpy as np

from . import _linalg
from .algebra import AlgebraElement, AlgebraError, FiniteAlgebra, center, format_element

NEG_INF = float("-inf")


class CanonError(AlgebraError):
    """The algebra's center is not a field, so no normal form is available."""


class _Frame:
    """Center basis, Z-module basis and the coordinate maps between them."""

    def __init__(self, A: FiniteAlgebra):
        p, d = A.p, A.dim
        self.algebra = A
        zb = [A.one]
        for z in center(A):
            if _linalg.rank(np.array([e.coords for e in zb + [z]]), p) > len(zb):
                zb.append(z)
        self.zbasis = zb
        r = self.r = len(zb)
        Zmat = np.array([z.coords for z in zb]).T  # d x r
        self._z_solve = Zmat

        def z_coords(a):
            v = _linalg.solve(Zmat, np.array(a.coords), p)
            assert v is not None
            return v

        zmul = np.zeros((r, r, r), dtype=np.int64)
        for i, j in itertools.product(range(r), repeat=2):
            zmul[i, j] = z_coords(zb[i] * zb[j])
        self.zmul = zmul
        frob = np.array([z_coords(z**p) for z in zb]).T
        if _linalg.rank(frob, p) != r or r - _linalg.rank((frob - np.eye(r, dtype=np.int64)) % p, p) != 1:
            raise CanonError(
                f"the center of {A!r} is not a field; generalized polynomials are only "
                "supported over algebras with a field as center"
            )

        # Z-module basis: 1 first, then A's basis elements in order.
        mb, cols = [], []
        for cand in [A.one] + A.basis_elements():
            new_cols = [(z * cand).coords for z in zb]
            if _linalg.rank(np.array(cols + new_cols), p) == len(cols) + r:
                mb.append(cand)
                cols += new_cols
            if len(cols) == d:
                break
        self.mbasis = mb
        self.c = len(mb)
        B = np.array(cols).T  # column (j * r + k) = z_k * b_j
        invs, ok = _linalg.batch_inverse(B[None], p)
        assert ok[0]
        self._decomp = invs[0]
        self.zvecs = np.array(Zmat.T)  # r x d, A-coordinates of the center basis
        self.unit_z = tuple([1] + [0] * (r - 1))
        self._boundary = {}

    def decompose(self, a) -> dict[int, tuple]:
        """a = sum_j z_j b_j; returns {j: z_j} for nonzero z_j."""
        lam = (self._decomp @ np.asarray(a.coords if isinstance(a, AlgebraElement) else a, dtype=np.int64)) % self.algebra.p
        lam = lam.reshape(self.c, self.r)
        return {j: tuple(int(x) for x in lam[j]) for j in range(self.c) if lam[j].any()}

    def zmult(self, x: tuple, y: tuple) -> tuple:
        p = self.algebra.p
        if self.r == 1:
            return ((x[0] * y[0]) % p,)
        v = np.einsum("i,j,ijk->k", np.array(x), np.array(y), self.zmul) % p
        return tuple(int(t) for t in v)

    def zscale(self, x: tuple, n: int) -> tuple:
        p = self.algebra.p
        return tuple((t * n) % p for t in x)

    def zelement(self, z: tuple) -> AlgebraElement:
        A = self.algebra
        return A.element(np.asarray(z, dtype=np.int64) @ self.zvecs)

    def boundary(self, i: int, j: int) -> dict[int, tuple]:
        key = (i, j)
        if key not in self._boundary:
            self._boundary[key] = self.decompose(self.mbasis[i] * self.mbasis[j])
        return self._boundary[key]


_FRAMES: "weakref.WeakKeyDictionary[FiniteAlgebra, _Frame]" = weakref.WeakKeyDictionary()


def canon_frame(A: FiniteAlgebra) -> _Frame:
    frame = _FRAMES.get(A)
    if frame is None:
        frame = _FRAMES[A] = _Frame(A)
    return frame


@dataclass(frozen=True)
class GenMonomial:
    """``coeffs[0] X_{vars[0]} coeffs[1] ... X_{vars[-1]} coeffs[-1]``."""

    coeffs: tuple
    vars: tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.vars) + 1:
            raise ValueError("a monomial of degree s needs s + 1 coefficients")
        algebras = {id(a.algebra) for a in self.coeffs}
        if len(algebras) != 1:
            raise AlgebraError("monomial coefficients come from different algebras")

    @property
    def degree(self) -> int:
        return len(self.vars)


def _add_into(canon: dict, key, z: tuple, p: int):
    old = canon.get(key)
    new = z if old is None else tuple((a + b) % p for a, b in zip(old, z))
    if any(new):
        canon[key] = new
    elif old is not None:
        del canon[key]


class GenPoly:
    """Element of A{X_1, ..., X_m} held in canonical tensor coordinates.

    Instances are immutable.  Arithmetic works with other GenPolys, algebra
    elements and integers (read as multiples of 1).
    """

    __slots__ = ("algebra", "num_vars", "_canon", "_frame", "__weakref__")

    def __init__(self, algebra: FiniteAlgebra, num_vars: int, canon: dict | None = None):
        self.algebra = algebra
        self.num_vars = int(num_vars)
        self._frame = canon_frame(algebra)
        self._canon = dict(canon or {})

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, A: FiniteAlgebra, num_vars: int = 1) -> "GenPoly":
        return cls(A, num_vars)

    @classmethod
    def constant(cls, a, A: FiniteAlgebra | None = None, num_vars: int = 1) -> "GenPoly":
        if not isinstance(a, AlgebraElement):
            a = A.scalar(int(a))
        return cls.from_terms(a.algebra, num_vars, [GenMonomial((a,), ())])

    @classmethod
    def variable(cls, A: FiniteAlgebra, index: int = 0, num_vars: int = 1) -> "GenPoly":
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        return cls.from_terms(A, num_vars, [GenMonomial((A.one, A.one), (index,))])

    @classmethod
    def from_terms(cls, A: FiniteAlgebra, num_vars: int, terms) -> "GenPoly":
        frame = canon_frame(A)
        p = A.p
        canon: dict = {}
        for mono in terms:
            if any(c.algebra is not A for c in mono.coeffs):
                raise AlgebraError("monomial coefficients are not in this algebra")
            if any(not 0 <= v < num_vars for v in mono.vars):
                raise ValueError(f"variable index out of range for {num_vars} variables")
            partial = {(): frame.unit_z}
            for a in mono.coeffs:
                parts = frame.decompose(a)
                nxt: dict = {}
                for idx, z in partial.items():
                    for j, zj in parts.items():
                        _add_into(nxt, idx + (j,), frame.zmult(z, zj), p)
                partial = nxt
            word = tuple(mono.vars)
            for idx, z in partial.items():
                _add_into(canon, (word, idx), z, p)
        return cls(A, num_vars, canon)

    @classmethod
    def monomial(cls, A: FiniteAlgebra, coeffs, vars, num_vars: int | None = None) -> "GenPoly":
        coeffs = tuple(A(c) for c in coeffs)
        m = num_vars if num_vars is not None else (max(vars) + 1 if vars else 1)
        return cls.from_terms(A, m, [GenMonomial(coeffs, tuple(vars))])

    # -- structure --------------------------------------------------------------

    @property
    def canon(self) -> dict:
        """Copy of the sparse coordinate table ``{(word, idx): z}``."""
        return dict(self._canon)

    def canon_key(self) -> tuple:
        return tuple(sorted(self._canon.items()))

    @property
    def degree(self):
        if not self._canon:
            return NEG_INF
        return max(len(w) for w, _ in self._canon)

    @property
    def words(self) -> set:
        return {w for w, _ in self._canon}

    @property
    def terms(self) -> list[GenMonomial]:
        """Canonical monomials, sorted by (degree, word, index tuple)."""
        fr = self._frame
        out = []
        for (word, idx), z in sorted(self._canon.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            coeffs = [fr.mbasis[j] for j in idx]
            coeffs[0] = fr.zelement(z) * coeffs[0]
            out.append(GenMonomial(tuple(coeffs), word))
        return out

    def is_zero_formal(self) -> bool:
        return not self._canon

    def __bool__(self):
        return bool(self._canon)

    def __eq__(self, other):
        if isinstance(other, (int, AlgebraElement)):
            other = self._coerce(other)
        if not isinstance(other, GenPoly):
            return NotImplemented
        return other.algebra is self.algebra and other._canon == self._canon

    def __hash__(self):
        return hash((id(self.algebra), self.canon_key()))

    def homogeneous_part(self, j: int, var: int | None = None) -> "GenPoly":
        """Sum of the monomials of total degree ``j``.

        With ``var`` given, the part that is homogeneous of degree ``j`` in
        that variable alone.
        """
        if j < 0:
            raise ValueError("degree must be non-negative")
        if var is None:
            keep = {k: z for k, z in self._canon.items() if len(k[0]) == j}
        else:
            keep = {k: z for k, z in self._canon.items() if k[0].count(var) == j}
        return GenPoly(self.algebra, self.num_vars, keep)

    def constant_term(self) -> AlgebraElement:
        return self.homogeneous_part(0).evaluate([self.algebra.zero] * self.num_vars)

    def with_num_vars(self, m: int) -> "GenPoly":
        if m < self.num_vars and any(v >= m for w in self.words for v in w):
            raise ValueError("cannot drop variables that occur")
        return GenPoly(self.algebra, m, self._canon)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "GenPoly":
        if isinstance(other, GenPoly):
            if other.algebra is not self.algebra:
                raise AlgebraError("generalized polynomials over different algebras")
            return other
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise AlgebraError("coefficient from a different algebra")
            return GenPoly.constant(other, num_vars=self.num_vars)
        if isinstance(other, (int, np.integer)):
            return GenPoly.constant(self.algebra.scalar(int(other)), num_vars=self.num_vars)
        raise TypeError(f"cannot combine GenPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        p = self.algebra.p
        canon = dict(self._canon)
        for k, z in other._canon.items():
            _add_into(canon, k, z, p)
        return GenPoly(self.algebra, max(self.num_vars, other.num_vars), canon)

    __radd__ = __add__

    def __neg__(self):
        p = self.algebra.p
        return GenPoly(self.algebra, self.num_vars, {k: tuple((-t) % p for t in z) for k, z in self._canon.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, n: int) -> "GenPoly":
        fr = self._frame
        canon = {}
        for k, z in self._canon.items():
            _add_into(canon, k, fr.zscale(z, n), self.algebra.p)
        return GenPoly(self.algebra, self.num_vars, canon)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        other = self._coerce(other)
        fr, p = self._frame, self.algebra.p
        canon: dict = {}
        for (w1, i1), z1 in self._canon.items():
            for (w2, i2), z2 in other._canon.items():
                z12 = fr.zmult(z1, z2)
                for j, zj in fr.boundary(i1[-1], i2[0]).items():
                    _add_into(canon, (w1 + w2, i1[:-1] + (j,) + i2[1:]), fr.zmult(z12, zj), p)
        return GenPoly(self.algebra, max(self.num_vars, other.num_vars), canon)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return self._coerce(other) * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in A{X}")
        result = GenPoly.constant(self.algebra.one, num_vars=self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitution -----------------------------------------------------------

    def substitute_linear(self, images, num_vars: int) -> "GenPoly":
        """Substitute X_i -> sum_j c_ij Y_j with scalar c_ij in F_p.

        ``images[i]`` maps new-variable index to its integer coefficient.
        Scalars are central, so words expand and coefficient tables are
        carried along unchanged up to the scalar factor.
        """
        if len(images) != self.num_vars:
            raise ValueError("need one image per variable")
        fr, p = self._frame, self.algebra.p
        images = [{int(j): int(c) % p for j, c in img.items() if int(c) % p} for img in images]
        canon: dict = {}
        for (word, idx), z in self._canon.items():
            for choice in itertools.product(*(images[v].items() for v in word)):
                scal = 1
                for _, c in choice:
                    scal = scal * c % p
                new_word = tuple(j for j, _ in choice)
                _add_into(canon, (new_word, idx), fr.zscale(z, scal), p)
        return GenPoly(self.algebra, num_vars, canon)

    def permute_vars(self, perm) -> "GenPoly":
        """Rename X_i to X_{perm[i]}."""
        return self.substitute_linear([{perm[i]: 1} for i in range(self.num_vars)], self.num_vars)

    def substitute(self, images, num_vars: int | None = None) -> "GenPoly":
        """Ring map X_i -> images[i] (GenPolys or algebra elements)."""
        if len(images) != self.num_vars:
            raise ValueError("need one image per variable")
        m = num_vars if num_vars is not None else max(
            [g.num_vars for g in images if isinstance(g, GenPoly)] + [1]
        )
        imgs = [g.with_num_vars(m) if isinstance(g, GenPoly) else GenPoly.constant(g, self.algebra, m) for g in images]
        fr = self._frame
        out = GenPoly.zero(self.algebra, m)
        for (word, idx), z in self._canon.items():
            acc = GenPoly.constant(fr.zelement(z) * fr.mbasis[idx[0]], num_vars=m)
            for v, j in zip(word, idx[1:]):
                acc = acc * imgs[v] * fr.mbasis[j]
            out = out + acc
        return out

    # -- evaluation ---------------------------------------------------------------

    def evaluate_batch(self, xs) -> np.ndarray:
        """Evaluate at N assignments at once.

        ``xs`` is a sequence of ``num_vars`` coordinate arrays of shape
        (N, d); the result has shape (N, d).
        """
        A, fr, p = self.algebra, self._frame, self.algebra.p
        xs = [np.asarray(x, dtype=np.int64) for x in xs]
        if len(xs) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} assignment arrays, got {len(xs)}")
        N = xs[0].shape[0] if xs else 1
        out = np.zeros((N, A.dim), dtype=np.int64)
        if not self._canon:
            return out
        rmats = [A.right_matrix(b).T for b in fr.mbasis]
        # Walk entries in lexicographic order of the interleaved sequence
        # (idx0, w0, idx1, ...) so shared prefixes are multiplied once.
        entries = []
        for (word, idx), z in self._canon.items():
            seq = [idx[0]]
            for v, j in zip(word, idx[1:]):
                seq += [v, j]
            entries.append((tuple(seq), z))
        entries.sort()
        stack: list = []
        prev: tuple = ()
        for seq, z in entries:
            common = 0
            while common < min(len(prev), len(seq)) and prev[common] == seq[common]:
                common += 1
            del stack[common:]
            for pos in range(common, len(seq)):
                tok = seq[pos]
                if pos == 0:
                    stack.append(np.broadcast_to(np.array(fr.mbasis[tok].coords, dtype=np.int64), (N, A.dim)))
                elif pos % 2 == 1:
                    stack.append(A.mul_coords(stack[-1], xs[tok]))
                else:
                    stack.append((stack[-1] @ rmats[tok]) % p)
            val = stack[-1]
            if z != fr.unit_z:
                val = (val @ A.right_matrix(fr.zelement(z)).T) % p
            out = (out + val) % p
            prev = seq
        return out

    def evaluate(self, assignment) -> AlgebraElement:
        assignment = list(assignment)
        if len(assignment) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} values, got {len(assignment)}")
        for a in assignment:
            if a.algebra is not self.algebra:
                raise AlgebraError("assignment from a different algebra")
        xs = [np.array([a.coords], dtype=np.int64) for a in assignment]
        return self.algebra.element(self.evaluate_batch(xs)[0])

    def __call__(self, *args) -> AlgebraElement:
        return self.evaluate(args)

    # -- text and JSON --------------------------------------------------------

    def to_string(self, var_names=None) -> str:
        names = var_names or default_var_names(self.num_vars)
        if not self._canon:
            return "0"
        pieces = []
        for mono in self.terms:
            factors = []
            for k, a in enumerate(mono.coeffs):
                if a != self.algebra.one or (len(mono.coeffs) == 1):
                    factors.append(_coeff_text(a))
                if k < len(mono.vars):
                    factors.append(names[mono.vars[k]])
            pieces.append("*".join(factors))
        return " + ".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"GenPoly({self.to_string()})"

    def to_json(self, algebra_ref=None) -> dict:
        ref = algebra_ref if algebra_ref is not None else (self.algebra.name or self.algebra.to_descriptor())
        return {
            "algebra": ref,
            "vars": self.num_vars,
            "terms": [{"coeffs": [list(c.coords) for c in m.coeffs], "vars": list(m.vars)} for m in self.terms],
        }

    @classmethod
    def from_json(cls, data, A: FiniteAlgebra) -> "GenPoly":
        if isinstance(data, str):
            data = json.loads(data)
        terms = [GenMonomial(tuple(A.element(c) for c in t["coeffs"]), tuple(t["vars"])) for t in data["terms"]]
        return cls.from_terms(A, int(data["vars"]), terms)


def default_var_names(m: int) -> list[str]:
    return ["X"] if m == 1 else [f"X{i + 1}" for i in range(m)]


def _coeff_text(a: AlgebraElement) -> str:
    text = format_element(a)
    nonzero = [c for c in a.coords if c]
    if len(nonzero) == 1 and "*" not in text:
        return text
    return f"({text})"


# -- module-level operations ----------------------------------------------------


def gp_add(G: GenPoly, H: GenPoly) -> GenPoly:
    return G + H


def gp_mul(G: GenPoly, H: GenPoly) -> GenPoly:
    return G * H


def homogeneous_part(G: GenPoly, j: int) -> GenPoly:
    return G.homogeneous_part(j)


def gp_eval(G: GenPoly, assignment) -> AlgebraElement:
    return G.evaluate(assignment)


def is_zero_formal(G: GenPoly) -> bool:
    return G.is_zero_formal()


def linearize(G: GenPoly, t: int) -> GenPoly:
    """The t-th linearization G^(t)(X_1, ..., X_t) of a univariate G.

    Runs the recursion
    ``F^(k+1)(.., x_k, x_{k+1}) = F^(k)(.., x_k + x_{k+1}) - F^(k)(.., x_k) - F^(k)(.., x_{k+1})``
    starting from ``F^(1) = G``.  For t >= 2 the degree-0 part is dropped
    before recursing: the recursion is defined for sums of products of
    additive maps, and a constant is not one (it would otherwise survive
    with alternating sign in every F^(k)).
    """
    if t < 1:
        raise ValueError("linearization order must be >= 1")
    if G.num_vars != 1:
        raise ValueError("linearize expects a univariate generalized polynomial")
    if t == 1:
        return G
    F = G - G.homogeneous_part(0)
    for k in range(1, t):
        # F has k variables; build F^(k+1) in k + 1 variables.
        keep = [{i: 1} for i in range(k - 1)]
        joined = F.substitute_linear(keep + [{k - 1: 1, k: 1}], k + 1)
        left = F.substitute_linear(keep + [{k - 1: 1}], k + 1)
        right = F.substitute_linear(keep + [{k: 1}], k + 1)
        F = joined - left - right
    return F


def symmetrized(G: GenPoly) -> GenPoly:
    """Sum over Sym(s) of G_s(X_sigma(1), ..., X_sigma(s)) for homogeneous G of degree s.

    The closed form of the s-th linearization, computed independently of
    the recursion.
    """
    s = G.degree
    if s == NEG_INF or s < 1:
        return GenPoly.zero(G.algebra, 1)
    if G.homogeneous_part(s) != G:
        raise ValueError("symmetrized() needs a homogeneous polynomial")
    p = G.algebra.p
    canon: dict = {}
    for (word, idx), z in G._canon.items():
        for perm in itertools.permutations(range(s)):
            _add_into(canon, (tuple(perm), idx), z, p)
    return GenPoly(G.algebra, s, canon)


@dataclass(frozen=True)
class AdditiveForm:
    """Outcome of :func:`additive_form_test`."""

    additive: bool
    pairs: tuple = ()
    obstruction: str | None = None
    obstruction_degree: int | None = None
    obstruction_part: GenPoly | None = None


def additive_form_test(G: GenPoly) -> AdditiveForm:
    """Decide whether G(X) = sum a_i X b_i formally.

    Succeeds iff deg G <= 1 and G(0) = 0; the pairs come out grouped by
    the left module-basis element.  Otherwise the obstruction is the top
    homogeneous part of degree >= 2 (then G(X+Y) - G(X) - G(Y) != 0) or
    the nonzero constant term.
    """
    if G.num_vars != 1:
        raise ValueError("additive_form_test expects a univariate polynomial")
    deg = G.degree
    if deg != NEG_INF and deg >= 2:
        part = G.homogeneous_part(int(deg))
        return AdditiveForm(False, obstruction="degree", obstruction_degree=int(deg), obstruction_part=part)
    const = G.homogeneous_part(0)
    if not const.is_zero_formal():
        return AdditiveForm(False, obstruction="constant", obstruction_degree=0, obstruction_part=const)
    fr = G._frame
    grouped: dict = {}
    for (word, idx), z in G._canon.items():
        left, right = idx
        grouped.setdefault(left, G.algebra.zero)
        grouped[left] = grouped[left] + fr.zelement(z) * fr.mbasis[right]
    pairs = tuple((fr.mbasis[i], b) for i, b in sorted(grouped.items()) if not b.is_zero())
    return AdditiveForm(True, pairs=pairs)


def elementary_poly(A: FiniteAlgebra, pairs) -> GenPoly:
    """sum a_i X b_i as a univariate generalized polynomial."""
    return GenPoly.from_terms(A, 1, [GenMonomial((A(a), A(b)), (0,)) for a, b in pairs])
