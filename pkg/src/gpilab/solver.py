"""Exact solution spaces of linear functional identities on a finite algebra.

An identity such as ``f(x) = x^n g(x^-1)`` or ``G(x) f(x) = H(x)`` is
linear in the unknown additive maps.  Writing each unknown as a d x d
matrix over F_p, every domain element x contributes d linear equations on
the stacked matrix entries, and the solution set is the kernel (or an
affine translate of it) of the resulting system.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _linalg
from .algebra import AlgebraError, BudgetExceeded, FiniteAlgebra, unit_coords
from .identities import check_template
from .maps import AdditiveMap
from .ncpoly import GenPoly


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class TemplateTerm:
    """``L(x, xinv) * f_slot(arg) * R(x, xinv)``."""

    L: GenPoly
    slot: int
    arg: str
    R: GenPoly

    def __post_init__(self):
        if self.arg not in ("x", "xinv"):
            raise TemplateError(f"term argument must be 'x' or 'xinv', got {self.arg!r}")


@dataclass(frozen=True)
class IdentityTemplate:
    """sum over terms of L * f_slot(arg) * R  =  rhs, for x in the domain.

    Generalized polynomials are in two variables: index 0 is x, index 1 is
    x^-1.  Any use of x^-1 requires ``domain == "units"``.
    """

    algebra: FiniteAlgebra
    terms: tuple
    rhs: GenPoly
    domain: str
    num_unknowns: int
    name: str = "custom"

    def __post_init__(self):
        if self.domain not in ("units", "all"):
            raise TemplateError("domain must be 'units' or 'all'")
        polys = [self.rhs] + [t.L for t in self.terms] + [t.R for t in self.terms]
        for P in polys:
            if P.algebra is not self.algebra:
                raise TemplateError("template polynomials over a different algebra")
            if P.num_vars != 2:
                raise TemplateError("template polynomials must be in the variables (x, xinv)")
        uses_inv = any(1 in w for P in polys for w in P.words) or any(t.arg == "xinv" for t in self.terms)
        if uses_inv and self.domain != "units":
            raise TemplateError("x^-1 is only defined on units; use domain 'units'")
        for t in self.terms:
            if not 0 <= t.slot < self.num_unknowns:
                raise TemplateError(f"term references map slot {t.slot} of {self.num_unknowns}")


def _xvar(A):
    return GenPoly.variable(A, 0, 2)


def _one(A):
    return GenPoly.constant(A.one, num_vars=2)


def power_template(A: FiniteAlgebra, n: int, sign: int = 1) -> IdentityTemplate:
    """f(x) = sign * x^n g(x^-1) on units."""
    if n < 0:
        raise TemplateError("n must be non-negative")
    X = _xvar(A)
    terms = (
        TemplateTerm(_one(A), 0, "x", _one(A)),
        TemplateTerm((X**n).scale(-sign), 1, "xinv", _one(A)),
    )
    return IdentityTemplate(A, terms, GenPoly.zero(A, 2), "units", 2, name=f"power(n={n})")


def power_template_single(A: FiniteAlgebra, n: int) -> IdentityTemplate:
    """f(x) = -x^n f(x^-1) on units (one unknown)."""
    X = _xvar(A)
    terms = (TemplateTerm(_one(A), 0, "x", _one(A)), TemplateTerm(X**n, 0, "xinv", _one(A)))
    return IdentityTemplate(A, terms, GenPoly.zero(A, 2), "units", 1, name=f"power-single(n={n})")


def inverse_derivation_template(A: FiniteAlgebra) -> IdentityTemplate:
    """f(x) x^-1 + x g(x^-1) = 0 on units."""
    X, Xi = _xvar(A), GenPoly.variable(A, 1, 2)
    terms = (TemplateTerm(_one(A), 0, "x", Xi), TemplateTerm(X, 1, "xinv", _one(A)))
    return IdentityTemplate(A, terms, GenPoly.zero(A, 2), "units", 2, name="inverse-derivation")


def gfi_template(A: FiniteAlgebra, Gs, H: GenPoly) -> IdentityTemplate:
    """sum_j G_j(x) f_j(x) = H(x) on all of A, with univariate G_j and H."""

    def lift(P):
        if P.num_vars != 1:
            raise TemplateError("G_j and H must be univariate")
        return P.with_num_vars(2)

    terms = tuple(TemplateTerm(lift(G), j, "x", _one(A)) for j, G in enumerate(Gs))
    return IdentityTemplate(A, terms, lift(H), "all", len(Gs), name="gfi")


def template_from_json(data, A: FiniteAlgebra) -> IdentityTemplate:
    """Template JSON: unknowns, domain, terms [{L, slot, arg, R}], rhs (expression strings)."""
    from .parser import parse_expr

    if isinstance(data, (str, Path)) and Path(str(data)).exists():
        data = json.loads(Path(data).read_text())
    elif isinstance(data, str):
        data = json.loads(data)

    def expr(text):
        return parse_expr(str(text), A, template=True)

    try:
        terms = tuple(TemplateTerm(expr(t.get("L", "1")), int(t["slot"]), t.get("arg", "x"), expr(t.get("R", "1")))
                      for t in data["terms"])
        return IdentityTemplate(A, terms, expr(data.get("rhs", "0")), data.get("domain", "units"),
                                int(data["unknowns"]), name=data.get("name", "custom"))
    except KeyError as exc:
        raise TemplateError(f"template is missing field {exc}") from None


# -- compilation -------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSystem:
    """Rows over F_p on the stacked unknown vector.

    Unknown ``slot * d^2 + i * d + j`` is entry (i, j) of map ``slot``;
    row ``e * d + k`` is coordinate k of the identity at the e-th domain
    element.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    p: int
    num_unknowns: int
    domain_size: int

    @property
    def shape(self):
        return self.matrix.shape


def _domain(template, budget):
    A = template.algebra
    if template.domain == "units":
        return unit_coords(A, budget)
    xs = A.all_coords(budget)
    return xs, np.zeros_like(xs)


def compile_template(template: IdentityTemplate, A: FiniteAlgebra | None = None,
                     budget: int | None = None) -> LinearSystem:
    A = A or template.algebra
    if A is not template.algebra:
        raise AlgebraError("template was built over a different algebra")
    p, d = A.p, A.dim
    xs, xinv = _domain(template, budget)
    N = len(xs)
    cols = template.num_unknowns * d * d
    M = np.zeros((N, d, cols), dtype=np.int64)
    eye = np.eye(d, dtype=np.int64)
    for term in template.terms:
        Lv = term.L.evaluate_batch([xs, xinv])
        Rv = term.R.evaluate_batch([xs, xinv])
        arg = xs if term.arg == "x" else xinv
        # K[n, :, i] = L * e_i * R
        left = A.mul_coords(Lv[:, None, :], eye[None, :, :])
        K = A.mul_coords(left, Rv[:, None, :]).transpose(0, 2, 1)
        block = np.einsum("nki,nj->nkij", K, arg).reshape(N, d, d * d)
        off = term.slot * d * d
        M[:, :, off:off + d * d] += block
    rhs = template.rhs.evaluate_batch([xs, xinv])
    return LinearSystem(M.reshape(N * d, cols) % p, rhs.reshape(-1) % p, p, template.num_unknowns, N)


# -- solving -------------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionSpace:
    """Solutions as ``particular + span(basis)``; ``particular`` is None for
    homogeneous identities, and ``consistent`` is False when there is none."""

    algebra: FiniteAlgebra
    num_unknowns: int
    basis: tuple
    particular: tuple | None = None
    consistent: bool = True
    template_name: str = ""
    _vectors: np.ndarray = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def _vec(self, maps) -> np.ndarray:
        if len(maps) != self.num_unknowns:
            raise ValueError(f"expected {self.num_unknowns} maps")
        return np.concatenate([m.flat() for m in maps])

    def contains(self, maps) -> bool:
        if not self.consistent:
            return False
        v = self._vec(maps)
        if self.particular is not None:
            v = (v - self._vec(self.particular)) % self.algebra.p
        return _linalg.in_rowspace(self._vectors, v, self.algebra.p)

    def to_json(self) -> dict:
        out = {
            "dimension": self.dimension,
            "basis": [[m.to_rows() for m in tup] for tup in self.basis],
        }
        if self.particular is not None:
            out["particular"] = [m.to_rows() for m in self.particular]
        if not self.consistent:
            out["consistent"] = False
        return out


def _maps_from_vector(A, v, k):
    d = A.dim
    return tuple(AdditiveMap(A, v[s * d * d:(s + 1) * d * d].reshape(d, d)) for s in range(k))


def solve(template: IdentityTemplate, A: FiniteAlgebra | None = None, budget: int | None = None,
          verify: bool = True) -> SolutionSpace:
    """Exact solution set of the compiled system, every basis tuple re-checked
    by direct evaluation of the identity."""
    A = A or template.algebra
    system = compile_template(template, A, budget)
    p, k = A.p, template.num_unknowns
    kernel = _linalg.nullspace(system.matrix, p)
    particular = None
    consistent = True
    if system.rhs.any():
        v = _linalg.solve(system.matrix, system.rhs, p)
        if v is None:
            consistent = False
        else:
            particular = _maps_from_vector(A, v, k)
    basis = tuple(_maps_from_vector(A, row, k) for row in kernel)
    space = SolutionSpace(A, k, basis if consistent else (), particular, consistent, template.name, kernel)
    if verify and consistent:
        hom = IdentityTemplate(A, template.terms, GenPoly.zero(A, 2), template.domain, k)
        for tup in basis:
            verdict = check_template(A, hom, tup, budget)
            if not verdict.holds:
                raise AssertionError(f"solver basis element fails the identity at {verdict.witness}")
        if particular is not None and not check_template(A, template, particular, budget).holds:
            raise AssertionError("solver particular solution fails the identity")
    return space


# -- elementary operators --------------------------------------------------------------


class DecompositionError(ValueError):
    """The map is not of the form x -> sum a_i x b_i."""


def elementary_decomposition(A: FiniteAlgebra, T: AdditiveMap, max_terms: int | None = None) -> list:
    """Write T as x -> sum a_i x b_i.

    Solves for the coefficient matrix C with T = sum_{u,v} C[u, v] L_{e_u} R_{e_v},
    then factors C = sum_i alpha_i beta_i^T by row reduction, giving
    a_i = sum_u alpha_i[u] e_u and b_i = sum_v beta_i[v] e_v.  The number of
    terms is rank(C) for the particular solution found; this is not
    guaranteed to be the minimum over all solutions.
    """
    p, d = A.p, A.dim
    max_terms = d * d if max_terms is None else max_terms
    es = A.basis_elements()
    cols = [(A.left_matrix(u) @ A.right_matrix(v) % p).reshape(-1) for u in es for v in es]
    system = np.array(cols).T
    c = _linalg.solve(system, T.matrix.reshape(-1), p)
    if c is None:
        raise DecompositionError("map is not in the span of the operators x -> a x b")
    C = c.reshape(d, d)
    R, pivots = _linalg.rref(C, p)
    pairs = []
    for row, pc in enumerate(pivots):
        a = A.element(C[:, pc])
        b = A.element(R[row])
        pairs.append((a, b))
    if len(pairs) > max_terms:
        raise DecompositionError(f"decomposition needs {len(pairs)} terms, more than {max_terms}")
    return pairs


def recompose(A: FiniteAlgebra, pairs) -> AdditiveMap:
    return AdditiveMap.elementary(A, pairs)


# -- scaling filter and unit generation --------------------------------------------------


@dataclass(frozen=True)
class ScalingResult:
    forces_zero: bool
    k: int | None
    value: int | None

    def to_json(self) -> dict:
        return {"result": "forces_zero" if self.forces_zero else "inconclusive", "k": self.k, "value": self.value}


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors, m, q = set(), p - 1, 2
    while q * q <= m:
        while m % q == 0:
            factors.add(q)
            m //= q
        q += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root")


def theorem2_filter(p: int, n: int) -> ScalingResult:
    """Scaling x -> kx in f(x) = x^n g(x^-1) gives k(k^(n-2) - 1) f = 0 on units.

    When p - 1 does not divide n - 2 some k makes that factor nonzero mod p
    (k = 2 if it already does, else a primitive root), forcing f = g = 0 on
    units.  Otherwise the argument is inconclusive.
    """
    if p < 2:
        raise ValueError("p must be a prime")
    if (n - 2) % (p - 1) == 0:
        return ScalingResult(False, None, None)

    def factor(k):
        e = n - 2
        kk = pow(k, e, p) if e >= 0 else pow(pow(k, -1, p), -e, p)
        return k * (kk - 1) % p

    for k in (2, primitive_root(p)):
        if k % p and factor(k):
            return ScalingResult(True, k, factor(k))
    raise AssertionError("primitive root failed to separate")  # unreachable for p - 1 ∤ n - 2


def units_additively_generate(A: FiniteAlgebra, budget: int | None = None) -> bool:
    """Is every element a finite sum of units?

    The additive subgroup generated by the units is their F_p-span, so this
    is a rank computation.
    """
    units, _ = unit_coords(A, budget)
    return _linalg.rank(units, A.p) == A.dim


__all__ = [
    "BudgetExceeded",
    "DecompositionError",
    "IdentityTemplate",
    "LinearSystem",
    "ScalingResult",
    "SolutionSpace",
    "TemplateError",
    "TemplateTerm",
    "compile_template",
    "elementary_decomposition",
    "gfi_template",
    "inverse_derivation_template",
    "power_template",
    "power_template_single",
    "primitive_root",
    "recompose",
    "solve",
    "template_from_json",
    "theorem2_filter",
    "units_additively_generate",
]
