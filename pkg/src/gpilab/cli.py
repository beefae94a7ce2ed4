"""``gpi``: command-line front end.

Every subcommand writes one JSON document to stdout.  Exit status is 0
when the computation succeeded (and any checked identity holds), 1 when an
identity is violated, a containment check fails or a decomposition does
not exist, and 2 for usage or input errors.

Algebras are given as a descriptor JSON path or as a standard name:
``GF(q)``, ``Mn(Fp)`` or ``Mn(GF(q))``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import identities, numtheory, solver
from .algebra import (AlgebraError, BudgetExceeded, FiniteAlgebra, build_algebra, center, format_element,
                      span_rank, standard_algebra, unit_coords)
from .maps import AdditiveMap, named_map
from .ncpoly import NEG_INF, CanonError, GenPoly, additive_form_test, linearize
from .parser import ParseError, parse_expr


class UsageError(Exception):
    pass


# -- input resolution --------------------------------------------------------------


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k = numtheory.p_power_exponent(q, p)
            if k is None:
                raise UsageError(f"{q} is not a prime power")
            return p, k
    raise UsageError(f"{q} is not a prime power")


def load_algebra(spec: str) -> FiniteAlgebra:
    if Path(spec).is_file():
        return build_algebra(spec)
    text = spec.replace(" ", "")
    if m := re.fullmatch(r"GF\((\d+)\)|F(\d+)", text):
        p, k = _prime_power(int(m.group(1) or m.group(2)))
        return standard_algebra("field", p=p, k=k)
    if m := re.fullmatch(r"M(\d+)\((?:F(\d+)|GF\((\d+)\))\)", text):
        p, k = _prime_power(int(m.group(2) or m.group(3)))
        return standard_algebra("matrix", p=p, k=k, n=int(m.group(1)))
    raise UsageError(f"cannot read algebra {spec!r}: not a file or a name like GF(9), M2(F3)")


def parse_element(text: str, A: FiniteAlgebra):
    """An element written as a variable-free expression, e.g. ``e11+2*e12``."""
    G = parse_expr(text, A, m=1)
    if G.degree not in (NEG_INF, 0):
        raise UsageError(f"{text!r} is not a constant")
    return G.constant_term()


def load_map(text: str, A: FiniteAlgebra) -> AdditiveMap:
    """A named map (id, zero, neg, frob, frobJ), matrix rows as JSON, or a JSON file of rows."""
    text = text.strip()
    if Path(text).is_file():
        text = Path(text).read_text()
    if text.startswith("["):
        return AdditiveMap(A, json.loads(text))
    return named_map(A, text)


def load_template(args, A: FiniteAlgebra):
    name = args.template
    if name == "power":
        return solver.power_template(A, _need(args.n, "--n"), sign=args.sign)
    if name == "power-single":
        return solver.power_template_single(A, _need(args.n, "--n"))
    if name == "inverse-derivation":
        return solver.inverse_derivation_template(A)
    if Path(name).is_file():
        return solver.template_from_json(json.loads(Path(name).read_text()), A)
    raise UsageError(f"unknown template {name!r}")


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _verdict_json(v):
    out = v.to_json()
    if v.witness is not None:
        out["witness_text"] = [format_element(w) for w in v.witness]
    return out


def _poly_json(G: GenPoly) -> dict:
    deg = G.degree
    return {"poly": str(G), "degree": None if deg == NEG_INF else deg, "canonical": G.to_json()}


# -- subcommands ---------------------------------------------------------------------


def cmd_algebra(args):
    A = load_algebra(args.algebra)
    out = {
        "name": A.name,
        "p": A.p,
        "dim": A.dim,
        "size": A.size,
        "basis": list(A.basis),
        "commutative": A.is_commutative,
        "center_dim": span_rank(center(A)),
    }
    if args.units:
        units, _ = unit_coords(A, args.budget)
        out["units"] = len(units)
    if args.dump:
        out["descriptor"] = A.to_descriptor()
    return out, 0


def cmd_eval(args):
    A = load_algebra(args.algebra)
    G = parse_expr(args.expr, A, m=len(args.at) or None)
    if G.num_vars != len(args.at):
        raise UsageError(f"expression has {G.num_vars} variable(s); give one --at per variable")
    val = G.evaluate([parse_element(t, A) for t in args.at])
    return {"value": list(val.coords), "value_text": format_element(val)}, 0


def cmd_linearize(args):
    A = load_algebra(args.algebra)
    G = parse_expr(args.expr, A)
    return _poly_json(linearize(G, args.t)), 0


def cmd_homog(args):
    A = load_algebra(args.algebra)
    G = parse_expr(args.expr, A)
    var = None if args.var is None else args.var - 1
    return _poly_json(G.homogeneous_part(args.degree, var)), 0


def cmd_is_zero_formal(args):
    A = load_algebra(args.algebra)
    G = parse_expr(args.expr, A)
    form = additive_form_test(G) if G.num_vars == 1 else None
    out = {"zero": G.is_zero_formal(), "canonical_terms": len(G.canon)}
    if form is not None:
        out["additive"] = form.additive
    return out, 0


def cmd_check_gpi(args):
    A = load_algebra(args.algebra)
    G = parse_expr(args.expr, A)
    v = identities.is_gpi(G, args.mode, seed=args.seed, trials=args.trials, budget=args.budget)
    return _verdict_json(v), 0 if v.holds else 1


def cmd_check_hua(args):
    A = load_algebra(args.algebra)
    v = identities.check_hua(A, args.budget)
    return _verdict_json(v), 0 if v.holds else 1


def cmd_check_fi(args):
    A = load_algebra(args.algebra)
    v = identities.fi_residual(A, load_map(args.f, A), load_map(args.g, A), args.n, args.budget)
    return _verdict_json(v), 0 if v.holds else 1


def cmd_solve_fi(args):
    A = load_algebra(args.algebra)
    template = load_template(args, A)
    space = solver.solve(template, A, args.budget)
    out = space.to_json()
    out["template"] = template.name
    if not args.basis:
        out.pop("basis")
    if template.name.startswith("power(") and A.is_commutative and A.dim == 1:
        out["scaling_filter"] = solver.theorem2_filter(A.p, args.n).to_json()
    code = 0
    if args.contains:
        maps = [load_map(t, A) for t in args.contains.split(",")]
        out["contains"] = space.contains(maps)
        code = 0 if out["contains"] else 1
    return out, code


def cmd_decompose(args):
    A = load_algebra(args.algebra)
    T = load_map(args.map, A)
    try:
        pairs = solver.elementary_decomposition(A, T, args.max_terms)
    except solver.DecompositionError as exc:
        return {"decomposed": False, "reason": str(exc)}, 1
    ok = solver.recompose(A, pairs) == T
    out = {
        "decomposed": ok,
        "num_terms": len(pairs),
        "terms": [[list(a.coords), list(b.coords)] for a, b in pairs],
        "terms_text": [[format_element(a), format_element(b)] for a, b in pairs],
    }
    return out, 0 if ok else 1


def cmd_binom(args):
    return {"k": args.k, "t": args.t, "p": args.p, "value": numtheory.binom_mod_p(args.k, args.t, args.p)}, 0


def cmd_lemma3(args):
    m, residue = numtheory.lemma3_data(args.k, args.p)
    return {"k": args.k, "p": args.p, "m": m, "residue": residue}, 0


def cmd_poly_p(args):
    P = numtheory.poly_P(args.n, args.p)
    out = {
        "n": args.n,
        "p": args.p,
        "zero": P.is_zero(),
        "degree": None if P.is_zero() else P.degree,
        "coeffs": {str(e): c for e, c in P.nonzero_terms().items()},
        "poly": str(P),
    }
    if args.q is not None:
        d = numtheory.find_P_nonroot(args.n, args.p, args.q)
        out["nonroot"] = None if d is None else list(d.coords)
    return out, 0


def cmd_classify(args):
    return numtheory.classify_case(args.n, args.p).to_json(), 0


def cmd_units_generate(args):
    A = load_algebra(args.algebra)
    units, _ = unit_coords(A, args.budget)
    rank = span_rank([A.element(u) for u in units])
    return {"generate": rank == A.dim, "span_rank": rank, "dim": A.dim, "units": len(units)}, 0


# -- argument parsing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpi", description="Generalized polynomial and functional identity lab")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, algebra=True):
        sp = sub.add_parser(name, help=help_)
        if algebra:
            sp.add_argument("--algebra", required=True, help="descriptor JSON path or GF(q), Mn(Fp), Mn(GF(q))")
        sp.add_argument("--budget", type=int, default=None, help="enumeration limit")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled modes")
        sp.set_defaults(func=func)
        return sp

    sp = add("algebra", cmd_algebra, "inspect an algebra")
    sp.add_argument("--dump", action="store_true", help="include the descriptor")
    sp.add_argument("--units", action="store_true", help="count units")

    sp = add("eval", cmd_eval, "evaluate an expression")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--at", action="append", default=[], help="value of the next variable (repeatable)")

    sp = add("linearize", cmd_linearize, "t-th linearization")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = add("homog", cmd_homog, "homogeneous component")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--var", type=int, default=None, help="count degree in this variable only (1-based)")

    sp = add("is-zero-formal", cmd_is_zero_formal, "formal zero test")
    sp.add_argument("--expr", required=True)

    sp = add("check-gpi", cmd_check_gpi, "does an expression vanish on the algebra")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    sp.add_argument("--trials", type=int, default=identities.DEFAULT_TRIALS)

    add("check-hua", cmd_check_hua, "Hua's identity over admissible unit pairs")

    sp = add("check-fi", cmd_check_fi, "check f(x) = x^n g(x^-1) on units")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", required=True, help="map name or matrix rows")
    sp.add_argument("--g", required=True, help="map name or matrix rows")

    sp = add("solve-fi", cmd_solve_fi, "solution space of a functional identity")
    sp.add_argument("--template", required=True, help="power, power-single, inverse-derivation or template JSON")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--sign", type=int, choices=[1, -1], default=1)
    sp.add_argument("--contains", default=None, help="comma separated maps to test for membership")
    sp.add_argument("--no-basis", dest="basis", action="store_false", help="omit the basis from the output")

    sp = add("decompose", cmd_decompose, "write a map as x -> sum a_i x b_i")
    sp.add_argument("--map", required=True)
    sp.add_argument("--max-terms", type=int, default=None)

    sp = add("binom", cmd_binom, "C(k, t) mod p", algebra=False)
    for flag in ("--k", "--t", "--p"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("lemma3", cmd_lemma3, "m and C(k, p^m + 1) mod p", algebra=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    sp = add("poly-p", cmd_poly_p, "the polynomial (1+X)^n + (1-X)^n - 2X^n - 2 over F_p", algebra=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, default=None, help="also search GF(q) for a non-root")

    sp = add("classify", cmd_classify, "Case I / Case II exponent split", algebra=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    add("units-generate", cmd_units_generate, "do the units span the algebra additively")
    return parser


_INPUT_ERRORS = (UsageError, ParseError, AlgebraError, CanonError, BudgetExceeded, ValueError, OSError,
                 json.JSONDecodeError)


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"gpi {args.command}: {exc}", file=stderr)
        out, code = {"error": str(exc), "type": type(exc).__name__}, 2
    stdout.write(json.dumps(out) + "\n")
    return code


def main(argv=None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
