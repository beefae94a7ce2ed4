"""Finite-algebra toolkit for generalized polynomial and functional identities."""

from .algebra import (AlgebraElement, AlgebraError, BudgetExceeded, FiniteAlgebra, build_algebra, center,
                      centralizer, enumerate_units, inv, mul, power, product_algebra, standard_algebra)
from .fpoly import FpPoly
from .identities import Verdict, check_gfi, check_hua, check_template, check_w_identity, fi_residual, is_gpi
from .maps import AdditiveMap, named_map
from .ncpoly import (CanonError, GenMonomial, GenPoly, additive_form_test, elementary_poly, gp_add, gp_eval,
                     gp_mul, homogeneous_part, is_zero_formal, linearize, symmetrized)
from .numtheory import (HypothesisError, binom_mod_p, classify_case, find_P_nonroot, lemma3_data, poly_P,
                        poly_P_case1_form, poly_Q)
from .parser import ParseError, parse_expr
from .solver import (DecompositionError, IdentityTemplate, SolutionSpace, compile_template,
                     elementary_decomposition, gfi_template, inverse_derivation_template, power_template,
                     power_template_single, recompose, solve, template_from_json, theorem2_filter,
                     units_additively_generate)

__version__ = "0.1.0"
