"""Exact expectations of word measures on GL_N(F_q) as rational functions of q^N."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import BudgetExceeded, FieldError, GlwordError, PoleError, SupportError, WordSyntaxError
from .words import Word, cyclic_reduction, is_proper_power, parse_word, power_decompose, random_word
from .gf import GF, field_make, monic_divisors
from .linalg import Subspace
from .forest import SupportForest, build_support
from .ideals import IdealRep, classify_exposure, is_proper, rank_of, saturate
from .ratfunc import LaurentTail, RatFunc, indep_poly, rf_eval
from .enumeration import EnumTask, enum_ideals, enum_submodules
from .moments import (StatSpec, beta_w_direct, expected_fix, expected_stat, limit_value,
                      projective_expectation, q1_coefficient)
from .primitivity import PiQResult, crit2_and_prim2, crit_rank1, pi_q_upto2
from .empirics import (ac_mass, distribution_compare, exact_expectation, galois_number, limit_measure,
                       mc_expectation)

__all__ = [
    "__version__",
    "GlwordError", "WordSyntaxError", "FieldError", "SupportError", "BudgetExceeded", "PoleError",
    "Word", "parse_word", "cyclic_reduction", "power_decompose", "is_proper_power", "random_word",
    "GF", "field_make", "monic_divisors", "Subspace", "SupportForest", "build_support",
    "IdealRep", "saturate", "classify_exposure", "rank_of", "is_proper",
    "RatFunc", "LaurentTail", "indep_poly", "rf_eval",
    "EnumTask", "enum_ideals", "enum_submodules",
    "StatSpec", "expected_stat", "expected_fix", "limit_value", "q1_coefficient", "beta_w_direct",
    "projective_expectation",
    "PiQResult", "crit_rank1", "crit2_and_prim2", "pi_q_upto2",
    "exact_expectation", "mc_expectation", "ac_mass", "limit_measure", "galois_number", "distribution_compare",
]
