"""Finite-ring verification laboratory.

Builds small associative unital rings as dense operation tables, decides a
catalog of ring-theoretic properties (reversibility and its relatives,
annihilator boundedness, bounded-degree McCoy falsification) with
replayable witnesses, and runs an executable claim suite over a ring
corpus.
"""

__version__ = "0.1.0"

from .claims import (ClaimResult, default_corpus, explore_problem, replay_trace,
                     run_claim, run_suite)
from .constructors import (make_corner, make_ex22, make_matrix, make_product,
                           make_quotient, make_skew_triangular,
                           make_upper_triangular, make_zn)
from .errors import (CapacityError, ContractError, DegreeOverflowError,
                     ParseError, RingLabError)
from .exprs import RingExprPlan, parse_ring_expr
from .kernel import (ElementSet, TwoSidedIdeal, annihilator, essentiality,
                     ideal_closure, jacobson_radical, nil_set, singular_set)
from .poly import Polynomial, poly_annihilator, poly_mul
from .properties import (PROPERTY_IDS, MccoyResult, PropertyReport,
                         check_property, is_weakly_reversible, mccoy_falsify,
                         replay_witness)
from .rings import AxiomReport, FiniteRing, PrimeAlgebra, validate_ring

__all__ = [
    "AxiomReport", "CapacityError", "ClaimResult", "ContractError",
    "DegreeOverflowError", "ElementSet", "FiniteRing", "MccoyResult",
    "ParseError", "Polynomial", "PrimeAlgebra", "PropertyReport",
    "PROPERTY_IDS", "RingExprPlan", "RingLabError", "TwoSidedIdeal",
    "annihilator", "check_property", "default_corpus", "essentiality",
    "explore_problem", "ideal_closure", "is_weakly_reversible",
    "jacobson_radical", "make_corner", "make_ex22", "make_matrix",
    "make_product", "make_quotient", "make_skew_triangular",
    "make_upper_triangular", "make_zn", "mccoy_falsify", "nil_set",
    "parse_ring_expr", "poly_annihilator", "poly_mul", "replay_trace",
    "replay_witness", "run_claim", "run_suite", "singular_set",
    "validate_ring",
]
