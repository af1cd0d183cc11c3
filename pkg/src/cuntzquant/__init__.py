"""Exact finite-truncation quantization of polynomial observables.

Observables on R^{2n} map to windowed sparse matrices over a graded Hermite
basis through a bracket-action map Q, a multiplication map R, and their
combination R - 2iQ; the matrices realize concretely as operators built from
mutually orthogonal isometries on l2(N), and the same machinery extends to a
chaos-expansion backend over finitely many white-noise modes.  All core
arithmetic is exact (rationals with tagged radicals), so identity checks
assert equality rather than float closeness.
"""

from .basis import BasisSpec, GaussWeight, Normalization, TruncationOverflow
from .ccr import (CCRFamily, build_ccr, evaluate_expression, expression_text,
                  quantize_via_ccr, verify_adjoint_relation, verify_ccr,
                  verify_ccr_starred)
from .cuntz import (BoundReport, CuntzRep, CuntzReport, LiftedOperator,
                    LiftOverflow, SubspaceDecomposition, bound_check,
                    cantor_pair, cantor_unpair, column_bound, lift,
                    lifts_agree, verify_cuntz)
from .matrices import CoeffMatrix, EmptyWindowError
from .mmio import to_sparse, write_matrix_market
from .poly import (DimensionMismatch, Polynomial, PolyParseError,
                   parse_polynomial, poisson_bracket)
from .quadrature import entry_numeric, gram_numeric, pairing_numeric
from .quantizer import (build_Q, build_Qhat, build_R, compare, im_part,
                        matrix_power, re_part, selfadjoint_part, verify_lemma,
                        verify_theorem)
from .reports import IdentityCheck, canonical_json, suite_passed, suite_report
from .scalars import CFrac, Scalar
from .whitenoise import (ChaosParseError, ChaosPoly, EstimateReport,
                         OrderOverflow, WhiteNoiseConfig, WickBackend,
                         coordinate_derivative, directional_derivative,
                         duality, estimate_check, hida_norm, parse_chaos,
                         pointwise_product, s_transform, wick_product,
                         wn_bracket, wn_quantize)

__all__ = [
    "BasisSpec", "GaussWeight", "Normalization", "TruncationOverflow",
    "CCRFamily", "build_ccr", "evaluate_expression", "expression_text",
    "quantize_via_ccr", "verify_adjoint_relation", "verify_ccr",
    "verify_ccr_starred",
    "BoundReport", "CuntzRep", "CuntzReport", "LiftedOperator",
    "LiftOverflow", "SubspaceDecomposition", "bound_check", "cantor_pair",
    "cantor_unpair", "column_bound", "lift", "lifts_agree", "verify_cuntz",
    "CoeffMatrix", "EmptyWindowError",
    "to_sparse", "write_matrix_market",
    "DimensionMismatch", "Polynomial", "PolyParseError",
    "parse_polynomial", "poisson_bracket",
    "entry_numeric", "gram_numeric", "pairing_numeric",
    "build_Q", "build_Qhat", "build_R", "compare", "im_part", "matrix_power",
    "re_part", "selfadjoint_part", "verify_lemma", "verify_theorem",
    "IdentityCheck", "canonical_json", "suite_passed", "suite_report",
    "CFrac", "Scalar",
    "ChaosParseError", "ChaosPoly", "EstimateReport", "OrderOverflow",
    "WhiteNoiseConfig", "WickBackend", "coordinate_derivative",
    "directional_derivative", "duality", "estimate_check", "hida_norm",
    "parse_chaos", "pointwise_product", "s_transform", "wick_product",
    "wn_bracket", "wn_quantize",
]

__version__ = "0.1.0"
