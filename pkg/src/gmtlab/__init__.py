"""gmtlab: numerical toolkit for GMT groups in PSL(2,C)."""

from .algebra import (
    DEFAULT_TOL,
    IDENTITY,
    ProjectiveMatrix,
    Tolerance,
    commutator,
    commutator_trace,
    inverse,
    multiply,
    normalize_det,
    projective_eq,
    trace_data,
)
from .classification import ElementClass, Kind, classify, elliptic_order, is_involution
from .gmt import (
    GmtEvaluation,
    InequalityStatus,
    gmt_inequality_check,
    gmt_value,
    lemma1_floor,
    lemma2_conjugate_pair,
    lemma3_verify,
)
from .words import DEHN_TABLE, Presentation, Word, evaluate_word, nielsen_search, verify_relators
from .catalog import (
    build_presentation,
    catalog_group,
    cosh_dn,
    figure_eight_generators,
    gamma_gmt_upper_bound,
    involution_h1,
    involution_h2,
    involution_h3,
    lambda_trace_distance,
    o3_representation,
    o4_representation,
    solve_conjugator,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "IDENTITY",
    "ProjectiveMatrix",
    "Tolerance",
    "commutator",
    "commutator_trace",
    "inverse",
    "multiply",
    "normalize_det",
    "projective_eq",
    "trace_data",
    "ElementClass",
    "Kind",
    "classify",
    "elliptic_order",
    "is_involution",
    "GmtEvaluation",
    "InequalityStatus",
    "gmt_inequality_check",
    "gmt_value",
    "lemma1_floor",
    "lemma2_conjugate_pair",
    "lemma3_verify",
    "DEHN_TABLE",
    "Presentation",
    "Word",
    "evaluate_word",
    "nielsen_search",
    "verify_relators",
    "build_presentation",
    "catalog_group",
    "cosh_dn",
    "figure_eight_generators",
    "gamma_gmt_upper_bound",
    "involution_h1",
    "involution_h2",
    "involution_h3",
    "lambda_trace_distance",
    "o3_representation",
    "o4_representation",
    "solve_conjugator",
]
