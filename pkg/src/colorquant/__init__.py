"""Exact computer algebra for color Lie bialgebras, their doubles and truncated quantizations."""

from .cartan import (
    CartanData,
    LaurentPoly,
    Presentation,
    apply_bicharacter_twist_to_presentation,
    build_classical_presentation,
    build_dj_presentation,
    check_delta_respects_relations,
    dj_coproduct_on_generators,
    qbinom,
)
from .colorlie import (
    ColorLieAlgebra,
    ColorLieBialgebra,
    check_color_bialgebra,
    check_color_lie,
    check_manin,
    classify_r,
    cyb,
    double,
    natural_pairing,
    scheunert_twist,
    standard_r,
)
from .grading import CommutationFactor, GradingGroup, epsilon, validate_commutation_factor
from .kernel import BACKEND
from .quantize import (
    check_classical_limit,
    check_quasitriangular,
    check_triangular,
    compute_J,
    quantize,
    quantize_coboundary,
    solve_associator_order2,
    twist_hopf,
)
from .report import Violation
from .scalars import CyclotomicField, TruncSeries, parse_scalar
from .specfile import SpecError, load_spec, parse_spec
from .tensoralg import DeformedTensor, GradedBasis, koszul_flip
from .uea import UEA, VermaPair, check_hopf, pbw_normalize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CartanData",
    "ColorLieAlgebra",
    "ColorLieBialgebra",
    "CommutationFactor",
    "CyclotomicField",
    "DeformedTensor",
    "GradedBasis",
    "GradingGroup",
    "LaurentPoly",
    "Presentation",
    "SpecError",
    "TruncSeries",
    "UEA",
    "VermaPair",
    "Violation",
    "apply_bicharacter_twist_to_presentation",
    "build_classical_presentation",
    "build_dj_presentation",
    "check_classical_limit",
    "check_color_bialgebra",
    "check_color_lie",
    "check_delta_respects_relations",
    "check_hopf",
    "check_manin",
    "check_quasitriangular",
    "check_triangular",
    "classify_r",
    "compute_J",
    "cyb",
    "dj_coproduct_on_generators",
    "double",
    "epsilon",
    "koszul_flip",
    "load_spec",
    "natural_pairing",
    "parse_scalar",
    "parse_spec",
    "pbw_normalize",
    "qbinom",
    "quantize",
    "quantize_coboundary",
    "scheunert_twist",
    "solve_associator_order2",
    "standard_r",
    "twist_hopf",
    "validate_commutation_factor",
]
