"""Exact decision toolkit for polynomial derivations over Q.

Decides simplicity of the structured plane families with stable-ideal
certificates, searches for Darboux polynomials through the forced
cofactor recurrences, decides bounded image membership and Mathieu-Zhao
status for the diagonal families, and verifies every certificate it
emits.  All arithmetic is exact rational; there is no floating point
anywhere.
"""

from .darboux import (
    CofactorStructure,
    DarbouxPair,
    NotDarboux,
    SearchBounds,
    SearchOutcome,
    ViolationReport,
    audit_structure,
    darboux_search_family_a,
    darboux_search_power_family,
    solve_residual_system,
    verify_darboux,
)
from .derivation import (
    Derivation,
    FamilyA,
    FamilyB,
    FamilyDiag,
    FamilyDiagX,
    FamilyPow,
    Generic,
    UnsupportedFamily,
    locally_finite_closed_form,
    locally_finite_probe,
    recognize_family,
)
from .expr import ParseError, parse_derivation, parse_poly, poly_to_str
from .firstorder import (
    MODE_DERIV_MINUS_AC,
    MODE_KAC_MINUS_DERIV,
    FirstOrderSolution,
    NoSolutionShape,
    ParamPoly,
    UnsupportedShape,
    solve_first_order,
)
from .image import (
    CertifiedNonMember,
    Member,
    MzVerdict,
    NotFoundUpTo,
    certified_nonmembership,
    decide_mz,
    image_membership,
    one_in_image,
)
from .linalg import LinSolution, LinSystem, solve_linear
from .mpoly import DivisorZero, MultiPoly, VariableMismatch, divide_exact
from .simplicity import (
    Certificate,
    NecessaryCheck,
    SimplicityVerdict,
    UnsupportedIdealShape,
    condition3_solve,
    conjecture_necessary,
    conjecture_scan,
    decide_simple_family_a,
    power_condition3_solve,
    unit_ideal_check,
    verify_stable_ideal,
)
from .upoly import NEG_INF, UniPoly, ZeroPolynomial, rational_roots

__all__ = [
    "CofactorStructure",
    "DarbouxPair",
    "NotDarboux",
    "SearchBounds",
    "SearchOutcome",
    "ViolationReport",
    "audit_structure",
    "darboux_search_family_a",
    "darboux_search_power_family",
    "solve_residual_system",
    "verify_darboux",
    "Derivation",
    "FamilyA",
    "FamilyB",
    "FamilyDiag",
    "FamilyDiagX",
    "FamilyPow",
    "Generic",
    "UnsupportedFamily",
    "locally_finite_closed_form",
    "locally_finite_probe",
    "recognize_family",
    "ParseError",
    "parse_derivation",
    "parse_poly",
    "poly_to_str",
    "MODE_DERIV_MINUS_AC",
    "MODE_KAC_MINUS_DERIV",
    "FirstOrderSolution",
    "NoSolutionShape",
    "ParamPoly",
    "UnsupportedShape",
    "solve_first_order",
    "CertifiedNonMember",
    "Member",
    "MzVerdict",
    "NotFoundUpTo",
    "certified_nonmembership",
    "decide_mz",
    "image_membership",
    "one_in_image",
    "LinSolution",
    "LinSystem",
    "solve_linear",
    "DivisorZero",
    "MultiPoly",
    "VariableMismatch",
    "divide_exact",
    "Certificate",
    "NecessaryCheck",
    "SimplicityVerdict",
    "UnsupportedIdealShape",
    "condition3_solve",
    "conjecture_necessary",
    "conjecture_scan",
    "decide_simple_family_a",
    "power_condition3_solve",
    "unit_ideal_check",
    "verify_stable_ideal",
    "NEG_INF",
    "UniPoly",
    "ZeroPolynomial",
    "rational_roots",
]
