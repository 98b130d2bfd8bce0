"""c-real elements of GL_n over a field with involution.

``T`` is c-real when it is conjugate to ``(T^c)^{-1}``.  The package
decides this exactly, produces checkable certificates (a conjugator and a
nondegenerate invariant hermitian form) and ships brute-force oracles that
confirm the answers over small finite fields.
"""

__version__ = "0.1.0"

from .canonical import (
    EDivisor,
    companion,
    elementary_divisors,
    primary_decomposition,
    rational_canonical_form,
    smith_invariant_factors,
)
from .field import Field, FieldError, involute, make_field, special_element
from .forms import (
    FormCert,
    cyclic_selfdual_form,
    dual_pair_form,
    find_nondegenerate,
    generic_form_space,
    unipotent_char2_form,
)
from .linalg import Matrix, SingularMatrixError
from .oracles import CensusReport, brute_conjugacy_oracle, brute_form_oracle, census
from .poly import Poly, dual, factor, is_self_dual
from .reality import (
    ConjCert,
    NotCReal,
    Pairing,
    build_conjugator,
    build_hermitian_form,
    claim_check,
    claim_check_theorem22,
    duality_pairing,
    involution_adjust,
    is_c_real,
    skew_form,
    strong_conjugator,
    verify_unitary,
)

__all__ = [
    "CensusReport", "ConjCert", "EDivisor", "Field", "FieldError", "FormCert", "Matrix", "NotCReal",
    "Pairing", "Poly", "SingularMatrixError", "brute_conjugacy_oracle", "brute_form_oracle",
    "build_conjugator", "build_hermitian_form", "census", "claim_check", "claim_check_theorem22", "companion",
    "cyclic_selfdual_form", "dual", "dual_pair_form", "duality_pairing", "elementary_divisors",
    "factor", "find_nondegenerate", "generic_form_space", "involute", "involution_adjust",
    "is_c_real", "is_self_dual", "make_field", "primary_decomposition", "rational_canonical_form",
    "skew_form", "smith_invariant_factors", "special_element", "strong_conjugator",
    "unipotent_char2_form", "verify_unitary",
]
