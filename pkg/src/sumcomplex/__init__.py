"""Homology of sum complexes over finite and cyclotomic fields, plus the rank
formulas and uncertainty numbers built on it."""

from .complex import SumComplex, boundary_matrix, build, reduced_euler_characteristic
from .fields import FieldElement, FieldSpec, make_field, prime_field
from .homology import HomologyProfile, betti, top_betti, torsion
from .linalg import ExactMatrix, rank, smith_normal_form
from .spectral import betas, chebotarev_check, dim_h_char_p, dim_h_semisimple, rank_sum
from .uncertainty import uncertainty_direct, uncertainty_via_homology

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix", "FieldElement", "FieldSpec", "HomologyProfile", "SumComplex", "betas", "betti",
    "boundary_matrix", "build", "chebotarev_check", "dim_h_char_p", "dim_h_semisimple", "make_field",
    "prime_field", "rank", "rank_sum", "reduced_euler_characteristic", "smith_normal_form", "top_betti",
    "torsion", "uncertainty_direct", "uncertainty_via_homology",
]
