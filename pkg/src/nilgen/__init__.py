"""Nilpotent generating pairs for sl_n over exact fields."""

from .closure import ClosureBasis, bracket_closure_audit, generated_subalgebra, generates_sln
from .construct import (
    ConsistentSet,
    GeneratorCertificate,
    SuperdiagonalForm,
    consistent_set,
    diagonal_rescaling,
    nilpotent_partner,
    nilpotent_superdiagonal_form,
    rank_one_partner,
    scaled_partner,
    similarity_rank1,
    split_diagonal,
    verify_consistent,
)
from .field import Q, FieldSpec, Fp, characteristic, scalar_arith
from .matrix import (
    Matrix,
    SimilarityWitness,
    bracket,
    conjugate,
    invert,
    is_nilpotent,
    kernel_basis,
    rank,
)

__version__ = "0.1.0"
