"""Exact lattice and Mukai-vector arithmetic for derived-equivalent K3 surfaces."""

from .exact_linalg import IntMatrix, RatMatrix, char_poly, determinant, signature, smith_normal_form
from .lattice import (
    DiscriminantGroup,
    IntegralLattice,
    LatticeError,
    LocalInvariants,
    direct_sum,
    discriminant_group,
    enumerate_norm_vectors,
    genus_equal,
    is_isotropic_rational,
    local_invariants,
    make_lattice,
    orthogonal_complement,
)
from .local import REAL, hilbert_symbol
from .binary_forms import BinaryFormClass, binary_equivalent, binary_form_class, represents
from .mukai import (
    AlgebraicMukaiLattice,
    MukaiVector,
    c2_from_mukai,
    decomposable_index,
    fm_partner_count,
    index_transfer_check,
    index_upper_bound,
    jacobian_action_images,
    mukai_pairing,
    pic_inverse_degree,
    spherical_twist,
)
from .real_k3 import LatticeInvolution, RealInvariants, TopologicalType, eigenlattices, extend_to_mukai, real_invariants, topological_type
from .monodromy import MonodromyReport, acampo_test, kulikov_type, monodromy_report, primitive_log, quasi_unipotency
from .weyl import RootSystemContext, build_root_context, weyl_membership

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "char_poly",
    "determinant",
    "signature",
    "smith_normal_form",
    "DiscriminantGroup",
    "IntegralLattice",
    "LatticeError",
    "LocalInvariants",
    "direct_sum",
    "discriminant_group",
    "enumerate_norm_vectors",
    "genus_equal",
    "is_isotropic_rational",
    "local_invariants",
    "make_lattice",
    "orthogonal_complement",
    "REAL",
    "hilbert_symbol",
    "BinaryFormClass",
    "binary_equivalent",
    "binary_form_class",
    "represents",
    "AlgebraicMukaiLattice",
    "MukaiVector",
    "c2_from_mukai",
    "decomposable_index",
    "fm_partner_count",
    "index_transfer_check",
    "index_upper_bound",
    "jacobian_action_images",
    "mukai_pairing",
    "pic_inverse_degree",
    "spherical_twist",
    "LatticeInvolution",
    "RealInvariants",
    "TopologicalType",
    "eigenlattices",
    "extend_to_mukai",
    "real_invariants",
    "topological_type",
    "MonodromyReport",
    "acampo_test",
    "kulikov_type",
    "monodromy_report",
    "primitive_log",
    "quasi_unipotency",
    "RootSystemContext",
    "build_root_context",
    "weyl_membership",
]
