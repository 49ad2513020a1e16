"""Exact-arithmetic vertices of Birkhoff polytopes of polystochastic matrices.

Certify candidate supports, enumerate vertex classes for small order and
dimension, and build vertices via Kronecker/dot products, hyperplane
stacking, and the symmetric order-3 family.
"""

from .tensor import (
    Index,
    PlaneSpec,
    ShapeError,
    Tensor,
    delete_hyperplanes,
    hamming,
    hyperplane,
    is_symmetric,
    line_indices,
    plane_extract,
    tensor_new,
)
from .linalg import (
    Elimination,
    RankDeficientError,
    RationalMatrix,
    kernel_basis,
    matrix_from_rows,
    rank,
    solve_consistent,
)
from .stochastic import (
    Diagonal,
    SupportSet,
    check_c0_c1,
    denominator_lcm,
    is_permutation_tensor,
    is_polystochastic,
    permanent,
    support,
    total_support_2d,
)
from .certify import (
    IncidenceMatrix,
    Verdict,
    VertexCertificate,
    ZeroSumWitness,
    build_incidence,
    certify,
    find_zero_sum,
    support_bound,
    vertex_by_hyperplanes,
)
from .equivalence import (
    EquivalenceTransform,
    apply,
    are_equivalent,
    automorphism_order,
    canonical_form,
    compose,
    identity_transform,
    inverse,
    random_transform,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
