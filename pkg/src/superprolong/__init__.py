"""superprolong: exact computations with graded Lie superalgebras.

Capabilities: Tanaka-Weisfeiler prolongation pr(m, g0) with higher-order
reductions, generalized Spencer cohomology H^{d,k}(m, g), weak derived flags
and symbols of polynomial superdistributions, and contact-symmetry
superalgebras of odd ODEs -- all over Q or Q(i), no floating point.
"""

from .scalars import FIELD_Q, FIELD_QI, Scalar, parse_scalar
from .linalg import ExactMatrix, kernel_basis, rank, solve
from .superspace import (
    EVEN,
    ODD,
    BasisVector,
    ExteriorBasisMonomial,
    GradedSuperSpace,
    exterior_dim,
    exterior_power_basis,
    hom_degree_component,
    koszul_sign,
)
from .liesuper import (
    LieSuperalgebra,
    SymbolAlgebra,
    check_fundamental_nondegenerate,
    derivations_gr,
    validate,
)
from .catalog import build_named
from .prolong import (
    Prolongation,
    ProlongationResult,
    apply_reduction,
    projective_trace_reduction,
    prolong,
    prolong_step,
)
from .spencer import (
    CochainSlice,
    ce_differential,
    cohomology_dims,
    reduced_differential_check,
)
from .superfield import (
    Ambient,
    DistributionSpec,
    SuperPolynomial,
    SuperVectorField,
    bracket_fields,
    check_strong_regularity,
    derived_flag,
    extract_symbol,
    left_invariant_distribution,
    left_invariant_fields,
    parse_field,
    parse_superfunction,
)
from .oddode import (
    ContactField,
    GeneratingFunction,
    JetContext,
    JetFunction,
    OdeSpec,
    contact_vf,
    determine_symmetries,
    lagrange_bracket,
    parse_jet,
    prolong_field,
)

__version__ = "0.1.0"
