"""symdom: Jordan-algebraic machinery for bounded symmetric domains.

Finite-dimensional JB*-triple factors (rectangular, spin, Hilbert, and
l-infinity sums), their Peirce calculus and Bergman operators, horofunctions
and horoballs, and Denjoy-Wolff iteration experiments for fixed-point-free
holomorphic self-maps of the open unit ball.
"""

from .boundary import (
    BoundaryComponent,
    Tripotent,
    classify_tripotent,
    closure_contains,
    component_of_boundary_point,
    component_of_tripotent,
    components_equal,
    in_extended_shilov,
)
from .dynamics import (
    CoordinatewiseStep,
    CoupledBidiscMap,
    IsometryStep,
    PipelineMap,
    ScaleStep,
    SelfMap,
    TransvectionStep,
    bidisc_appendix_suite,
    denjoy_wolff_report,
    earle_hamilton,
    hilbert_alternative,
    limit_functions,
    map_from_dict,
    orbit,
    schwarz_pick_defect,
    wolff,
)
from .errors import (
    ConfigError,
    DomainError,
    FactorMismatch,
    FrameAlignmentError,
    IterationLimitExceeded,
    NotTripotent,
    SingularOperator,
    SymdomError,
)
from .factors import (
    Element,
    Factor,
    basis_element,
    direct_sum,
    element_from_matrix,
    element_from_pairs,
    element_norm,
    element_to_pairs,
    factor_from_spec,
    factor_to_spec,
    hilbert,
    inner,
    polydisc,
    random_element,
    rectangular,
    spin,
    star,
    triple_product,
    zero_element,
)
from .horofunction import (
    EvaluatingSequence,
    Horoball,
    HorofunctionData,
    SigmaEstimate,
    estimate_sigma_from_sequence,
    eval_F_bisect,
    eval_F_opnorm,
    eval_F_sequence,
    evaluating_sequence,
    gromov_h,
    horoball,
    horoball_contains,
    horofunction_from_limit_data,
    closed_intersection_component,
)
from .linops import (
    RealLinOp,
    bergman,
    box,
    op_norm,
    op_norm_info,
    quadratic,
)
from .mobius import Transvection, kobayashi, mobius_1d, transvection_apply
from .peirce import (
    bergman_power,
    bergman_via_peirce,
    joint_peirce_family,
    joint_peirce_projection,
    peirce_projection,
)
from .spectral import SpectralDecomposition, spectral_decomposition

__version__ = "0.1.0"
