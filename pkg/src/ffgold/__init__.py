"""Goldbach counting and Dirichlet series for pairs of function fields.

The library constructs function-field models (rational, elliptic, custom
L-polynomial), computes exact point and place counts, evaluates the Goldbach
counting function G(n) and its Dirichlet series Phi(s) directly in the
half-plane Re s > 2, continues Phi through a Mellin-Barnes residue
decomposition, and probes the meromorphic-continuation / natural-boundary
dichotomy governed by whether the two fields share a characteristic.
"""

from .errors import (
    FFGoldError,
    ValidationError,
    NumericalError,
    SingularCurve,
    WeilViolation,
    FunctionalEquationViolation,
    InvalidSpec,
    BudgetExceeded,
    DepthExceeded,
    DomainError,
    DegenerateRatio,
    ToleranceUnreachable,
    PoleAtNonPositiveInteger,
    NearPole,
    NearZeroOfLogDeriv,
    QuadratureNotConverged,
    RootFindingFailed,
)
from .ff_models import (
    PrimePower,
    WeierstrassCurve,
    FunctionFieldSpec,
    PointCounts,
    PlaceCounts,
    make_rational_field,
    make_elliptic_field,
    make_custom_field,
    point_counts,
    place_counts,
    enumerate_irreducibles,
    enumerate_points,
    effective_divisor_count,
)
from .goldbach import (
    FieldPair,
    GoldbachValue,
    EvalResult,
    lambda_norm_sum,
    representations,
    goldbach_G,
    goldbach_G_bruteforce,
    phi_direct,
    places_by_enumeration,
)
from .continuation import (
    DecompositionConfig,
    LaurentAtZero,
    ZetaLogDeriv,
    log_gamma,
    digamma,
    zeta_logderiv,
    zeta_logderiv_derivative,
    laurent_at_zero,
    mellin_barnes_check,
    sigma_1,
    sigma_half,
    sigma_0,
    sigma_N,
    r_0,
    i_N,
    phi_continued,
)
from .spectra import (
    PoleRecord,
    ProbeReport,
    enumerate_poles,
    pole_lattice_distance,
    numerator_roots,
    check_w_bound,
    density_gap,
    continued_fraction_denominators,
    gelfond_probe,
    boundary_probe,
)

__version__ = "0.1.0"
