"""Central configurations of two twisted regular N-gons.

Build the 2N-body configuration, check it against the Newtonian equations
directly, evaluate the reduced ring equations, and solve or scan them.
"""

from .errors import (
    BracketError,
    ConvergenceError,
    DegenerateConfigurationError,
    InvalidArgumentError,
    NoPhysicalSolutionError,
    NoSolutionError,
    TwistedCCError,
)
from .geometry import (
    Configuration,
    PointMass,
    TwistedPairParams,
    build_configuration,
    classify_twist,
    reduce_twist,
    regular_polygon,
    vertex_angle,
)
from .kernels import (
    KernelQuery,
    check_identities,
    kernel_sum,
    ring_self_force,
    ring_sum,
    sine_kernel,
    tangential_force,
)
from .oracle import ResidualReport, central_residual, is_central, lambda_of, moment_I, potential_U
from .reduced import (
    ReducedResiduals,
    multiplier,
    planar_mass_ratio,
    residuals_general,
    residuals_planar,
    residuals_spatial,
    spatial_relations,
)
from .solvers import (
    Bracket,
    RootResult,
    SpatialSolution,
    ThetaScanReport,
    find_root,
    scan_planar_a,
    scan_theta,
    solve_h_equal,
    solve_spatial_pair,
    zero_height_margin,
)

__version__ = "0.1.0"
