"""Similarity solutions of one-phase Stefan problems for the time-fractional diffusion equation."""

__version__ = "0.1.0"

from .caputo import TimeSamples, caputo_l1, caputo_power, graded_grid, uniform_grid
from .equivalence import (
    EquivalenceReport,
    dirichlet_from_convective,
    dirichlet_from_flux,
    flux_from_convective,
    verify_equivalence,
)
from .errors import (
    BracketFailure,
    ConsistencyFailure,
    DegenerateProblem,
    DomainError,
    InvalidParameter,
    NonConvergence,
    PrecisionLoss,
    RangeWarning,
)
from .special_fn import (
    FractionalOrder,
    SeriesControl,
    fractional_erf,
    mainardi,
    reciprocal_gamma,
    wright_w,
    wright_w_dz,
)
from .stefan import (
    ClosedFormSolution,
    Convective,
    Dirichlet,
    Flux,
    ProblemSpec,
    TranscendentalTarget,
    assemble,
    evaluate_s,
    evaluate_u,
    evaluate_ux,
    solve,
    solve_root,
    target_for,
    trans_H,
    trans_J,
    trans_K,
)
from .verification import (
    LimitStudy,
    ResidualReport,
    boundary_residual,
    classical_root,
    limit_study,
    pde_residual,
    residual_report,
    stefan_residual,
)
