"""Discretized augmented operators and their numerical Fredholm data."""

from .augmented import (
    GAP_MIN,
    GRID_CAP,
    RANK_TOL,
    AugmentedSystem,
    CokernelComparison,
    IndexReport,
    assemble_adjoint_augmented,
    assemble_augmented,
    boundary_rows,
    cokernel_vs_adjoint_kernel,
    index_from_singular_values,
    numeric_index,
    resolve_index,
    split_family_index,
    split_family_system,
    system_residual,
)
from .discrete import DiscretePath, trapezoid_weights
from .evaluation import Evaluation, ev_section, evaluation_map, trace_tolerance
from .linalg import svdvals
from .solvers import (
    EstimateSample,
    NeumannResult,
    constant_path_solve,
    estimate_sample,
    neumann_invert,
    random_grid_path,
)

__all__ = [
    "GAP_MIN",
    "GRID_CAP",
    "RANK_TOL",
    "AugmentedSystem",
    "CokernelComparison",
    "DiscretePath",
    "EstimateSample",
    "Evaluation",
    "IndexReport",
    "NeumannResult",
    "assemble_adjoint_augmented",
    "assemble_augmented",
    "boundary_rows",
    "cokernel_vs_adjoint_kernel",
    "constant_path_solve",
    "estimate_sample",
    "ev_section",
    "evaluation_map",
    "index_from_singular_values",
    "neumann_invert",
    "numeric_index",
    "random_grid_path",
    "resolve_index",
    "split_family_index",
    "split_family_system",
    "svdvals",
    "system_residual",
    "trace_tolerance",
]
