"""Spectral flow and Fredholm indices of Hessian paths on truncated Hilbert scales."""

from .errors import (
    DimensionError,
    EndpointNotInvertible,
    JunctionNotInvertible,
    MismatchAtJunction,
    NotInvertible,
    PathMismatch,
    PerturbationTooLarge,
    ShiftOnSpectrum,
    SpecflowError,
    TailNotSettled,
    ValidationError,
    WindowTooTight,
)
from .flow import BranchTrace, Crossing, branch_trace, concatenate, direct_sum, spectral_flow
from .hessian import (
    AdaptedInnerProduct,
    PairOperator,
    SpectralProjection,
    Spectrum,
    adapted_inner,
    adjoint_view,
    resolvent_shift,
    spectral_content,
    spectral_projection,
    spectrum,
)
from .paths import (
    IntervalKind,
    OperatorPath,
    affine_path,
    arctan_path,
    constant_path,
    keyframe_path,
    poly_path,
)
from .scale import GrowthFunction, flat_apply, r_inner, r_norm, shift_isometry

__version__ = "0.1.0"
