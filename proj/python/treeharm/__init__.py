"""Spherical analysis on the homogeneous tree: transforms, summation
kernels and heat semigroup, backed by the C++ core."""

from ._core import (
    ParameterError,
    PoleError,
    ResolutionError,
    ToleranceError,
    TruncationError,
    abel_inverse,
    ball_size,
    c_function,
    comparison_lq_norm,
    decay_bound,
    distance,
    fourier_inverse,
    gamma_eigenvalue,
    heat_kernel,
    inverse_spherical,
    kernel_report,
    plancherel_weight,
    riesz_kernel,
    riesz_multiplier,
    spectral_period,
    sphere_size,
    spherical_function,
    spherical_transform,
)

__version__ = "0.1.0"

__all__ = [
    "ParameterError",
    "PoleError",
    "ResolutionError",
    "ToleranceError",
    "TruncationError",
    "abel_inverse",
    "ball_size",
    "c_function",
    "comparison_lq_norm",
    "decay_bound",
    "distance",
    "fourier_inverse",
    "gamma_eigenvalue",
    "heat_kernel",
    "inverse_spherical",
    "kernel_report",
    "plancherel_weight",
    "riesz_kernel",
    "riesz_multiplier",
    "spectral_period",
    "sphere_size",
    "spherical_function",
    "spherical_transform",
]
