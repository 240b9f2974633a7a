"""noncompact-kernels - heat and Matérn Gaussian-process kernels on H_n and SPD(d).

This package computes stationary kernels on hyperbolic spaces and on the
space of symmetric positive-definite matrices with random spherical-Fourier
features, draws exactly from their spectral measures, provides closed-form
reference kernels for validation and runs Gaussian-process regression by
pathwise conditioning.
"""

from noncompact_kernels.errors import NoncompactKernelsError
from noncompact_kernels.features import FeatureBasis, build_basis, kernel_estimate, kernel_matrix, prior_sample
from noncompact_kernels.gp import Dataset, posterior_moments, posterior_sample
from noncompact_kernels.manifolds import HyperbolicPoint, SpdPoint, Space, distance
from noncompact_kernels.oracles import oracle_for
from noncompact_kernels.spectral import KernelSpec, spectral_sample

__version__ = "0.1.0"

__all__ = [
    "NoncompactKernelsError",
    # Spaces
    "Space",
    "HyperbolicPoint",
    "SpdPoint",
    "distance",
    # Kernels
    "KernelSpec",
    "spectral_sample",
    "FeatureBasis",
    "build_basis",
    "kernel_estimate",
    "kernel_matrix",
    "prior_sample",
    "oracle_for",
    # Regression
    "Dataset",
    "posterior_moments",
    "posterior_sample",
]
