"""Gaussian-process regression over manifold inputs."""

from noncompact_kernels.gp.kernels import FeatureKernel, KernelSource, OracleKernel, as_kernel
from noncompact_kernels.gp.regression import (
    Dataset,
    PosteriorMoments,
    TrainingFactor,
    factorize,
    log_marginal_likelihood,
    posterior_moments,
    posterior_sample,
)

__all__ = [
    # Kernel sources
    "KernelSource",
    "FeatureKernel",
    "OracleKernel",
    "as_kernel",
    # Regression
    "Dataset",
    "PosteriorMoments",
    "TrainingFactor",
    "factorize",
    "posterior_moments",
    "posterior_sample",
    "log_marginal_likelihood",
]
