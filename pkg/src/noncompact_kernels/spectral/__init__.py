"""Spectral measures of heat and Matérn kernels and their exact samplers."""

from noncompact_kernels.spectral.c_functions import (
    c_inv_sq_hyp,
    c_inv_sq_spd,
    hyp_polynomial_coeffs,
    tanh_product,
)
from noncompact_kernels.spectral.densities import (
    base_density,
    c_inv_sq,
    log_base_density,
    spectral_density,
    squared_norm,
)
from noncompact_kernels.spectral.kernel_spec import KernelSpec
from noncompact_kernels.spectral.rejection import (
    AcceptanceEstimate,
    RejectionResult,
    acceptance_rate,
    propose_hyp,
    propose_spd,
    rejection_sample_hyp,
    rejection_sample_spd,
    spectral_sample,
)
from noncompact_kernels.spectral.samplers import (
    hyp_heat_mixture_weights,
    hyp_matern_mixture_weights,
    matern_gamma,
    sample_base_density,
    sample_chi,
    sample_goe_eigs,
    sample_hyp_heat_mixture,
    sample_hyp_matern_mixture,
)

__all__ = [
    # Hyperparameters
    "KernelSpec",
    # c-functions and densities
    "c_inv_sq_hyp",
    "c_inv_sq_spd",
    "c_inv_sq",
    "tanh_product",
    "hyp_polynomial_coeffs",
    "base_density",
    "log_base_density",
    "spectral_density",
    "squared_norm",
    # Samplers
    "hyp_heat_mixture_weights",
    "hyp_matern_mixture_weights",
    "matern_gamma",
    "sample_hyp_heat_mixture",
    "sample_hyp_matern_mixture",
    "sample_goe_eigs",
    "sample_chi",
    "sample_base_density",
    # Rejection
    "RejectionResult",
    "AcceptanceEstimate",
    "propose_hyp",
    "propose_spd",
    "rejection_sample_hyp",
    "rejection_sample_spd",
    "spectral_sample",
    "acceptance_rate",
]
