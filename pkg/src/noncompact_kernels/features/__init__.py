"""Random spherical-Fourier features on H_n and SPD(d)."""

from noncompact_kernels.features.basis import (
    BasisMethod,
    FeatureBasis,
    build_basis,
    complex_standard_normal,
)
from noncompact_kernels.features.estimators import (
    EstimatorMode,
    cross_kernel_matrix,
    feature_map,
    feature_matrix,
    kernel_estimate,
    kernel_matrix,
    prior_sample,
    prior_samples,
)
from noncompact_kernels.features.zonal import (
    Estimate,
    abelian_coordinates,
    limiting_kernel,
    log_feature_exponent,
    mean_and_stderr,
    spherical_phases,
    zonal_spherical_from_haars,
    zonal_spherical_hyp_ball,
    zonal_spherical_mc,
)

__all__ = [
    # Zonal spherical functions
    "Estimate",
    "mean_and_stderr",
    "log_feature_exponent",
    "abelian_coordinates",
    "spherical_phases",
    "zonal_spherical_from_haars",
    "zonal_spherical_mc",
    "zonal_spherical_hyp_ball",
    "limiting_kernel",
    # Bases
    "BasisMethod",
    "FeatureBasis",
    "build_basis",
    "complex_standard_normal",
    # Estimators
    "EstimatorMode",
    "feature_map",
    "feature_matrix",
    "kernel_estimate",
    "kernel_matrix",
    "cross_kernel_matrix",
    "prior_sample",
    "prior_samples",
]
