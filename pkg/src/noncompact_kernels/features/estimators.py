"""Feature maps, kernel estimators and prior paths over a FeatureBasis."""

from collections.abc import Sequence
from typing import Literal

import numpy as np

from noncompact_kernels.errors import DimensionMismatchError
from noncompact_kernels.features.basis import FeatureBasis
from noncompact_kernels.features.zonal import (
    Estimate,
    abelian_coordinates,
    mean_and_stderr,
    spherical_phases,
)
from noncompact_kernels.manifolds import ManifoldPoint, relative_point

EstimatorMode = Literal["psd", "plain"]


def _unit_phases(basis: FeatureBasis, x: ManifoldPoint) -> np.ndarray:
    basis.space.check(x)
    coordinates = abelian_coordinates(x, basis.haars)
    return spherical_phases(basis.lambda_matrix, coordinates, basis.rho)


def feature_map(basis: FeatureBasis, x: ManifoldPoint) -> np.ndarray:
    """Complex feature vector of length L.

    Entry l is sqrt(sigma2/L) iw_l exp((i lambda_l - rho)^T a(h_l g)), with
    iw_l the importance weight (1 for rejection bases).
    """
    return basis.feature_scales * _unit_phases(basis, x)


def feature_matrix(basis: FeatureBasis, points: Sequence[ManifoldPoint]) -> np.ndarray:
    """Stacked feature maps, shape (len(points), L)."""
    if len(points) == 0:
        return np.zeros((0, basis.L), dtype=complex)
    return np.stack([feature_map(basis, x) for x in points])


def _squared_scales(basis: FeatureBasis) -> np.ndarray:
    """sigma2 iw_l^2, the per-feature scale of the single-term estimators."""
    if basis.importance_weights is None:
        return np.full(basis.L, basis.sigma2)
    return basis.sigma2 * basis.importance_weights**2


def kernel_estimate(
    basis: FeatureBasis,
    x: ManifoldPoint,
    x_prime: ManifoldPoint,
    mode: EstimatorMode = "psd",
) -> Estimate:
    """Unbiased estimate of k(x, x') with its Monte-Carlo standard error.

    "psd" returns Re<feature_map(x), feature_map(x')>, the entry of the PSD
    Gram matrix. "plain" evaluates the single exponential at the relative
    point g_{x'}^{-1} x, whose per-feature terms are bounded by sigma2 iw_l^2.
    """
    basis.space.check(x)
    basis.space.check(x_prime)
    if mode == "psd":
        terms = _squared_scales(basis) * np.real(_unit_phases(basis, x) * np.conj(_unit_phases(basis, x_prime)))
    elif mode == "plain":
        terms = _squared_scales(basis) * np.real(_unit_phases(basis, relative_point(x, x_prime)))
    else:
        raise ValueError(f"Unknown estimator mode: {mode}")
    mean, stderr = mean_and_stderr(terms)
    return Estimate(value=float(mean), stderr=stderr)


def cross_kernel_matrix(
    basis: FeatureBasis,
    points: Sequence[ManifoldPoint],
    other_points: Sequence[ManifoldPoint],
) -> np.ndarray:
    """Re(Phi_a Phi_b^*) between two point lists."""
    return np.real(feature_matrix(basis, points) @ np.conj(feature_matrix(basis, other_points)).T)


def kernel_matrix(basis: FeatureBasis, points: Sequence[ManifoldPoint]) -> np.ndarray:
    """PSD Gram matrix K = Re(Phi Phi^*), symmetrized exactly."""
    if len(points) == 0:
        raise DimensionMismatchError("kernel_matrix needs at least one point")
    phi = feature_matrix(basis, points)
    K = np.real(phi @ np.conj(phi).T)
    return 0.5 * (K + K.T)


def prior_sample(basis: FeatureBasis, points: Sequence[ManifoldPoint]) -> np.ndarray:
    """Prior path f(x) = Re(sum_l w_l phi_l(x)) at each point, using the basis weights."""
    if len(points) == 0:
        raise DimensionMismatchError("prior_sample needs at least one point")
    return np.real(feature_matrix(basis, points) @ basis.weights)


def prior_samples(basis: FeatureBasis, points: Sequence[ManifoldPoint], weights: np.ndarray) -> np.ndarray:
    """Prior paths for a stack of complex weight vectors, shape (len(points), n_samples)."""
    return np.real(feature_matrix(basis, points) @ weights)
