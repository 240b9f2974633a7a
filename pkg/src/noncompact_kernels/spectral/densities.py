"""Unnormalized spectral densities of heat and Matérn kernels."""

import numpy as np

from noncompact_kernels.manifolds.spaces import RhoData, Space
from noncompact_kernels.spectral.c_functions import c_inv_sq_hyp, c_inv_sq_spd
from noncompact_kernels.spectral.kernel_spec import KernelSpec


def squared_norm(lam: np.ndarray, rank: int) -> np.ndarray:
    """||lambda||^2, elementwise for rank 1 and over the last axis otherwise."""
    lam = np.asarray(lam, dtype=float)
    if rank == 1:
        return lam**2
    return np.sum(lam**2, axis=-1)


def base_density(spec: KernelSpec, lam: np.ndarray | float, rho: RhoData, n_dim: int) -> np.ndarray:
    """The Gaussian (heat) or Student-t (Matérn) shaped part of the spectral density.

    Args:
        spec: Kernel hyperparameters.
        lam: Spectral points; scalars for rank one, vectors along the last axis otherwise.
        rho: Root data of the space; ||rho||^2 is dropped for the shifted Laplacian.
        n_dim: Manifold dimension.

    Returns:
        exp(-kappa^2 (||l||^2 + ||rho||^2)/2) for nu = inf, otherwise
        (2 nu/kappa^2 + ||l||^2 + ||rho||^2)^(-nu - n_dim/2).
    """
    sq = squared_norm(lam, rho.rho.size) + spec.gap(rho.rho_norm_sq)
    if spec.is_heat:
        return np.exp(-(spec.kappa**2) * sq / 2)
    return (2 * spec.nu / spec.kappa**2 + sq) ** (-spec.nu - n_dim / 2)


def log_base_density(spec: KernelSpec, lam: np.ndarray | float, rho: RhoData, n_dim: int) -> np.ndarray:
    sq = squared_norm(lam, rho.rho.size) + spec.gap(rho.rho_norm_sq)
    if spec.is_heat:
        return -(spec.kappa**2) * sq / 2
    return (-spec.nu - n_dim / 2) * np.log(2 * spec.nu / spec.kappa**2 + sq)


def c_inv_sq(space: Space, lam: np.ndarray | float) -> np.ndarray:
    """|c(lambda)|^{-2} of the given space."""
    if space.is_hyperbolic:
        return c_inv_sq_hyp(lam, space.degree)
    return c_inv_sq_spd(np.asarray(lam, dtype=float))


def spectral_density(spec: KernelSpec, space: Space, lam: np.ndarray | float) -> np.ndarray:
    """Unnormalized density of the spectral measure: base density times |c|^{-2}."""
    return base_density(spec, lam, space.rho, space.manifold_dim) * c_inv_sq(space, lam)
