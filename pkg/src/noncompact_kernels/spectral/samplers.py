"""Exact mixture samplers for the polynomial-times-base parts of the spectral
measures, GOE eigenvalues, and the importance proposal on R^rank.

Every sampler takes an explicit generator and an optional ``size``; with
``size=None`` a single draw is returned.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction

import numpy as np
from scipy import special

from noncompact_kernels.errors import SamplerError
from noncompact_kernels.manifolds.spaces import Space
from noncompact_kernels.spectral.kernel_spec import KernelSpec

logger = logging.getLogger(__name__)

Coefficients = Sequence[float | Fraction]


def _log_coefficients(coeffs: Coefficients) -> np.ndarray:
    alpha = np.array([float(c) for c in coeffs])
    if alpha.size == 0 or np.any(alpha < 0.0) or not np.any(alpha > 0.0):
        raise SamplerError(f"Mixture coefficients must be nonnegative and not all zero, got {list(alpha)}")
    with np.errstate(divide="ignore"):
        return np.log(alpha)


def _normalize_log_weights(log_weights: np.ndarray) -> np.ndarray:
    weights = np.exp(log_weights - special.logsumexp(log_weights))
    return weights / weights.sum()


def hyp_heat_mixture_weights(coeffs: Coefficients, kappa: float) -> np.ndarray:
    """Mixture weights c_j proportional to alpha_j / beta_j.

    beta_j = 2^{(1-j)/2} Gamma((j+1)/2)^{-1} kappa^{j+1} is the inverse of
    the integral of lambda^j exp(-kappa^2 lambda^2 / 2) over [0, inf).
    """
    if kappa <= 0.0:
        raise SamplerError(f"kappa must be positive, got {kappa}")
    log_alpha = _log_coefficients(coeffs)
    j = np.arange(log_alpha.size)
    log_beta = (1 - j) / 2 * np.log(2.0) - special.gammaln((j + 1) / 2) + (j + 1) * np.log(kappa)
    return _normalize_log_weights(log_alpha - log_beta)


def sample_hyp_heat_mixture(
    coeffs: Coefficients,
    kappa: float,
    rng: np.random.Generator,
    size: int | None = None,
) -> float | np.ndarray:
    """Draw lambda >= 0 with density proportional to sum_j alpha_j l^j exp(-kappa^2 l^2/2).

    Picks component j with probability c_j and returns x / kappa with x ~ chi_{j+1}.
    """
    weights = hyp_heat_mixture_weights(coeffs, kappa)
    count = 1 if size is None else size
    j = rng.choice(weights.size, size=count, p=weights)
    lam = np.sqrt(rng.chisquare(j + 1)) / kappa
    return float(lam[0]) if size is None else lam


def matern_gamma(nu: float, kappa: float, rho_norm_sq: float, shifted: bool = False) -> float:
    """gamma = 2 nu / kappa^2 + ||rho||^2, or 2 nu / kappa^2 for the shifted Laplacian."""
    return 2 * nu / kappa**2 + (0.0 if shifted else rho_norm_sq)


def hyp_matern_mixture_weights(
    coeffs: Coefficients,
    nu: float,
    kappa: float,
    n: int,
    shifted: bool = False,
) -> np.ndarray:
    """Mixture weights c_j proportional to alpha_j / beta_j.

    beta_j = 2 B(a_j, b_j)^{-1} gamma^{b_j} with a_j = (j+1)/2 and
    b_j = nu + (n-j-1)/2 inverts the integral of l^j (gamma + l^2)^{-nu-n/2}.
    """
    if not (0.0 < nu < np.inf) or kappa <= 0.0:
        raise SamplerError(f"Matérn mixture needs 0 < nu < inf and kappa > 0, got nu={nu}, kappa={kappa}")
    log_alpha = _log_coefficients(coeffs)
    if log_alpha.size > n:
        raise SamplerError(f"Mixture for H_{n} accepts powers up to {n - 1}, got {log_alpha.size - 1}")
    gamma = matern_gamma(nu, kappa, ((n - 1) / 2) ** 2, shifted)
    j = np.arange(log_alpha.size)
    a = (j + 1) / 2
    b = nu + (n - j - 1) / 2
    log_beta = np.log(2.0) - special.betaln(a, b) + b * np.log(gamma)
    return _normalize_log_weights(log_alpha - log_beta)


def sample_hyp_matern_mixture(
    coeffs: Coefficients,
    nu: float,
    kappa: float,
    n: int,
    rng: np.random.Generator,
    size: int | None = None,
    shifted: bool = False,
) -> float | np.ndarray:
    """Draw lambda >= 0 with density proportional to sum_j alpha_j l^j (gamma + l^2)^{-nu-n/2}.

    Component j is a transformed beta-prime variable sqrt(gamma x),
    x ~ BetaPrime((j+1)/2, nu + (n-j-1)/2), drawn as a ratio of Gamma variables.
    """
    weights = hyp_matern_mixture_weights(coeffs, nu, kappa, n, shifted)
    gamma = matern_gamma(nu, kappa, ((n - 1) / 2) ** 2, shifted)
    count = 1 if size is None else size
    j = rng.choice(weights.size, size=count, p=weights)
    x = rng.gamma((j + 1) / 2) / rng.gamma(nu + (n - j - 1) / 2)
    lam = np.sqrt(gamma * x)
    return float(lam[0]) if size is None else lam


def sample_goe_eigs(d: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Sorted eigenvalues of M = (X + X^T)/2 with X i.i.d. standard Gaussian.

    Their joint density is proportional to exp(-||l||^2/2) prod_{i<j} |l_i - l_j|.

    Returns:
        Shape (d,) for size=None, else (size, d).
    """
    if d < 2:
        raise SamplerError(f"GOE eigenvalues need d >= 2, got {d}")
    count = 1 if size is None else size
    X = rng.standard_normal((count, d, d))
    eigenvalues = np.linalg.eigvalsh(0.5 * (X + np.swapaxes(X, -1, -2)))
    return eigenvalues[0] if size is None else eigenvalues


def sample_chi(df: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """chi_{df} for real df > 0, as the square root of Gamma(df/2, scale=2)."""
    return np.sqrt(rng.gamma(df / 2, 2.0, size=size))


def sample_base_density(spec: KernelSpec, space: Space, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw from the normalized base density on R^rank (the importance proposal).

    Heat: N(0, kappa^{-2} I). Matérn: multivariate Student-t with
    df = 2 nu + n_dim - rank and scale sqrt(gamma / df), whose density is
    proportional to (gamma + ||l||^2)^{-nu - n_dim/2}.

    Returns:
        Shape (size,) for rank one, (size, rank) otherwise.
    """
    rank = space.rank
    z = rng.standard_normal((size, rank))
    if spec.is_heat:
        lam = z / spec.kappa
    else:
        df = 2 * spec.nu + space.manifold_dim - rank
        gamma = matern_gamma(spec.nu, spec.kappa, space.rho.rho_norm_sq, spec.is_shifted)
        scale = np.sqrt(gamma / df)
        lam = scale * z / np.sqrt(rng.chisquare(df, size=(size, 1)) / df)
    logger.debug("Drew %d proposal points for %s on %s", size, spec.label(), space.name)
    return lam[:, 0] if rank == 1 else lam
