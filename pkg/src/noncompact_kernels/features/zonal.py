"""Zonal spherical functions by Monte Carlo over the isotropy group.

The abelian Iwasawa coordinate a(h g) of a point x = g x_0 enters the
exponent exp((i lambda - rho)^T a(h g)); averaging over Haar-random h gives
an unbiased estimate of the zonal spherical function at x.
"""

from typing import NamedTuple

import numpy as np

from noncompact_kernels.errors import DimensionMismatchError, InvalidPointError, SpaceMismatchError
from noncompact_kernels.manifolds import (
    GroupElement,
    HyperbolicPoint,
    ManifoldPoint,
    RhoData,
    embed_isotropy,
    hyperbolic_abelian_coordinate,
    isotropy_sampler,
    iwasawa_so1n,
    point_to_group,
    relative_point,
    rq_decompose,
    rq_log_diagonal,
    space_of,
)


class Estimate(NamedTuple):
    """A Monte-Carlo estimate and its standard error."""

    value: float | complex
    stderr: float


def mean_and_stderr(terms: np.ndarray) -> tuple[np.ndarray, float]:
    """Sample mean of i.i.d. terms and its standard error (0 for a single term)."""
    mean = np.mean(terms)
    if terms.size < 2:
        return mean, 0.0
    return mean, float(np.std(terms, ddof=1) / np.sqrt(terms.size))


def log_feature_exponent(x: ManifoldPoint, h: np.ndarray, rho: RhoData | None = None) -> np.ndarray:
    """Abelian coordinate a(h g) for g = point_to_group(x), via the full decomposition.

    H_n: h in SO(n) is embedded as diag(1, h) and the Iwasawa t is returned.
    SPD(d): h in O(d) multiplies the Cholesky factor; returns log diag(R).

    Returns:
        Array of length rank.
    """
    space = space_of(x)
    if rho is not None and rho.rho.size != space.rank:
        raise DimensionMismatchError(f"rho has length {rho.rho.size}, {space.name} has rank {space.rank}")
    if h.shape != (space.isotropy_size, space.isotropy_size):
        raise DimensionMismatchError(f"Isotropy element for {space.name} must be {space.isotropy_size}x{space.isotropy_size}")
    g = point_to_group(x)
    if space.is_hyperbolic:
        hg = GroupElement(space, embed_isotropy(h)).compose(g)
        return iwasawa_so1n(hg).coordinates
    return rq_decompose(h @ g.M).log_u


def abelian_coordinates(x: ManifoldPoint, haars: np.ndarray) -> np.ndarray:
    """a(h_l g) for a stack of isotropy elements, shape (L, rank).

    Uses the batched shortcuts: log(v_0 + <h_l[0], v_{1:}>) on H_n and the
    batched RQ log-diagonal on SPD(d).
    """
    space = space_of(x)
    if haars.ndim != 3 or haars.shape[1:] != (space.isotropy_size, space.isotropy_size):
        raise SpaceMismatchError(f"Isotropy stack of shape {haars.shape} does not fit {space.name}")
    if isinstance(x, HyperbolicPoint):
        t = hyperbolic_abelian_coordinate(x.v, haars[:, 0, :])
        if not np.all(np.isfinite(t)):
            raise InvalidPointError("Abelian coordinate is not finite")
        return t[:, None]
    return rq_log_diagonal(haars @ point_to_group(x).M)


def spherical_phases(lambdas: np.ndarray, coordinates: np.ndarray, rho: RhoData) -> np.ndarray:
    """exp((i lambda_l - rho)^T a_l) for paired rows, shape (L,).

    Args:
        lambdas: Spectral points, shape (L,) or (L, rank).
        coordinates: Abelian coordinates, shape (L, rank).
        rho: Root data.
    """
    lam = np.asarray(lambdas, dtype=float).reshape(coordinates.shape)
    exponent = np.sum((1j * lam - rho.rho) * coordinates, axis=-1)
    return np.exp(exponent)


def zonal_spherical_from_haars(lam: np.ndarray | float, x: ManifoldPoint, haars: np.ndarray) -> Estimate:
    """Zonal spherical function at x averaged over the given isotropy samples."""
    space = space_of(x)
    coordinates = abelian_coordinates(x, haars)
    lambdas = np.broadcast_to(np.asarray(lam, dtype=float).reshape(1, -1), coordinates.shape)
    terms = spherical_phases(lambdas, coordinates, space.rho)
    mean, stderr = mean_and_stderr(terms)
    return Estimate(value=complex(mean), stderr=stderr)


def zonal_spherical_mc(lam: np.ndarray | float, x: ManifoldPoint, L: int, rng: np.random.Generator) -> Estimate:
    """Unbiased Monte-Carlo estimate of the zonal spherical function at x.

    (1/L) sum_l exp((i lambda - rho)^T a(h_l g)) with h_l Haar on the isotropy group.
    """
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    haars = isotropy_sampler(space_of(x), L, rng)
    return zonal_spherical_from_haars(lam, x, haars)


def zonal_spherical_hyp_ball(lam: float, b: np.ndarray, L: int, rng: np.random.Generator) -> Estimate:
    """Zonal spherical function of H_n in the Poincaré ball.

    Averages ((1 - ||b||^2) / ||xi - b||^2)^{i lambda + (n-1)/2} over uniform
    unit vectors xi. The sign of lambda is kept, so lambda and -lambda give
    conjugate values for a shared stream.
    """
    b = np.asarray(b, dtype=float)
    norm_sq = float(b @ b)
    if norm_sq >= 1.0:
        raise InvalidPointError(f"Ball point has norm {np.sqrt(norm_sq)} >= 1")
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    n = b.size
    xi = rng.standard_normal((L, n))
    xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    poisson = (1.0 - norm_sq) / np.sum((xi - b) ** 2, axis=1)
    terms = np.exp((1j * lam + (n - 1) / 2) * np.log(poisson))
    mean, stderr = mean_and_stderr(terms)
    return Estimate(value=complex(mean), stderr=stderr)


def limiting_kernel(x: ManifoldPoint, x_prime: ManifoldPoint, L: int, rng: np.random.Generator) -> Estimate:
    """Monte-Carlo estimate of the lambda = 0 zonal function at g_{x'}^{-1} x.

    Real-valued; bounds every normalized stationary kernel from above.
    """
    space = space_of(x)
    space.check(x_prime)
    estimate = zonal_spherical_mc(np.zeros(space.rank), relative_point(x, x_prime), L, rng)
    return Estimate(value=float(np.real(estimate.value)), stderr=estimate.stderr)
