"""Matérn kernels as Gamma-weighted mixtures of heat kernels over diffusion time."""

from collections.abc import Callable
from typing import Literal, TypeVar

import numpy as np
from scipy import special

from noncompact_kernels.errors import UnsupportedError
from noncompact_kernels.manifolds import Space
from noncompact_kernels.oracles.quadrature import quad
from noncompact_kernels.spectral import hyp_polynomial_coeffs

P = TypeVar("P")

HeatFn = Callable[[P, P, float], float]


def _half_line_moment(j: int, u: float) -> float:
    """Integral of l^j exp(-u l^2) over l > 0."""
    return float(0.5 * special.gamma((j + 1) / 2) * u ** (-(j + 1) / 2))


def _polynomial(coeffs: list[float], lam: float) -> float:
    return sum(c * lam**j for j, c in enumerate(coeffs))


def heat_mass(space: Space, laplacian: Literal["ordinary", "shifted"] = "ordinary") -> Callable[[float], float]:
    """The heat kernel at coincident points as a function of diffusion time u.

    Returns u -> integral of |c(l)|^{-2} exp(-u (||l||^2 + ||rho||^2)) over
    R^rank, with ||rho||^2 dropped for the shifted Laplacian. Closed form for
    odd-dimensional H_n, quadrature for even n and a one-dimensional
    quadrature for SPD(2).
    """
    gap = 0.0 if laplacian == "shifted" else space.rho.rho_norm_sq

    if space.is_hyperbolic:
        n = space.degree
        coeffs = [float(c) for c in hyp_polynomial_coeffs(n)]

        def hyp_mass(u: float) -> float:
            # full-line Gaussian moments of the polynomial part
            total = sum(c * _half_line_moment(j, u) for j, c in enumerate(coeffs) if c) * 2.0
            if n % 2 == 0:
                # tanh(pi l) = 1 - 2 expit(-2 pi l)
                total -= 4.0 * quad(
                    lambda lam: float(_polynomial(coeffs, lam) * np.exp(-u * lam * lam) * special.expit(-2 * np.pi * lam)),
                    0.0,
                    np.inf,
                    f"heat mass correction H_{n}",
                )
            return float(total * np.exp(-u * gap))

        return hyp_mass

    if space.degree == 2:

        def spd2_mass(u: float) -> float:
            # lambda = (s + d, s - d)/sqrt(2): the s-integral is Gaussian and
            # |l_1 - l_2| = sqrt(2)|d|
            scale = np.pi * np.sqrt(2.0)
            correction = quad(
                lambda d: float(d * np.exp(-u * d * d) * special.expit(-2 * scale * d)),
                0.0,
                np.inf,
                "heat mass correction SPD(2)",
            )
            integral = 2.0 * scale * (_half_line_moment(1, u) - 2.0 * correction)
            return float(np.sqrt(np.pi / u) * integral * np.exp(-u * gap))

        return spd2_mass

    raise UnsupportedError(f"No heat mass available for {space.name}")


def matern_from_heat(
    heat_fn: HeatFn,
    nu: float,
    kappa: float,
    n_dim: int,
    x: P,
    x_prime: P,
    mass: Callable[[float], float],
) -> float:
    """Matérn kernel from a normalized heat oracle, normalized to 1 at x = x'.

    Integrates u^{nu - 1 + n_dim/2} e^{-2 nu u / kappa^2} P(u, x, x') over
    u > 0, where the heat solution at time u is mass(u) times the normalized
    heat oracle with length scale sqrt(2u). The substitution u = w^2 removes
    the u^{nu - 1} endpoint behavior for nu >= 1/2.

    Args:
        heat_fn: Normalized heat kernel heat_fn(x, x', kappa_heat).
        nu: Smoothness, finite.
        kappa: Matérn length scale.
        n_dim: Manifold dimension.
        x: First point.
        x_prime: Second point.
        mass: Heat kernel at coincident points as a function of time (heat_mass).
    """
    if not 0.0 < nu < np.inf:
        raise UnsupportedError(f"matern_from_heat needs finite nu > 0, got {nu}")

    def weight(w: float) -> float:
        u = w * w
        return float(2.0 * w * u ** (nu - 1 + n_dim / 2) * np.exp(-2 * nu * u / kappa**2) * mass(u))

    def integrand(w: float) -> float:
        if w <= 0.0:
            return 0.0
        return weight(w) * heat_fn(x, x_prime, float(np.sqrt(2.0) * w))

    def normalizer_integrand(w: float) -> float:
        return 0.0 if w <= 0.0 else weight(w)

    numerator = quad(integrand, 0.0, np.inf, f"Matérn(nu={nu}, kappa={kappa})")
    denominator = quad(normalizer_integrand, 0.0, np.inf, f"Matérn normalizer(nu={nu}, kappa={kappa})")
    return numerator / denominator
