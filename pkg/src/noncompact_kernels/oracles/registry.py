"""Lookup of the reference kernel available for a (space, spec) pair."""

from collections.abc import Callable

from noncompact_kernels.errors import UnsupportedError
from noncompact_kernels.manifolds import HyperbolicPoint, ManifoldPoint, Space, SpdPoint, dist_hyperbolic
from noncompact_kernels.oracles.hyperbolic import MillsonSeries, heat_h2, heat_h3
from noncompact_kernels.oracles.matern import heat_mass, matern_from_heat
from noncompact_kernels.oracles.spd import heat_spd2
from noncompact_kernels.spectral import KernelSpec

OracleFn = Callable[[ManifoldPoint, ManifoldPoint], float]
HeatOracle = Callable[[ManifoldPoint, ManifoldPoint, float], float]


def radial_heat(n: int) -> Callable[[float, float], float]:
    """Normalized heat kernel of H_n as (distance, kappa) -> value."""
    if n == 2:
        return heat_h2
    if n == 3:
        return heat_h3
    if n % 2 == 1:
        return lambda rho, kappa: MillsonSeries(n, kappa)(rho)
    raise UnsupportedError(f"No heat oracle for H_{n}: even n > 2 is not covered")


def heat_oracle(space: Space) -> HeatOracle:
    """Normalized heat kernel (x, x', kappa) -> value for the given space."""
    if space.is_hyperbolic:
        radial = radial_heat(space.degree)

        def hyperbolic(x: ManifoldPoint, x_prime: ManifoldPoint, kappa: float) -> float:
            if not isinstance(x, HyperbolicPoint) or not isinstance(x_prime, HyperbolicPoint):
                raise UnsupportedError("Hyperbolic oracle needs hyperbolic points")
            return radial(dist_hyperbolic(x, x_prime), kappa)

        return hyperbolic

    if space.degree == 2:

        def spd(x: ManifoldPoint, x_prime: ManifoldPoint, kappa: float) -> float:
            if not isinstance(x, SpdPoint) or not isinstance(x_prime, SpdPoint):
                raise UnsupportedError("SPD oracle needs SPD points")
            return heat_spd2(x, x_prime, kappa)

        return spd

    raise UnsupportedError(f"No heat oracle for {space.name}")


def oracle_for(space: Space, spec: KernelSpec) -> OracleFn:
    """Normalized reference kernel (value 1 at coincident points) for the spec.

    Multiply by spec.sigma2 to compare against feature estimates.

    Raises:
        UnsupportedError: If no closed form or quadrature is available.
    """
    heat = heat_oracle(space)
    if spec.is_heat:
        return lambda x, x_prime: heat(x, x_prime, spec.kappa)

    mass = heat_mass(space, spec.laplacian)

    def matern(x: ManifoldPoint, x_prime: ManifoldPoint) -> float:
        space.check(x)
        space.check(x_prime)
        return matern_from_heat(heat, spec.nu, spec.kappa, space.manifold_dim, x, x_prime, mass)

    return matern


def has_oracle(space: Space) -> bool:
    try:
        heat_oracle(space)
    except UnsupportedError:
        return False
    return True
