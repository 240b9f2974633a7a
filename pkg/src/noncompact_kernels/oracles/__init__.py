"""Closed-form and quadrature reference kernels."""

from noncompact_kernels.oracles.hyperbolic import MillsonSeries, heat_h2, heat_h3, heat_hn_millson
from noncompact_kernels.oracles.matern import heat_mass, matern_from_heat
from noncompact_kernels.oracles.quadrature import log_sinh, quad
from noncompact_kernels.oracles.registry import OracleFn, has_oracle, heat_oracle, oracle_for, radial_heat
from noncompact_kernels.oracles.spd import heat_spd2, spd2_spectral_coordinates

__all__ = [
    # Heat kernels
    "heat_h3",
    "heat_h2",
    "heat_hn_millson",
    "MillsonSeries",
    "heat_spd2",
    "spd2_spectral_coordinates",
    # Matérn
    "heat_mass",
    "matern_from_heat",
    # Registry
    "OracleFn",
    "heat_oracle",
    "oracle_for",
    "has_oracle",
    "radial_heat",
    # Numerics
    "quad",
    "log_sinh",
]
