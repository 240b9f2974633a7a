"""Adaptive quadrature with a hard error check, and stable log-sinh."""

import logging
from collections.abc import Callable

import numpy as np
from scipy import integrate

from noncompact_kernels.errors import QuadratureError
from noncompact_kernels.utils import QUAD_EPSREL, QUAD_LIMIT, QUAD_MAX_ERROR

logger = logging.getLogger(__name__)


def log_sinh(x: np.ndarray | float) -> np.ndarray:
    """log(sinh x) for x > 0 without overflow: x + log(1 - e^{-2x}) - log 2."""
    x = np.asarray(x, dtype=float)
    return x + np.log(-np.expm1(-2.0 * x)) - np.log(2.0)


def quad(fn: Callable[[float], float], lower: float, upper: float, what: str) -> float:
    """Integrate fn over [lower, upper] to relative accuracy QUAD_EPSREL.

    Raises:
        QuadratureError: If the reported error exceeds QUAD_MAX_ERROR relative
            to the value, or the value is not finite.
    """
    result = integrate.quad(
        fn,
        lower,
        upper,
        epsabs=0.0,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])
    if not np.isfinite(value) or abserr > QUAD_MAX_ERROR * max(abs(value), np.finfo(float).tiny):
        raise QuadratureError(f"Quadrature for {what} did not converge: value={value}, error={abserr}")
    logger.debug("Quadrature for %s: %.12g (error %.2e)", what, value, abserr)
    return value
