"""Reference heat kernel on SPD(2)."""

import numpy as np
from scipy import linalg

from noncompact_kernels.errors import DimensionMismatchError
from noncompact_kernels.manifolds import SpdPoint
from noncompact_kernels.oracles.quadrature import log_sinh, quad

_LOG_CUTOFF = 37.0


def spd2_spectral_coordinates(X: SpdPoint, Y: SpdPoint) -> np.ndarray:
    """H_1 >= H_2, the log singular values of S_X^{-1} S_Y for lower Cholesky factors.

    Their squares are the log eigenvalues of X^{-1} Y, so the pair is
    unchanged by (X, Y) -> (A X A^T, A Y A^T).
    """
    if X.d != 2 or Y.d != 2:
        raise DimensionMismatchError(f"The SPD(2) heat kernel needs 2x2 inputs, got d={X.d} and d={Y.d}")
    S_X = np.linalg.cholesky(X.S)
    S_Y = np.linalg.cholesky(Y.S)
    relative = linalg.solve_triangular(S_X, S_Y, lower=True)
    return np.log(linalg.svdvals(relative))


def _spd2_log_integral(alpha: float, kappa: float) -> float:
    """log of the integral over s > 0 of (2s + a) e^{-s(s+a)/k^2} / sqrt(sinh s sinh(s+a)), with s = u^2."""

    def integrand(u: float) -> float:
        if u <= 0.0:
            if alpha == 0.0:
                return 0.0
            return float(2.0 * alpha / np.sqrt(np.sinh(alpha)))
        s = u * u
        log_value = (
            np.log(2.0 * u)
            + np.log(2.0 * s + alpha)
            - s * (s + alpha) / kappa**2
            - 0.5 * (log_sinh(s) + log_sinh(s + alpha))
        )
        return float(np.exp(log_value))

    width = min(_LOG_CUTOFF, kappa * np.sqrt(_LOG_CUTOFF))
    return float(np.log(quad(integrand, 0.0, np.sqrt(width), f"heat_spd2(alpha={alpha}, kappa={kappa})")))


def heat_spd2(X: SpdPoint, Y: SpdPoint, kappa: float) -> float:
    """Heat kernel of SPD(2), normalized to 1 at X = Y.

    exp(-(H_1^2 + H_2^2) / 2 kappa^2) times the quadrature in alpha = H_1 - H_2.
    """
    H = spd2_spectral_coordinates(X, Y)
    alpha = float(max(H[0] - H[1], 0.0))
    log_value = -float(H @ H) / (2 * kappa**2) + _spd2_log_integral(alpha, kappa) - _spd2_log_integral(0.0, kappa)
    return float(np.exp(log_value))
