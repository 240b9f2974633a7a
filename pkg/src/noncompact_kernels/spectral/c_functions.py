"""Harish-Chandra c-functions |c(lambda)|^{-2}, unnormalized.

Both functions broadcast over leading axes of lambda.
"""

from fractions import Fraction

import numpy as np

from noncompact_kernels.errors import DimensionMismatchError, UnsupportedError


def c_inv_sq_hyp(lam: np.ndarray | float, n: int) -> np.ndarray:
    """|c(lambda)|^{-2} for H_n.

    n = 2m:   |l| tanh(pi |l|) prod_{j=2}^{m} (|l|^2 + (2j-3)^2/4)
    n = 2m+1: prod_{j=0}^{m-1} (|l|^2 + j^2)
    """
    if n < 2:
        raise UnsupportedError(f"H_n needs n >= 2, got {n}")
    lam = np.abs(np.asarray(lam, dtype=float))
    sq = lam**2
    if n % 2 == 0:
        value = lam * np.tanh(np.pi * lam)
        for j in range(2, n // 2 + 1):
            value = value * (sq + (2 * j - 3) ** 2 / 4)
        return value
    value = np.ones_like(lam)
    for j in range((n - 1) // 2):
        value = value * (sq + j**2)
    return value


def c_inv_sq_spd(lam: np.ndarray) -> np.ndarray:
    """|c(lambda)|^{-2} for SPD(d): prod_{i<j} pi|l_i - l_j| tanh(pi|l_i - l_j|).

    Args:
        lam: Array of shape (..., d) with d >= 2.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.ndim == 0 or lam.shape[-1] < 2:
        raise DimensionMismatchError(f"SPD spectral points need length d >= 2, got shape {lam.shape}")
    rows, cols = np.triu_indices(lam.shape[-1], k=1)
    gaps = np.pi * np.abs(lam[..., rows] - lam[..., cols])
    return np.prod(gaps * np.tanh(gaps), axis=-1)


def tanh_product(lam: np.ndarray) -> np.ndarray:
    """prod_{i<j} tanh(pi|l_i - l_j|), the SPD acceptance probability."""
    rows, cols = np.triu_indices(lam.shape[-1], k=1)
    return np.prod(np.tanh(np.pi * np.abs(lam[..., rows] - lam[..., cols])), axis=-1)


def hyp_polynomial_coeffs(n: int) -> list[Fraction]:
    """Exact coefficients of the polynomial part of |c(lambda)|^{-2} on H_n.

    Entry j is the coefficient of |lambda|^j. For even n the polynomial is
    |l| prod_{j=2}^{m} (|l|^2 + (2j-3)^2/4), whose tanh factor is handled by
    rejection; for odd n it is the full product.
    """
    if n < 2:
        raise UnsupportedError(f"H_n needs n >= 2, got {n}")
    if n % 2 == 0:
        coeffs = [Fraction(0), Fraction(1)]
        shifts = [Fraction((2 * j - 3) ** 2, 4) for j in range(2, n // 2 + 1)]
    else:
        coeffs = [Fraction(1)]
        shifts = [Fraction(j**2) for j in range((n - 1) // 2)]
    for shift in shifts:
        # multiply by (l^2 + shift)
        product = [Fraction(0)] * (len(coeffs) + 2)
        for power, coeff in enumerate(coeffs):
            product[power] += shift * coeff
            product[power + 2] += coeff
        coeffs = product
    return coeffs
