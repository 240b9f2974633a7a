"""Reference heat kernels on H_n as functions of geodesic distance.

All values are normalized to 1 at distance 0.
"""

from collections import defaultdict

import numpy as np

from noncompact_kernels.errors import UnsupportedError
from noncompact_kernels.oracles.quadrature import log_sinh, quad

# Richardson weights extrapolating an even function to 0 from h, 2h, 3h
_RICHARDSON_WEIGHTS = (1.5, -0.6, 0.1)
_RICHARDSON_STEP = 0.05

# Quadrature ranges stop where the integrand is below e^{-37} (about 1e-16) of its peak
_LOG_CUTOFF = 37.0


def heat_h3(rho: float, kappa: float) -> float:
    """(rho / sinh rho) exp(-rho^2 / 2 kappa^2), equal to 1 at rho = 0."""
    if rho < 0.0:
        raise ValueError(f"Distance must be nonnegative, got {rho}")
    ratio = 1.0 if rho < 1e-8 else rho / np.sinh(rho)
    return float(ratio * np.exp(-(rho**2) / (2 * kappa**2)))


def _h2_log_integral(rho: float, kappa: float) -> float:
    """log of the integral of s exp(-s^2/2k^2) / sqrt(cosh s - cosh rho) over s > rho.

    With s = rho + u^2 the inverse square root singularity at s = rho goes
    away; cosh s - cosh rho is written as 2 sinh(rho + u^2/2) sinh(u^2/2).
    The integrand is divided by its scale at s = rho before integrating.
    """
    offset = -(rho**2) / (2 * kappa**2) - rho / 2

    def integrand(u: float) -> float:
        if u <= 0.0:
            if rho == 0.0:
                return 0.0
            return float(2.0 * rho * np.exp(-(rho**2) / (2 * kappa**2) - offset) / np.sqrt(np.sinh(rho)))
        s = rho + u * u
        log_value = (
            np.log(2.0 * u)
            + np.log(s)
            - s * s / (2 * kappa**2)
            - 0.5 * (np.log(2.0) + log_sinh(rho + u * u / 2) + log_sinh(u * u / 2))
        )
        return float(np.exp(log_value - offset))

    width = min(2 * _LOG_CUTOFF, kappa * np.sqrt(2 * _LOG_CUTOFF))
    return offset + np.log(quad(integrand, 0.0, np.sqrt(width), f"heat_h2(rho={rho}, kappa={kappa})"))


def heat_h2(rho: float, kappa: float) -> float:
    """Heat kernel of H_2 by quadrature, normalized at rho = 0."""
    if rho < 0.0:
        raise ValueError(f"Distance must be nonnegative, got {rho}")
    if rho == 0.0:
        return 1.0
    return float(np.exp(_h2_log_integral(rho, kappa) - _h2_log_integral(0.0, kappa)))


class MillsonSeries:
    """Heat kernel of H_n, n odd, as a finite sum of terms
    coef * r^a cosh(r)^b sinh(r)^{-c} exp(-r^2 / 2 kappa^2).

    Starts from the H_3 closed form and applies the lowering operator
    -(1/sinh r) d/dr once per dimension step of two.
    """

    def __init__(self, n: int, kappa: float):
        if n < 3 or n % 2 == 0:
            raise UnsupportedError(f"Millson chain covers odd n >= 3, got {n}")
        self.n = n
        self.kappa = kappa
        terms: dict[tuple[int, int, int], float] = {(1, 0, 1): 1.0}
        for _ in range((n - 3) // 2):
            terms = self.lower(terms, kappa)
        self.terms = terms

    @staticmethod
    def lower(terms: dict[tuple[int, int, int], float], kappa: float) -> dict[tuple[int, int, int], float]:
        """Apply -(1/sinh r) d/dr to a term dictionary."""
        derivative: dict[tuple[int, int, int], float] = defaultdict(float)
        for (a, b, c), coef in terms.items():
            if a:
                derivative[(a - 1, b, c)] += a * coef
            if b:
                derivative[(a, b - 1, c - 1)] += b * coef
            if c:
                derivative[(a, b + 1, c + 1)] -= c * coef
            derivative[(a + 1, b, c)] -= coef / kappa**2
        return {(a, b, c + 1): -coef for (a, b, c), coef in derivative.items() if coef != 0.0}

    def unnormalized(self, r: float) -> float:
        cosh, sinh = np.cosh(r), np.sinh(r)
        total = sum(coef * r**a * cosh**b / sinh**c for (a, b, c), coef in self.terms.items())
        return float(total * np.exp(-(r**2) / (2 * self.kappa**2)))

    def value_at_zero(self) -> float:
        h = _RICHARDSON_STEP
        return sum(w * self.unnormalized(k * h) for k, w in enumerate(_RICHARDSON_WEIGHTS, start=1))

    def __call__(self, rho: float) -> float:
        """Normalized kernel at distance rho.

        Below the extrapolation step the terms cancel badly, so the value is
        interpolated by a quadratic in rho^2 through 0, h and 2h.
        """
        if rho < 0.0:
            raise ValueError(f"Distance must be nonnegative, got {rho}")
        f0 = self.value_at_zero()
        h = _RICHARDSON_STEP
        if rho >= h:
            return self.unnormalized(rho) / f0
        f1, f2 = self.unnormalized(h) / f0, self.unnormalized(2 * h) / f0
        x = (rho / h) ** 2
        # quadratic through (0, 1), (1, f1), (4, f2)
        c1 = (16 * (f1 - 1) - (f2 - 1)) / 12
        c2 = ((f2 - 1) - 4 * (f1 - 1)) / 12
        return float(1.0 + c1 * x + c2 * x * x)


def heat_hn_millson(n: int, rho: float, kappa: float) -> float:
    """Heat kernel of H_n for odd n by Millson's recurrence, normalized at 0."""
    return MillsonSeries(n, kappa)(rho)
