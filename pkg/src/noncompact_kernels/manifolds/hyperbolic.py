"""Hyperbolic space H_n in the hyperboloid and Poincaré ball models.

Points live on the forward sheet {<v,v>_M = -1, v_0 > 0} of the Minkowski
form with Gram matrix B = diag(-1, 1, ..., 1); the base point is (1, 0, ..., 0).
"""

from dataclasses import dataclass, field

import numpy as np

from noncompact_kernels.errors import DimensionMismatchError, InvalidPointError
from noncompact_kernels.utils import ARCCOSH_CLAMP_TOL, MINKOWSKI_TOL


@dataclass(frozen=True, eq=False)
class HyperbolicPoint:
    """A point of H_n in hyperboloid coordinates (length n+1)."""

    v: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        v = np.array(self.v, dtype=float)
        if v.ndim != 1 or v.size < 3:
            raise InvalidPointError(f"Hyperboloid coordinates must be a vector of length n+1 >= 3, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidPointError("Hyperboloid coordinates must be finite")
        if v[0] < 1.0 - MINKOWSKI_TOL:
            raise InvalidPointError(f"Point is not on the forward sheet: v_0 = {v[0]}")
        norm = minkowski_form(v, v)
        if abs(norm + 1.0) > MINKOWSKI_TOL * max(1.0, v[0] ** 2):
            raise InvalidPointError(f"Minkowski norm is {norm}, expected -1")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        """Dimension of the hyperbolic space."""
        return self.v.size - 1

    def __repr__(self) -> str:
        return f"HyperbolicPoint(n={self.n}, v={np.array2string(self.v, precision=6)})"


def minkowski_form(u: np.ndarray, v: np.ndarray) -> float:
    """Evaluate -u_0 v_0 + sum_{i>=1} u_i v_i.

    Args:
        u: First vector, length n+1.
        v: Second vector, length n+1.

    Returns:
        The Minkowski bilinear form of u and v.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionMismatchError(f"Minkowski form needs two vectors of equal length, got {u.shape} and {v.shape}")
    return float(-u[0] * v[0] + u[1:] @ v[1:])


def minkowski_gram(n: int) -> np.ndarray:
    """Gram matrix B = diag(-1, 1, ..., 1) of size n+1."""
    gram = np.eye(n + 1)
    gram[0, 0] = -1.0
    return gram


def hyperbolic_base_point(n: int) -> HyperbolicPoint:
    """The base point (1, 0, ..., 0) of H_n."""
    v = np.zeros(n + 1)
    v[0] = 1.0
    return HyperbolicPoint(v)


def dist_hyperbolic(x: HyperbolicPoint, x_prime: HyperbolicPoint) -> float:
    """Geodesic distance arccosh(-<x, x'>_M).

    Arguments of arccosh that fall below 1 by at most ARCCOSH_CLAMP_TOL are
    clamped; anything further below is rejected.
    """
    if x.n != x_prime.n:
        raise DimensionMismatchError(f"Points live in H_{x.n} and H_{x_prime.n}")
    arg = -minkowski_form(x.v, x_prime.v)
    if arg < 1.0:
        if 1.0 - arg > ARCCOSH_CLAMP_TOL:
            raise InvalidPointError(f"arccosh argument {arg} is below 1 beyond tolerance")
        arg = 1.0
    return float(np.arccosh(arg))


def boost(n: int, t: float) -> np.ndarray:
    """The boost A_t acting on the (v_0, v_1) plane, moving the base point by t."""
    matrix = np.eye(n + 1)
    matrix[0, 0] = matrix[1, 1] = np.cosh(t)
    matrix[0, 1] = matrix[1, 0] = np.sinh(t)
    return matrix


def ball_to_hyperboloid(b: np.ndarray) -> HyperbolicPoint:
    """Map a Poincaré ball point to the hyperboloid.

    Args:
        b: Point of the open unit ball in R^n.

    Returns:
        The image ((1+|b|^2)/(1-|b|^2), 2b/(1-|b|^2)).
    """
    b = np.asarray(b, dtype=float)
    norm_sq = float(b @ b)
    if norm_sq >= 1.0:
        raise InvalidPointError(f"Ball point has norm {np.sqrt(norm_sq)} >= 1")
    denom = 1.0 - norm_sq
    v = np.concatenate([[(1.0 + norm_sq) / denom], 2.0 * b / denom])
    return HyperbolicPoint(v)


def hyperboloid_to_ball(x: HyperbolicPoint) -> np.ndarray:
    """Inverse of ball_to_hyperboloid: b = v_{1:} / (1 + v_0)."""
    return x.v[1:] / (1.0 + x.v[0])


def ball_distance_from_origin(b: np.ndarray) -> float:
    """Radial geodesic distance 2 artanh(|b|) of a ball point to the origin."""
    radius = float(np.linalg.norm(b))
    if radius >= 1.0:
        raise InvalidPointError(f"Ball point has norm {radius} >= 1")
    return float(2.0 * np.arctanh(radius))
