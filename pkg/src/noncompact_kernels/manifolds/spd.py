"""Symmetric positive-definite matrices with the affine-invariant metric."""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from noncompact_kernels.errors import DimensionMismatchError, InvalidPointError
from noncompact_kernels.utils import SYMMETRY_TOL


@dataclass(frozen=True, eq=False)
class SpdPoint:
    """A point of SPD(d), stored as its (exactly symmetrized) matrix."""

    S: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        S = np.array(self.S, dtype=float)
        if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] < 2:
            raise InvalidPointError(f"SPD point must be a square matrix of size >= 2, got shape {S.shape}")
        if not np.all(np.isfinite(S)):
            raise InvalidPointError("SPD point must be finite")
        scale = max(1.0, float(np.max(np.abs(S))))
        if np.max(np.abs(S - S.T)) > SYMMETRY_TOL * scale:
            raise InvalidPointError("SPD point is not symmetric")
        S = 0.5 * (S + S.T)
        if np.linalg.eigvalsh(S)[0] <= 0.0:
            raise InvalidPointError("SPD point is not positive definite")
        S.setflags(write=False)
        object.__setattr__(self, "S", S)

    @property
    def d(self) -> int:
        """Matrix size."""
        return self.S.shape[0]

    def __repr__(self) -> str:
        return f"SpdPoint(d={self.d}, S={np.array2string(self.S, precision=6)})"


def spd_base_point(d: int) -> SpdPoint:
    """The identity matrix, base point of SPD(d)."""
    return SpdPoint(np.eye(d))


def dist_spd(S1: SpdPoint, S2: SpdPoint) -> float:
    """Affine-invariant distance ||log(S1^{-1/2} S2 S1^{-1/2})||_F.

    The eigenvalues of S1^{-1/2} S2 S1^{-1/2} are those of the generalized
    symmetric problem S2 v = w S1 v.
    """
    if S1.d != S2.d:
        raise DimensionMismatchError(f"Points live in SPD({S1.d}) and SPD({S2.d})")
    eigenvalues = linalg.eigvalsh(S2.S, S1.S)
    return float(np.sqrt(np.sum(np.log(eigenvalues) ** 2)))


def spd_from_log(W: np.ndarray) -> SpdPoint:
    """Matrix exponential of a symmetric matrix, via its eigendecomposition."""
    W = 0.5 * (np.asarray(W, dtype=float) + np.asarray(W, dtype=float).T)
    eigenvalues, eigenvectors = np.linalg.eigh(W)
    return SpdPoint((eigenvectors * np.exp(eigenvalues)) @ eigenvectors.T)
