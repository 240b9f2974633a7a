"""Gaussian-process regression: posterior moments, pathwise-conditioned
posterior samples and the log marginal likelihood.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import linalg

from noncompact_kernels.errors import DimensionMismatchError, FactorizationError
from noncompact_kernels.features import FeatureBasis, complex_standard_normal, feature_matrix
from noncompact_kernels.gp.kernels import KernelSource, as_kernel
from noncompact_kernels.manifolds import ManifoldPoint, Space
from noncompact_kernels.utils import JITTER_LEVELS

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Observations y at points with per-observation noise variances."""

    points: list[ManifoldPoint]
    y: np.ndarray = field(repr=False)
    noise: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        y = np.asarray(self.y, dtype=float).reshape(-1)
        noise = np.asarray(self.noise, dtype=float).reshape(-1)
        if noise.size == 1 and y.size != 1:
            noise = np.full(y.size, float(noise[0]))
        if len(self.points) != y.size or noise.size != y.size:
            raise DimensionMismatchError(
                f"Dataset has {len(self.points)} points, {y.size} observations and {noise.size} noise values"
            )
        if np.any(noise <= 0.0) or not np.all(np.isfinite(noise)):
            raise DimensionMismatchError("Noise variances must be positive and finite")
        if not np.all(np.isfinite(y)):
            raise DimensionMismatchError("Observations must be finite")
        object.__setattr__(self, "points", list(self.points))
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "noise", noise)

    @classmethod
    def empty(cls) -> "Dataset":
        return cls(points=[], y=np.zeros(0), noise=np.zeros(0))

    @property
    def size(self) -> int:
        return len(self.points)

    def check(self, space: Space) -> None:
        for x in self.points:
            space.check(x)


class PosteriorMoments(NamedTuple):
    mean: np.ndarray
    cov: np.ndarray

    @property
    def std(self) -> np.ndarray:
        return np.sqrt(np.clip(np.diag(self.cov), 0.0, None))


class TrainingFactor(NamedTuple):
    """Cholesky factor of K_xx + Sigma_eps and the jitter it needed."""

    cho: tuple[np.ndarray, bool]
    jitter: float

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return linalg.cho_solve(self.cho, rhs)

    def log_det(self) -> float:
        return float(2.0 * np.sum(np.log(np.diag(self.cho[0]))))


def factorize(K: np.ndarray, noise: np.ndarray) -> TrainingFactor:
    """Cholesky of K + diag(noise), escalating diagonal jitter on failure.

    Jitter levels are relative to the mean diagonal: 0, then JITTER_LEVELS.

    Raises:
        FactorizationError: If every level fails.
    """
    system = K + np.diag(noise)
    scale = float(np.mean(np.diag(system))) if system.size else 1.0
    for level in (0.0, *JITTER_LEVELS):
        jitter = level * scale
        try:
            cho = linalg.cho_factor(system + jitter * np.eye(system.shape[0]), lower=True)
        except linalg.LinAlgError:
            logger.debug("Cholesky failed at jitter %.1e, escalating", jitter)
            continue
        if level > 0.0:
            logger.warning("Training system needed jitter %.1e", jitter)
        return TrainingFactor(cho=cho, jitter=jitter)
    raise FactorizationError(f"Cholesky failed at every jitter level up to {JITTER_LEVELS[-1]:.0e}")


def posterior_moments(
    kernel: FeatureBasis | KernelSource,
    data: Dataset,
    query: Sequence[ManifoldPoint],
) -> PosteriorMoments:
    """Posterior mean K_qx (K_xx + S)^{-1} y and covariance K_qq - K_qx (K_xx + S)^{-1} K_xq."""
    source = as_kernel(kernel)
    data.check(source.space)
    K_qq = source.matrix(query)
    if data.size == 0:
        return PosteriorMoments(mean=np.zeros(len(query)), cov=K_qq)
    factor = factorize(source.matrix(data.points), data.noise)
    K_xq = source.cross(data.points, query)
    mean = K_xq.T @ factor.solve(data.y)
    cov = K_qq - K_xq.T @ factor.solve(K_xq)
    return PosteriorMoments(mean=mean, cov=0.5 * (cov + cov.T))


def posterior_sample(
    basis: FeatureBasis,
    data: Dataset,
    query: Sequence[ManifoldPoint],
    rng: np.random.Generator,
    n_samples: int | None = None,
) -> np.ndarray:
    """Posterior paths by pathwise conditioning.

    Draws fresh prior weights and noise, then returns
    f(q) + K_qx (K_xx + S)^{-1} (y - f(x) - eps), with every covariance
    taken from the basis. The training system is factorized once for all
    samples; the per-query cost is linear in L.

    Returns:
        Shape (len(query),) for n_samples=None, else (len(query), n_samples).
    """
    data.check(basis.space)
    count = 1 if n_samples is None else n_samples
    weights = complex_standard_normal(basis.L * count, rng).reshape(basis.L, count)
    phi_q = feature_matrix(basis, query)
    paths = np.real(phi_q @ weights)
    if data.size > 0:
        phi_x = feature_matrix(basis, data.points)
        K_xx = np.real(phi_x @ np.conj(phi_x).T)
        factor = factorize(0.5 * (K_xx + K_xx.T), data.noise)
        f_x = np.real(phi_x @ weights)
        eps = rng.standard_normal((data.size, count)) * np.sqrt(data.noise)[:, None]
        K_qx = np.real(phi_q @ np.conj(phi_x).T)
        paths = paths + K_qx @ factor.solve(data.y[:, None] - f_x - eps)
    return paths[:, 0] if n_samples is None else paths


def log_marginal_likelihood(kernel: FeatureBasis | KernelSource, data: Dataset) -> float:
    """-1/2 y^T (K + S)^{-1} y - 1/2 log det(K + S) - N/2 log 2 pi."""
    if data.size == 0:
        raise DimensionMismatchError("log_marginal_likelihood needs a nonempty dataset")
    source = as_kernel(kernel)
    data.check(source.space)
    factor = factorize(source.matrix(data.points), data.noise)
    alpha = factor.solve(data.y)
    return float(-0.5 * data.y @ alpha - 0.5 * factor.log_det() - 0.5 * data.size * np.log(2 * np.pi))
