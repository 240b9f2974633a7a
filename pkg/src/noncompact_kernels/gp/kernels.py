"""Kernel sources for GP regression: a feature basis or a reference kernel."""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from noncompact_kernels.features import FeatureBasis, cross_kernel_matrix, kernel_matrix
from noncompact_kernels.manifolds import ManifoldPoint, Space
from noncompact_kernels.oracles import OracleFn


class KernelSource(Protocol):
    """Anything that produces covariance matrices between point lists."""

    @property
    def space(self) -> Space: ...

    def matrix(self, points: Sequence[ManifoldPoint]) -> np.ndarray: ...

    def cross(self, points: Sequence[ManifoldPoint], other_points: Sequence[ManifoldPoint]) -> np.ndarray: ...


@dataclass(frozen=True)
class FeatureKernel:
    """PSD Gram matrices Re(Phi Phi^*) from a feature basis."""

    basis: FeatureBasis

    @property
    def space(self) -> Space:
        return self.basis.space

    def matrix(self, points: Sequence[ManifoldPoint]) -> np.ndarray:
        if len(points) == 0:
            return np.zeros((0, 0))
        return kernel_matrix(self.basis, points)

    def cross(self, points: Sequence[ManifoldPoint], other_points: Sequence[ManifoldPoint]) -> np.ndarray:
        return cross_kernel_matrix(self.basis, points, other_points)


@dataclass(frozen=True)
class OracleKernel:
    """sigma2 times a normalized reference kernel, evaluated pairwise."""

    fn: OracleFn
    sigma2: float
    kernel_space: Space

    @property
    def space(self) -> Space:
        return self.kernel_space

    def cross(self, points: Sequence[ManifoldPoint], other_points: Sequence[ManifoldPoint]) -> np.ndarray:
        K = np.empty((len(points), len(other_points)))
        for i, x in enumerate(points):
            for j, x_prime in enumerate(other_points):
                K[i, j] = self.sigma2 * self.fn(x, x_prime)
        return K

    def matrix(self, points: Sequence[ManifoldPoint]) -> np.ndarray:
        # symmetric: evaluate the upper triangle only
        count = len(points)
        K = np.empty((count, count))
        for i in range(count):
            K[i, i] = self.sigma2 * self.fn(points[i], points[i])
            for j in range(i + 1, count):
                K[i, j] = K[j, i] = self.sigma2 * self.fn(points[i], points[j])
        return K


def as_kernel(source: FeatureBasis | KernelSource) -> KernelSource:
    """Wrap a bare FeatureBasis; pass kernel sources through."""
    if isinstance(source, FeatureBasis):
        return FeatureKernel(source)
    return source
