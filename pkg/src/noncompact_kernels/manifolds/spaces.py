"""Space descriptors tying together points, groups and root data."""

import re
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from noncompact_kernels.errors import SpaceMismatchError, UnsupportedError
from noncompact_kernels.manifolds.hyperbolic import (
    HyperbolicPoint,
    boost,
    hyperbolic_base_point,
)
from noncompact_kernels.manifolds.spd import SpdPoint, spd_base_point, spd_from_log

ManifoldPoint = Union[HyperbolicPoint, SpdPoint]

SpaceKind = Literal["hyperbolic", "spd"]

_SPACE_NAME = re.compile(r"^(h|spd)(\d+)$")


@dataclass(frozen=True, eq=False)
class RhoData:
    """Half-sum of positive roots, as a vector of length rank."""

    rho: np.ndarray = field(repr=False)
    rho_norm_sq: float

    def __repr__(self) -> str:
        return f"RhoData(rho={self.rho.tolist()}, rho_norm_sq={self.rho_norm_sq})"


def hyperbolic_rho(n: int) -> RhoData:
    """rho = (n-1)/2 for H_n."""
    value = (n - 1) / 2
    return RhoData(rho=np.array([value]), rho_norm_sq=value**2)


def spd_rho(d: int) -> RhoData:
    """rho_j = j - (d+1)/2 for SPD(d), with ||rho||^2 = (d^3 - d)/12."""
    rho = np.arange(1, d + 1) - (d + 1) / 2
    return RhoData(rho=rho, rho_norm_sq=(d**3 - d) / 12)


@dataclass(frozen=True)
class Space:
    """H_n (kind="hyperbolic", degree=n) or SPD(d) (kind="spd", degree=d)."""

    kind: SpaceKind
    degree: int

    def __post_init__(self) -> None:
        if self.kind not in ("hyperbolic", "spd"):
            raise UnsupportedError(f"Unknown space kind: {self.kind}")
        if self.degree < 2:
            raise UnsupportedError(f"{self.kind} spaces need degree >= 2, got {self.degree}")

    @classmethod
    def parse(cls, name: str) -> "Space":
        """Parse names such as 'h2', 'h8' or 'spd3'."""
        match = _SPACE_NAME.match(name.strip().lower())
        if match is None:
            raise UnsupportedError(f"Unsupported space: {name}. Expected h<N> or spd<D>")
        prefix, degree = match.groups()
        return cls(kind="hyperbolic" if prefix == "h" else "spd", degree=int(degree))

    @property
    def name(self) -> str:
        prefix = "h" if self.kind == "hyperbolic" else "spd"
        return f"{prefix}{self.degree}"

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == "hyperbolic"

    @property
    def manifold_dim(self) -> int:
        """n for H_n, d(d+1)/2 for SPD(d)."""
        if self.is_hyperbolic:
            return self.degree
        return self.degree * (self.degree + 1) // 2

    @property
    def rank(self) -> int:
        """Dimension of the spectral parameter lambda."""
        return 1 if self.is_hyperbolic else self.degree

    @property
    def isotropy_size(self) -> int:
        """Size of the orthogonal matrices h in the isotropy group."""
        return self.degree

    @property
    def rho(self) -> RhoData:
        return hyperbolic_rho(self.degree) if self.is_hyperbolic else spd_rho(self.degree)

    def base_point(self) -> ManifoldPoint:
        if self.is_hyperbolic:
            return hyperbolic_base_point(self.degree)
        return spd_base_point(self.degree)

    def contains(self, point: ManifoldPoint) -> bool:
        if self.is_hyperbolic:
            return isinstance(point, HyperbolicPoint) and point.n == self.degree
        return isinstance(point, SpdPoint) and point.d == self.degree

    def check(self, point: ManifoldPoint) -> None:
        """Raise SpaceMismatchError unless the point belongs to this space."""
        if not self.contains(point):
            raise SpaceMismatchError(f"{point!r} is not a point of {self.name}")


def space_of(point: ManifoldPoint) -> Space:
    """The space a point belongs to."""
    if isinstance(point, HyperbolicPoint):
        return Space("hyperbolic", point.n)
    return Space("spd", point.d)


def radial_point(space: Space, r: float) -> ManifoldPoint:
    """Point at geodesic distance r from the base point along a fixed direction.

    For H_n this is A_r applied to the base point; for SPD(d) it is
    exp(r * diag(1, -1, 0, ..., 0) / sqrt(2)).
    """
    if space.is_hyperbolic:
        return HyperbolicPoint(boost(space.degree, r)[:, 0])
    direction = np.zeros(space.degree)
    direction[0], direction[1] = 1.0, -1.0
    return spd_from_log(np.diag(r * direction / np.sqrt(2.0)))


def random_points(
    space: Space,
    count: int,
    rng: np.random.Generator,
    radius: float = 2.0,
) -> list[ManifoldPoint]:
    """Random points within roughly the given geodesic radius of the base point.

    H_n: uniform direction, distance uniform on [0, radius]. SPD(d): matrix
    exponential of a Gaussian symmetric matrix scaled to Frobenius norm at
    most radius.
    """
    points: list[ManifoldPoint] = []
    for _ in range(count):
        if space.is_hyperbolic:
            direction = rng.standard_normal(space.degree)
            direction /= np.linalg.norm(direction)
            r = rng.uniform(0.0, radius)
            points.append(HyperbolicPoint(np.concatenate([[np.cosh(r)], np.sinh(r) * direction])))
        else:
            X = rng.standard_normal((space.degree, space.degree))
            W = 0.5 * (X + X.T)
            W *= rng.uniform(0.0, radius) / np.linalg.norm(W)
            points.append(spd_from_log(W))
    return points
