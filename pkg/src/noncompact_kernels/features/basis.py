"""Random spherical-Fourier feature bases."""

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from noncompact_kernels.errors import DimensionMismatchError, SpaceMismatchError, UnsupportedError
from noncompact_kernels.manifolds import RhoData, Space, isotropy_sampler
from noncompact_kernels.spectral import KernelSpec, c_inv_sq, sample_base_density, spectral_sample
from noncompact_kernels.utils import GROUP_TOL

logger = logging.getLogger(__name__)

BasisMethod = Literal["rejection", "importance"]


def complex_standard_normal(size: int, rng: np.random.Generator) -> np.ndarray:
    """a + i b with a, b independent N(0, 1).

    With unit variance in both parts, Re(sum_l w_l phi_l) has covariance
    Re(Phi Phi^*) for any complex features phi.
    """
    parts = rng.standard_normal((2, size))
    return parts[0] + 1j * parts[1]


@dataclass(frozen=True, eq=False)
class FeatureBasis:
    """L triples (lambda_l, h_l, w_l) plus the metadata needed to evaluate features.

    ``lambdas`` has shape (L,) on H_n (signed) and (L, d) on SPD(d) (unsorted);
    ``haars`` has shape (L, k, k); ``weights`` are complex prior-path weights.
    ``importance_weights`` is set only for importance-sampled bases and holds
    |c(lambda_l)|^{-1} C''^{-1/2}.
    """

    space: Space
    spec: KernelSpec
    lambdas: np.ndarray = field(repr=False)
    haars: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    importance_weights: np.ndarray | None = field(default=None, repr=False)
    method: BasisMethod = "rejection"
    provenance: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        L = self.weights.shape[0] if self.weights.ndim == 1 else -1
        if L < 1:
            raise DimensionMismatchError("A basis needs at least one feature")
        expected_lambdas = (L,) if self.space.rank == 1 else (L, self.space.rank)
        if self.lambdas.shape != expected_lambdas:
            raise DimensionMismatchError(f"lambdas must have shape {expected_lambdas}, got {self.lambdas.shape}")
        k = self.space.isotropy_size
        if self.haars.shape != (L, k, k):
            raise DimensionMismatchError(f"haars must have shape {(L, k, k)}, got {self.haars.shape}")
        gram = np.swapaxes(self.haars, -1, -2) @ self.haars
        if np.max(np.abs(gram - np.eye(k))) > GROUP_TOL:
            raise SpaceMismatchError("Isotropy elements are not orthogonal")
        if not np.all(np.isfinite(self.lambdas)):
            raise DimensionMismatchError("Spectral points must be finite")
        if self.importance_weights is not None:
            iw = self.importance_weights
            if iw.shape != (L,) or not np.all(np.isfinite(iw)) or np.any(iw <= 0.0):
                raise DimensionMismatchError("Importance weights must be L positive finite values")
        for array in (self.lambdas, self.haars, self.weights, self.importance_weights):
            if array is not None:
                array.setflags(write=False)

    @property
    def L(self) -> int:
        return int(self.weights.shape[0])

    @property
    def rho(self) -> RhoData:
        return self.space.rho

    @property
    def sigma2(self) -> float:
        return self.spec.sigma2

    @property
    def lambda_matrix(self) -> np.ndarray:
        """Spectral points as an (L, rank) array."""
        return self.lambdas.reshape(self.L, self.space.rank)

    @property
    def feature_scales(self) -> np.ndarray:
        """sqrt(sigma2 / L) times the importance weight (1 for rejection bases)."""
        scale = np.full(self.L, np.sqrt(self.sigma2 / self.L))
        if self.importance_weights is not None:
            scale = scale * self.importance_weights
        return scale

    def with_fresh_weights(self, rng: np.random.Generator) -> "FeatureBasis":
        """Same features, new prior-path weights."""
        return dataclasses.replace(self, weights=complex_standard_normal(self.L, rng))


def build_basis(
    spec: KernelSpec,
    space: Space,
    L: int,
    method: BasisMethod,
    rng: np.random.Generator,
    provenance: dict | None = None,
) -> FeatureBasis:
    """Draw a feature basis.

    Args:
        spec: Kernel hyperparameters.
        space: H_n or SPD(d).
        L: Number of features.
        method: "rejection" draws lambda_l from the exact spectral sampler;
            "importance" draws from the base density and stores weights
            proportional to |c(lambda_l)|^{-1}, with C'' estimated as the
            mean of |c(lambda_l)|^{-2} over the basis itself.
        rng: Random generator.
        provenance: Optional seed description stored with the basis.

    Returns:
        FeatureBasis with Haar isotropy elements and complex Gaussian weights.
    """
    if L < 1:
        raise DimensionMismatchError(f"L must be >= 1, got {L}")
    importance_weights = None
    if method == "rejection":
        result = spectral_sample(spec, space, L, rng)
        lambdas = np.asarray(result.samples, dtype=float)
        logger.debug("Rejection basis for %s: %d accepted of %d proposed", space.name, result.accepted, result.proposed)
    elif method == "importance":
        lambdas = sample_base_density(spec, space, L, rng)
        c_values = c_inv_sq(space, lambdas)
        normalizer = float(np.mean(c_values))
        if not normalizer > 0.0:
            raise UnsupportedError("Importance weights vanished for every draw")
        importance_weights = np.sqrt(c_values / normalizer)
    else:
        raise UnsupportedError(f"Unknown basis method: {method}")
    haars = isotropy_sampler(space, L, rng)
    weights = complex_standard_normal(L, rng)
    return FeatureBasis(
        space=space,
        spec=spec,
        lambdas=lambdas,
        haars=haars,
        weights=weights,
        importance_weights=importance_weights,
        method=method,
        provenance=dict(provenance or {}),
    )
