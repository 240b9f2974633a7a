"""Experiment configuration, loaded from a single JSON file."""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from noncompact_kernels.manifolds import Space
from noncompact_kernels.schemas.points import HyperbolicPointDocument, SpdPointDocument
from noncompact_kernels.spectral import KernelSpec
from noncompact_kernels.utils import DEFAULT_NUM_FEATURES, DEFAULT_SEED


class RunConfig(BaseModel):
    """Settings shared by every CLI command; each command reads the fields it needs."""

    model_config = ConfigDict(extra="forbid")

    space: str = Field(default="h2", description="h<N> or spd<D>")
    kernel: KernelSpec = Field(default_factory=lambda: KernelSpec(kappa=1.0))
    method: Literal["rejection", "importance"] = "rejection"
    estimator: Literal["psd", "plain"] = "psd"
    num_features: int = Field(default=DEFAULT_NUM_FEATURES, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)

    # Evaluation points: explicit flat rows or point documents, otherwise a
    # radial grid from the base point, optionally plus random points
    points: list[list[float] | HyperbolicPointDocument | SpdPointDocument] | None = None
    distances: list[float] = Field(default_factory=lambda: [0.0, 0.5, 1.0, 2.0])
    num_random_points: int = Field(default=0, ge=0)
    random_radius: float = Field(default=2.0, gt=0.0)

    # kernel-eval / sample-prior replicates
    num_bases: int = Field(default=1, ge=1)
    num_paths: int = Field(default=1, ge=1)

    # gp-posterior
    dataset: str | None = None
    posterior_samples: int = Field(default=0, ge=0)

    # error-curve
    feature_counts: list[int] = Field(default_factory=lambda: [2**k for k in range(6, 14)])
    num_seeds: int = Field(default=20, ge=1)
    reference_distance: float = Field(default=1.0, ge=0.0)
    reference_features: int = Field(default=2**16, ge=1)

    # accept-rate / range-curve
    kappas: list[float] = Field(default_factory=lambda: [0.01, 0.1, 1.0, 10.0, 100.0])
    trials: int = Field(default=10**5, ge=1)
    limiting_features: int = Field(default=10**5, ge=1)

    # spectral-sample
    spectral_samples: int = Field(default=1000, ge=1)

    @field_validator("space")
    @classmethod
    def _check_space(cls, value: str) -> str:
        return Space.parse(value).name

    @field_validator("distances")
    @classmethod
    def _check_distances(cls, value: list[float]) -> list[float]:
        if any(d < 0.0 for d in value):
            raise ValueError("distances must be nonnegative")
        return value

    @field_validator("kappas")
    @classmethod
    def _check_kappas(cls, value: list[float]) -> list[float]:
        if any(k <= 0.0 for k in value):
            raise ValueError("kappas must be positive")
        return value

    @field_validator("feature_counts")
    @classmethod
    def _check_counts(cls, value: list[int]) -> list[int]:
        if not value or any(count < 1 for count in value):
            raise ValueError("feature_counts must be a nonempty list of positive integers")
        return value

    @property
    def space_descriptor(self) -> Space:
        return Space.parse(self.space)

    @classmethod
    def load(cls, path: Path | None) -> "RunConfig":
        """Load from a JSON file, or return the defaults when no path is given."""
        if path is None:
            return cls()
        return cls.model_validate_json(path.read_text())
