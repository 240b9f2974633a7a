"""Versioned JSON documents for feature bases and datasets."""

import csv
import json
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from noncompact_kernels.errors import DimensionMismatchError
from noncompact_kernels.features import FeatureBasis
from noncompact_kernels.gp import Dataset
from noncompact_kernels.manifolds import Space
from noncompact_kernels.schemas.points import (
    HyperbolicPointDocument,
    SpdPointDocument,
    decode_point,
    point_columns,
    point_to_document,
)
from noncompact_kernels.spectral import KernelSpec

BASIS_DOCUMENT_VERSION = 1


class BasisDocument(BaseModel):
    """Serialized FeatureBasis; complex weights are [re, im] pairs."""

    version: int = Field(default=BASIS_DOCUMENT_VERSION)
    space: str = Field(description="Space name such as 'h3' or 'spd2'")
    spec: KernelSpec
    method: Literal["rejection", "importance"]
    L: int = Field(ge=1)
    lambdas: list[list[float]] = Field(description="L rows of length rank")
    haars: list[list[float]] = Field(description="L row-major flattened isotropy matrices")
    weights: list[tuple[float, float]]
    importance_weights: list[float] | None = None
    provenance: dict = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_lengths(self) -> "BasisDocument":
        if self.version != BASIS_DOCUMENT_VERSION:
            raise ValueError(f"Unsupported basis document version {self.version}")
        lengths = {len(self.lambdas), len(self.haars), len(self.weights)}
        if self.importance_weights is not None:
            lengths.add(len(self.importance_weights))
        if lengths != {self.L}:
            raise ValueError(f"Basis document arrays must all have length L={self.L}")
        return self

    @classmethod
    def from_basis(cls, basis: FeatureBasis) -> "BasisDocument":
        iw = basis.importance_weights
        return cls(
            space=basis.space.name,
            spec=basis.spec,
            method=basis.method,
            L=basis.L,
            lambdas=basis.lambda_matrix.tolist(),
            haars=basis.haars.reshape(basis.L, -1).tolist(),
            weights=[(float(w.real), float(w.imag)) for w in basis.weights],
            importance_weights=None if iw is None else iw.tolist(),
            provenance=basis.provenance,
        )

    def to_basis(self) -> FeatureBasis:
        space = Space.parse(self.space)
        k = space.isotropy_size
        lambdas = np.array(self.lambdas, dtype=float)
        if lambdas.shape != (self.L, space.rank):
            raise DimensionMismatchError(f"lambdas have shape {lambdas.shape}, expected {(self.L, space.rank)}")
        weights = np.array(self.weights, dtype=float)
        return FeatureBasis(
            space=space,
            spec=self.spec,
            lambdas=lambdas[:, 0] if space.rank == 1 else lambdas,
            haars=np.array(self.haars, dtype=float).reshape(self.L, k, k),
            weights=weights[:, 0] + 1j * weights[:, 1],
            importance_weights=None if self.importance_weights is None else np.array(self.importance_weights),
            method=self.method,
            provenance=dict(self.provenance),
        )


def basis_to_json(basis: FeatureBasis) -> str:
    return BasisDocument.from_basis(basis).model_dump_json()


def basis_from_json(text: str) -> FeatureBasis:
    return BasisDocument.model_validate_json(text).to_basis()


class DatasetRecord(BaseModel):
    """One observation: point (flat coordinates or a point document), value and noise variance."""

    point: list[float] | HyperbolicPointDocument | SpdPointDocument
    y: float
    noise: float = Field(gt=0.0)


class DatasetDocument(BaseModel):
    """JSON form of a dataset: {"space": "h2", "observations": [...]}."""

    space: str
    observations: list[DatasetRecord] = Field(default_factory=list)

    def to_dataset(self) -> Dataset:
        space = Space.parse(self.space)
        return Dataset(
            points=[decode_point(space, record.point) for record in self.observations],
            y=np.array([record.y for record in self.observations]),
            noise=np.array([record.noise for record in self.observations]),
        )

    @classmethod
    def from_dataset(cls, space: Space, data: Dataset) -> "DatasetDocument":
        return cls(
            space=space.name,
            observations=[
                DatasetRecord(point=point_to_document(x), y=float(y), noise=float(noise))
                for x, y, noise in zip(data.points, data.y, data.noise, strict=True)
            ],
        )


def load_dataset(path: Path, space: Space, default_noise: float = 1e-2) -> Dataset:
    """Read a dataset from JSON (DatasetDocument) or CSV.

    CSV files have one row per observation with the point columns of the
    space, a ``y`` column and an optional ``noise`` column; lines starting
    with '#' are skipped.
    """
    if path.suffix.lower() == ".json":
        document = DatasetDocument.model_validate_json(path.read_text())
        if Space.parse(document.space) != space:
            raise DimensionMismatchError(f"Dataset lives in {document.space}, expected {space.name}")
        return document.to_dataset()

    columns = point_columns(space)
    with open(path, newline="") as f:
        reader = csv.DictReader(line for line in f if not line.startswith("#"))
        records = [
            DatasetRecord(
                point=[float(row[column]) for column in columns],
                y=float(row["y"]),
                noise=float(row.get("noise") or default_noise),
            )
            for row in reader
        ]
    return DatasetDocument(space=space.name, observations=records).to_dataset()


def save_dataset(path: Path, space: Space, data: Dataset) -> None:
    path.write_text(json.dumps(DatasetDocument.from_dataset(space, data).model_dump(mode="json"), indent=2))
