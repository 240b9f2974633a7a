"""Encodings of manifold points.

Flat rows serve CSV files: H_n points are written as their n+1 hyperboloid
coordinates v0..vn, SPD(d) points as the upper triangle s_ij (i <= j).
JSON documents carry the space explicitly:
{"space": "hyperbolic", "n": 3, "v": [...]} or {"space": "spd", "d": 2, "S": [[...], [...]]}.
"""

from collections.abc import Sequence
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, model_validator

from noncompact_kernels.errors import DimensionMismatchError, SpaceMismatchError
from noncompact_kernels.manifolds import HyperbolicPoint, ManifoldPoint, Space, SpdPoint


def point_columns(space: Space) -> list[str]:
    """Column names of the flat encoding."""
    if space.is_hyperbolic:
        return [f"v{i}" for i in range(space.degree + 1)]
    d = space.degree
    return [f"s{i}{j}" if d < 10 else f"s{i}_{j}" for i in range(d) for j in range(i, d)]


def point_to_row(x: ManifoldPoint) -> list[float]:
    if isinstance(x, HyperbolicPoint):
        return [float(value) for value in x.v]
    rows, cols = np.triu_indices(x.d)
    return [float(value) for value in x.S[rows, cols]]


def point_from_row(space: Space, values: Sequence[float]) -> ManifoldPoint:
    """Decode a flat row; raises if its length does not match the space."""
    values = np.asarray(values, dtype=float)
    expected = len(point_columns(space))
    if values.size != expected:
        raise DimensionMismatchError(f"{space.name} points need {expected} coordinates, got {values.size}")
    if space.is_hyperbolic:
        return HyperbolicPoint(values)
    d = space.degree
    S = np.zeros((d, d))
    rows, cols = np.triu_indices(d)
    S[rows, cols] = values
    S[cols, rows] = values
    return SpdPoint(S)


# =============================================================================
# JSON DOCUMENTS
# =============================================================================


class HyperbolicPointDocument(BaseModel):
    """A point of H_n; v must lie on the forward sheet of the hyperboloid."""

    space: Literal["hyperbolic"] = "hyperbolic"
    n: int = Field(ge=2, description="Dimension of H_n")
    v: list[float] = Field(description="Hyperboloid coordinates, length n+1")

    @model_validator(mode="after")
    def _check_point(self) -> "HyperbolicPointDocument":
        if len(self.v) != self.n + 1:
            raise ValueError(f"H_{self.n} points need {self.n + 1} coordinates, got {len(self.v)}")
        HyperbolicPoint(np.array(self.v))
        return self

    @property
    def space_descriptor(self) -> Space:
        return Space.parse(f"h{self.n}")

    def to_point(self) -> HyperbolicPoint:
        return HyperbolicPoint(np.array(self.v))


class SpdPointDocument(BaseModel):
    """A point of SPD(d); S must be symmetric positive definite."""

    space: Literal["spd"] = "spd"
    d: int = Field(ge=2, description="Matrix size")
    S: list[list[float]]

    @model_validator(mode="after")
    def _check_point(self) -> "SpdPointDocument":
        if len(self.S) != self.d or any(len(row) != self.d for row in self.S):
            raise ValueError(f"SPD({self.d}) points need a {self.d}x{self.d} matrix")
        SpdPoint(np.array(self.S))
        return self

    @property
    def space_descriptor(self) -> Space:
        return Space.parse(f"spd{self.d}")

    def to_point(self) -> SpdPoint:
        return SpdPoint(np.array(self.S))


PointDocument = Annotated[HyperbolicPointDocument | SpdPointDocument, Field(discriminator="space")]
_point_adapter: TypeAdapter[HyperbolicPointDocument | SpdPointDocument] = TypeAdapter(PointDocument)


def point_to_document(x: ManifoldPoint) -> HyperbolicPointDocument | SpdPointDocument:
    if isinstance(x, HyperbolicPoint):
        return HyperbolicPointDocument(n=x.n, v=x.v.tolist())
    return SpdPointDocument(d=x.d, S=x.S.tolist())


def point_from_document(
    document: HyperbolicPointDocument | SpdPointDocument,
    space: Space | None = None,
) -> ManifoldPoint:
    """Decode a point document, optionally checking it belongs to ``space``."""
    if space is not None and document.space_descriptor != space:
        raise SpaceMismatchError(f"Point lives in {document.space_descriptor.name}, expected {space.name}")
    return document.to_point()


def point_to_json(x: ManifoldPoint) -> str:
    return point_to_document(x).model_dump_json()


def point_from_json(text: str) -> ManifoldPoint:
    return point_from_document(_point_adapter.validate_json(text))


def decode_point(space: Space, value: Sequence[float] | HyperbolicPointDocument | SpdPointDocument) -> ManifoldPoint:
    """Decode either encoding: a flat row or a point document."""
    if isinstance(value, HyperbolicPointDocument | SpdPointDocument):
        return point_from_document(value, space)
    return point_from_row(space, value)
