"""Pydantic documents and flat encodings used for files and configuration."""

from noncompact_kernels.schemas.config import RunConfig
from noncompact_kernels.schemas.documents import (
    BASIS_DOCUMENT_VERSION,
    BasisDocument,
    DatasetDocument,
    DatasetRecord,
    basis_from_json,
    basis_to_json,
    load_dataset,
    save_dataset,
)
from noncompact_kernels.schemas.points import (
    HyperbolicPointDocument,
    PointDocument,
    SpdPointDocument,
    decode_point,
    point_columns,
    point_from_document,
    point_from_json,
    point_from_row,
    point_to_document,
    point_to_json,
    point_to_row,
)

__all__ = [
    # Configuration
    "RunConfig",
    # Documents
    "BASIS_DOCUMENT_VERSION",
    "BasisDocument",
    "basis_to_json",
    "basis_from_json",
    "DatasetRecord",
    "DatasetDocument",
    "load_dataset",
    "save_dataset",
    # Point encodings
    "point_columns",
    "point_to_row",
    "point_from_row",
    "HyperbolicPointDocument",
    "SpdPointDocument",
    "PointDocument",
    "point_to_document",
    "point_from_document",
    "point_to_json",
    "point_from_json",
    "decode_point",
]
