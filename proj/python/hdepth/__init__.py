"""Exact halfspace (Tukey) depth."""

from ._hdepth import (
    DepthError,
    DepthResult,
    generate,
    halfspace_depth,
    nhd1,
    nhd2,
    oracle_depth,
)

__all__ = [
    "DepthError",
    "DepthResult",
    "generate",
    "halfspace_depth",
    "nhd1",
    "nhd2",
    "oracle_depth",
]
