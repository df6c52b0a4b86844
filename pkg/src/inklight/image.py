"""Planar image buffers and their color-encoding tags.

Every raster passed between processing stages is a PlanarImage: an H x W x 3
float64 array plus a tag naming the encoding of its values. Operations check
the tag and refuse mismatched inputs instead of silently reinterpreting
numbers, which is the classic failure mode of color pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class EncodingMismatchError(ValueError):
    """An operation received an image whose encoding tag it cannot accept."""


class DegenerateInputWarning(UserWarning):
    """Input is degenerate (constant plane, zero chroma, ...); the operation
    falls back to a documented no-op or constant output instead of failing."""


class ColorEncoding(Enum):
    """Supported encodings of a 3-plane buffer. The whitepoint is fixed D65."""

    SRGB = "srgb-encoded"
    LINEAR_RGB = "linear-rgb"
    ADOBE_RGB = "adobe-rgb-encoded"
    CIELAB = "cielab"
    HSV = "hsv"


@dataclass(frozen=True)
class PlanarImage:
    """An H x W x 3 float64 raster with a declared color encoding.

    The pixel buffer is frozen (read-only) on construction so that all
    operations stay pure: they allocate a new buffer rather than mutating
    their input.
    """

    data: np.ndarray
    encoding: ColorEncoding

    def __post_init__(self) -> None:
        arr = self.data
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected an HxWx3 array, got shape {arr.shape}")
        if arr.dtype != np.float64:
            arr = arr.astype(np.float64)
        if arr.flags.writeable:
            # Freeze in place when we own the buffer; otherwise copy first.
            if not arr.flags.owndata:
                arr = arr.copy()
            arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_array(cls, arr: np.ndarray, encoding: ColorEncoding) -> "PlanarImage":
        """Wrap a copy of ``arr`` so later writes to it cannot leak in."""
        return cls(np.array(arr, dtype=np.float64), encoding)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def require(self, *encodings: ColorEncoding) -> None:
        """Raise EncodingMismatchError unless tagged with one of ``encodings``."""
        if self.encoding not in encodings:
            wanted = " or ".join(e.value for e in encodings)
            raise EncodingMismatchError(
                f"operation requires a {wanted} image, got {self.encoding.value}"
            )

    def with_data(self, data: np.ndarray, encoding: ColorEncoding | None = None) -> "PlanarImage":
        """New image sharing this one's tag (or a new tag) over fresh data."""
        return PlanarImage(data, encoding or self.encoding)

    def planes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """The three channel planes as read-only H x W views."""
        return self.data[..., 0], self.data[..., 1], self.data[..., 2]
