"""Grayscale lattice and Moore-neighborhood access.

Cells outside the image read as 0 (zero boundary). Since 0 is also the
pepper value, boundary cells are treated by the denoising rule exactly like
corrupted neighbors and never contribute to a repaired value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

MIN_STATE = 0
MAX_STATE = 255

# (row, column) offsets of the 8 Moore neighbors, center excluded
MOORE_OFFSETS = tuple(
    (di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1) if (di, dj) != (0, 0)
)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable 8-bit grayscale image stored row-major as ``(height, width)``.

    The wrapped array is a private read-only copy, so instances can be shared
    between threads without locking.
    """

    array: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.array)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2D array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image must be at least 1x1, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.dtype.kind not in "iu":
                raise TypeError(f"expected integer pixels, got dtype {arr.dtype}")
            if arr.min() < MIN_STATE or arr.max() > MAX_STATE:
                raise ValueError("pixel intensities must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, order="C", copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_pixels(cls, width: int, height: int, pixels: Sequence[int]) -> "GrayImage":
        """Build an image from a flat row-major pixel sequence."""
        flat = np.asarray(pixels)
        if flat.size != width * height:
            raise ValueError(
                f"{flat.size} pixels given for a {width}x{height} image"
            )
        return cls(flat.reshape(height, width))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GrayImage":
        return cls(np.asarray(rows))

    @property
    def height(self) -> int:
        return self.array.shape[0]

    @property
    def width(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    @property
    def pixels(self) -> np.ndarray:
        """Flat row-major view of the intensities."""
        return self.array.ravel()

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.array, other.array))

    def __hash__(self):
        return hash((self.shape, self.array.tobytes()))

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


@dataclass(frozen=True)
class NeighborhoodSample:
    """The 8 Moore neighbors of a cell in ascending order (center excluded)."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(sorted(int(v) for v in self.values))
        if len(vals) != 8:
            raise ValueError(f"a Moore sample holds 8 values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @property
    def b_min(self) -> int:
        return self.values[0]

    @property
    def b_max(self) -> int:
        return self.values[-1]


def as_gray(img) -> GrayImage:
    """Accept a GrayImage or anything convertible to a 2D uint8 array."""
    if isinstance(img, GrayImage):
        return img
    return GrayImage(np.asarray(img))


def get_pixel(img: GrayImage, i: int, j: int) -> int:
    """Intensity at row ``i``, column ``j``."""
    assert 0 <= i < img.height and 0 <= j < img.width, (
        f"pixel ({i}, {j}) outside {img.height}x{img.width} image"
    )
    return int(img.array[i, j])


def moore_sample(img: GrayImage, i: int, j: int) -> NeighborhoodSample:
    """Sorted range-1 Moore neighborhood of ``(i, j)`` under zero boundary."""
    assert 0 <= i < img.height and 0 <= j < img.width, (
        f"pixel ({i}, {j}) outside {img.height}x{img.width} image"
    )
    values = []
    for di, dj in MOORE_OFFSETS:
        ni, nj = i + di, j + dj
        if 0 <= ni < img.height and 0 <= nj < img.width:
            values.append(int(img.array[ni, nj]))
        else:
            values.append(MIN_STATE)
    return NeighborhoodSample(tuple(values))
