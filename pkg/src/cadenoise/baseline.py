"""Plain 3x3 median filter (SMF) used as a comparison baseline."""
from __future__ import annotations

from . import _kernels
from .grid import GrayImage, as_gray


def median_filter_3x3(img: GrayImage, workers: int = 1) -> GrayImage:
    """Single-pass 9-cell median, center included, zero outside the image.

    Every pixel is filtered, corrupted or not.
    """
    img = as_gray(img)
    return GrayImage(_kernels.run_banded(_kernels.median3_rows, img.array, workers))
