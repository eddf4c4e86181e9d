"""Seeded salt-and-pepper corruption and noise-level estimation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import MAX_STATE, MIN_STATE, GrayImage, as_gray

# Recorded in benchmark metadata so corrupted images can be regenerated.
RNG_ALGORITHM = f"numpy.random.PCG64 (numpy {np.__version__})"

MAX_ITERATIONS = 11


@dataclass(frozen=True)
class NoiseSpec:
    """Salt-and-pepper corruption parameters.

    Each pixel is corrupted with probability ``density``; a corrupted pixel
    becomes 255 with probability ``salt_fraction`` and 0 otherwise.
    """

    density: float
    salt_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")
        if not 0.0 <= self.salt_fraction <= 1.0:
            raise ValueError(f"salt_fraction must be in [0, 1], got {self.salt_fraction}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


def corrupt_array(arr: np.ndarray, spec: NoiseSpec) -> np.ndarray:
    """Corrupt a uint8 array of any shape; returns a new array."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    # both draws always happen so the corruption mask for a given seed does
    # not depend on salt_fraction
    hit = rng.random(arr.shape) < spec.density
    salt = rng.random(arr.shape) < spec.salt_fraction
    out = np.array(arr, dtype=np.uint8, copy=True)
    out[hit & salt] = MAX_STATE
    out[hit & ~salt] = MIN_STATE
    return out


def add_salt_pepper(img: GrayImage, spec: NoiseSpec) -> GrayImage:
    """Return a copy of ``img`` with independent per-pixel impulse noise."""
    img = as_gray(img)
    return GrayImage(corrupt_array(img.array, spec))


def count_extremes(arr: np.ndarray) -> int:
    return int(np.count_nonzero((arr == MIN_STATE) | (arr == MAX_STATE)))


def estimate_noise_density(img: GrayImage) -> float:
    """Fraction of pixels sitting at 0 or 255.

    A rough estimate: natural pure black or white pixels are counted as noise.
    """
    img = as_gray(img)
    return count_extremes(img.array) / img.array.size


def iterations_for(density: float) -> int:
    """Iteration budget for a noise level: ``floor(100 * density / 10) + 1``."""
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    # round first: computed densities such as 0.3 - 0.1 give
    # 1.9999999999999998 tenths and must still land on decile 2
    tenths = math.floor(round(density * 10, 9))
    return max(1, min(MAX_ITERATIONS, tenths + 1))
