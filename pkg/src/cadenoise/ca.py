"""Cellular-automaton rule for salt-and-pepper removal.

A cell whose state is strictly between 0 and 255 is left alone. A cell at 0
or 255 is treated as corrupted and replaced by the rounded mean of those
Moore neighbors that are not themselves at 0 or 255; if every neighbor is
extreme the cell becomes 255. All cells update synchronously from the
previous generation, and the grid evolves for a number of generations that
grows with the noise level.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

from . import _kernels
from .grid import MAX_STATE, MIN_STATE, GrayImage, NeighborhoodSample, as_gray, get_pixel, moore_sample
from .noise import estimate_noise_density, iterations_for

AUTO = "auto"


@dataclass(frozen=True)
class DenoiseConfig:
    """Settings for :func:`denoise`.

    Args:
        iterations: number of synchronous steps, or ``"auto"`` to derive it
            from the noise level of the input.
        noise_level: optional density in [0, 1] used instead of the estimate
            when ``iterations`` is auto (useful for images with natural pure
            black or white regions).
        workers: number of row bands processed concurrently per step.
    """

    iterations: Union[int, Literal["auto"]] = AUTO
    noise_level: float | None = None
    workers: int = 1
    min_state: int = MIN_STATE
    max_state: int = MAX_STATE

    def __post_init__(self):
        if self.iterations != AUTO:
            if isinstance(self.iterations, bool) or not isinstance(self.iterations, int):
                raise TypeError(f"iterations must be an int or 'auto', got {self.iterations!r}")
            if self.iterations < 1:
                raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.noise_level is not None and not 0.0 <= self.noise_level <= 1.0:
            raise ValueError(f"noise_level must be in [0, 1], got {self.noise_level}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if (self.min_state, self.max_state) != (MIN_STATE, MAX_STATE):
            raise ValueError("8-bit images require min_state=0 and max_state=255")


def is_noisy(value: int) -> bool:
    return value == MIN_STATE or value == MAX_STATE


def _rounded_mean(values) -> int:
    total, count = sum(values), len(values)
    return (2 * total + count) // (2 * count)


def cnew(sample: NeighborhoodSample) -> int:
    """Replacement value for a corrupted cell given its sorted neighbors."""
    values = sample.values
    if all(is_noisy(v) for v in values):
        return MAX_STATE
    if sample.b_min == MIN_STATE or sample.b_max == MAX_STATE:
        return _rounded_mean([v for v in values if not is_noisy(v)])
    return _rounded_mean(values)


def transition(img: GrayImage, i: int, j: int, cfg: DenoiseConfig | None = None) -> int:
    """Next state of cell ``(i, j)``, evaluated one cell at a time."""
    cfg = cfg or DenoiseConfig()
    value = get_pixel(img, i, j)
    if cfg.min_state < value < cfg.max_state:
        return value
    return cnew(moore_sample(img, i, j))


def step(img: GrayImage, cfg: DenoiseConfig | None = None) -> GrayImage:
    """One synchronous generation; the input image is not modified."""
    cfg = cfg or DenoiseConfig()
    img = as_gray(img)
    return GrayImage(_kernels.run_banded(_kernels.ca_step_rows, img.array, cfg.workers))


def resolve_iterations(img: GrayImage, cfg: DenoiseConfig | None = None) -> int:
    """Number of steps :func:`denoise` will apply to ``img``."""
    cfg = cfg or DenoiseConfig()
    if cfg.iterations != AUTO:
        return cfg.iterations
    density = cfg.noise_level
    if density is None:
        density = estimate_noise_density(img)
    return iterations_for(density)


def denoise(img: GrayImage, cfg: DenoiseConfig | None = None) -> GrayImage:
    """Evolve the CA for the configured (or estimated) number of steps."""
    cfg = cfg or DenoiseConfig()
    img = as_gray(img)
    n = resolve_iterations(img, cfg)
    arr = img.array
    for _ in range(n):
        arr = _kernels.run_banded(_kernels.ca_step_rows, arr, cfg.workers)
    return GrayImage(arr)
