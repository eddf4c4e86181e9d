"""Salt-and-pepper noise removal with a 2D cellular automaton."""

__version__ = "0.1.0"

from .baseline import median_filter_3x3
from .ca import AUTO, DenoiseConfig, cnew, denoise, is_noisy, resolve_iterations, step, transition
from .grid import GrayImage, NeighborhoodSample, get_pixel, moore_sample
from .metrics import QualityReport, psnr, quality, ssim
from .noise import NoiseSpec, add_salt_pepper, estimate_noise_density, iterations_for

__all__ = [
    "AUTO",
    "DenoiseConfig",
    "GrayImage",
    "NeighborhoodSample",
    "NoiseSpec",
    "QualityReport",
    "add_salt_pepper",
    "cnew",
    "denoise",
    "estimate_noise_density",
    "get_pixel",
    "is_noisy",
    "iterations_for",
    "median_filter_3x3",
    "moore_sample",
    "psnr",
    "quality",
    "resolve_iterations",
    "ssim",
    "step",
    "transition",
]
