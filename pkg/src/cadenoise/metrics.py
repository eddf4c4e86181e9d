"""Full-reference quality metrics: PSNR and SSIM."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .grid import GrayImage, as_gray

PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03

INFINITE = math.inf


@dataclass(frozen=True)
class QualityReport:
    psnr_db: float
    ssim: float

    def __str__(self):
        return f"psnr_db={format_db(self.psnr_db)} ssim={self.ssim!r}"


def format_db(value: float) -> str:
    return "inf" if math.isinf(value) else repr(float(value))


def _pair(reference, restored) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_gray(reference), as_gray(restored)
    if a.shape != b.shape:
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    return a.array.astype(np.float64), b.array.astype(np.float64)


def mse(reference: GrayImage, restored: GrayImage) -> float:
    a, b = _pair(reference, restored)
    return float(np.mean((a - b) ** 2))


def psnr(reference: GrayImage, restored: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` for identical images."""
    err = mse(reference, restored)
    if err == 0.0:
        return INFINITE
    return 10.0 * math.log10(PEAK**2 / err)


def gaussian_window(size: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    """Normalized 1D Gaussian taps; the 2D window is its outer product."""
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2
    g = np.exp(-(x**2) / (2 * sigma**2))
    return g / g.sum()


def _ssim_from_moments(mu_a, mu_b, var_a, var_b, cov):
    c1 = (SSIM_K1 * PEAK) ** 2
    c2 = (SSIM_K2 * PEAK) ** 2
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2)
    return num / den


def ssim_map(reference: GrayImage, restored: GrayImage) -> np.ndarray:
    """Local SSIM at every center whose 11x11 window lies inside the image."""
    a, b = _pair(reference, restored)
    h, w = a.shape
    if h < SSIM_WINDOW or w < SSIM_WINDOW:
        raise ValueError(f"ssim_map needs at least {SSIM_WINDOW}x{SSIM_WINDOW} pixels")
    g = gaussian_window()
    half = SSIM_WINDOW // 2

    def wmean(x):
        y = ndimage.correlate1d(x, g, axis=0, mode="constant")
        y = ndimage.correlate1d(y, g, axis=1, mode="constant")
        return y[half : h - half, half : w - half]

    mu_a, mu_b = wmean(a), wmean(b)
    var_a = wmean(a * a) - mu_a**2
    var_b = wmean(b * b) - mu_b**2
    cov = wmean(a * b) - mu_a * mu_b
    return _ssim_from_moments(mu_a, mu_b, var_a, var_b, cov)


def ssim(reference: GrayImage, restored: GrayImage) -> float:
    """Mean structural similarity (Gaussian 11x11 window, sigma 1.5).

    Only windows fully inside the image are used. Images smaller than the
    window in either direction fall back to a single window covering the
    whole image with uniform weights.
    """
    a, b = _pair(reference, restored)
    if np.array_equal(a, b):
        return 1.0
    if min(a.shape) < SSIM_WINDOW:
        mu_a, mu_b = a.mean(), b.mean()
        var_a, var_b = a.var(), b.var()
        cov = np.mean((a - mu_a) * (b - mu_b))
        return float(_ssim_from_moments(mu_a, mu_b, var_a, var_b, cov))
    return float(np.mean(ssim_map(reference, restored)))


def quality(reference: GrayImage, restored: GrayImage) -> QualityReport:
    return QualityReport(psnr(reference, restored), ssim(reference, restored))
