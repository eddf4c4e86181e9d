"""Definition-literal reference implementations used to check the fast paths.

Nothing here imports the package under test. Everything is plain Python
(or per-window numpy for SSIM) so it can be read against the rule directly.
"""
import math
from fractions import Fraction

import numpy as np


def neighbors(rows, i, j):
    """The 8 Moore neighbors of (i, j), 0 outside the grid, unsorted."""
    h, w = len(rows), len(rows[0])
    out = []
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            ni, nj = i + di, j + dj
            out.append(rows[ni][nj] if 0 <= ni < h and 0 <= nj < w else 0)
    return out


def round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def replacement(values):
    """Pseudocode cases for a corrupted center, with extremes always discarded."""
    b = sorted(values)
    b_min, b_max = b[0], b[-1]
    if all(v in (0, 255) for v in b):
        return 255
    if b_min > 0 and b_max < 255:
        return round_half_up(Fraction(sum(b), len(b)))
    kept = [v for v in b if v not in (0, 255)]
    return round_half_up(Fraction(sum(kept), len(kept)))


def step(rows):
    h, w = len(rows), len(rows[0])
    out = [[0] * w for _ in range(h)]
    for i in range(h):
        for j in range(w):
            c = rows[i][j]
            out[i][j] = c if 0 < c < 255 else replacement(neighbors(rows, i, j))
    return out


def median3(rows):
    h, w = len(rows), len(rows[0])
    out = [[0] * w for _ in range(h)]
    for i in range(h):
        for j in range(w):
            win = [rows[i][j]] + neighbors(rows, i, j)
            out[i][j] = sorted(win)[4]
    return out


def psnr(a, b):
    a = [int(v) for v in np.asarray(a).ravel()]
    b = [int(v) for v in np.asarray(b).ravel()]
    sq = math.fsum((x - y) ** 2 for x, y in zip(a, b))
    if sq == 0:
        return math.inf
    return 10 * math.log10(255**2 / (sq / len(a)))


def gaussian_2d(size=11, sigma=1.5):
    c = (size - 1) / 2
    w = np.array(
        [[math.exp(-((y - c) ** 2 + (x - c) ** 2) / (2 * sigma**2)) for x in range(size)] for y in range(size)]
    )
    return w / w.sum()


def ssim(a, b, size=11, sigma=1.5):
    """Mean SSIM over every fully-contained window, one window at a time."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2
    w = gaussian_2d(size, sigma)
    h, wd = a.shape
    vals = []
    for i in range(h - size + 1):
        for j in range(wd - size + 1):
            pa = a[i : i + size, j : j + size]
            pb = b[i : i + size, j : j + size]
            mu_a = np.sum(w * pa)
            mu_b = np.sum(w * pb)
            var_a = np.sum(w * (pa - mu_a) ** 2)
            var_b = np.sum(w * (pb - mu_b) ** 2)
            cov = np.sum(w * (pa - mu_a) * (pb - mu_b))
            vals.append(
                (2 * mu_a * mu_b + c1) * (2 * cov + c2)
                / ((mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2))
            )
    return math.fsum(vals) / len(vals)
