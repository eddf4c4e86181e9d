"""Compiled row-band kernels shared by the CA step and the median baseline.

Each kernel reads ``src`` and writes rows ``[r0, r1)`` of ``dst``. Bands are
disjoint, so callers may run several bands concurrently (the GIL is released).
"""
import numpy as np
from numba import njit


@njit(nogil=True, cache=True)
def ca_step_rows(src, dst, r0, r1):
    h, w = src.shape
    for i in range(r0, r1):
        for j in range(w):
            c = src[i, j]
            if c != 0 and c != 255:
                dst[i, j] = c
                continue
            total = 0
            count = 0
            for di in range(-1, 2):
                ni = i + di
                if ni < 0 or ni >= h:
                    continue
                for dj in range(-1, 2):
                    nj = j + dj
                    if (di == 0 and dj == 0) or nj < 0 or nj >= w:
                        continue
                    v = src[ni, nj]
                    if v != 0 and v != 255:
                        total += np.int64(v)
                        count += 1
            if count == 0:
                dst[i, j] = 255
            else:
                # round half up == ties away from zero for non-negative means
                dst[i, j] = (2 * total + count) // (2 * count)


@njit(nogil=True, cache=True)
def median3_rows(src, dst, r0, r1):
    h, w = src.shape
    win = np.empty(9, dtype=np.uint8)
    for i in range(r0, r1):
        for j in range(w):
            k = 0
            for di in range(-1, 2):
                for dj in range(-1, 2):
                    ni = i + di
                    nj = j + dj
                    if 0 <= ni < h and 0 <= nj < w:
                        win[k] = src[ni, nj]
                    else:
                        win[k] = 0
                    k += 1
            # insertion sort; 9 elements
            for a in range(1, 9):
                x = win[a]
                b = a - 1
                while b >= 0 and win[b] > x:
                    win[b + 1] = win[b]
                    b -= 1
                win[b + 1] = x
            dst[i, j] = win[4]


def run_banded(kernel, src: np.ndarray, workers: int = 1) -> np.ndarray:
    """Apply ``kernel`` over ``src`` into a fresh buffer, split into row bands."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    src = np.ascontiguousarray(src, dtype=np.uint8)
    dst = np.empty_like(src)
    h = src.shape[0]
    workers = min(workers, h)
    if workers == 1:
        kernel(src, dst, 0, h)
        return dst

    from concurrent.futures import ThreadPoolExecutor

    edges = np.linspace(0, h, workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(kernel, src, dst, int(r0), int(r1))
            for r0, r1 in zip(edges[:-1], edges[1:])
        ]
        for f in futures:
            f.result()
    return dst
