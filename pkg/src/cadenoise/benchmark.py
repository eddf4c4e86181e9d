"""Density sweep: corrupt, restore, score, average over seeded runs."""
from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from . import __version__
from .baseline import median_filter_3x3
from .ca import DenoiseConfig, denoise, resolve_iterations
from .grid import GrayImage
from .metrics import psnr, ssim
from .noise import RNG_ALGORITHM, NoiseSpec, add_salt_pepper, iterations_for

CSV_HEADER = (
    "image",
    "density",
    "filter",
    "runs",
    "iterations",
    "mean_psnr_db",
    "mean_ssim",
    "mean_wall_time_ms",
    "seed_base",
)
FILTERS = ("ca", "smf")
STANDARD_DENSITIES = tuple(round(0.1 * k, 1) for k in range(1, 10))
ITERATION_MODES = ("nominal", "auto")


@dataclass(frozen=True)
class BenchmarkRow:
    image_name: str
    density: float
    filter: str
    runs: int
    iterations_used: float
    mean_psnr_db: float
    mean_ssim: float
    mean_wall_time_ms: float
    seed_base: int

    def as_csv_fields(self) -> list[str]:
        its = self.iterations_used
        its = str(int(its)) if float(its).is_integer() else f"{its:.2f}"
        psnr_text = "inf" if math.isinf(self.mean_psnr_db) else f"{self.mean_psnr_db:.6f}"
        return [
            self.image_name,
            repr(float(self.density)),
            self.filter,
            str(self.runs),
            its,
            psnr_text,
            f"{self.mean_ssim:.6f}",
            f"{self.mean_wall_time_ms:.3f}",
            str(self.seed_base),
        ]


def _ca_filter(density: float, mode: str) -> Callable[[GrayImage], tuple[GrayImage, int]]:
    def run(noisy: GrayImage):
        if mode == "nominal":
            cfg = DenoiseConfig(iterations=iterations_for(density))
        else:
            cfg = DenoiseConfig()
        n = resolve_iterations(noisy, cfg)
        return denoise(noisy, DenoiseConfig(iterations=n)), n

    return run


def _smf_filter(noisy: GrayImage):
    return median_filter_3x3(noisy), 1


def _one_run(reference, density, seed, salt_fraction, filters, mode):
    noisy = add_salt_pepper(reference, NoiseSpec(density, salt_fraction, seed))
    results = {}
    for name in filters:
        fn = _ca_filter(density, mode) if name == "ca" else _smf_filter
        t0 = time.perf_counter()
        restored, n = fn(noisy)
        elapsed_ms = (time.perf_counter() - t0) * 1e3
        results[name] = (psnr(reference, restored), ssim(reference, restored), elapsed_ms, n)
    return results


def run_benchmark(
    references: Mapping[str, GrayImage],
    densities: Sequence[float] = STANDARD_DENSITIES,
    runs: int = 100,
    seed: int = 0,
    filters: Sequence[str] = FILTERS,
    salt_fraction: float = 0.5,
    iteration_mode: str = "nominal",
    jobs: int = 1,
) -> list[BenchmarkRow]:
    """Score each filter on every (image, density), averaged over ``runs`` seeds.

    Run ``r`` corrupts with seed ``seed + r``; all filters see the same noisy
    image. ``iteration_mode`` selects how the CA step count is chosen:
    ``"nominal"`` uses the injected density, ``"auto"`` estimates it from the
    noisy image. Rows come back ordered by image, density, then filter.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if seed < 0 or seed + runs > 2**64:
        raise ValueError("seeds must stay within the unsigned 64-bit range")
    unknown = set(filters) - set(FILTERS)
    if unknown:
        raise ValueError(f"unknown filter(s): {', '.join(sorted(unknown))}")
    if iteration_mode not in ITERATION_MODES:
        raise ValueError(f"iteration_mode must be one of {ITERATION_MODES}")
    for d in densities:
        NoiseSpec(d, salt_fraction, seed)

    tasks = [
        (name, d, r)
        for name in references
        for d in densities
        for r in range(runs)
    ]

    def work(task):
        name, d, r = task
        return _one_run(references[name], d, seed + r, salt_fraction, filters, iteration_mode)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(work, tasks))
    else:
        outcomes = [work(t) for t in tasks]
    by_task = dict(zip(tasks, outcomes))

    rows = []
    for name in references:
        for d in densities:
            for f in filters:
                per_run = [by_task[(name, d, r)][f] for r in range(runs)]
                p, s, t, n = (np.array(col, dtype=np.float64) for col in zip(*per_run))
                rows.append(
                    BenchmarkRow(
                        image_name=name,
                        density=float(d),
                        filter=f,
                        runs=runs,
                        iterations_used=float(n.mean()),
                        mean_psnr_db=math.inf if np.isinf(p).any() else float(p.mean()),
                        mean_ssim=float(s.mean()),
                        mean_wall_time_ms=float(t.mean()),
                        seed_base=seed,
                    )
                )
    return rows


def format_rows(rows: Sequence[BenchmarkRow]) -> list[list[str]]:
    return [list(CSV_HEADER)] + [r.as_csv_fields() for r in rows]


def write_report(
    rows: Sequence[BenchmarkRow],
    path: str | os.PathLike,
    metadata: Mapping | None = None,
) -> None:
    """Write the CSV atomically plus a ``<path>.meta.json`` sidecar.

    The CSV only appears at ``path`` once fully written.
    """
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".partial", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(format_rows(rows))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    meta = {
        "generator": "cadenoise " + __version__,
        "rng": RNG_ALGORITHM,
        "seed_rule": "run r uses seed_base + r",
        **(metadata or {}),
    }
    Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def image_digest(img: GrayImage) -> str:
    return hashlib.sha256(img.array.tobytes()).hexdigest()


def read_report(path: str | os.PathLike) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))

