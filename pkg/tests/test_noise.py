import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cadenoise.grid import GrayImage
from cadenoise.noise import NoiseSpec, add_salt_pepper, estimate_noise_density, iterations_for
from conftest import gray_images


def _mid_gray(h, w, seed=0):
    return GrayImage(np.random.default_rng(seed).integers(1, 255, (h, w), dtype=np.uint8))


def test_zero_density_is_identity():
    img = _mid_gray(20, 30)
    assert add_salt_pepper(img, NoiseSpec(0.0, seed=3)) == img


def test_full_density_saturates_every_pixel():
    out = add_salt_pepper(_mid_gray(20, 30), NoiseSpec(1.0, seed=3))
    assert np.isin(out.array, (0, 255)).all()


def test_corrupted_count_is_binomial():
    img = _mid_gray(256, 256)
    out = add_salt_pepper(img, NoiseSpec(0.3, 0.5, seed=11))
    n, p = 256 * 256, 0.3
    mean, sd = n * p, math.sqrt(n * p * (1 - p))
    assert mean == pytest.approx(19660.8)
    changed = int(np.count_nonzero(out.array != img.array))
    assert abs(changed - mean) <= 4 * sd


def test_salt_fraction_extremes():
    img = _mid_gray(64, 64)
    salt_only = add_salt_pepper(img, NoiseSpec(0.5, 1.0, seed=1))
    pepper_only = add_salt_pepper(img, NoiseSpec(0.5, 0.0, seed=1))
    assert not (salt_only.array == 0).any()
    assert not (pepper_only.array == 255).any()
    # same seed, same corruption mask regardless of the split
    assert np.array_equal(salt_only.array == 255, pepper_only.array == 0)


@pytest.mark.parametrize(
    "kwargs",
    [dict(density=-0.1), dict(density=1.1), dict(density=0.5, salt_fraction=2.0), dict(density=0.5, seed=-1),
     dict(density=0.5, seed=2**64)],
)
def test_noise_spec_validation(kwargs):
    with pytest.raises(ValueError):
        NoiseSpec(**kwargs)


@settings(max_examples=200, deadline=None)
@given(gray_images(max_side=20), st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**64 - 1))
def test_corruption_properties(img, density, salt, seed):
    spec = NoiseSpec(density, salt, seed)
    out = add_salt_pepper(img, spec)
    changed = out.array != img.array
    assert np.isin(out.array[changed], (0, 255)).all()
    assert add_salt_pepper(img, spec) == out


def test_estimate_no_extremes():
    assert estimate_noise_density(_mid_gray(8, 8)) == 0.0


def test_estimate_all_black():
    assert estimate_noise_density(GrayImage(np.zeros((4, 5), np.uint8))) == 1.0


def test_estimate_half():
    assert estimate_noise_density(GrayImage.from_pixels(2, 2, [0, 100, 255, 100])) == 0.5


@pytest.mark.parametrize("density, expected", [(0.0, 1), (0.9, 10), (0.35, 4), (1.0, 11)])
def test_iterations_for(density, expected):
    assert iterations_for(density) == expected


@pytest.mark.parametrize("k", range(10))
def test_iterations_for_exact_deciles(k):
    # 0.1*k is not exact in binary; the decile must still resolve to k + 1
    assert iterations_for(k / 10) == k + 1
    assert iterations_for(0.1 * k) == k + 1


def test_iterations_for_rejects_out_of_range():
    with pytest.raises(ValueError):
        iterations_for(1.5)


@given(st.floats(0, 1), st.floats(0, 1))
def test_iterations_monotone_and_bounded(a, b):
    lo, hi = sorted((a, b))
    assert 1 <= iterations_for(lo) <= iterations_for(hi) <= 11
