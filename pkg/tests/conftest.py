import numpy as np
import pytest
from hypothesis import strategies as st

from cadenoise import GrayImage

ACCEPTANCE_LINES = []


def record_criterion(number, passed, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def gray_images(draw, max_side=16, min_side=1):
    """Random images biased toward salt-and-pepper content."""
    h = draw(st.integers(min_side, max_side))
    w = draw(st.integers(min_side, max_side))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.floats(0.0, 1.0))
    rng = np.random.default_rng(seed)
    arr = rng.integers(0, 256, size=(h, w), dtype=np.uint8)
    hit = rng.random((h, w)) < density
    arr[hit] = np.where(rng.random(hit.sum()) < 0.5, 0, 255)
    return GrayImage(arr)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
