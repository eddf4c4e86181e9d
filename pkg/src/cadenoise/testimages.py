"""Locate or fetch the standard Lena test image.

The image is not redistributed with this package. ``fetch_lena`` downloads
the SciPy 0.16.1 source archive from PyPI (which shipped the classic 512x512
8-bit grayscale Lena as ``scipy/misc/lena.dat``), verifies the archive
checksum, and writes ``lena512.pgm`` plus a 256x256 version made with an
antialiased bicubic downscale.

Run ``python -m cadenoise.testimages [DEST]`` to populate a data directory.
"""
from __future__ import annotations

import hashlib
import io
import os
import pickle
import sys
import tarfile
import urllib.request
from pathlib import Path

import numpy as np

from .grid import GrayImage
from .imagefile import read_image, write_image

SCIPY_SDIST_URL = (
    "https://files.pythonhosted.org/packages/7b/e1/"
    "ecc1820874c396a094e6df30d4d3aa8119d4987c5ff0b9caec73db362849/scipy-0.16.1.tar.gz"
)
SCIPY_SDIST_SHA256 = "ecd1efbb1c038accb0516151d1e6679809c6010288765eb5da6051550bf52260"
LENA_MEMBER = "scipy-0.16.1/scipy/misc/lena.dat"

# sha256 of the raw uint8 raster (row-major), not of the file
LENA512_PIXELS_SHA256 = "4ae946ef9e6dd8b7ff9393e5dcc5d83dddde802eba271c1eeabe821e66261bbe"
LENA256_PIXELS_SHA256 = "fb9cc2df3cb26fc9e4a4ce4600a12f74b37d8355e4cdd683a0693628537914ec"

DATA_ENV = "CADENOISE_DATA"
DEFAULT_DATA_DIR = Path(__file__).resolve().parents[2] / "data"


class _ListsOnly(pickle.Unpickler):
    def find_class(self, module, name):
        raise pickle.UnpicklingError(f"refusing to load {module}.{name}")


def data_dir() -> Path:
    return Path(os.environ.get(DATA_ENV, DEFAULT_DATA_DIR))


def lena_from_sdist(archive: bytes) -> np.ndarray:
    digest = hashlib.sha256(archive).hexdigest()
    if digest != SCIPY_SDIST_SHA256:
        raise ValueError(f"archive checksum mismatch: {digest}")
    with tarfile.open(fileobj=io.BytesIO(archive), mode="r:gz") as tar:
        raw = tar.extractfile(LENA_MEMBER).read()
    rows = _ListsOnly(io.BytesIO(raw), encoding="latin1").load()
    arr = np.array(rows)
    if arr.shape != (512, 512) or arr.min() < 0 or arr.max() > 255:
        raise ValueError(f"unexpected lena.dat contents, shape {arr.shape}")
    return arr.astype(np.uint8)


def downscale_half(arr: np.ndarray) -> np.ndarray:
    """Antialiased bicubic 2x reduction (the usual way 256x256 Lena is made)."""
    from PIL import Image

    h, w = arr.shape
    return np.array(Image.fromarray(arr).resize((w // 2, h // 2), Image.BICUBIC))


def fetch_lena(dest: str | os.PathLike | None = None) -> Path:
    dest = Path(dest) if dest is not None else data_dir()
    dest.mkdir(parents=True, exist_ok=True)
    with urllib.request.urlopen(SCIPY_SDIST_URL, timeout=120) as resp:
        archive = resp.read()
    lena = lena_from_sdist(archive)
    write_image(dest / "lena512.pgm", lena)
    write_image(dest / "lena256.pgm", downscale_half(lena))
    return dest


def load(name: str) -> GrayImage | None:
    """Load ``<data dir>/<name>.pgm`` if present, else None."""
    path = data_dir() / f"{name}.pgm"
    if not path.exists():
        return None
    arr = read_image(path)
    if arr.ndim != 2:
        return None
    return GrayImage(arr)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    dest = fetch_lena(argv[0] if argv else None)
    print(f"wrote {dest / 'lena512.pgm'} and {dest / 'lena256.pgm'}")


if __name__ == "__main__":
    main()
