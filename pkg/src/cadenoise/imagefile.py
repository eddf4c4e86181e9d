"""Reading and writing 8-bit images: binary PGM/PPM and PNG.

Arrays are ``(height, width)`` for grayscale and ``(height, width, 3)`` for
RGB, always uint8. JPEG is refused because lossy decoding smears impulse
noise into neighboring pixels.
"""
from __future__ import annotations

import io
import os
import re
from pathlib import Path

import numpy as np


class ImageFormatError(ValueError):
    """File exists and was read, but is not an image we accept."""


_NETPBM_MAGIC = {b"P5": 1, b"P6": 3}
_LOSSY_SUFFIXES = {".jpg", ".jpeg", ".jpe", ".jfif"}
_HEADER_TOKEN = re.compile(rb"(?:\s|#[^\n\r]*[\n\r])*(\S+)")


def _parse_netpbm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in _NETPBM_MAGIC:
        raise ImageFormatError(f"unsupported netpbm magic {magic!r}")
    channels = _NETPBM_MAGIC[magic]
    pos = 2
    fields = []
    for _ in range(3):
        m = _HEADER_TOKEN.match(data, pos)
        if m is None:
            raise ImageFormatError("truncated netpbm header")
        try:
            fields.append(int(m.group(1)))
        except ValueError:
            raise ImageFormatError(f"bad header field {m.group(1)!r}") from None
        pos = m.end()
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ImageFormatError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise ImageFormatError(f"only maxval 255 is supported, got {maxval}")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ImageFormatError("missing whitespace after netpbm header")
    pos += 1
    n = width * height * channels
    payload = data[pos : pos + n]
    if len(payload) != n:
        raise ImageFormatError(f"expected {n} payload bytes, found {len(payload)}")
    arr = np.frombuffer(payload, dtype=np.uint8)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return arr.reshape(shape).copy()


def _read_png(data: bytes) -> np.ndarray:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(io.BytesIO(data)) as im:
            if im.format == "JPEG":
                raise ImageFormatError("JPEG input is not accepted (lossy)")
            if im.mode == "P":
                im = im.convert("RGB")
            if im.mode not in ("L", "RGB"):
                raise ImageFormatError(f"unsupported PNG mode {im.mode!r}; need 8-bit L or RGB")
            return np.array(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(str(exc)) from None


def read_image(path: str | os.PathLike) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() in _LOSSY_SUFFIXES:
        raise ImageFormatError(f"{path}: JPEG input is not accepted (lossy)")
    data = path.read_bytes()
    if data[:2] in _NETPBM_MAGIC:
        return _parse_netpbm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _read_png(data)
    if data[:3] == b"\xff\xd8\xff":
        raise ImageFormatError(f"{path}: JPEG input is not accepted (lossy)")
    raise ImageFormatError(f"{path}: not a binary PGM/PPM or PNG file")


def encode_netpbm(arr: np.ndarray) -> bytes:
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    if arr.ndim == 2:
        magic = b"P5"
    elif arr.ndim == 3 and arr.shape[2] == 3:
        magic = b"P6"
    else:
        raise ImageFormatError(f"cannot store array of shape {arr.shape} as netpbm")
    h, w = arr.shape[:2]
    return magic + b"\n%d %d\n255\n" % (w, h) + arr.tobytes()


def write_image(path: str | os.PathLike, arr: np.ndarray) -> None:
    """Write by file suffix: .pgm/.ppm/.pnm are netpbm, .png is PNG."""
    path = Path(path)
    arr = np.asarray(arr)
    if arr.dtype != np.uint8:
        raise ImageFormatError(f"expected uint8 pixels, got {arr.dtype}")
    suffix = path.suffix.lower()
    if suffix in (".pgm", ".ppm", ".pnm"):
        if suffix == ".pgm" and arr.ndim != 2:
            raise ImageFormatError("PGM holds grayscale only; use .ppm or .png for RGB")
        if suffix == ".ppm" and arr.ndim != 3:
            raise ImageFormatError("PPM holds RGB only; use .pgm for grayscale")
        path.write_bytes(encode_netpbm(arr))
    elif suffix == ".png":
        from PIL import Image

        Image.fromarray(arr).save(path, format="PNG")
    else:
        raise ImageFormatError(f"{path}: unsupported output format {suffix!r}")


def to_grayscale(arr: np.ndarray) -> np.ndarray:
    """ITU-R 601 luma, rounded; grayscale input is returned unchanged."""
    if arr.ndim == 2:
        return arr
    rgb = arr.astype(np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8)
