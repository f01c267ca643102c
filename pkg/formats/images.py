"""
PPM colour images and PBM masks

A P6 pixel (R, G, B) becomes the pure quaternion (0, R/255, G/255, B/255) on a
centered grid with unit spacing; image rows run along x1, columns along x2.
P1 bitmaps become GridMasks, with 1 (black) marking membership.
"""

import logging
import re
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from algebra.signal import Grid2D, GridMask, QSignal2D
from errors import FormatError, GridError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MAXVAL = 255
_COMMENT = re.compile(rb"#[^\n]*")


def _header(data: bytes, magic: bytes, count: int) -> Tuple[List[int], int]:
    """Parse `count` integers after the magic; returns them and the payload offset"""
    if data[:2] != magic:
        raise FormatError(f"expected {magic.decode()} magic, got {data[:2]!r}")
    values: List[int] = []
    pos = 2
    while len(values) < count:
        while pos < len(data) and (data[pos : pos + 1].isspace() or data[pos : pos + 1] == b"#"):
            if data[pos : pos + 1] == b"#":
                match = _COMMENT.match(data, pos)
                pos = match.end() if match else len(data)
            else:
                pos += 1
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise FormatError(f"truncated or malformed {magic.decode()} header")
        values.append(int(data[start:pos]))
    return values, pos


def pixels_to_quaternions(rgb: np.ndarray) -> np.ndarray:
    """(h, w, 3) uint8 pixels to (h, w, 4) pure quaternions"""
    samples = np.zeros(rgb.shape[:2] + (4,))
    samples[..., 1:] = rgb.astype(np.float64) / MAXVAL
    return samples


def quaternions_to_pixels(samples: np.ndarray) -> Tuple[np.ndarray, List[str]]:
    """Vector parts clamped to [0, 1] and quantized; warnings name what was lost"""
    warnings: List[str] = []
    if np.any(samples[..., 0] != 0):
        warnings.append("scalar part dropped on PPM export")
    vector = samples[..., 1:]
    if np.any((vector < 0) | (vector > 1)):
        warnings.append("channel values clamped to [0, 1] on PPM export")
    rgb = np.rint(np.clip(vector, 0.0, 1.0) * MAXVAL).astype(np.uint8)
    return rgb, warnings


def read_ppm(path: PathLike, pad: bool = False) -> QSignal2D:
    """P6 image as a unit-spaced centered grid; odd sides are rejected unless pad appends a black row or column"""
    data = Path(path).read_bytes()
    (width, height, maxval), pos = _header(data, b"P6", 3)
    if maxval != MAXVAL:
        raise FormatError(f"only maxval {MAXVAL} is supported, got {maxval}")
    # exactly one whitespace byte separates the header from the raster
    pos += 1
    expected = width * height * 3
    raster = data[pos : pos + expected]
    if len(raster) != expected:
        raise FormatError(f"truncated raster: {len(raster)} of {expected} bytes")
    if (height % 2 or width % 2) and not pad:
        raise GridError(f"image sides must be even to form a grid, got {width}x{height}")
    rgb = np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3)
    if pad:
        rgb = np.pad(rgb, ((0, height % 2), (0, width % 2), (0, 0)))
        height, width = rgb.shape[:2]
    grid = Grid2D.centered(height, 1.0, width, 1.0)
    logger.debug("read %dx%d PPM from %s", width, height, path)
    return QSignal2D(grid, pixels_to_quaternions(rgb))


def write_ppm(f: QSignal2D, path: PathLike) -> List[str]:
    """Write the vector part as P6; returns the lossy-conversion warnings"""
    rgb, warnings = quaternions_to_pixels(f.samples)
    height, width = rgb.shape[:2]
    Path(path).write_bytes(f"P6\n{width} {height}\n{MAXVAL}\n".encode("ascii") + rgb.tobytes())
    for warning in warnings:
        logger.warning("%s (%s)", warning, path)
    return warnings


def read_pbm(path: PathLike, grid: Grid2D) -> GridMask:
    """P1 mask whose shape must equal the grid's"""
    data = _COMMENT.sub(b"", Path(path).read_bytes())
    (width, height), pos = _header(data, b"P1", 2)
    bits = [c for c in data[pos:] if c in b"01"]
    if len(bits) != width * height:
        raise FormatError(f"mask has {len(bits)} pixels, header needs {width * height}")
    if (height, width) != grid.shape:
        raise GridError(f"mask is {height}x{width} but the grid is {grid.n1}x{grid.n2}")
    mask = np.array(bits, dtype=np.uint8).reshape(height, width) == ord("1")
    return GridMask(grid, mask)


def write_pbm(mask: GridMask, path: PathLike) -> Path:
    height, width = mask.grid.shape
    rows = [" ".join("1" if bit else "0" for bit in row) for row in mask.bits]
    path = Path(path)
    path.write_text("P1\n" + f"{width} {height}\n" + "\n".join(rows) + "\n", encoding="ascii")
    return path
