"""
QSIG signal files

Text form::

    QSIG2D 1
    n1 n2 dx1 dx2 x1_0 x2_0
    r x y z          (n1·n2 lines, row-major, index i1·n2 + i2)

Binary form: b"QSGB", version byte 1, little-endian header ``<II4d`` and
n1·n2·4 little-endian float64 values in (r, x, y, z) order.
"""

import logging
import math
import struct
from pathlib import Path
from typing import Literal, Tuple, Union

import numpy as np
from pydantic import ValidationError

from algebra.signal import Grid2D, QSignal2D
from errors import FormatError

logger = logging.getLogger(__name__)

TEXT_TAG = "QSIG2D"
BINARY_MAGIC = b"QSGB"
VERSION = 1
HEADER = struct.Struct("<II4d")

Form = Literal["text", "binary"]
PathLike = Union[str, Path]


def _grid(n1: int, n2: int, dx1: float, dx2: float, x1_0: float, x2_0: float) -> Grid2D:
    for dx in (dx1, dx2):
        if not math.isfinite(dx) or dx <= 0:
            raise FormatError(f"grid spacings must be positive, got {dx}")
    try:
        return Grid2D(n1=n1, n2=n2, dx1=dx1, dx2=dx2, x1_0=x1_0, x2_0=x2_0)
    except ValidationError as exc:
        raise FormatError(f"invalid grid in header: {exc.errors()[0]['msg']}") from exc


def _header_values(grid: Grid2D) -> Tuple[int, int, float, float, float, float]:
    return (grid.n1, grid.n2, grid.dx1, grid.dx2, grid.x1_0, grid.x2_0)


def encode_text(f: QSignal2D) -> str:
    n1, n2, *floats = _header_values(f.grid)
    lines = [f"{TEXT_TAG} {VERSION}", " ".join([str(n1), str(n2)] + [repr(float(v)) for v in floats])]
    for row in f.samples.reshape(-1, 4):
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def decode_text(text: str) -> QSignal2D:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].split() != [TEXT_TAG, str(VERSION)]:
        raise FormatError(f"bad magic: text QSIG files start with '{TEXT_TAG} {VERSION}'")
    if len(lines) < 2:
        raise FormatError("truncated header: missing grid line")
    fields = lines[1].split()
    if len(fields) != 6:
        raise FormatError(f"grid line needs 6 fields, got {len(fields)}")
    try:
        n1, n2 = int(fields[0]), int(fields[1])
        dx1, dx2, x1_0, x2_0 = (float(v) for v in fields[2:])
        values = np.array([float(v) for line in lines[2:] for v in line.split()], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"malformed number in QSIG text: {exc}") from exc
    grid = _grid(n1, n2, dx1, dx2, x1_0, x2_0)
    expected = n1 * n2 * 4
    if values.size != expected:
        raise FormatError(f"payload holds {values.size} values, header needs {expected}")
    return QSignal2D(grid, values.reshape(n1, n2, 4))


def encode_binary(f: QSignal2D) -> bytes:
    header = BINARY_MAGIC + bytes([VERSION]) + HEADER.pack(*_header_values(f.grid))
    return header + np.ascontiguousarray(f.samples, dtype="<f8").tobytes()


def decode_binary(data: bytes) -> QSignal2D:
    if data[:4] != BINARY_MAGIC:
        raise FormatError("bad magic: binary QSIG files start with b'QSGB'")
    if len(data) < 5 + HEADER.size:
        raise FormatError("truncated header")
    if data[4] != VERSION:
        raise FormatError(f"unsupported QSIG version {data[4]}")
    n1, n2, dx1, dx2, x1_0, x2_0 = HEADER.unpack_from(data, 5)
    grid = _grid(n1, n2, dx1, dx2, x1_0, x2_0)
    payload = data[5 + HEADER.size :]
    expected = n1 * n2 * 4 * 8
    if len(payload) != expected:
        raise FormatError(f"payload holds {len(payload)} bytes, header needs {expected}")
    values = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    return QSignal2D(grid, values.reshape(n1, n2, 4))


def read_qsig(path: PathLike) -> QSignal2D:
    """Read either QSIG form, chosen by the leading bytes"""
    data = Path(path).read_bytes()
    logger.debug("reading %d bytes from %s", len(data), path)
    if data.startswith(BINARY_MAGIC):
        return decode_binary(data)
    if data.startswith(TEXT_TAG.encode("ascii")):
        try:
            return decode_text(data.decode("ascii"))
        except UnicodeDecodeError as exc:
            raise FormatError("text QSIG files must be ASCII") from exc
    raise FormatError("bad magic: not a QSIG file")


def write_qsig(f: QSignal2D, path: PathLike, form: Form = "binary") -> Path:
    path = Path(path)
    if form == "binary":
        path.write_bytes(encode_binary(f))
    elif form == "text":
        path.write_text(encode_text(f), encoding="ascii")
    else:
        raise FormatError(f"form must be 'text' or 'binary', got {form!r}")
    logger.debug("wrote %s QSIG %s to %s", form, f.grid.shape, path)
    return path
