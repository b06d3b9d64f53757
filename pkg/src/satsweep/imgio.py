"""Grid ingestion and emission in bit-exact, dependency-light formats.

Two carriers: binary PGM (P5) for u8/u16 images, and packed little-endian
raw samples described by a JSON sidecar for every element kind including
u64/f64 result rasters. Synthetic generation uses the PCG64 generator so
benchmark inputs reproduce byte-for-byte across machines.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import GridValidationError, ImageFormatError, UnsupportedFormatError
from .grid import ElemKind, ImageGrid, ResultGrid

_WHITESPACE = b" \t\n\r\v\f"

RAW_DTYPES = {
    "u8": np.dtype("u1"),
    "u16": np.dtype("<u2"),
    "f32": np.dtype("<f4"),
    "u64": np.dtype("<u8"),
    "f64": np.dtype("<f8"),
}


@dataclass(frozen=True)
class RawSidecar:
    """Geometry and sample layout of a raw file; byte length must equal rows*cols*width."""

    rows: int
    cols: int
    dtype: str
    endianness: str = "little"


# ---------------------------------------------------------------------------
# PGM (P5)


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-separated header token, honoring '#' comment lines."""
    n = len(data)
    while pos < n:
        byte = data[pos : pos + 1]
        if byte in _WHITESPACE:
            pos += 1
        elif byte == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise ImageFormatError("unexpected end of PGM header", byte_offset=pos)
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, end = _next_token(data, pos)
    if not token.isdigit():
        raise ImageFormatError(f"invalid PGM {what} {token!r}", byte_offset=end - len(token))
    return int(token), end


def read_pgm(path) -> ImageGrid:
    """Decode a binary PGM file.

    maxval <= 255 maps to U8 (one byte per sample); 256..65535 maps to U16
    with big-endian samples, per the PNM convention.
    """
    data = Path(path).read_bytes()
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise ImageFormatError(f"not a binary PGM file (magic {magic!r})", byte_offset=0)
    cols, pos = _header_int(data, pos, "width")
    rows, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if rows < 1 or cols < 1:
        raise ImageFormatError(f"invalid PGM dimensions {cols}x{rows}", byte_offset=pos)
    if maxval < 1 or maxval > 65535:
        raise ImageFormatError(f"PGM maxval {maxval} outside 1..65535", byte_offset=pos)
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise ImageFormatError("missing single whitespace byte after maxval", byte_offset=pos)
    pos += 1

    sample_dtype = np.dtype("u1") if maxval <= 255 else np.dtype(">u2")
    expected = rows * cols * sample_dtype.itemsize
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise ImageFormatError(
            f"truncated PGM payload: expected {expected} bytes, found {len(payload)}",
            byte_offset=len(data),
        )
    samples = np.frombuffer(payload, dtype=sample_dtype).reshape(rows, cols)
    kind = ElemKind.U8 if maxval <= 255 else ElemKind.U16
    return ImageGrid(np.ascontiguousarray(samples, dtype=kind.dtype))


def write_pgm(img: ImageGrid, path) -> None:
    """Encode a U8/U16 grid as binary PGM; F32 has no lossless PGM mapping."""
    if img.elem_kind is ElemKind.F32:
        raise UnsupportedFormatError("PGM cannot represent F32 grids losslessly; use raw")
    maxval = int(img.elem_kind.max_value)
    header = f"P5\n{img.cols} {img.rows}\n{maxval}\n".encode("ascii")
    if img.elem_kind is ElemKind.U8:
        payload = img.values.tobytes()
    else:
        payload = img.values.astype(">u2").tobytes()
    Path(path).write_bytes(header + payload)


# ---------------------------------------------------------------------------
# raw + sidecar


def _sidecar_for(values: np.ndarray, dtype_token: str) -> RawSidecar:
    return RawSidecar(rows=values.shape[0], cols=values.shape[1], dtype=dtype_token)


def write_raw(obj: ImageGrid | ResultGrid, raw_path, sidecar_path) -> None:
    """Write packed little-endian samples plus the JSON sidecar.

    Result grids carry dtype "u64" (exact integer sums) or "f64".
    """
    if isinstance(obj, ImageGrid):
        token = obj.elem_kind.value
        values = obj.values
    else:
        values = obj.values
        token = "u64" if values.dtype == np.uint64 else "f64"
    Path(raw_path).write_bytes(np.ascontiguousarray(values, dtype=RAW_DTYPES[token]).tobytes())
    Path(sidecar_path).write_text(json.dumps(asdict(_sidecar_for(values, token))) + "\n", encoding="utf-8")


def read_sidecar(sidecar_path) -> RawSidecar:
    try:
        doc = json.loads(Path(sidecar_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ImageFormatError(f"sidecar is not valid JSON: {exc}") from None
    expected = {"rows", "cols", "dtype", "endianness"}
    if not isinstance(doc, dict) or set(doc) != expected:
        raise ImageFormatError(f"sidecar must contain exactly the keys {sorted(expected)}")
    side = RawSidecar(**doc)
    if side.endianness != "little":
        raise ImageFormatError(f"unsupported endianness {side.endianness!r}; raw files are little-endian")
    if side.dtype not in RAW_DTYPES:
        raise ImageFormatError(f"unknown raw dtype {side.dtype!r}")
    if side.rows < 1 or side.cols < 1:
        raise ImageFormatError(f"invalid raw dimensions {side.rows}x{side.cols}")
    return side


def read_raw(raw_path, sidecar_path) -> ImageGrid:
    """Read an image raster; result dtypes (u64/f64) are not image inputs."""
    side = read_sidecar(sidecar_path)
    if side.dtype not in ("u8", "u16", "f32"):
        raise ImageFormatError(f"raw dtype {side.dtype!r} is a result raster, not an image input")
    dtype = RAW_DTYPES[side.dtype]
    data = Path(raw_path).read_bytes()
    expected = side.rows * side.cols * dtype.itemsize
    if len(data) != expected:
        raise ImageFormatError(
            f"raw length {len(data)} does not match sidecar {side.rows}x{side.cols} {side.dtype} ({expected} bytes)"
        )
    values = np.frombuffer(data, dtype=dtype).reshape(side.rows, side.cols)
    kind = ElemKind(side.dtype)
    return ImageGrid(np.ascontiguousarray(values, dtype=kind.dtype))


def read_raw_result(raw_path, sidecar_path) -> np.ndarray:
    """Read back a result raster written by write_raw (u64 or f64)."""
    side = read_sidecar(sidecar_path)
    if side.dtype not in ("u64", "f64"):
        raise ImageFormatError(f"raw dtype {side.dtype!r} is not a result raster")
    dtype = RAW_DTYPES[side.dtype]
    data = Path(raw_path).read_bytes()
    expected = side.rows * side.cols * dtype.itemsize
    if len(data) != expected:
        raise ImageFormatError(f"raw length {len(data)} does not match sidecar ({expected} bytes)")
    return np.frombuffer(data, dtype=dtype).reshape(side.rows, side.cols).copy()


# ---------------------------------------------------------------------------
# synthetic grids


def generate(
    kind: str,
    rows: int,
    cols: int,
    elem_kind: ElemKind,
    *,
    seed: int = 0,
    value: float = 1,
    tile: int = 1,
) -> ImageGrid:
    """Deterministic synthetic grid: "random", "constant", or "checkerboard".

    Random grids use the PCG64 generator, so a given seed reproduces the
    same bytes on every platform. Integer kinds draw uniformly over the
    full dtype range; F32 draws uniformly from [0, 1). Checkerboards
    alternate 0/1 cells of ``tile`` x ``tile`` pixels.
    """
    if rows < 1 or cols < 1:
        raise GridValidationError(f"grid dims must be >= 1, got {rows}x{cols}")
    dtype = elem_kind.dtype
    if kind == "random":
        rng = np.random.Generator(np.random.PCG64(seed))
        if elem_kind.is_integer:
            values = rng.integers(0, int(elem_kind.max_value) + 1, size=(rows, cols), dtype=dtype)
        else:
            values = rng.random(size=(rows, cols), dtype=np.float32)
    elif kind == "constant":
        if elem_kind.is_integer:
            if not float(value).is_integer() or not 0 <= value <= elem_kind.max_value:
                raise GridValidationError(f"constant {value!r} outside the {elem_kind.value} range")
            values = np.full((rows, cols), int(value), dtype=dtype)
        else:
            values = np.full((rows, cols), np.float32(value), dtype=dtype)
    elif kind == "checkerboard":
        if tile < 1:
            raise GridValidationError(f"checkerboard tile must be >= 1, got {tile}")
        r = np.arange(rows)[:, None] // tile
        c = np.arange(cols)[None, :] // tile
        values = ((r + c) % 2).astype(dtype)
    else:
        raise GridValidationError(f"unknown generator kind {kind!r}; expected random, constant, or checkerboard")
    return ImageGrid(values)
