"""Image and band-raster I/O plus derivation of road grids from imagery.

Supports binary PPM (P6, 8-bit) for colour images and a plain-text band
format for single-channel float rasters such as NIR or Red reflectance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import CellClass, RoadGrid


@dataclass(frozen=True, eq=False)
class RasterRgb:
    """8-bit RGB image, pixels shape (height, width, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError("pixels must have shape (height, width, 3)")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        arr = arr.astype(np.uint8, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True, eq=False)
class BandRaster:
    """Single-channel float raster, samples shape (height, width)."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("samples must be 2-dimensional")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("band must be at least 1x1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("band samples must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def height(self) -> int:
        return self.samples.shape[0]


class PpmError(ValueError):
    """Malformed PPM input."""


class BandError(ValueError):
    """Malformed band-raster input."""


_WHITESPACE = b" \t\r\n\v\f"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n and data[pos : pos + 1] in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f"):
        pos += 1
    if pos >= n:
        raise PpmError(f"unexpected end of header at byte {pos}")
    start = pos
    while pos < n and data[pos : pos + 1] not in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f"):
        pos += 1
    return data[start:pos], pos


def decode_ppm(data: bytes) -> RasterRgb:
    """Parse a binary P6 PPM with maxval 255.

    Header fields are whitespace-separated; exactly one whitespace byte
    separates the maxval from the pixel bytes.  Errors carry the byte
    offset of the problem.
    """
    magic, pos = _next_token(data, 0)
    if magic != b"P6":
        raise PpmError(f"bad magic {magic!r} at byte 0, expected P6")
    wtok, pos = _next_token(data, pos)
    wstart = pos - len(wtok)
    if not wtok.isdigit() or int(wtok) < 1:
        raise PpmError(f"bad width {wtok!r} at byte {wstart}")
    htok, pos = _next_token(data, pos)
    hstart = pos - len(htok)
    if not htok.isdigit() or int(htok) < 1:
        raise PpmError(f"bad height {htok!r} at byte {hstart}")
    width, height = int(wtok), int(htok)
    mtok, pos = _next_token(data, pos)
    mstart = pos - len(mtok)
    if not mtok.isdigit() or int(mtok) != 255:
        raise PpmError(f"unsupported maxval {mtok!r} at byte {mstart}, expected 255")
    if pos >= len(data) or data[pos : pos + 1] not in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f"):
        raise PpmError(f"missing whitespace after maxval at byte {pos}")
    pos += 1
    expected = width * height * 3
    body = data[pos : pos + expected]
    if len(body) < expected:
        raise PpmError(
            f"truncated pixel data at byte {pos + len(body)}: "
            f"expected {expected} bytes, got {len(body)}"
        )
    if len(data) > pos + expected:
        raise PpmError(f"trailing data at byte {pos + expected}")
    arr = np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3)
    return RasterRgb(arr)


def encode_ppm(image: RasterRgb) -> bytes:
    """Serialise to canonical P6: header 'P6\\n<w> <h>\\n255\\n' then raw bytes."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def decode_band(data: bytes) -> BandRaster:
    """Parse the text band format: '<width> <height>' then w*h samples."""
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise BandError(f"non-ascii band data at byte {e.start}") from None
    tokens = text.split()
    if len(tokens) < 2:
        raise BandError("missing band dimensions")
    try:
        width, height = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise BandError(f"bad band dimensions {tokens[0]!r} {tokens[1]!r}") from None
    if width < 1 or height < 1:
        raise BandError(f"non-positive band dimensions {width}x{height}")
    expected = width * height
    values = tokens[2:]
    if len(values) != expected:
        raise BandError(f"expected {expected} samples, got {len(values)}")
    try:
        arr = np.array([float(v) for v in values], dtype=np.float64)
    except ValueError:
        raise BandError("non-numeric band sample") from None
    if not np.all(np.isfinite(arr)):
        raise BandError("non-finite band sample")
    return BandRaster(arr.reshape(height, width))


def encode_band(band: BandRaster) -> bytes:
    """Serialise a band: dimension line, then one line of samples per row."""
    lines = [f"{band.width} {band.height}"]
    for row in band.samples:
        lines.append(" ".join(repr(float(v)) for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


# Reference palette in classification tie-break order: on equal distance
# the earlier entry wins.
_PALETTE = (
    ((0, 0, 0), CellClass.IMPASSABLE),
    ((0, 255, 0), CellClass.GOOD),
    ((255, 255, 255), CellClass.POOR),
)


def grid_from_image(image: RasterRgb) -> RoadGrid:
    """Classify each pixel to the nearest palette colour (squared RGB distance).

    Black maps to impassable, green to good road, white to poor road.
    """
    px = image.pixels.astype(np.int64)
    dists = np.stack(
        [((px - np.array(color, dtype=np.int64)) ** 2).sum(axis=2) for color, _ in _PALETTE]
    )
    nearest = np.argmin(dists, axis=0)  # first (lowest) index wins ties
    classes = np.empty(nearest.shape, dtype=np.int8)
    for idx, (_, cls) in enumerate(_PALETTE):
        classes[nearest == idx] = cls.value
    return RoadGrid(classes)


def ndvi(nir: BandRaster, red: BandRaster) -> BandRaster:
    """Normalised difference (NIR - Red) / (NIR + Red), 0 where the sum is 0."""
    if nir.samples.shape != red.samples.shape:
        raise ValueError("band shapes do not match")
    num = nir.samples - red.samples
    den = nir.samples + red.samples
    out = np.zeros_like(num)
    np.divide(num, den, out=out, where=den != 0.0)
    return BandRaster(out)


def weight_roads_by_ndvi(
    grid: RoadGrid,
    index: BandRaster,
    tau: float = 0.3,
    road_mask: np.ndarray | None = None,
) -> RoadGrid:
    """Reclassify road cells by vegetation: NDVI >= tau becomes poor road.

    Impassable cells never change.  road_mask, if given, restricts which
    road cells are rewritten; others keep their class.
    """
    if index.samples.shape != grid.classes.shape:
        raise ValueError("index shape does not match grid")
    if not np.isfinite(tau) or not -1.0 <= tau <= 1.0:
        raise ValueError("tau must be in [-1, 1]")
    roads = grid.classes != CellClass.IMPASSABLE.value
    if road_mask is not None:
        if road_mask.shape != grid.classes.shape or road_mask.dtype != np.bool_:
            raise ValueError("road_mask must be a boolean array of grid shape")
        roads &= road_mask
    out = grid.classes.copy()
    veg = index.samples >= tau
    out[roads & veg] = CellClass.POOR.value
    out[roads & ~veg] = CellClass.GOOD.value
    return RoadGrid(out)
