"""Frame rendering: scenario state to an RGB raster, one block per cell.

Draw order is terrain, then fire, then paths, then start/goal markers, so
markers stay visible over everything.  The fire source circle is clipped
to the burning cell blocks, keeping the rendered burning area exactly
|burning| * scale^2 pixels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Coord, RoadGrid
from .raster import RasterRgb

Color = tuple[int, int, int]


@dataclass(frozen=True)
class RenderStyle:
    scale: int = 4
    marker_radius: float = 2.0
    background: Color = (0, 0, 0)
    good: Color = (0, 255, 0)
    poor: Color = (255, 255, 255)
    fire: Color = (255, 0, 0)
    path: Color = (255, 165, 0)
    start: Color = (0, 0, 255)
    goal: Color = (255, 255, 0)

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be >= 1")
        if self.marker_radius <= 0:
            raise ValueError("marker_radius must be > 0")
        for name in ("background", "good", "poor", "fire", "path", "start", "goal"):
            c = getattr(self, name)
            if len(c) != 3 or any(not (0 <= v <= 255) for v in c):
                raise ValueError(f"{name} must be an RGB triple in 0..255")
        # Colors must be telling-apart-able in machine-checked frames; the
        # one sanctioned collision is path == fire (the "paper" style).
        named = [
            ("background", self.background),
            ("good", self.good),
            ("poor", self.poor),
            ("fire", self.fire),
            ("start", self.start),
            ("goal", self.goal),
        ]
        seen = {}
        for name, c in named:
            if c in seen:
                raise ValueError(f"colors {seen[c]} and {name} are identical")
            seen[c] = name
        if self.path in seen and seen[self.path] != "fire":
            raise ValueError(f"colors {seen[self.path]} and path are identical")

    @classmethod
    def paper(cls, **kwargs) -> "RenderStyle":
        """The style selected by --style paper: the path shares fire red."""
        kwargs.setdefault("path", (255, 0, 0))
        return cls(**kwargs)


def _fire_mask(fire, grid: RoadGrid) -> np.ndarray | None:
    if fire is None:
        return None
    mask = getattr(fire, "burning_mask", None)
    if mask is None and isinstance(fire, np.ndarray):
        mask = fire
    if mask is None:
        raise ValueError("fire must be a fire state or a boolean mask")
    if mask.shape != (grid.height, grid.width):
        raise ValueError("fire mask shape does not match grid")
    return mask


def render_frame(
    grid: RoadGrid,
    fire=None,
    paths=(),
    start: Coord | None = None,
    goal: Coord | None = None,
    style: RenderStyle | None = None,
) -> RasterRgb:
    """Paint one frame; paths is an iterable of coordinate sequences."""
    st = style or RenderStyle()
    s = st.scale
    palette = np.array([st.background, st.good, st.poor], dtype=np.uint8)
    img = palette[grid.classes]
    img = np.repeat(np.repeat(img, s, axis=0), s, axis=1)

    mask = _fire_mask(fire, grid)
    if mask is not None:
        big = np.repeat(np.repeat(mask, s, axis=0), s, axis=1)
        img[big] = st.fire

    path_color = np.array(st.path, dtype=np.uint8)
    for path in paths:
        for x, y in path:
            img[y * s : (y + 1) * s, x * s : (x + 1) * s] = path_color

    ph, pw = img.shape[0], img.shape[1]
    for cell, color in ((start, st.start), (goal, st.goal)):
        if cell is None:
            continue
        cx = (cell[0] + 0.5) * s
        cy = (cell[1] + 0.5) * s
        r = st.marker_radius * s
        x0 = max(0, math.floor(cx - r))
        x1 = min(pw - 1, math.ceil(cx + r))
        y0 = max(0, math.floor(cy - r))
        y1 = min(ph - 1, math.ceil(cy + r))
        if x0 > x1 or y0 > y1:
            continue
        xs = np.arange(x0, x1 + 1, dtype=np.float64) + 0.5 - cx
        ys = np.arange(y0, y1 + 1, dtype=np.float64) + 0.5 - cy
        disc = (xs * xs)[None, :] + (ys * ys)[:, None] <= r * r
        img[y0 : y1 + 1, x0 : x1 + 1][disc] = np.array(color, dtype=np.uint8)

    return RasterRgb(img)
