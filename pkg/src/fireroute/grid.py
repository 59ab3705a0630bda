"""Raster world model: cell taxonomy, road grids, and per-step travel costs.

Coordinates are (x, y) cell indices with +x right and +y down.  Cells carry
one of three immutable classes; whether a cell is on fire is tracked
separately by the fire simulation and fed in as a predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, NamedTuple

import numpy as np


class Coord(NamedTuple):
    x: int
    y: int


class CellClass(IntEnum):
    IMPASSABLE = 0
    GOOD = 1
    POOR = 2


CARDINAL = "cardinal"
DIAGONAL = "diagonal"

# 8-neighbourhood offsets, clockwise from north (north is -y).
NEIGHBOR_OFFSETS = (
    (0, -1, CARDINAL),
    (1, -1, DIAGONAL),
    (1, 0, CARDINAL),
    (1, 1, DIAGONAL),
    (0, 1, CARDINAL),
    (-1, 1, DIAGONAL),
    (-1, 0, CARDINAL),
    (-1, -1, DIAGONAL),
)

BurningPredicate = Callable[[Coord], bool]


class Blocked:
    """Sentinel for moves the planner must never take (not an error)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BLOCKED"


BLOCKED = Blocked()

_ASCII_CLASSES = {
    "#": CellClass.IMPASSABLE,
    ".": CellClass.IMPASSABLE,
    "G": CellClass.GOOD,
    "g": CellClass.GOOD,
    "P": CellClass.POOR,
    "p": CellClass.POOR,
}


@dataclass(frozen=True, eq=False)
class RoadGrid:
    """Immutable 2D raster of cell classes, shape (height, width)."""

    classes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.classes)
        if arr.ndim != 2:
            raise ValueError("grid must be 2-dimensional")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("grid must be at least 1x1")
        arr = arr.astype(np.int8, copy=True)
        if arr.min() < 0 or arr.max() > 2:
            raise ValueError("cell classes must be in {0, 1, 2}")
        arr.setflags(write=False)
        object.__setattr__(self, "classes", arr)

    @property
    def width(self) -> int:
        return self.classes.shape[1]

    @property
    def height(self) -> int:
        return self.classes.shape[0]

    def in_bounds(self, c: Coord) -> bool:
        return 0 <= c[0] < self.width and 0 <= c[1] < self.height

    def cell_class(self, c: Coord) -> CellClass:
        return CellClass(int(self.classes[c[1], c[0]]))

    def class_counts(self) -> dict[CellClass, int]:
        flat = self.classes.ravel()
        return {cls: int(np.count_nonzero(flat == cls.value)) for cls in CellClass}

    @classmethod
    def from_ascii(cls, text: str) -> "RoadGrid":
        """Build a grid from rows of characters: G/P roads, #/. impassable."""
        rows = [line for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty grid text")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged grid text")
        arr = np.empty((len(rows), width), dtype=np.int8)
        for y, row in enumerate(rows):
            for x, ch in enumerate(row):
                try:
                    arr[y, x] = _ASCII_CLASSES[ch].value
                except KeyError:
                    raise ValueError(f"unknown grid character {ch!r}") from None
        return cls(arr)


@dataclass(frozen=True)
class CostModel:
    """Per-class step costs and heuristic weights.

    Cardinal/diagonal pairs are the good-road 1.0/1.4 and poor-road
    100.0/140.0 travel costs; d1/d2 are the matching heuristic weights.
    safety_margin widens the fire by that Chebyshev distance when blocking.
    """

    cardinal_good: float = 1.0
    cardinal_poor: float = 100.0
    diagonal_good: float = 1.4
    diagonal_poor: float = 140.0
    d1_good: float = 1.0
    d2_good: float = 1.4
    d1_poor: float = 100.0
    d2_poor: float = 140.0
    safety_margin: int = 0

    def __post_init__(self):
        costs = (
            self.cardinal_good,
            self.cardinal_poor,
            self.diagonal_good,
            self.diagonal_poor,
            self.d1_good,
            self.d2_good,
            self.d1_poor,
            self.d2_poor,
        )
        if any(v <= 0 for v in costs):
            raise ValueError("all costs and heuristic weights must be positive")
        if self.diagonal_good <= self.cardinal_good or self.diagonal_poor <= self.cardinal_poor:
            raise ValueError("diagonal cost must exceed cardinal cost per class")
        if self.d2_good <= self.d1_good or self.d2_poor <= self.d1_poor:
            raise ValueError("d2 must exceed d1 per class")
        if self.safety_margin < 0:
            raise ValueError("safety_margin must be >= 0")

    def cardinal_cost(self, cls: CellClass) -> float:
        return self.cardinal_good if cls is CellClass.GOOD else self.cardinal_poor

    def diagonal_cost(self, cls: CellClass) -> float:
        return self.diagonal_good if cls is CellClass.GOOD else self.diagonal_poor

    def d1(self, cls: CellClass) -> float:
        return self.d1_poor if cls is CellClass.POOR else self.d1_good

    def d2(self, cls: CellClass) -> float:
        return self.d2_poor if cls is CellClass.POOR else self.d2_good


def neighbors8(grid: RoadGrid, c: Coord) -> list[tuple[Coord, str]]:
    """In-bounds 8-neighbours of c with their move kind, clockwise from north."""
    if not grid.in_bounds(c):
        raise ValueError(f"coordinate {tuple(c)} outside {grid.width}x{grid.height} grid")
    x, y = c
    w, h = grid.width, grid.height
    out = []
    for dx, dy, kind in NEIGHBOR_OFFSETS:
        nx, ny = x + dx, y + dy
        if 0 <= nx < w and 0 <= ny < h:
            out.append((Coord(nx, ny), kind))
    return out


def normalize_burning(burning) -> BurningPredicate:
    """Coerce a burning-cell source into a predicate Coord -> bool.

    Accepts None (nothing burns), a callable predicate, a boolean mask
    array of grid shape, an object exposing ``burning_mask`` (a fire
    state), or any container of coordinates.
    """
    if burning is None:
        return lambda c: False
    if callable(burning):
        return burning
    mask = getattr(burning, "burning_mask", None)
    if mask is None and isinstance(burning, np.ndarray):
        mask = burning
    if mask is not None:
        if mask.dtype != np.bool_:
            raise ValueError("burning mask must be boolean")
        height, width = mask.shape

        def from_mask(c: Coord, _m=mask, _w=width, _h=height) -> bool:
            x, y = c
            return 0 <= x < _w and 0 <= y < _h and bool(_m[y, x])

        return from_mask
    cells = {Coord(int(x), int(y)) for x, y in burning}
    return lambda c, _s=cells: Coord(c[0], c[1]) in _s


def step_cost(
    model: CostModel,
    to: Coord,
    move_kind: str,
    grid: RoadGrid,
    burning: BurningPredicate,
):
    """Cost of a move entering ``to``, or BLOCKED.

    The entered cell's class sets the cost.  A move is BLOCKED when the
    destination is impassable, burning, or within safety_margin (Chebyshev)
    of a burning cell.
    """
    cls = grid.cell_class(to)
    if cls is CellClass.IMPASSABLE:
        return BLOCKED
    margin = model.safety_margin
    if margin == 0:
        if burning(to):
            return BLOCKED
    else:
        x, y = to
        for dy in range(-margin, margin + 1):
            for dx in range(-margin, margin + 1):
                if burning(Coord(x + dx, y + dy)):
                    return BLOCKED
    if move_kind == DIAGONAL:
        return model.diagonal_cost(cls)
    if move_kind == CARDINAL:
        return model.cardinal_cost(cls)
    raise ValueError(f"unknown move kind {move_kind!r}")


def burning_mask_from(burning, width: int, height: int) -> np.ndarray:
    """Materialise any burning-cell source as a boolean (height, width) mask."""
    if burning is None:
        return np.zeros((height, width), dtype=np.bool_)
    direct = getattr(burning, "burning_mask", None)
    if direct is None and isinstance(burning, np.ndarray):
        direct = burning
    if direct is not None:
        if direct.dtype != np.bool_:
            raise ValueError("burning mask must be boolean")
        if direct.shape != (height, width):
            raise ValueError("burning mask shape does not match grid")
        return direct
    mask = np.zeros((height, width), dtype=np.bool_)
    if callable(burning):
        for y in range(height):
            for x in range(width):
                if burning(Coord(x, y)):
                    mask[y, x] = True
        return mask
    for x, y in burning:
        if 0 <= x < width and 0 <= y < height:
            mask[int(y), int(x)] = True
    return mask


def dilate_chebyshev(mask: np.ndarray, margin: int) -> np.ndarray:
    """Grow a boolean mask by ``margin`` cells in Chebyshev distance."""
    if margin <= 0:
        return mask
    out = mask.copy()
    for _ in range(margin):
        grown = out.copy()
        grown[1:, :] |= out[:-1, :]
        grown[:-1, :] |= out[1:, :]
        grown[:, 1:] |= out[:, :-1]
        grown[:, :-1] |= out[:, 1:]
        grown[1:, 1:] |= out[:-1, :-1]
        grown[1:, :-1] |= out[:-1, 1:]
        grown[:-1, 1:] |= out[1:, :-1]
        grown[:-1, :-1] |= out[1:, 1:]
        out = grown
    return out


def passable_components(grid: RoadGrid) -> list[int]:
    """Sizes of 8-connected components of non-impassable cells, largest first."""
    passable = grid.classes != CellClass.IMPASSABLE.value
    seen = np.zeros_like(passable)
    h, w = passable.shape
    sizes = []
    for sy in range(h):
        for sx in range(w):
            if not passable[sy, sx] or seen[sy, sx]:
                continue
            stack = [(sx, sy)]
            seen[sy, sx] = True
            count = 0
            while stack:
                x, y = stack.pop()
                count += 1
                for dx, dy, _ in NEIGHBOR_OFFSETS:
                    nx, ny = x + dx, y + dy
                    if 0 <= nx < w and 0 <= ny < h and passable[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        stack.append((nx, ny))
            sizes.append(count)
    sizes.sort(reverse=True)
    return sizes
