"""Wind-driven stochastic fire spread as a deterministic, seedable tick process.

Each tick applies, in order: wind jitter, source advection, disc ignition
around the source, synchronous probabilistic spread from the pre-tick
burning frontier, radius growth, tick increment.  All randomness comes
from one splitmix64 stream with a documented draw order (one draw for
wind, then one per spread candidate in row-major order), so runs are
bit-exact across the compiled and vectorized execution paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._accel import NUMBA_ACTIVE, jit_kernel
from .grid import Coord, RoadGrid
from .raster import BandRaster
from .rng import GOLDEN, MASK64, MIX1, MIX2, RngStream

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


@dataclass(frozen=True)
class FireParams:
    """Fire model inputs.

    wind_direction_deg measures 0 at +x increasing toward +y; wind speed
    is in cells per tick.  flammability, if given, multiplies the spread
    probability per cell and is clamped to [0, 1].
    """

    fire_x: float
    fire_y: float
    radius: float
    spread_probability: float
    wind_speed: float
    wind_direction_deg: float
    num_steps: int
    wind_jitter_deg: float = 15.0
    radius_growth: float = 1.0
    flammability: BandRaster | None = None

    def __post_init__(self):
        if not 0.0 <= self.spread_probability <= 1.0:
            raise ValueError("spread_probability must be in [0, 1]")
        if self.wind_speed < 0.0:
            raise ValueError("wind_speed must be >= 0")
        if self.radius < 0.0:
            raise ValueError("radius must be >= 0")
        if self.radius_growth < 0.0:
            raise ValueError("radius_growth must be >= 0")
        if self.wind_jitter_deg < 0.0:
            raise ValueError("wind_jitter_deg must be >= 0")
        if self.num_steps < 0:
            raise ValueError("num_steps must be >= 0")
        if self.flammability is not None:
            clamped = np.clip(self.flammability.samples, 0.0, 1.0)
            object.__setattr__(self, "flammability", BandRaster(clamped))


@dataclass(eq=False)
class FireState:
    """Mutable state of one fire run.

    burning_mask is the authoritative burning set; ``burning`` offers a
    set-of-coordinates view.  _bbox is an inclusive (x0, y0, x1, y1)
    superset of the burning cells (None while nothing burns), kept so
    per-tick work scales with the fire, not the grid.
    """

    burning_mask: np.ndarray
    source_x: float
    source_y: float
    radius: float
    wind_direction_deg: float
    tick: int
    rng: RngStream
    burning_count: int = 0
    _bbox: tuple[int, int, int, int] | None = None
    _flam: np.ndarray = field(default=None, repr=False)

    @property
    def burning(self) -> frozenset[Coord]:
        return frozenset(
            Coord(int(x), int(y)) for y, x in np.argwhere(self.burning_mask)
        )

    @property
    def source(self) -> tuple[float, float]:
        return (self.source_x, self.source_y)


def _disc_fill(mask, sx, sy, r, x0, x1, y0, y1):
    # Marks cells whose integer center lies within Euclidean r of (sx, sy).
    ignited = 0
    rr = r * r
    for y in range(y0, y1 + 1):
        dy = y - sy
        for x in range(x0, x1 + 1):
            dx = x - sx
            if dx * dx + dy * dy <= rr and not mask[y, x]:
                mask[y, x] = True
                ignited += 1
    return ignited


def _spread_scan(pre, mask, flam, p, state, x0, x1, y0, y1):
    # Row-major scan; one splitmix64 draw per candidate, strict u < p*f test.
    # Written to run identically under numba (uint64 wrap) and plain Python
    # (arbitrary precision, hence the explicit masking).
    h, w = pre.shape
    draws = 0
    ignited = 0
    s = state
    for y in range(y0, y1 + 1):
        for x in range(x0, x1 + 1):
            if mask[y, x]:
                continue
            adjacent = (
                (x > 0 and pre[y, x - 1])
                or (x + 1 < w and pre[y, x + 1])
                or (y > 0 and pre[y - 1, x])
                or (y + 1 < h and pre[y + 1, x])
                or (x > 0 and y > 0 and pre[y - 1, x - 1])
                or (x + 1 < w and y > 0 and pre[y - 1, x + 1])
                or (x > 0 and y + 1 < h and pre[y + 1, x - 1])
                or (x + 1 < w and y + 1 < h and pre[y + 1, x + 1])
            )
            if not adjacent:
                continue
            draws += 1
            s = (s + GOLDEN) & MASK64
            z = s
            z = ((z ^ (z >> 30)) * MIX1) & MASK64
            z = ((z ^ (z >> 27)) * MIX2) & MASK64
            z = z ^ (z >> 31)
            u = (z >> 11) * 2.0**-53
            if u < p * flam[y, x]:
                mask[y, x] = True
                ignited += 1
    return draws, ignited


_disc_jit = jit_kernel(_disc_fill)
_spread_jit = jit_kernel(_spread_scan)


def _disc_vec(mask, sx, sy, r, x0, x1, y0, y1):
    xs = np.arange(x0, x1 + 1, dtype=np.float64) - sx
    ys = np.arange(y0, y1 + 1, dtype=np.float64) - sy
    within = (xs * xs)[None, :] + (ys * ys)[:, None] <= r * r
    sub = mask[y0 : y1 + 1, x0 : x1 + 1]
    ignited = int(np.count_nonzero(within & ~sub))
    sub |= within
    return ignited


def _spread_vec(pre, mask, flam, p, state, x0, x1, y0, y1):
    win = (slice(y0, y1 + 1), slice(x0, x1 + 1))
    pw = pre[win]
    adj = np.zeros_like(pw)
    adj[1:, :] |= pw[:-1, :]
    adj[:-1, :] |= pw[1:, :]
    adj[:, 1:] |= pw[:, :-1]
    adj[:, :-1] |= pw[:, 1:]
    adj[1:, 1:] |= pw[:-1, :-1]
    adj[1:, :-1] |= pw[:-1, 1:]
    adj[:-1, 1:] |= pw[1:, :-1]
    adj[:-1, :-1] |= pw[1:, 1:]
    mw = mask[win]
    cand = adj & ~mw
    draws = int(np.count_nonzero(cand))
    if draws == 0:
        return 0, 0
    # Counter-based splitmix64: word k is mix(state + k*GOLDEN), so the
    # whole batch vectorizes.  uint64 arrays wrap silently by design.
    z = np.arange(1, draws + 1, dtype=np.uint64) * np.uint64(GOLDEN) + np.uint64(state)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    z = z ^ (z >> np.uint64(31))
    u = (z >> np.uint64(11)).astype(np.float64) * 2.0**-53
    ignite = u < p * flam[win][cand]
    mw[cand] = ignite
    return draws, int(np.count_nonzero(ignite))


def _merge_bbox(bbox, x0, y0, x1, y1):
    if bbox is None:
        return (x0, y0, x1, y1)
    return (min(bbox[0], x0), min(bbox[1], y0), max(bbox[2], x1), max(bbox[3], y1))


def init_fire(params: FireParams, grid: RoadGrid, seed: int) -> FireState:
    """Seed a fire: ignite the disc of the initial radius around the source."""
    w, h = grid.width, grid.height
    sx, sy = float(params.fire_x), float(params.fire_y)
    if not (0.0 <= sx <= w - 1 and 0.0 <= sy <= h - 1):
        raise ValueError(f"fire source ({sx}, {sy}) outside {w}x{h} grid")
    if params.flammability is not None and params.flammability.samples.shape != (h, w):
        raise ValueError("flammability shape does not match grid")
    state = FireState(
        burning_mask=np.zeros((h, w), dtype=np.bool_),
        source_x=sx,
        source_y=sy,
        radius=float(params.radius),
        wind_direction_deg=float(params.wind_direction_deg),
        tick=0,
        rng=RngStream(seed),
    )
    state._flam = (
        np.ones((h, w), dtype=np.float64)
        if params.flammability is None
        else params.flammability.samples
    )
    _ignite_disc(state, w, h)
    return state


def _ignite_disc(state: FireState, w: int, h: int) -> int:
    sx, sy, r = state.source_x, state.source_y, state.radius
    x0 = max(0, math.ceil(sx - r))
    x1 = min(w - 1, math.floor(sx + r))
    y0 = max(0, math.ceil(sy - r))
    y1 = min(h - 1, math.floor(sy + r))
    if x0 > x1 or y0 > y1:
        return 0
    if NUMBA_ACTIVE:
        ignited = int(_disc_jit(state.burning_mask, sx, sy, r, x0, x1, y0, y1))
    else:
        ignited = _disc_vec(state.burning_mask, sx, sy, r, x0, x1, y0, y1)
    if ignited:
        state.burning_count += ignited
        state._bbox = _merge_bbox(state._bbox, x0, y0, x1, y1)
    return ignited


def perturb_wind(state: FireState, jitter_deg: float) -> FireState:
    """Rotate the wind by one uniform draw in [-jitter, +jitter] degrees."""
    u = state.rng.next_float()
    state.wind_direction_deg = state.wind_direction_deg + jitter_deg * (2.0 * u - 1.0)
    return state


def step_fire(state: FireState, grid: RoadGrid, params: FireParams) -> FireState:
    """Advance the fire by one tick (mutates and returns state)."""
    w, h = grid.width, grid.height

    perturb_wind(state, params.wind_jitter_deg)

    theta = math.radians(state.wind_direction_deg)
    state.source_x = min(max(state.source_x + params.wind_speed * math.cos(theta), 0.0), float(w - 1))
    state.source_y = min(max(state.source_y + params.wind_speed * math.sin(theta), 0.0), float(h - 1))

    # Spread is synchronous from the burning set as it stood before this
    # tick, so snapshot before the disc adds cells.
    pre = state.burning_mask.copy()
    pre_bbox = state._bbox

    _ignite_disc(state, w, h)

    if pre_bbox is not None:
        x0 = max(0, pre_bbox[0] - 1)
        y0 = max(0, pre_bbox[1] - 1)
        x1 = min(w - 1, pre_bbox[2] + 1)
        y1 = min(h - 1, pre_bbox[3] + 1)
        p = params.spread_probability
        if NUMBA_ACTIVE:
            draws, ignited = _spread_jit(
                pre,
                state.burning_mask,
                state._flam,
                p,
                np.uint64(state.rng.state),
                x0,
                x1,
                y0,
                y1,
            )
            draws, ignited = int(draws), int(ignited)
        else:
            draws, ignited = _spread_vec(
                pre, state.burning_mask, state._flam, p, state.rng.state, x0, x1, y0, y1
            )
        state.rng.skip(draws)
        if ignited:
            state.burning_count += ignited
            state._bbox = _merge_bbox(state._bbox, x0, y0, x1, y1)

    state.radius = min(state.radius + params.radius_growth, float(max(w, h)))
    state.tick += 1
    return state


def is_burning(state: FireState, c: Coord) -> bool:
    """Whether cell c burns; out-of-bounds cells never burn."""
    x, y = c
    h, w = state.burning_mask.shape
    if 0 <= x < w and 0 <= y < h:
        return bool(state.burning_mask[y, x])
    return False


def burning_hash(state: FireState) -> int:
    """64-bit FNV-1a over burning coords sorted by (y, x), each as LE uint32 pair."""
    h = FNV_OFFSET
    for y, x in np.argwhere(state.burning_mask):
        for b in int(x).to_bytes(4, "little") + int(y).to_bytes(4, "little"):
            h ^= b
            h = (h * FNV_PRIME) & MASK64
    return h


def trace_line(state: FireState) -> str:
    """One regression-trace line capturing the full per-tick state."""
    return (
        f"tick={state.tick} "
        f"src={state.source_x!r},{state.source_y!r} "
        f"r={state.radius!r} "
        f"theta={state.wind_direction_deg!r} "
        f"burning={state.burning_count} "
        f"hash={burning_hash(state):016x}"
    )
