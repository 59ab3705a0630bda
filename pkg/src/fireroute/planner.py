"""Weighted A* route planning over road grids with fire-aware step costs.

Two heuristic modes: "paper" weights the diagonal-distance heuristic by the
evaluated node's own road class (fast, inadmissible on poor roads, may
return suboptimal paths), "admissible" uses good-road weights everywhere
and is exact.  A structurally independent Dijkstra oracle provides ground
truth for verification.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from ._accel import NUMBA_ACTIVE, jit_kernel
from .grid import (
    CARDINAL,
    DIAGONAL,
    NEIGHBOR_OFFSETS,
    BLOCKED,
    CellClass,
    Coord,
    CostModel,
    RoadGrid,
    burning_mask_from,
    dilate_chebyshev,
    step_cost,
)

HEURISTIC_MODES = ("paper", "admissible")
TIE_BREAKS = ("prefer-larger-g", "fifo")


@dataclass(frozen=True)
class PlannerConfig:
    cost_model: CostModel = field(default_factory=CostModel)
    heuristic_mode: str = "paper"
    tie_break: str = "prefer-larger-g"

    def __post_init__(self):
        if self.heuristic_mode not in HEURISTIC_MODES:
            raise ValueError(f"heuristic_mode must be one of {HEURISTIC_MODES}")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"tie_break must be one of {TIE_BREAKS}")


@dataclass(frozen=True)
class SearchNode:
    """One evaluated node; f is maintained as exactly g + h."""

    coord: Coord
    g: float
    h: float
    parent: Coord | None = None

    @property
    def f(self) -> float:
        return self.g + self.h


@dataclass(frozen=True)
class PlanResult:
    path: tuple[Coord, ...]
    total_cost: float
    expanded: int

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoPath:
    expanded: int

    def __bool__(self) -> bool:
        return False


class InvalidStartError(ValueError):
    """Start cell unusable: out of bounds, impassable, burning, or inside the safety margin."""


def heuristic(config: PlannerConfig, n: Coord, goal: Coord, class_of_n: CellClass) -> float:
    """Diagonal-distance estimate d1*max(dx,dy) + (d2-d1)*min(dx,dy).

    Weights come from the node's class in paper mode (impassable treated
    as good; such nodes are never expanded) and from the good class in
    admissible mode.
    """
    model = config.cost_model
    if config.heuristic_mode == "paper" and class_of_n is CellClass.POOR:
        d1, d2 = model.d1_poor, model.d2_poor
    else:
        d1, d2 = model.d1_good, model.d2_good
    dx = abs(n[0] - goal[0])
    dy = abs(n[1] - goal[1])
    maxd = dx if dx > dy else dy
    mind = dy if dx > dy else dx
    return d1 * maxd + (d2 - d1) * mind


def _search_loop(terrain, sx, sy, gx, gy, card, diag, d1, d2, tie_fifo):
    # Self-contained best-first search: manual 4-ary heap over parallel
    # arrays so the same source runs compiled or interpreted.  terrain holds
    # the cell class with blocked cells already zeroed, so traversability is
    # one load per neighbour.  Ordering is f ascending, ties by insertion
    # order (fifo) or by larger g then row-major flat index; every key is
    # unique, so pop order is total and independent of the heap arity.
    h, w = terrain.shape
    ncells = h * w
    cflat = terrain.reshape(ncells)
    gbest = np.full(ncells, np.inf, dtype=np.float64)
    closed = np.zeros(ncells, dtype=np.bool_)
    parent = np.full(ncells, -1, dtype=np.int32)
    dd = d2 - d1

    offx = np.array((0, 1, 1, 1, 0, -1, -1, -1), dtype=np.int64)
    offy = np.array((-1, -1, 0, 1, 1, 1, 0, -1), dtype=np.int64)

    cap = 1024
    hf = np.empty(cap, dtype=np.float64)
    hg = np.empty(cap, dtype=np.float64)
    hc = np.empty(cap, dtype=np.int32)
    hs = np.empty(cap, dtype=np.int32)

    scls = terrain[sy, sx]
    dx0 = abs(sx - gx)
    dy0 = abs(sy - gy)
    maxd = dx0 if dx0 > dy0 else dy0
    mind = dy0 if dx0 > dy0 else dx0
    sflat = sy * w + sx
    gflat = gy * w + gx
    gbest[sflat] = 0.0
    hf[0] = d1[scls] * maxd + dd[scls] * mind
    hg[0] = 0.0
    hc[0] = sflat
    hs[0] = 0
    size = 1
    seq = 1
    expanded = 0
    found = False
    total = 0.0

    while size > 0:
        g0 = hg[0]
        c0 = hc[0]
        size -= 1
        if size > 0:
            hf[0] = hf[size]
            hg[0] = hg[size]
            hc[0] = hc[size]
            hs[0] = hs[size]
            i = 0
            while True:
                child = 4 * i + 1
                if child >= size:
                    break
                last = 4 * i + 4
                if last >= size:
                    last = size - 1
                m = child
                for j in range(child + 1, last + 1):
                    pick = False
                    if hf[j] < hf[m]:
                        pick = True
                    elif hf[j] == hf[m]:
                        if tie_fifo:
                            pick = hs[j] < hs[m]
                        elif hg[j] != hg[m]:
                            pick = hg[j] > hg[m]
                        else:
                            pick = hc[j] < hc[m]
                    if pick:
                        m = j
                better = False
                if hf[m] < hf[i]:
                    better = True
                elif hf[m] == hf[i]:
                    if tie_fifo:
                        better = hs[m] < hs[i]
                    elif hg[m] != hg[i]:
                        better = hg[m] > hg[i]
                    else:
                        better = hc[m] < hc[i]
                if not better:
                    break
                tf = hf[i]; hf[i] = hf[m]; hf[m] = tf
                tg = hg[i]; hg[i] = hg[m]; hg[m] = tg
                tc = hc[i]; hc[i] = hc[m]; hc[m] = tc
                ts = hs[i]; hs[i] = hs[m]; hs[m] = ts
                i = m

        if g0 != gbest[c0]:
            continue
        if closed[c0]:
            continue
        closed[c0] = True
        expanded += 1
        if c0 == gflat:
            found = True
            total = g0
            break

        cx = c0 % w
        cy = c0 // w
        for k in range(8):
            nx = cx + offx[k]
            ny = cy + offy[k]
            if nx < 0 or nx >= w or ny < 0 or ny >= h:
                continue
            nflat = ny * w + nx
            ncls = cflat[nflat]
            if ncls == 0:
                continue
            step = diag[ncls] if k % 2 == 1 else card[ncls]
            ng = g0 + step
            if ng < gbest[nflat]:
                gbest[nflat] = ng
                parent[nflat] = c0
                closed[nflat] = False
                ddx = abs(nx - gx)
                ddy = abs(ny - gy)
                nmaxd = ddx if ddx > ddy else ddy
                nmind = ddy if ddx > ddy else ddx
                nf = ng + d1[ncls] * nmaxd + dd[ncls] * nmind
                if size == cap:
                    ncap = cap * 2
                    t1 = np.empty(ncap, dtype=np.float64)
                    t1[:size] = hf[:size]
                    hf = t1
                    t2 = np.empty(ncap, dtype=np.float64)
                    t2[:size] = hg[:size]
                    hg = t2
                    t3 = np.empty(ncap, dtype=np.int32)
                    t3[:size] = hc[:size]
                    hc = t3
                    t4 = np.empty(ncap, dtype=np.int32)
                    t4[:size] = hs[:size]
                    hs = t4
                    cap = ncap
                hf[size] = nf
                hg[size] = ng
                hc[size] = nflat
                hs[size] = seq
                seq += 1
                i = size
                size += 1
                while i > 0:
                    pi = (i - 1) // 4
                    better = False
                    if hf[i] < hf[pi]:
                        better = True
                    elif hf[i] == hf[pi]:
                        if tie_fifo:
                            better = hs[i] < hs[pi]
                        elif hg[i] != hg[pi]:
                            better = hg[i] > hg[pi]
                        else:
                            better = hc[i] < hc[pi]
                    if not better:
                        break
                    tf = hf[i]; hf[i] = hf[pi]; hf[pi] = tf
                    tg = hg[i]; hg[i] = hg[pi]; hg[pi] = tg
                    tc = hc[i]; hc[i] = hc[pi]; hc[pi] = tc
                    ts = hs[i]; hs[i] = hs[pi]; hs[pi] = ts
                    i = pi

    return found, total, expanded, parent


_search_jit = jit_kernel(_search_loop)


def _blocked_mask(grid: RoadGrid, burning, margin: int) -> np.ndarray:
    mask = burning_mask_from(burning, grid.width, grid.height)
    return dilate_chebyshev(mask, margin)


def _check_start(grid: RoadGrid, blocked: np.ndarray, start: Coord) -> None:
    if not grid.in_bounds(start):
        raise InvalidStartError(f"start {tuple(start)} out of bounds")
    if grid.cell_class(start) is CellClass.IMPASSABLE:
        raise InvalidStartError(f"start {tuple(start)} is impassable")
    if blocked[start[1], start[0]]:
        raise InvalidStartError(f"start {tuple(start)} is burning or inside the safety margin")


def plan(
    grid: RoadGrid,
    burning,
    start: Coord,
    goal: Coord,
    config: PlannerConfig | None = None,
) -> PlanResult | NoPath:
    """Best-first search from start to goal avoiding fire; see module doc.

    burning accepts anything burning_mask_from does: None, a predicate, a
    boolean mask, a fire state, or a container of coordinates.
    """
    cfg = config or PlannerConfig()
    model = cfg.cost_model
    blocked = _blocked_mask(grid, burning, model.safety_margin)
    _check_start(grid, blocked, start)
    if not grid.in_bounds(goal):
        return NoPath(expanded=0)

    card = np.array([np.inf, model.cardinal_good, model.cardinal_poor], dtype=np.float64)
    diag = np.array([np.inf, model.diagonal_good, model.diagonal_poor], dtype=np.float64)
    if cfg.heuristic_mode == "paper":
        d1 = np.array([model.d1_good, model.d1_good, model.d1_poor], dtype=np.float64)
        d2 = np.array([model.d2_good, model.d2_good, model.d2_poor], dtype=np.float64)
    else:
        d1 = np.full(3, model.d1_good, dtype=np.float64)
        d2 = np.full(3, model.d2_good, dtype=np.float64)

    terrain = grid.classes.copy()
    terrain[blocked] = 0

    loop = _search_jit if NUMBA_ACTIVE else _search_loop
    found, total, expanded, parent = loop(
        terrain,
        int(start[0]),
        int(start[1]),
        int(goal[0]),
        int(goal[1]),
        card,
        diag,
        d1,
        d2,
        cfg.tie_break == "fifo",
    )
    expanded = int(expanded)
    if not found:
        return NoPath(expanded=expanded)
    w = grid.width
    cells = []
    cur = goal[1] * w + goal[0]
    while cur != -1:
        cells.append(Coord(cur % w, cur // w))
        cur = int(parent[cur])
    cells.reverse()
    return PlanResult(path=tuple(cells), total_cost=float(total), expanded=expanded)


def dijkstra_oracle(
    grid: RoadGrid,
    burning,
    start: Coord,
    goal: Coord,
    cost_model: CostModel | None = None,
) -> PlanResult | NoPath:
    """Uniform-cost search giving the provably minimal cost.

    Kept structurally independent of plan (heapq over dicts, entry costs
    tabulated directly from step_cost) so the two can verify each other.
    """
    model = cost_model or CostModel()
    from .grid import normalize_burning

    pred = normalize_burning(burning)
    blocked = _blocked_mask(grid, burning, model.safety_margin)
    _check_start(grid, blocked, start)
    if not grid.in_bounds(goal):
        return NoPath(expanded=0)

    w, h = grid.width, grid.height
    card_tab = np.empty((h, w), dtype=np.float64)
    diag_tab = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            c = step_cost(model, Coord(x, y), CARDINAL, grid, pred)
            card_tab[y, x] = np.inf if c is BLOCKED else c
            d = step_cost(model, Coord(x, y), DIAGONAL, grid, pred)
            diag_tab[y, x] = np.inf if d is BLOCKED else d

    sflat = start[1] * w + start[0]
    gflat = goal[1] * w + goal[0]
    dist = {sflat: 0.0}
    parent = {sflat: -1}
    done = set()
    heap = [(0.0, sflat)]
    expanded = 0
    while heap:
        g0, c0 = heapq.heappop(heap)
        if c0 in done or g0 > dist[c0]:
            continue
        done.add(c0)
        expanded += 1
        if c0 == gflat:
            cells = []
            cur = c0
            while cur != -1:
                cells.append(Coord(cur % w, cur // w))
                cur = parent[cur]
            cells.reverse()
            return PlanResult(path=tuple(cells), total_cost=g0, expanded=expanded)
        cx, cy = c0 % w, c0 // w
        for dx, dy, kind in NEIGHBOR_OFFSETS:
            nx, ny = cx + dx, cy + dy
            if not (0 <= nx < w and 0 <= ny < h):
                continue
            cost = diag_tab[ny, nx] if kind == DIAGONAL else card_tab[ny, nx]
            if cost == np.inf:
                continue
            ng = g0 + cost
            nflat = ny * w + nx
            if ng < dist.get(nflat, np.inf):
                dist[nflat] = ng
                parent[nflat] = c0
                heapq.heappush(heap, (ng, nflat))
    return NoPath(expanded=expanded)
