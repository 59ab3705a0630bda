"""Dynamic escape loop: fire advances, route is replanned, agent moves.

Per tick the fire steps first, then the planner runs from the agent's
current cell against the fresh burning set, then the agent advances up to
its speed along the new path.  Outcomes: Escaped (reached goal), Overtaken
(cell caught fire under the agent), Trapped (still cut off at the tick
limit), TimedOut (tick limit with a route still open).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .fire import FireParams, FireState, init_fire, is_burning, step_fire
from .grid import CellClass, Coord, RoadGrid
from .planner import InvalidStartError, NoPath, PlannerConfig, plan


class ScenarioError(ValueError):
    """Configuration rejected before the simulation loop starts."""


@dataclass(frozen=True)
class ScenarioConfig:
    start: Coord
    goal: Coord
    fire: FireParams
    seed: int
    max_ticks: int
    map_path: str | None = None
    agent_speed: int = 5
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    fire_enabled: bool = True

    def __post_init__(self):
        if self.agent_speed < 1:
            raise ScenarioError("agent_speed must be >= 1")
        if self.max_ticks < 1:
            raise ScenarioError("max_ticks must be >= 1")


@dataclass(frozen=True)
class TickRecord:
    tick: int
    agent: Coord
    planned_path: tuple[Coord, ...] | None
    plan_cost: float | None
    burning_count: int
    moved: int


@dataclass(frozen=True)
class ScenarioTrace:
    records: tuple[TickRecord, ...]
    outcome: str
    executed_cost: float
    executed_path: tuple[Coord, ...]
    seed: int

    @property
    def ticks(self) -> int:
        return len(self.records)


def _edge_cost(model, grid: RoadGrid, a: Coord, b: Coord) -> float:
    cls = grid.cell_class(b)
    diagonal = a[0] != b[0] and a[1] != b[1]
    return model.diagonal_cost(cls) if diagonal else model.cardinal_cost(cls)


def _validate(config: ScenarioConfig, grid: RoadGrid) -> None:
    if not grid.in_bounds(config.start):
        raise ScenarioError(f"start {tuple(config.start)} out of bounds")
    if grid.cell_class(config.start) is CellClass.IMPASSABLE:
        raise ScenarioError(f"start {tuple(config.start)} is impassable")
    if not grid.in_bounds(config.goal):
        raise ScenarioError(f"goal {tuple(config.goal)} out of bounds")


def _load_grid(config: ScenarioConfig) -> RoadGrid:
    if config.map_path is None:
        raise ScenarioError("no grid given and config has no map_path")
    from .raster import decode_ppm, grid_from_image

    with open(config.map_path, "rb") as f:
        return grid_from_image(decode_ppm(f.read()))


def _run_static(config: ScenarioConfig, grid: RoadGrid) -> ScenarioTrace:
    # No fire at all: one plan, executed to completion regardless of the
    # tick limit.  Per-tick records log the remaining path suffix.
    model = config.planner.cost_model
    start, goal = Coord(*config.start), Coord(*config.goal)
    result = plan(grid, None, start, goal, config.planner)
    if isinstance(result, NoPath):
        record = TickRecord(1, start, None, None, 0, 0)
        return ScenarioTrace((record,), "Trapped", 0.0, (start,), config.seed)
    path = result.path
    edge_costs = [_edge_cost(model, grid, path[i - 1], path[i]) for i in range(1, len(path))]
    suffix = [0.0] * (len(path) + 1)
    for i in range(len(edge_costs) - 1, -1, -1):
        suffix[i] = edge_costs[i] + suffix[i + 1]
    records = []
    pos = 0
    tick = 0
    executed = 0.0
    k = config.agent_speed
    while pos < len(path) - 1:
        tick += 1
        planned = path[pos:]
        plan_cost = suffix[pos]
        nxt = min(pos + k, len(path) - 1)
        for i in range(pos, nxt):
            executed += edge_costs[i]
        moved = nxt - pos
        pos = nxt
        records.append(
            TickRecord(tick, path[pos], planned, plan_cost, 0, moved)
        )
    if not records:
        records.append(TickRecord(1, start, (start,), 0.0, 0, 0))
    return ScenarioTrace(tuple(records), "Escaped", executed, path, config.seed)


def run_scenario(config: ScenarioConfig, grid: RoadGrid | None = None) -> ScenarioTrace:
    """Run one scenario to an outcome; deterministic for fixed config and seed."""
    if grid is None:
        grid = _load_grid(config)
    _validate(config, grid)
    start, goal = Coord(*config.start), Coord(*config.goal)

    if not config.fire_enabled:
        return _run_static(config, grid)

    fire = init_fire(config.fire, grid, config.seed)
    if is_burning(fire, start):
        raise ScenarioError(f"start {tuple(start)} is burning at tick 0")

    if start == goal:
        return ScenarioTrace((), "Escaped", 0.0, (start,), config.seed)

    model = config.planner.cost_model
    agent = start
    executed = 0.0
    executed_path = [start]
    records: list[TickRecord] = []
    outcome = None
    last_plan_failed = False
    k = config.agent_speed

    for tick in range(1, config.max_ticks + 1):
        if fire.tick < config.fire.num_steps:
            step_fire(fire, grid, config.fire)

        if is_burning(fire, agent):
            records.append(
                TickRecord(tick, agent, None, None, fire.burning_count, 0)
            )
            outcome = "Overtaken"
            break

        try:
            result = plan(grid, fire, agent, goal, config.planner)
        except InvalidStartError:
            # Agent inside the safety margin but not burning: hold in
            # place like any other tick without a route.
            result = NoPath(expanded=0)

        if isinstance(result, NoPath):
            last_plan_failed = True
            records.append(
                TickRecord(tick, agent, None, None, fire.burning_count, 0)
            )
            continue

        last_plan_failed = False
        path = result.path
        moved = 0
        for i in range(1, min(k, len(path) - 1) + 1):
            nxt = path[i]
            if is_burning(fire, nxt):
                break
            executed += _edge_cost(model, grid, agent, nxt)
            agent = nxt
            executed_path.append(nxt)
            moved += 1
        records.append(
            TickRecord(tick, agent, path, result.total_cost, fire.burning_count, moved)
        )
        if agent == goal:
            outcome = "Escaped"
            break

    if outcome is None:
        outcome = "Trapped" if last_plan_failed else "TimedOut"
    return ScenarioTrace(tuple(records), outcome, executed, tuple(executed_path), config.seed)


def compare_static_dynamic(config: ScenarioConfig, grid: RoadGrid | None = None) -> dict:
    """Run the no-fire baseline and the dynamic scenario on the same inputs."""
    if grid is None:
        grid = _load_grid(config)
    static_cfg = ScenarioConfig(
        start=config.start,
        goal=config.goal,
        fire=config.fire,
        seed=config.seed,
        max_ticks=config.max_ticks,
        map_path=config.map_path,
        agent_speed=config.agent_speed,
        planner=config.planner,
        fire_enabled=False,
    )
    dynamic_cfg = ScenarioConfig(
        start=config.start,
        goal=config.goal,
        fire=config.fire,
        seed=config.seed,
        max_ticks=config.max_ticks,
        map_path=config.map_path,
        agent_speed=config.agent_speed,
        planner=config.planner,
        fire_enabled=True,
    )
    static = run_scenario(static_cfg, grid)
    dynamic = run_scenario(dynamic_cfg, grid)
    static_cost = static.executed_cost if static.outcome == "Escaped" else None
    return {
        "static_cost": static_cost,
        "dynamic_executed_cost": dynamic.executed_cost,
        "paths": {
            "static": static.executed_path,
            "dynamic": dynamic.executed_path,
        },
        "outcomes": {"static": static.outcome, "dynamic": dynamic.outcome},
        "traces": {"static": static, "dynamic": dynamic},
    }


def _coord_list(path) -> list[list[int]] | None:
    if path is None:
        return None
    return [[int(c[0]), int(c[1])] for c in path]


def trace_to_jsonl(trace: ScenarioTrace) -> str:
    """Serialise a trace: one record object per line, then a summary object."""
    lines = []
    for r in trace.records:
        lines.append(
            json.dumps(
                {
                    "tick": r.tick,
                    "agent": [int(r.agent[0]), int(r.agent[1])],
                    "planned_path": _coord_list(r.planned_path),
                    "plan_cost": r.plan_cost,
                    "burning_count": r.burning_count,
                    "moved": r.moved,
                },
                separators=(",", ":"),
            )
        )
    lines.append(
        json.dumps(
            {
                "outcome": trace.outcome,
                "executed_cost": trace.executed_cost,
                "ticks": trace.ticks,
                "seed": trace.seed,
            },
            separators=(",", ":"),
        )
    )
    return "\n".join(lines) + "\n"
