"""Wildfire spread simulation and dynamic escape-route planning on road rasters."""

from ._accel import NUMBA_ACTIVE
from .config import ConfigError, ParsedConfig, parse_config, parse_config_full
from .fire import (
    FireParams,
    FireState,
    burning_hash,
    init_fire,
    is_burning,
    perturb_wind,
    step_fire,
    trace_line,
)
from .grid import (
    BLOCKED,
    CARDINAL,
    DIAGONAL,
    CellClass,
    Coord,
    CostModel,
    RoadGrid,
    neighbors8,
    normalize_burning,
    passable_components,
    step_cost,
)
from .planner import (
    InvalidStartError,
    NoPath,
    PlannerConfig,
    PlanResult,
    SearchNode,
    dijkstra_oracle,
    heuristic,
    plan,
)
from .raster import (
    BandError,
    BandRaster,
    PpmError,
    RasterRgb,
    decode_band,
    decode_ppm,
    encode_band,
    encode_ppm,
    grid_from_image,
    ndvi,
    weight_roads_by_ndvi,
)
from .render import RenderStyle, render_frame
from .rng import RngStream
from .scenario import (
    ScenarioConfig,
    ScenarioError,
    ScenarioTrace,
    TickRecord,
    compare_static_dynamic,
    run_scenario,
    trace_to_jsonl,
)

__version__ = "0.1.0"

__all__ = [
    "BLOCKED",
    "BandError",
    "BandRaster",
    "CARDINAL",
    "CellClass",
    "ConfigError",
    "Coord",
    "CostModel",
    "DIAGONAL",
    "FireParams",
    "FireState",
    "InvalidStartError",
    "NoPath",
    "NUMBA_ACTIVE",
    "ParsedConfig",
    "PlanResult",
    "PlannerConfig",
    "PpmError",
    "RasterRgb",
    "RenderStyle",
    "RngStream",
    "RoadGrid",
    "ScenarioConfig",
    "ScenarioError",
    "ScenarioTrace",
    "SearchNode",
    "TickRecord",
    "burning_hash",
    "compare_static_dynamic",
    "decode_band",
    "decode_ppm",
    "dijkstra_oracle",
    "encode_band",
    "encode_ppm",
    "grid_from_image",
    "heuristic",
    "init_fire",
    "is_burning",
    "ndvi",
    "neighbors8",
    "normalize_burning",
    "parse_config",
    "parse_config_full",
    "passable_components",
    "perturb_wind",
    "plan",
    "render_frame",
    "run_scenario",
    "step_cost",
    "step_fire",
    "trace_line",
    "trace_to_jsonl",
    "weight_roads_by_ndvi",
]
