"""Scenario configuration: strict JSON schema with defaults.

Unknown keys are rejected, required keys must be present, and every
violation names the full key path (e.g. "out of range:
fire.spread_probability") so tooling can point at the exact field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fire import FireParams
from .grid import Coord, CostModel
from .planner import HEURISTIC_MODES, TIE_BREAKS, PlannerConfig
from .render import RenderStyle
from .scenario import ScenarioConfig


class ConfigError(ValueError):
    """Configuration document rejected."""


@dataclass(frozen=True)
class ParsedConfig:
    """Everything a run needs: the scenario plus world-building inputs."""

    scenario: ScenarioConfig
    map_path: str
    flammability_path: str | None
    ndvi_nir_path: str | None
    ndvi_red_path: str | None
    ndvi_tau: float
    render: RenderStyle


def _check_unknown(obj: dict, known: set[str], prefix: str) -> None:
    for key in sorted(obj):
        if key not in known:
            path = f"{prefix}.{key}" if prefix else key
            raise ConfigError(f"unknown key: {path}")


def _get(obj: dict, key: str, prefix: str):
    path = f"{prefix}.{key}" if prefix else key
    if key not in obj:
        raise ConfigError(f"missing key: {path}")
    return obj[key], path


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"wrong type: {path}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"wrong type: {path}")
    return value


def _boolean(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"wrong type: {path}")
    return value


def _string(value, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"wrong type: {path}")
    return value


def _object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"wrong type: {path}")
    return value


def _coord(value, path: str) -> Coord:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, int) for v in value)
    ):
        raise ConfigError(f"wrong type: {path}")
    if value[0] < 0 or value[1] < 0:
        raise ConfigError(f"out of range: {path}")
    return Coord(value[0], value[1])


def parse_config_full(data: bytes) -> ParsedConfig:
    """Parse and validate a config document; see module doc for the schema."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"invalid json: {e}") from None
    if not isinstance(doc, dict):
        raise ConfigError("wrong type: <document>")
    _check_unknown(doc, {"map", "start", "goal", "fire", "sim", "planner", "ndvi", "render"}, "")

    map_value, map_path_key = _get(doc, "map", "")
    map_path = _string(map_value, map_path_key)
    start = _coord(*_get(doc, "start", ""))
    goal = _coord(*_get(doc, "goal", ""))

    fire_obj = _object(*_get(doc, "fire", ""))
    _check_unknown(
        fire_obj,
        {
            "x",
            "y",
            "radius",
            "spread_probability",
            "wind_speed",
            "wind_direction_deg",
            "wind_jitter_deg",
            "radius_growth",
            "flammability_map",
        },
        "fire",
    )
    fire_x = _number(*_get(fire_obj, "x", "fire"))
    fire_y = _number(*_get(fire_obj, "y", "fire"))
    radius = _number(*_get(fire_obj, "radius", "fire"))
    if radius < 0:
        raise ConfigError("out of range: fire.radius")
    p = _number(*_get(fire_obj, "spread_probability", "fire"))
    if not 0.0 <= p <= 1.0:
        raise ConfigError("out of range: fire.spread_probability")
    wind_speed = _number(*_get(fire_obj, "wind_speed", "fire"))
    if wind_speed < 0:
        raise ConfigError("out of range: fire.wind_speed")
    wind_dir = _number(*_get(fire_obj, "wind_direction_deg", "fire"))
    jitter = _number(fire_obj.get("wind_jitter_deg", 15), "fire.wind_jitter_deg")
    if jitter < 0:
        raise ConfigError("out of range: fire.wind_jitter_deg")
    growth = _number(fire_obj.get("radius_growth", 1), "fire.radius_growth")
    if growth < 0:
        raise ConfigError("out of range: fire.radius_growth")
    flammability_path = None
    if "flammability_map" in fire_obj:
        flammability_path = _string(fire_obj["flammability_map"], "fire.flammability_map")

    sim_obj = _object(*_get(doc, "sim", ""))
    _check_unknown(
        sim_obj, {"num_steps", "seed", "max_ticks", "agent_speed", "fire_enabled"}, "sim"
    )
    num_steps = _integer(*_get(sim_obj, "num_steps", "sim"))
    if num_steps < 0:
        raise ConfigError("out of range: sim.num_steps")
    seed = _integer(*_get(sim_obj, "seed", "sim"))
    max_ticks = _integer(sim_obj.get("max_ticks", max(1, num_steps)), "sim.max_ticks")
    if max_ticks < 1:
        raise ConfigError("out of range: sim.max_ticks")
    agent_speed = _integer(sim_obj.get("agent_speed", 5), "sim.agent_speed")
    if agent_speed < 1:
        raise ConfigError("out of range: sim.agent_speed")
    fire_enabled = _boolean(sim_obj.get("fire_enabled", True), "sim.fire_enabled")

    planner_obj = _object(doc.get("planner", {}), "planner")
    _check_unknown(planner_obj, {"heuristic_mode", "tie_break", "safety_margin"}, "planner")
    heuristic_mode = _string(planner_obj.get("heuristic_mode", "paper"), "planner.heuristic_mode")
    if heuristic_mode not in HEURISTIC_MODES:
        raise ConfigError("out of range: planner.heuristic_mode")
    tie_break = _string(planner_obj.get("tie_break", "prefer-larger-g"), "planner.tie_break")
    if tie_break not in TIE_BREAKS:
        raise ConfigError("out of range: planner.tie_break")
    safety_margin = _integer(planner_obj.get("safety_margin", 0), "planner.safety_margin")
    if safety_margin < 0:
        raise ConfigError("out of range: planner.safety_margin")

    ndvi_nir = ndvi_red = None
    ndvi_tau = 0.3
    if "ndvi" in doc:
        ndvi_obj = _object(doc["ndvi"], "ndvi")
        _check_unknown(ndvi_obj, {"nir", "red", "tau"}, "ndvi")
        ndvi_nir = _string(*_get(ndvi_obj, "nir", "ndvi"))
        ndvi_red = _string(*_get(ndvi_obj, "red", "ndvi"))
        ndvi_tau = _number(ndvi_obj.get("tau", 0.3), "ndvi.tau")
        if not -1.0 <= ndvi_tau <= 1.0:
            raise ConfigError("out of range: ndvi.tau")

    render_obj = _object(doc.get("render", {}), "render")
    _check_unknown(render_obj, {"scale", "marker_radius"}, "render")
    scale = _integer(render_obj.get("scale", 4), "render.scale")
    if scale < 1:
        raise ConfigError("out of range: render.scale")
    marker_radius = _number(render_obj.get("marker_radius", 2), "render.marker_radius")
    if marker_radius <= 0:
        raise ConfigError("out of range: render.marker_radius")

    fire_params = FireParams(
        fire_x=fire_x,
        fire_y=fire_y,
        radius=radius,
        spread_probability=p,
        wind_speed=wind_speed,
        wind_direction_deg=wind_dir,
        num_steps=num_steps,
        wind_jitter_deg=jitter,
        radius_growth=growth,
    )
    scenario = ScenarioConfig(
        start=start,
        goal=goal,
        fire=fire_params,
        seed=seed,
        max_ticks=max_ticks,
        map_path=map_path,
        agent_speed=agent_speed,
        planner=PlannerConfig(
            cost_model=CostModel(safety_margin=safety_margin),
            heuristic_mode=heuristic_mode,
            tie_break=tie_break,
        ),
        fire_enabled=fire_enabled,
    )
    return ParsedConfig(
        scenario=scenario,
        map_path=map_path,
        flammability_path=flammability_path,
        ndvi_nir_path=ndvi_nir,
        ndvi_red_path=ndvi_red,
        ndvi_tau=ndvi_tau,
        render=RenderStyle(scale=scale, marker_radius=marker_radius),
    )


def parse_config(data: bytes) -> ScenarioConfig:
    """Parse a config document down to its scenario settings."""
    return parse_config_full(data).scenario
