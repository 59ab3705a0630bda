"""Command-line interface: plan, simulate, compare, validate-map.

Exit codes: 0 success, 1 configuration error, 2 I/O error (unreadable or
malformed files), 3 scenario error (e.g. invalid start).  Errors also
emit one machine-readable JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .config import ConfigError, ParsedConfig, parse_config_full
from .fire import init_fire, step_fire
from .grid import CellClass, passable_components
from .planner import InvalidStartError, NoPath, plan
from .raster import BandError, PpmError, decode_band, decode_ppm, encode_ppm, grid_from_image, ndvi, weight_roads_by_ndvi
from .render import RenderStyle, render_frame
from .scenario import ScenarioError, compare_static_dynamic, run_scenario, trace_to_jsonl


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fireroute", description="Fire-aware escape route planning")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="scenario config JSON")
        p.add_argument("--out-dir", default=".", help="output directory")
        p.add_argument("--style", choices=("default", "paper"), default="default")

    p_plan = sub.add_parser("plan", description="Static route, no fire")
    add_common(p_plan)

    p_sim = sub.add_parser("simulate", description="Dynamic scenario with replanning")
    add_common(p_sim)
    p_sim.add_argument("--frames", action="store_true", help="write per-tick PPM frames")
    p_sim.add_argument("--seed", type=int, default=None, help="override sim.seed")

    p_cmp = sub.add_parser("compare", description="Static baseline vs dynamic run")
    add_common(p_cmp)
    p_cmp.add_argument("--seed", type=int, default=None, help="override sim.seed")

    p_val = sub.add_parser("validate-map", description="Check a map image")
    p_val.add_argument("--map", required=True, help="PPM map image")

    return parser


def _read(path: str) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def _resolve(base: str, path: str) -> str:
    return path if os.path.isabs(path) else os.path.join(base, path)


def _load_world(parsed: ParsedConfig, base: str):
    """Build the grid (with optional vegetation reweighting) and final scenario."""
    grid = grid_from_image(decode_ppm(_read(_resolve(base, parsed.map_path))))
    try:
        if parsed.ndvi_nir_path is not None:
            nir = decode_band(_read(_resolve(base, parsed.ndvi_nir_path)))
            red = decode_band(_read(_resolve(base, parsed.ndvi_red_path)))
            grid = weight_roads_by_ndvi(grid, ndvi(nir, red), parsed.ndvi_tau)
        scenario = parsed.scenario
        if parsed.flammability_path is not None:
            band = decode_band(_read(_resolve(base, parsed.flammability_path)))
            scenario = replace(scenario, fire=replace(scenario.fire, flammability=band))
    except (PpmError, BandError, OSError, ConfigError):
        raise
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return grid, scenario


def _style_for(parsed: ParsedConfig, style_name: str) -> RenderStyle:
    if style_name == "paper":
        return replace(parsed.render, path=(255, 0, 0))
    return parsed.render


def _path_json(path):
    return [[int(c[0]), int(c[1])] for c in path]


def _cmd_plan(args) -> int:
    parsed = parse_config_full(_read(args.config))
    base = os.path.dirname(os.path.abspath(args.config))
    grid, scenario = _load_world(parsed, base)
    style = _style_for(parsed, args.style)
    result = plan(grid, None, scenario.start, scenario.goal, scenario.planner)
    if isinstance(result, NoPath):
        report = {"no_path": True, "expanded": result.expanded}
        paths = ()
    else:
        report = {
            "path": _path_json(result.path),
            "total_cost": result.total_cost,
            "expanded": result.expanded,
        }
        paths = (result.path,)
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "plan.json"), "w", encoding="utf-8") as f:
        json.dump(report, f)
        f.write("\n")
    frame = render_frame(grid, None, paths, scenario.start, scenario.goal, style)
    with open(os.path.join(args.out_dir, "plan.ppm"), "wb") as f:
        f.write(encode_ppm(frame))
    print(json.dumps(report))
    return 0


def _replay_frames(grid, scenario, trace, style, out_dir):
    """Re-run the fire (same seed, hence identical) to draw per-tick frames."""
    fire = init_fire(scenario.fire, grid, scenario.seed) if scenario.fire_enabled else None

    def write(tick, paths):
        frame = render_frame(grid, fire, paths, scenario.start, scenario.goal, style)
        with open(os.path.join(out_dir, f"frame_{tick:04d}.ppm"), "wb") as f:
            f.write(encode_ppm(frame))

    write(0, ())
    executed = [scenario.start]
    for record in trace.records:
        if fire is not None and fire.tick < scenario.fire.num_steps:
            step_fire(fire, grid, scenario.fire)
        if record.planned_path is not None and record.moved > 0:
            executed.extend(record.planned_path[1 : record.moved + 1])
        paths = [executed]
        if record.planned_path is not None:
            paths.append(record.planned_path)
        write(record.tick, paths)


def _cmd_simulate(args) -> int:
    parsed = parse_config_full(_read(args.config))
    base = os.path.dirname(os.path.abspath(args.config))
    grid, scenario = _load_world(parsed, base)
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)
    style = _style_for(parsed, args.style)
    trace = run_scenario(scenario, grid)
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "trace.jsonl"), "w", encoding="utf-8") as f:
        f.write(trace_to_jsonl(trace))
    if args.frames:
        _replay_frames(grid, scenario, trace, style, args.out_dir)
    summary = {
        "outcome": trace.outcome,
        "executed_cost": trace.executed_cost,
        "ticks": trace.ticks,
        "seed": trace.seed,
    }
    print(json.dumps(summary))
    return 0


def _cmd_compare(args) -> int:
    parsed = parse_config_full(_read(args.config))
    base = os.path.dirname(os.path.abspath(args.config))
    grid, scenario = _load_world(parsed, base)
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)
    style = _style_for(parsed, args.style)
    report = compare_static_dynamic(scenario, grid)
    traces = report["traces"]
    out = {
        "static_cost": report["static_cost"],
        "dynamic_executed_cost": report["dynamic_executed_cost"],
        "paths": {
            "static": _path_json(report["paths"]["static"]),
            "dynamic": _path_json(report["paths"]["dynamic"]),
        },
        "outcomes": report["outcomes"],
    }
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "report.json"), "w", encoding="utf-8") as f:
        json.dump(out, f)
        f.write("\n")
    static_frame = render_frame(
        grid, None, (report["paths"]["static"],), scenario.start, scenario.goal, style
    )
    with open(os.path.join(args.out_dir, "static.ppm"), "wb") as f:
        f.write(encode_ppm(static_frame))
    dynamic_trace = traces["dynamic"]
    fire = init_fire(scenario.fire, grid, scenario.seed)
    for _ in range(min(dynamic_trace.ticks, scenario.fire.num_steps)):
        step_fire(fire, grid, scenario.fire)
    dynamic_frame = render_frame(
        grid, fire, (report["paths"]["dynamic"],), scenario.start, scenario.goal, style
    )
    with open(os.path.join(args.out_dir, "dynamic.ppm"), "wb") as f:
        f.write(encode_ppm(dynamic_frame))
    print(json.dumps(out))
    return 0


def _cmd_validate_map(args) -> int:
    grid = grid_from_image(decode_ppm(_read(args.map)))
    counts = grid.class_counts()
    report = {
        "width": grid.width,
        "height": grid.height,
        "counts": {
            "impassable": counts[CellClass.IMPASSABLE],
            "good": counts[CellClass.GOOD],
            "poor": counts[CellClass.POOR],
        },
        "components": passable_components(grid),
    }
    print(json.dumps(report))
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "compare":
            return _cmd_compare(args)
        return _cmd_validate_map(args)
    except ConfigError as e:
        print(json.dumps({"error": "config", "message": str(e)}), file=sys.stderr)
        return 1
    except (PpmError, BandError, OSError) as e:
        print(json.dumps({"error": "io", "message": str(e)}), file=sys.stderr)
        return 2
    except (ScenarioError, InvalidStartError) as e:
        print(json.dumps({"error": "scenario", "message": str(e)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
