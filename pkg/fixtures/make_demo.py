#!/usr/bin/env python3
"""Regenerate the demo fixtures (map.ppm, config.json) in this directory.

The map is a 48x32 test world: slow open terrain ringed by an impassable
border, with a fast road loop.  The main road runs along the south, a
bypass along the north, and two connectors join them.  The fire starts
just north of the main road and is blown south across it, which forces a
dynamic replan onto the bypass midway through a run.
"""

import json
import os

import numpy as np

from fireroute.grid import CellClass
from fireroute.raster import RasterRgb, encode_ppm

W, H = 48, 32
MAIN_Y, BYPASS_Y = 24, 6
WEST_X, EAST_X = 4, 43

COLORS = {
    CellClass.IMPASSABLE.value: (0, 0, 0),
    CellClass.GOOD.value: (0, 255, 0),
    CellClass.POOR.value: (255, 255, 255),
}


def build_classes() -> np.ndarray:
    classes = np.full((H, W), CellClass.POOR.value, dtype=np.int8)
    classes[0, :] = classes[-1, :] = CellClass.IMPASSABLE.value
    classes[:, 0] = classes[:, -1] = CellClass.IMPASSABLE.value
    classes[MAIN_Y, 2:46] = CellClass.GOOD.value
    classes[BYPASS_Y, 2:46] = CellClass.GOOD.value
    classes[BYPASS_Y : MAIN_Y + 1, WEST_X] = CellClass.GOOD.value
    classes[BYPASS_Y : MAIN_Y + 1, EAST_X] = CellClass.GOOD.value
    return classes


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    classes = build_classes()
    pixels = np.zeros((H, W, 3), dtype=np.uint8)
    for value, color in COLORS.items():
        pixels[classes == value] = color
    with open(os.path.join(here, "map.ppm"), "wb") as f:
        f.write(encode_ppm(RasterRgb(pixels)))

    config = {
        "map": "map.ppm",
        "start": [2, MAIN_Y],
        "goal": [45, MAIN_Y],
        "fire": {
            "x": 24.0,
            "y": 20.0,
            "radius": 1.5,
            "spread_probability": 0.25,
            "wind_speed": 0.3,
            "wind_direction_deg": 90.0,
            "wind_jitter_deg": 10.0,
            "radius_growth": 0.25,
        },
        "sim": {"num_steps": 16, "seed": 7, "max_ticks": 60, "agent_speed": 2},
        "render": {"scale": 8, "marker_radius": 1.5},
    }
    with open(os.path.join(here, "config.json"), "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")
    print(f"wrote map.ppm ({W}x{H}) and config.json to {here}")


if __name__ == "__main__":
    main()
