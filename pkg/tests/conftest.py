import json

import numpy as np
import pytest

from fireroute import CellClass, RasterRgb, RoadGrid, encode_ppm

CLASS_COLORS = {
    CellClass.IMPASSABLE: (0, 0, 0),
    CellClass.GOOD: (0, 255, 0),
    CellClass.POOR: (255, 255, 255),
}


def grid_to_ppm(grid: RoadGrid) -> bytes:
    """Encode a grid as the map image that grid_from_image would classify back."""
    palette = np.array(
        [CLASS_COLORS[CellClass.IMPASSABLE], CLASS_COLORS[CellClass.GOOD], CLASS_COLORS[CellClass.POOR]],
        dtype=np.uint8,
    )
    return encode_ppm(RasterRgb(palette[grid.classes]))


def write_map(tmp_path, grid: RoadGrid, name="map.ppm"):
    path = tmp_path / name
    path.write_bytes(grid_to_ppm(grid))
    return path


def write_config(tmp_path, doc: dict, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def corridor_only_grid(width=40, height=20, row=1, x0=1, x1=38) -> RoadGrid:
    """Single forced corridor: every plan along it is the unique path."""
    classes = np.zeros((height, width), dtype=np.int8)
    classes[row, x0 : x1 + 1] = 1
    return RoadGrid(classes)


def two_corridor_grid(width=41, height=17) -> RoadGrid:
    """Main corridor y=14 and detour corridor y=2, joined at x=2 and x=38."""
    classes = np.zeros((height, width), dtype=np.int8)
    classes[14, 2:39] = 1
    classes[2, 2:39] = 1
    classes[2:15, 2] = 1
    classes[2:15, 38] = 1
    return RoadGrid(classes)


@pytest.fixture
def all_good_3x3():
    return RoadGrid(np.ones((3, 3), dtype=np.int8))
