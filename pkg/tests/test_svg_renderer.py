"""
Testes da renderização SVG
"""
import json
import re
from pathlib import Path
from xml.etree import ElementTree

import pytest

from nerve_forge.core.exceptions import PartitionError
from nerve_forge.models.combinatorics import Partition
from nerve_forge.models.geometry import PointSet
from nerve_forge.services.configs import config_service
from nerve_forge.services.svg_renderer import svg_renderer

DATA_DIR = Path(__file__).parent / "data"


def test_planar_render(square):
    svg = svg_renderer.render(square, Partition(n_parts=2, assignment=(0, 1, 0, 1)))
    assert svg.startswith("<?xml") or svg.startswith("<svg")
    assert svg.count("<circle") == 4


def test_deterministic(square):
    p = Partition(n_parts=2, assignment=(0, 0, 1, 1))
    assert svg_renderer.render(square, p) == svg_renderer.render(square, p)


def test_projected_render(tmp_path):
    ps = config_service.random_points(6, 3, seed=1)
    p = Partition(n_parts=2, assignment=(0, 0, 0, 1, 1, 1))
    path = svg_renderer.emit_svg(ps, p, tmp_path / "fig.svg", projection_seed=3)
    assert path.exists()
    assert "<circle" in path.read_text()


def test_size_mismatch(square):
    with pytest.raises(PartitionError):
        svg_renderer.render(square, Partition(n_parts=1, assignment=(0, 0, 0)))


def _summary(svg):
    """Estrutura do SVG: tamanho, fundo, polígonos, segmentos e círculos"""
    root = ElementTree.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    polygons, segments = [], []
    for path in root.iter(f"{ns}path"):
        numbers = [float(x) for x in re.findall(r"-?\d+(?:\.\d+)?", path.get("d"))]
        vertices = sorted([numbers[k], numbers[k + 1]] for k in range(0, len(numbers), 2))
        entry = {"stroke": path.get("stroke"), "vertices": vertices}
        (polygons if "Z" in path.get("d").upper() else segments).append(entry)
    return {
        "size": [float(root.get("width")), float(root.get("height"))],
        "background": next(root.iter(f"{ns}rect")).get("fill"),
        "polygons": polygons,
        "segments": segments,
        "circles": [[float(c.get("cx")), float(c.get("cy")), c.get("fill")] for c in root.iter(f"{ns}circle")],
    }


def test_matches_golden_file():
    ps = PointSet.from_rows([(0, 0), (2, 0), (0, 2), (2, 2)], dim=2)
    svg = svg_renderer.render(ps, Partition(n_parts=2, assignment=(0, 0, 0, 1)))
    golden = json.loads((DATA_DIR / "triangle_render.json").read_text(encoding="utf-8"))
    assert _summary(svg) == golden
