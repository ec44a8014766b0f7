"""
Serviço de renderização SVG de partições planares
"""
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import drawsvg as draw

from ..core.config import settings
from ..core.exceptions import DimensionError, PartitionError
from ..models.combinatorics import Partition
from ..models.geometry import PointSet
from .cyclebuild import cycle_builder
from .exactgeom import exact_geometry

logger = logging.getLogger(__name__)

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
]


class SvgRendererService:
    """Serviço para desenhar pontos, fechos das partes e rótulos"""

    def __init__(self):
        self.size = settings.svg_size
        self.opacity = settings.svg_opacity
        self.margin = 24

    def render(self, ps: PointSet, partition: Partition, projection_seed: Optional[int] = None) -> str:
        """Documento SVG determinístico para a partição"""
        if len(partition) == 0 or len(ps) == 0:
            raise PartitionError("Partição vazia não pode ser desenhada")
        if len(partition) != len(ps):
            raise PartitionError(f"Partição cobre {len(partition)} pontos, conjunto tem {len(ps)}")
        if ps.dim != 2:
            if ps.dim < 2:
                raise DimensionError("Desenho exige d >= 2")
            ps, _ = cycle_builder.project_generic(ps, projection_seed)

        coords = self._to_canvas(ps)
        drawing = draw.Drawing(self.size, self.size)
        drawing.append(draw.Rectangle(0, 0, self.size, self.size, fill="#ffffff"))

        for label, members in enumerate(partition.parts()):
            color = PALETTE[label % len(PALETTE)]
            hull = exact_geometry.convex_hull_2d(ps, members)
            flat = [c for i in hull for c in coords[i]]
            if len(hull) >= 3:
                drawing.append(draw.Lines(*flat, close=True, fill=color, fill_opacity=self.opacity,
                                          stroke=color, stroke_width=1.5))
            elif len(hull) == 2:
                drawing.append(draw.Line(*flat, stroke=color, stroke_width=2.5))

        for i, (x, y) in enumerate(coords):
            color = PALETTE[partition.assignment[i] % len(PALETTE)]
            drawing.append(draw.Circle(x, y, 4, fill=color, stroke="#000000", stroke_width=0.5))
            drawing.append(draw.Text(str(i), 10, x + 6, y - 6, fill="#000000", font_family="monospace"))
        return drawing.as_svg()

    def emit_svg(self, ps: PointSet, partition: Partition, path: Union[str, Path],
                 projection_seed: Optional[int] = None) -> Path:
        """Grava o SVG no caminho dado"""
        content = self.render(ps, partition, projection_seed)
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")
        logger.info(f"SVG salvo em {target} ({partition.n_parts} partes)")
        return target

    def _to_canvas(self, ps: PointSet) -> List[Tuple[float, float]]:
        xs = [p[0] for p in ps]
        ys = [p[1] for p in ps]
        span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1
        scale = (self.size - 2 * self.margin) / span
        # y cresce para baixo no SVG
        return [(round(float((p[0] - min(xs)) * scale) + self.margin, 3),
                 round(float((max(ys) - p[1]) * scale) + self.margin, 3)) for p in ps]


# Instância global do serviço
svg_renderer = SvgRendererService()
