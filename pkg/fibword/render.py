"""
SVG rendering of paths, deviation diagrams and growth-chart sheets.

Documents are SVG 1.1 written with ElementTree. The plane is y-up, so every
y coordinate is flipped onto the y-down canvas.
"""
import logging
import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .conf import fibword_settings
from .exceptions import EmptyCanvasError
from .turtle import Path, half_turn_symmetry
from .zero_line import DeviationDiagram, GrowthChart, deviation_diagram

logger = logging.getLogger(__name__)

SVG_NS = 'http://www.w3.org/2000/svg'
HEX_COLOR = re.compile(r'^#[0-9a-fA-F]{6}$')
PATH_OVERLAYS = ('bbox', 'center')


@dataclass(frozen=True)
class RenderStyle:
    stroke_width: float
    scale: float
    margin: float
    path_color: str
    fill_color: str
    axis_color: str
    mirror_color: str
    bbox_color: str

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError(f"Render scale must be positive, got {self.scale}")
        for name in ('path_color', 'fill_color', 'axis_color', 'mirror_color', 'bbox_color'):
            if not HEX_COLOR.match(getattr(self, name)):
                raise ValueError(f"{name} must be a #rrggbb color, got {getattr(self, name)!r}")

    @classmethod
    def from_settings(cls, **overrides) -> 'RenderStyle':
        return cls(**{**fibword_settings.RENDER_STYLE, **overrides})


def _fmt(value: float) -> str:
    return f"{value:.3f}"


class _Canvas:
    """Maps plane coordinates onto an SVG viewport with margins."""

    def __init__(self, points: Sequence[Tuple[float, float]], style: RenderStyle):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.min_x, self.max_x = min(xs), max(xs)
        self.min_y, self.max_y = min(ys), max(ys)
        self.style = style
        self.width = (self.max_x - self.min_x) * style.scale + 2 * style.margin
        self.height = (self.max_y - self.min_y) * style.scale + 2 * style.margin

    def map(self, x: float, y: float) -> Tuple[float, float]:
        s = self.style
        return (x - self.min_x) * s.scale + s.margin, (self.max_y - y) * s.scale + s.margin

    def points_attr(self, points: Iterable[Tuple[float, float]]) -> str:
        return ' '.join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.map(*p) for p in points))

    def root(self) -> ET.Element:
        svg = ET.Element('svg')
        svg.set('xmlns', SVG_NS)
        svg.set('version', '1.1')
        svg.set('width', _fmt(self.width))
        svg.set('height', _fmt(self.height))
        svg.set('viewBox', f"0 0 {_fmt(self.width)} {_fmt(self.height)}")
        return svg

    def line(self, parent, a, b, color, width=None, **attrs) -> ET.Element:
        (x1, y1), (x2, y2) = self.map(*a), self.map(*b)
        element = ET.SubElement(parent, 'line')
        for key, value in (('x1', x1), ('y1', y1), ('x2', x2), ('y2', y2)):
            element.set(key, _fmt(value))
        element.set('stroke', color)
        element.set('stroke-width', _fmt(width or self.style.stroke_width))
        for key, value in attrs.items():
            element.set(key.rstrip('_').replace('_', '-'), value)
        return element

    def stroke(self, parent, points, color) -> ET.Element:
        if len(points) == 2:
            return self.line(parent, points[0], points[1], color)
        element = ET.SubElement(parent, 'polyline')
        element.set('points', self.points_attr(points))
        element.set('fill', 'none')
        element.set('stroke', color)
        element.set('stroke-width', _fmt(self.style.stroke_width))
        element.set('stroke-linejoin', 'round')
        return element


def _to_bytes(svg: ET.Element) -> bytes:
    return ET.tostring(svg, encoding='utf-8', xml_declaration=True)


def _check_canvas(points) -> None:
    if len(points) < 2:
        raise EmptyCanvasError(f"Need at least two vertices to draw, got {len(points)}")


def render_path_svg(
    path: Path,
    style: Optional[RenderStyle] = None,
    overlays: Sequence[str] = (),
) -> bytes:
    """
    Draw a path as one line (a single segment) or a polyline.

    Args:
        path: traced path with at least two vertices
        style: render style (default from settings)
        overlays: any of 'bbox' (bounding box with its diagonal) and
            'center' (cross at the half-turn center)

    Returns:
        UTF-8 SVG document
    """
    style = style or RenderStyle.from_settings()
    points = path.float_vertices()
    _check_canvas(points)
    unknown = set(overlays) - set(PATH_OVERLAYS)
    if unknown:
        raise ValueError(f"Unknown overlays: {', '.join(sorted(unknown))}")
    canvas = _Canvas(points, style)
    svg = canvas.root()
    ET.SubElement(svg, 'title').text = f"{path.rule}: {len(path.tokens)} tokens"

    if 'bbox' in overlays:
        corners = [
            (canvas.min_x, canvas.min_y), (canvas.max_x, canvas.min_y),
            (canvas.max_x, canvas.max_y), (canvas.min_x, canvas.max_y),
            (canvas.min_x, canvas.min_y),
        ]
        box = ET.SubElement(svg, 'polyline', {'class': 'bbox'})
        box.set('points', canvas.points_attr(corners))
        box.set('fill', 'none')
        box.set('stroke', style.bbox_color)
        box.set('stroke-width', _fmt(style.stroke_width))
        canvas.line(svg, corners[0], corners[2], style.bbox_color, class_='diagonal')

    canvas.stroke(svg, points, style.path_color)

    if 'center' in overlays:
        cx, cy = half_turn_symmetry(path).center
        arm = 4 * style.stroke_width / style.scale
        canvas.line(svg, (cx - arm, cy - arm), (cx + arm, cy + arm), style.axis_color, class_='center')
        canvas.line(svg, (cx - arm, cy + arm), (cx + arm, cy - arm), style.axis_color, class_='center')

    logger.debug("Rendered %s path with %d vertices", path.rule, len(points))
    return _to_bytes(svg)


def _excursion_polygons(diagram: DeviationDiagram) -> List[Tuple[str, List[Tuple[float, float]]]]:
    points = diagram.points()
    polygons = []
    for excursion in diagram.excursions.closed:
        first = diagram.letter_vertices[excursion.start - 1] if excursion.start else 0
        last = diagram.letter_vertices[excursion.start + len(excursion.word) - 1]
        polygons.append((excursion.key, points[first:last + 1]))
    return polygons


def _draw_deviation(canvas: _Canvas, parent, diagram: DeviationDiagram, fills: bool = True) -> None:
    style = canvas.style
    points = diagram.points()
    if fills:
        for key, polygon in _excursion_polygons(diagram):
            element = ET.SubElement(parent, 'polygon')
            element.set('points', canvas.points_attr(polygon))
            element.set('fill', style.fill_color)
            element.set('fill-opacity', '0.5')
            element.set('stroke', 'none')
            element.set('data-structure', key)
    bottom = min(p[1] for p in points)
    canvas.line(parent, (0.0, 0.0), (0.0, bottom), style.axis_color, class_='zero-axis')
    canvas.stroke(parent, points, style.path_color)


def render_deviation_svg(diagram: DeviationDiagram, style: Optional[RenderStyle] = None) -> bytes:
    """Deviation diagram with the zero axis and filled closed excursions."""
    style = style or RenderStyle.from_settings()
    points = diagram.points()
    _check_canvas(points)
    canvas = _Canvas(points + [(0.0, 0.0)], style)
    svg = canvas.root()
    ET.SubElement(svg, 'title').text = f"deviation diagram of {len(diagram.word)} letters"
    _draw_deviation(canvas, svg, diagram)
    return _to_bytes(svg)


def render_growth_sheet(chart: GrowthChart, style: Optional[RenderStyle] = None) -> bytes:
    """
    One deviation diagram per growth node, breadth-first, laid out on a
    square grid of equal cells.
    """
    style = style or RenderStyle.from_settings()
    diagrams = [deviation_diagram(node.word) for node in chart.nodes]
    all_points = [p for d in diagrams for p in d.points()]
    _check_canvas(all_points)
    cell = _Canvas(all_points + [(0.0, 0.0)], style)
    columns = math.ceil(math.sqrt(len(diagrams)))
    rows = math.ceil(len(diagrams) / columns)

    sheet = ET.Element('svg')
    sheet.set('xmlns', SVG_NS)
    sheet.set('version', '1.1')
    width, height = columns * cell.width, rows * cell.height
    sheet.set('width', _fmt(width))
    sheet.set('height', _fmt(height))
    sheet.set('viewBox', f"0 0 {_fmt(width)} {_fmt(height)}")
    ET.SubElement(sheet, 'title').text = f"growth chart: {len(diagrams)} nodes"

    for index, (node, diagram) in enumerate(zip(chart.nodes, diagrams)):
        row, column = divmod(index, columns)
        group = ET.SubElement(sheet, 'g')
        group.set('transform', f"translate({_fmt(column * cell.width)},{_fmt(row * cell.height)})")
        group.set('data-word', node.word)
        label = ET.SubElement(group, 'text')
        label.set('x', _fmt(style.margin / 4))
        label.set('y', _fmt(style.margin / 2))
        label.set('font-size', _fmt(style.margin / 3))
        label.text = f"{node.depth}: {node.word}"
        _draw_deviation(cell, group, diagram)
    logger.info("Rendered growth sheet with %d nodes", len(diagrams))
    return _to_bytes(sheet)
