"""Seeded diagram generation: layout, placement, styling, routing, emission.

Draw order per sample (fixed; determinism depends on it):
  1. layout: template index, combine flag [+ second template], per-template
     count draws, cross-connection count and pair draws, per-position jitter
  2. placement: per position: kind, size, shape params, stack, retry angles
  3. styling: diagram border style, stroke width, font count + picks, arrow
     color count + picks, head mode, word-bank shuffle, then per shape:
     label word count, fill style, fill color, stroke color, font, corner
     radius, pattern parameters, text-label font size
  4. routing: r_lo, r_hi, edge count, random pair fills, then per arrow:
     straightness, stroke width, head factor, line pattern, color, curve side

All geometry that reaches the SVG text is quantized to 3 decimals before
outlines, bounding boxes, and metadata are derived from it, so the evaluator
recovers identical values from the emitted markup.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .. import geometry
from ..svgcore import Aabb, ElementNode, SvgDocument, Canvas, fmt_number, parse_color, q3
from .config import (
    ALL_KINDS,
    BASIC_LEANING_KINDS,
    BORDER_STYLES,
    FILL_STYLES,
    FLAT_KINDS,
    GenConfig,
    LINE_PATTERNS,
)
from .rng import DetRng
from .shapes import (
    ShapeGeometry,
    build_geometry,
    draw_shape_params,
    text_extent,
    translate_geometry,
)
from .templates import TEMPLATES


class EmptyDiagram(Exception):
    """All layout positions were skipped; nothing to draw."""


class WordBankExhausted(Exception):
    """Not enough distinct words to label every shape."""


class DegenerateRay(Exception):
    """Ray target coincides with the shape center."""


# Fraction of a shape's width usable for its label, per kind.
_LABEL_ROOM = {
    "circle": 0.62, "rectangle": 0.85, "square": 0.80, "ellipse": 0.70,
    "diamond": 0.48, "hexagon": 0.70, "parallelogram": 0.58, "trapezoid": 0.62,
    "blob": 0.55, "wave-rect": 0.80, "cloud": 0.52, "text-label": 1.0,
    "cylinder": 0.76, "prism": 0.46, "cube": 0.68, "3d-diamond": 0.44,
    "3d-hexagon": 0.58, "3d-trapezoid": 0.58,
}


@dataclass
class LayoutPlan:
    positions: list
    hints: list
    template_names: tuple
    size_scale: float


@dataclass
class PlacedShape:
    id: str
    kind: str
    geometry: ShapeGeometry  # front (topmost) layer
    layers: list  # back-to-front ShapeGeometry list
    bbox: Aabb  # union over layers
    stack_layers: Optional[int] = None
    # Styling, filled in by assign_styles:
    label: str = ""
    font: str = ""
    font_size: float = 12.0
    fill_color: tuple = (0, 0, 0)
    fill_style: str = "solid"
    stroke_color: tuple = (0, 0, 0)
    border_style: str = "solid"
    corner_radius: Optional[float] = None
    pattern_params: dict = field(default_factory=dict)

    @property
    def center(self) -> tuple:
        return self.bbox.center

    @property
    def size(self) -> tuple:
        return (self.bbox.width, self.bbox.height)


@dataclass
class Connection:
    src_index: int
    dst_index: int
    kind: str  # "straight" | "quadratic"
    p0: tuple
    p1: tuple
    control: Optional[tuple]
    color: tuple
    stroke_width: float
    head_size: float
    line_pattern: str


@dataclass
class DiagramStyle:
    border_style: str
    stroke_width: float
    fonts: list
    arrow_colors: list
    head_mode: str  # "marker" | "polygon"


@dataclass
class DiagramSample:
    seed: int
    config_hash: str
    shapes: list
    connections: list
    svg_text: str
    metadata: dict
    ratios: dict
    skipped_positions: int = 0


def select_layout(rng: DetRng, config: GenConfig) -> LayoutPlan:
    """Pick one template (two with the combine probability) and jitter it."""
    index = rng.randint(0, len(TEMPLATES) - 1)
    name, template = TEMPLATES[index]
    combined = rng.chance(config.template_combine_probability)
    drawable_w = config.canvas_width - 2 * config.margin
    drawable_h = config.canvas_height - 2 * config.margin

    def realize(fractions, x_lo, x_hi):
        points = []
        for fx, fy in fractions:
            x = config.margin + (x_lo + fx * (x_hi - x_lo)) * drawable_w
            y = config.margin + fy * drawable_h
            points.append((x, y))
        return points

    if not combined:
        fractions, hints = template(rng)
        positions = realize(fractions, 0.0, 1.0)
        names = (name,)
        size_scale = 1.0
    else:
        second_index = rng.randint(0, len(TEMPLATES) - 1)
        second_name, second_template = TEMPLATES[second_index]
        fractions_a, hints_a = template(rng)
        fractions_b, hints_b = second_template(rng)
        positions = realize(fractions_a, 0.0, 0.44) + realize(fractions_b, 0.56, 1.0)
        offset = len(fractions_a)
        hints = list(hints_a) + [(i + offset, j + offset) for i, j in hints_b]
        crossings = rng.randint(*config.cross_connections)
        for _ in range(crossings):
            a = rng.randint(0, offset - 1)
            b = rng.randint(offset, len(positions) - 1)
            if rng.chance(0.5):
                hints.append((a, b))
            else:
                hints.append((b, a))
        names = (name, second_name)
        size_scale = 0.74
    jitter = config.jitter_fraction
    jittered = []
    for x, y in positions:
        jx = x + rng.uniform(-jitter, jitter) * config.canvas_width
        jy = y + rng.uniform(-jitter, jitter) * config.canvas_height
        jx = min(max(jx, config.margin), config.canvas_width - config.margin)
        jy = min(max(jy, config.margin), config.canvas_height - config.margin)
        jittered.append((jx, jy))
    size_scale *= min(1.0, max(0.6, math.sqrt(7.0 / max(1, len(jittered)))))
    return LayoutPlan(jittered, hints, names, size_scale)


def _pick_palette(rng: DetRng, config: GenConfig) -> list:
    count = rng.randint(*config.shape_palette_sizes)
    pool = list(ALL_KINDS)
    weights = [
        config.basic_kind_weight if kind in BASIC_LEANING_KINDS else 1.0
        for kind in pool
    ]
    palette = []
    for _ in range(count):
        kind = rng.weighted_choice(pool, weights)
        slot = pool.index(kind)
        pool.pop(slot)
        weights.pop(slot)
        palette.append(kind)
    return palette


def _build_layers(kind, center, size, params, stack, config) -> tuple:
    front = build_geometry(kind, center, size, params)
    if not stack:
        bbox = front.bbox
        return [front], front, bbox
    layers = []
    for j in range(stack - 1, 0, -1):
        layers.append(translate_geometry(front, config.stack_offset * j, -config.stack_offset * j))
    layers.append(front)
    bbox = front.bbox
    for layer in layers[:-1]:
        bbox = bbox.union(layer.bbox)
    return layers, front, bbox


def place_shapes(plan: LayoutPlan, rng: DetRng, config: GenConfig):
    """Collision-free placement; returns (shapes, position->shape index map)."""
    palette = _pick_palette(rng, config)
    placed: list = []
    boxes: list = []
    index_map: dict = {}
    previous_kind = None
    for position_index, anchor in enumerate(plan.positions):
        kind = rng.choice(palette)
        if kind == previous_kind and len(palette) > 1:
            kind = rng.choice(palette)
        width = rng.uniform(*config.size_width_range) * plan.size_scale
        height = rng.uniform(*config.size_height_range) * plan.size_scale
        if kind == "text-label":
            width *= 0.85
            height *= 0.5
        params = draw_shape_params(kind, rng)
        stack = None
        if kind in FLAT_KINDS and kind != "text-label" and rng.chance(config.stack_probability):
            stack = rng.randint(*config.stack_layers)
        success = None
        for attempt in range(config.placement_attempts):
            if attempt == 0:
                candidate = anchor
            else:
                radius = config.retry_radius_step * attempt
                angle = rng.uniform(0.0, 2.0 * math.pi)
                candidate = (
                    anchor[0] + radius * math.cos(angle),
                    anchor[1] + radius * math.sin(angle),
                )
            cx = min(max(candidate[0], config.margin), config.canvas_width - config.margin)
            cy = min(max(candidate[1], config.margin), config.canvas_height - config.margin)
            layers, front, bbox = _build_layers(kind, (cx, cy), (width, height), params, stack, config)
            inflated = bbox.inflate(config.collision_margin)
            if any(inflated.intersects(other) for other in boxes):
                continue
            center = bbox.center
            too_close = False
            for other in placed:
                oc = other.bbox.center
                if math.hypot(center[0] - oc[0], center[1] - oc[1]) < config.min_center_separation * plan.size_scale:
                    too_close = True
                    break
            if too_close:
                continue
            success = (layers, front, bbox)
            break
        if success is None:
            continue
        layers, front, bbox = success
        shape = PlacedShape(
            id=f"s{len(placed)}",
            kind=kind,
            geometry=front,
            layers=layers,
            bbox=bbox,
            stack_layers=stack,
        )
        index_map[position_index] = len(placed)
        placed.append(shape)
        boxes.append(bbox)
        previous_kind = kind
    if not placed:
        raise EmptyDiagram("no layout position could be placed")
    return placed, index_map


def _darken(rgb: tuple, factor: float) -> tuple:
    return tuple(int(round(c * factor)) for c in rgb)


def assign_styles(shapes, rng: DetRng, config: GenConfig) -> DiagramStyle:
    """Diagram-level style draws plus per-shape styling (see module order)."""
    style = DiagramStyle(
        border_style=rng.choice(BORDER_STYLES),
        stroke_width=q3(rng.uniform(1.6, 2.8)),
        fonts=rng.sample(config.font_pool, rng.randint(1, 2)),
        arrow_colors=[],
        head_mode="marker",
    )
    style.arrow_colors = rng.sample(config.stroke_palette, rng.randint(*config.arrow_color_counts))
    style.head_mode = "marker" if rng.chance(config.marker_head_probability) else "polygon"
    words = rng.shuffle(list(config.word_bank))
    cursor = 0
    for shape in shapes:
        take = 2 if rng.chance(config.two_word_label_probability) else 1
        if cursor + take > len(words):
            raise WordBankExhausted(
                f"need {take} more words for shape {shape.id}, bank exhausted"
            )
        shape.label = " ".join(words[cursor : cursor + take])
        cursor += take
        shape.border_style = style.border_style
        shape.fill_style = rng.choice(FILL_STYLES)
        shape.fill_color = parse_color(rng.choice(config.fill_palette))
        shape.stroke_color = parse_color(rng.choice(config.stroke_palette))
        shape.font = rng.choice(style.fonts)
        if shape.kind in ("rectangle", "square") and rng.chance(config.rounded_corner_probability):
            shape.corner_radius = q3(rng.uniform(6.0, 16.0))
        if shape.fill_style in ("hatching", "crosshatch", "horizontal-lines"):
            shape.pattern_params = {
                "tile": q3(rng.uniform(9.0, 14.0)),
                "line_width": q3(rng.uniform(1.1, 1.8)),
                "direction": rng.sign(),
            }
        elif shape.fill_style == "dots":
            shape.pattern_params = {
                "tile": q3(rng.uniform(9.0, 14.0)),
                "radius": q3(rng.uniform(1.2, 2.2)),
            }
        elif shape.fill_style == "linear-gradient":
            shape.pattern_params = {
                "axis": (
                    q3(rng.uniform(0.0, 0.3)),
                    q3(rng.uniform(0.0, 0.3)),
                    q3(rng.uniform(0.7, 1.0)),
                    q3(rng.uniform(0.7, 1.0)),
                )
            }
        if shape.kind == "text-label":
            base_size = rng.uniform(12.0, 16.0)
            room = shape.bbox.width
            fitted = min(base_size, room / (0.62 * max(1, len(shape.label))))
            shape.font_size = q3(max(8.0, fitted))
            # A bare label has no outline: its paint is the dark text fill
            # and its recorded border is solid.
            shape.fill_color = shape.stroke_color
            shape.fill_style = "solid"
            shape.border_style = "solid"
            width, height = text_extent(shape.label, shape.font_size)
            anchor = shape.geometry.center
            shape.bbox = Aabb(
                anchor[0] - width / 2.0,
                anchor[1] - height / 2.0,
                anchor[0] + width / 2.0,
                anchor[1] + height / 2.0,
            )
        else:
            room = shape.bbox.width * _LABEL_ROOM[shape.kind]
            fitted = min(14.0, room / (0.62 * max(1, len(shape.label))))
            shape.font_size = q3(max(8.0, fitted))
    return style


def connection_count(n: int, rng: DetRng, config: GenConfig) -> tuple:
    """Draw (count, r_lo, r_hi): c ~ U(floor(n*r_lo), floor(n*r_hi))."""
    if n < 1:
        raise ValueError("need at least one shape")
    r_lo = rng.uniform(*config.connection_lo_range)
    r_hi = rng.uniform(*config.connection_hi_range)
    while r_lo >= r_hi:  # measure-zero guard; ranges barely touch at 0.6
        r_hi = rng.uniform(*config.connection_hi_range)
    low = math.floor(n * r_lo)
    high = math.floor(n * r_hi)
    return rng.randint(low, high), r_lo, r_hi


def ray_cast_boundary(shape: PlacedShape, toward: tuple) -> tuple:
    """Exit point of the ray from the front layer's center toward a target.

    Analytic for circles and ellipses, segment intersection against the
    sampled silhouette for everything else. Raises DegenerateRay when the
    target equals the center. The result is quantized like all emitted
    geometry.
    """
    front = shape.geometry
    origin = front.center
    if toward[0] == origin[0] and toward[1] == origin[1]:
        raise DegenerateRay("ray target coincides with shape center")
    if front.analytic is not None:
        _tag, cx, cy, rx, ry = front.analytic
        point = geometry.ellipse_exit_point((cx, cy), rx, ry, toward)
    elif front.outline is not None:
        point = geometry.ray_exit_point(origin, toward, front.outline)
    else:
        # text-label: use its rectangular extent
        box = shape.bbox
        rect = np.array(
            [
                (box.min_x, box.min_y),
                (box.max_x, box.min_y),
                (box.max_x, box.max_y),
                (box.min_x, box.max_y),
            ],
            dtype=np.float64,
        )
        point = geometry.ray_exit_point(origin, toward, rect)
    if point is None:
        raise DegenerateRay("ray does not cross the outline")
    return (q3(point[0]), q3(point[1]))


def _perp(dx: float, dy: float) -> tuple:
    norm = math.hypot(dx, dy) or 1.0
    return (-dy / norm, dx / norm)


def route_connections(shapes, hints, style: DiagramStyle, rng: DetRng, config: GenConfig):
    """Arrow routing; template hints are consumed first, random pairs after.

    Returns (connections, drawn_count, r_lo, r_hi). Every ordered pair
    appears at most once; arrows between a bidirectional pair aim at
    sideways-offset targets so both exit at distinct boundary points.
    """
    n = len(shapes)
    count, r_lo, r_hi = connection_count(n, rng, config)
    pairs = []
    seen = set()
    for src, dst in hints:
        if src == dst or not (0 <= src < n) or not (0 <= dst < n):
            continue
        if (src, dst) in seen:
            continue
        seen.add((src, dst))
        pairs.append((src, dst))
        if len(pairs) == count:
            break
    max_pairs = n * (n - 1)
    attempts = 0
    while len(pairs) < count and len(seen) < max_pairs and attempts < 80 * (count + 1):
        attempts += 1
        src = rng.randint(0, n - 1)
        dst = rng.randint(0, n - 1)
        if src == dst or (src, dst) in seen:
            continue
        seen.add((src, dst))
        pairs.append((src, dst))
    pair_set = set(pairs)

    all_boxes = [s.bbox for s in shapes]
    connections = []
    for src, dst in pairs:
        straight = rng.chance(config.straight_arrow_probability)
        stroke_width = q3(rng.uniform(*config.arrow_stroke_range))
        head_size = q3(stroke_width * rng.uniform(*config.head_size_factor_range))
        pattern = rng.weighted_choice(LINE_PATTERNS, config.line_pattern_weights)
        color = parse_color(rng.choice(style.arrow_colors))
        connections.append(
            _route_one(
                shapes, src, dst, straight, stroke_width, head_size, pattern,
                color, pair_set, all_boxes, rng, config,
            )
        )
    return [c for c in connections if c is not None], count, r_lo, r_hi


def _route_one(
    shapes, src, dst, straight, stroke_width, head_size, pattern, color,
    pair_set, all_boxes, rng, config,
):
    source = shapes[src]
    target = shapes[dst]
    src_center = source.geometry.center
    dst_center = target.geometry.center
    aim_dst = dst_center
    aim_src = src_center
    if (dst, src) in pair_set:
        px, py = _perp(dst_center[0] - src_center[0], dst_center[1] - src_center[1])
        aim_dst = (dst_center[0] + 10.0 * px, dst_center[1] + 10.0 * py)
        aim_src = (src_center[0] + 10.0 * px, src_center[1] + 10.0 * py)
    p0 = ray_cast_boundary(source, aim_dst)
    p1 = ray_cast_boundary(target, aim_src)
    if straight:
        return Connection(src, dst, "straight", p0, p1, None, color, stroke_width, head_size, pattern)

    side = rng.sign()
    distance = math.hypot(p1[0] - p0[0], p1[1] - p0[1])
    magnitude = min(
        max(config.curve_offset_fraction * distance, config.curve_offset_min),
        config.curve_offset_max,
    )
    mid = ((p0[0] + p1[0]) / 2.0, (p0[1] + p1[1]) / 2.0)
    nx, ny = _perp(p1[0] - p0[0], p1[1] - p0[1])
    obstacles = np.array(
        [
            (b.min_x, b.min_y, b.max_x, b.max_y)
            for index, b in enumerate(all_boxes)
            if index not in (src, dst)
        ],
        dtype=np.float64,
    ).reshape(-1, 4)
    scales = (1.0, -1.0, 1.6, -1.6, 2.4, -2.4)[: config.curve_offset_attempts]
    for scale in scales:
        offset = magnitude * scale * side
        control = (q3(mid[0] + offset * nx), q3(mid[1] + offset * ny))
        try:
            c0 = ray_cast_boundary(source, control)
            c1 = ray_cast_boundary(target, control)
        except DegenerateRay:
            continue
        samples = geometry.quadratic_points(c0, control, c1, config.curve_avoid_samples)
        if obstacles.shape[0] and geometry.any_point_in_boxes(
            np.ascontiguousarray(samples[:, 0]),
            np.ascontiguousarray(samples[:, 1]),
            obstacles,
        ):
            continue
        return Connection(
            src, dst, "quadratic", c0, c1, control, color, stroke_width, head_size, pattern
        )
    # Exhausted: fall back to a straight arrow.
    return Connection(src, dst, "straight", p0, p1, None, color, stroke_width, head_size, pattern)


def generate(seed: int, config: Optional[GenConfig] = None) -> DiagramSample:
    """Generate one diagram: four sequential steps plus emission.

    Identical (seed, config) pairs produce byte-identical SVG text and
    metadata. Raises EmptyDiagram when no layout position can be placed.
    """
    from .emit import build_document, build_metadata

    config = config or GenConfig()
    rng = DetRng(seed)
    plan = select_layout(rng, config)
    shapes, index_map = place_shapes(plan, rng, config)
    mapped_hints = [
        (index_map[i], index_map[j])
        for i, j in plan.hints
        if i in index_map and j in index_map
    ]
    style = assign_styles(shapes, rng, config)
    connections, count, r_lo, r_hi = route_connections(
        shapes, mapped_hints, style, rng, config
    )
    document = build_document(shapes, connections, style, config)
    metadata = build_metadata(seed, config, shapes, connections, count, r_lo, r_hi)
    return DiagramSample(
        seed=seed,
        config_hash=config.config_hash(),
        shapes=shapes,
        connections=connections,
        svg_text=document.serialize(),
        metadata=metadata,
        ratios=metadata["ratios"],
        skipped_positions=len(plan.positions) - len(shapes),
    )


def metadata_json(sample: DiagramSample) -> str:
    """Canonical metadata serialization (sorted keys, stable floats)."""
    return json.dumps(sample.metadata, sort_keys=True, indent=2) + "\n"
