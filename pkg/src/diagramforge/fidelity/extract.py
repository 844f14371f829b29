"""Candidate extraction: turning an SVG document into scorable shapes/arrows.

The extractor mirrors the generator's conventions where a convention is
needed (path bounding boxes come from dense curve sampling on the shared
t-grid, text extents use the shared estimate), and degrades gracefully on
arbitrary documents: unknown constructs are skipped, never fatal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..genforge.shapes import text_extent
from ..svgcore import (
    Aabb,
    ElementNode,
    NoGeometry,
    SvgDocument,
    element_bbox,
    is_closed,
    is_none_paint,
    own_translate,
    parse_color,
    parse_path_data,
    parse_points,
    path_endpoints,
    sample_path,
    try_parse_float,
)
from ..svgcore.pathdata import MalformedPath
from .records import ArrowMeta, EvalConfig, ExtractionEmpty, ShapeMeta

_GEOMETRIC_KINDS = {"rect", "circle", "ellipse", "line", "polyline", "polygon", "path"}


@dataclass
class _Member:
    node: ElementNode
    parent: Optional[ElementNode]
    offset: tuple
    bbox: Aabb
    order: int

    @property
    def area(self) -> float:
        return self.bbox.width * self.bbox.height


@dataclass
class ShapeCandidate:
    kind_tag: str
    bbox: Aabb
    label: str = ""
    fill_style: str = "solid"
    fill_color: Optional[tuple] = None
    stroke_color: Optional[tuple] = None
    border_style: str = "solid"
    font: Optional[str] = None
    members: list = field(default_factory=list)

    @property
    def center(self) -> tuple:
        return self.bbox.center

    @property
    def size(self) -> tuple:
        return (self.bbox.width, self.bbox.height)


@dataclass
class ArrowCandidate:
    p0: tuple
    p1: tuple
    curved: bool
    color: Optional[tuple]
    stroke_width: float
    head_present: bool
    head_size: Optional[float]


def classify_dasharray(value: Optional[str], stroke_width: float,
                       config: EvalConfig = EvalConfig()) -> str:
    """Dash class from a stroke-dasharray attribute value.

    Absent/none is solid; all lengths within 1.5 stroke widths is dotted;
    two or more distinct "on" lengths is dash-dot; anything else dashed.
    """
    if value is None:
        return "solid"
    stripped = value.strip().lower()
    if stripped in ("", "none"):
        return "solid"
    numbers = [try_parse_float(t) for t in stripped.replace(",", " ").split()]
    numbers = [n for n in numbers if n is not None]
    if not numbers or all(n == 0 for n in numbers):
        return "solid"
    if max(numbers) <= config.dotted_max_factor * stroke_width:
        return "dotted"
    if len(numbers) % 2 == 1:
        numbers = numbers + numbers
    on_lengths = {numbers[i] for i in range(0, len(numbers), 2)}
    if len(on_lengths) >= 2:
        return "dash-dot"
    return "dashed"


def infer_fill_style(fill_value: Optional[str], doc: SvgDocument) -> tuple:
    """(style class, base rgb or None) for a resolved fill value.

    Pattern content is classified by its marks: oblique parallel lines are
    hatching, crossing obliques crosshatch, horizontal segments
    horizontal-lines, circles dots; anything else is a generic pattern. The
    base color comes from the pattern background tile or the first gradient
    stop so patterned fills still yield a comparable color.
    """
    if fill_value is None or is_none_paint(fill_value):
        return "solid", None
    value = fill_value.strip()
    if value.lower().startswith("url("):
        ref = value[value.find("#") + 1 : value.find(")")].strip()
        definition = doc.find_definition(ref)
        if definition is None:
            return "solid", None  # dangling reference; downgrade with warning
        kind = definition.kind
        if kind == "gradient-def":
            style = (
                "linear-gradient"
                if definition.tag.lower() == "lineargradient"
                else "radial-gradient"
            )
            for child in definition.children:
                if child.tag.lower() == "stop":
                    color = parse_color(
                        child.attrs.get("stop-color") or child.attrs.get("stop_color")
                    )
                    return style, color
            return style, None
        if kind == "pattern-def":
            return _classify_pattern(definition)
        return "solid", None
    return "solid", parse_color(value)


def _classify_pattern(pattern: ElementNode) -> tuple:
    base = None
    slopes = []
    has_circle = False
    other_marks = False
    for child in pattern.children:
        kind = child.kind
        if kind == "rect" and base is None:
            base = parse_color(child.attrs.get("fill"))
        elif kind == "line":
            x1 = child.float_attr("x1")
            y1 = child.float_attr("y1")
            x2 = child.float_attr("x2")
            y2 = child.float_attr("y2")
            dx, dy = x2 - x1, y2 - y1
            if abs(dx) < 1e-9 and abs(dy) < 1e-9:
                continue
            slopes.append(math.atan2(dy, dx))
        elif kind == "circle":
            has_circle = True
            if base is None:
                base = None
        elif kind in ("path", "polygon", "ellipse"):
            other_marks = True
    if has_circle and not slopes:
        return "dots", base
    if slopes and not has_circle and not other_marks:
        horizontal = [abs(math.sin(s)) < 1e-6 for s in slopes]
        if all(horizontal):
            return "horizontal-lines", base
        signs = {1 if math.sin(s) * math.cos(s) > 0 else -1 for s in slopes if abs(math.sin(s)) > 1e-6}
        if len(signs) >= 2:
            return "crosshatch", base
        return "hatching", base
    if slopes or has_circle or other_marks:
        return "generic-pattern", base
    return "solid", base


def _cumulative_offset(node: ElementNode, ancestors) -> tuple:
    dx = dy = 0.0
    for element in tuple(ancestors) + (node,):
        odx, ody, _pure = own_translate(element)
        dx += odx
        dy += ody
    return (dx, dy)


def _member_bbox(node: ElementNode, offset: tuple) -> Optional[Aabb]:
    """Geometry box used for shape fidelity: sampled curves, not hulls."""
    if node.kind == "path":
        try:
            path = parse_path_data(node.attrs.get("d", ""))
        except MalformedPath:
            return None
        points = sample_path(path)
        if points.shape[0] == 0:
            return None
        return Aabb(
            float(points[:, 0].min()) + offset[0],
            float(points[:, 1].min()) + offset[1],
            float(points[:, 0].max()) + offset[0],
            float(points[:, 1].max()) + offset[1],
        )
    try:
        box = element_bbox(node)
    except NoGeometry:
        return None
    return box.translated(offset[0], offset[1])


def _font_size_of(node: ElementNode, ancestors) -> float:
    for element in (node,) + tuple(reversed(ancestors)):
        value = try_parse_float(element.attrs.get("font-size"))
        if value is not None:
            return value
    return 12.0


def extract_candidates(doc: SvgDocument, config: EvalConfig = EvalConfig()):
    """(shape candidates, arrow candidates) for a parsed document."""
    geometrics: list = []
    texts: list = []
    order = 0
    for node, ancestors in doc.iter_drawables():
        if node.kind in _GEOMETRIC_KINDS:
            offset = _cumulative_offset(node, ancestors)
            parent = ancestors[-1] if ancestors else None
            box = _member_bbox(node, offset)
            if box is not None:
                geometrics.append(_Member(node, parent, offset, box, order))
        elif node.kind == "text":
            texts.append((node, ancestors))
        order += 1

    connectors, shape_members, heads = _split_connectors(geometrics)
    components = _cluster(shape_members)
    candidates = [_component_to_candidate(c, doc, config) for c in components]
    candidates = [c for c in candidates if c is not None]

    bound_texts = _bind_labels(candidates, texts, config)
    for node, ancestors in texts:
        if id(node) in bound_texts:
            continue
        candidate = _text_candidate(node, ancestors, config)
        if candidate is not None:
            candidates.append(candidate)

    arrows = []
    for member in connectors:
        arrow = _connector_to_arrow(member, heads.get(id(member.node)), doc)
        if arrow is None:
            continue
        if arrow.head_present or _connects_two(arrow, candidates, config):
            arrows.append(arrow)
    return candidates, arrows


def _split_connectors(geometrics):
    """Partition geometry into connector suspects, shape material, and heads."""
    connectors = []
    shapes = []
    by_parent: dict = {}
    for member in geometrics:
        by_parent.setdefault(id(member.parent), []).append(member)
    for member in geometrics:
        node = member.node
        if node.kind == "line":
            connectors.append(member)
        elif node.kind == "polyline":
            points = parse_points(node.attrs.get("points", ""))
            closed = len(points) >= 3 and points[0] == points[-1]
            (shapes if closed else connectors).append(member)
        elif node.kind == "path":
            has_marker = any(
                node.attrs.get(attr) for attr in ("marker-end", "marker-start")
            )
            try:
                closed = is_closed(parse_path_data(node.attrs.get("d", "")))
            except MalformedPath:
                closed = False
            if has_marker or not closed:
                connectors.append(member)
            else:
                shapes.append(member)
        else:
            shapes.append(member)

    # Arrowhead polygons: small polygons sharing a group with a connector.
    heads: dict = {}
    head_ids = set()
    for connector in connectors:
        length = math.hypot(
            connector.bbox.width, connector.bbox.height
        )
        best = None
        for sibling in by_parent.get(id(connector.parent), ()):
            if sibling.node.kind != "polygon" or id(sibling.node) in head_ids:
                continue
            size = max(sibling.bbox.width, sibling.bbox.height)
            if size <= max(40.0, 0.3 * length):
                if best is None or size < max(best.bbox.width, best.bbox.height):
                    best = sibling
        if best is not None:
            heads[id(connector.node)] = best
            head_ids.add(id(best.node))
    shapes = [m for m in shapes if id(m.node) not in head_ids]
    return connectors, shapes, heads


def _cluster(members):
    """Connected components of same-parent members with touching boxes."""
    n = len(members)
    parent_idx = list(range(n))

    def find(i):
        while parent_idx[i] != i:
            parent_idx[i] = parent_idx[parent_idx[i]]
            i = parent_idx[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent_idx[rj] = ri

    for i in range(n):
        inflated = members[i].bbox.inflate(2.0)
        for j in range(i + 1, n):
            if members[i].parent is not members[j].parent:
                continue
            if inflated.intersects(members[j].bbox.inflate(2.0)):
                union(i, j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(members[i])
    return [sorted(g, key=lambda m: m.order) for g in groups.values()]


def _component_to_candidate(component, doc, config) -> Optional[ShapeCandidate]:
    if not component:
        return None
    # Areas are compared coarsely so float fuzz between near-identical
    # members (stack layers) cannot beat paint order; the topmost of the
    # largest members represents the visual shape.
    representative = max(component, key=lambda m: (round(m.area, 1), m.order))
    box = component[0].bbox
    for member in component[1:]:
        box = box.union(member.bbox)
    style = representative.node.resolved_style
    fill_style, fill_color = infer_fill_style(style.fill, doc)
    if is_none_paint(style.stroke):
        stroke_color = None
        border = "solid"
    else:
        stroke_color = parse_color(style.stroke)
        border = classify_dasharray(style.stroke_dasharray, style.stroke_width, config)
    return ShapeCandidate(
        kind_tag=representative.node.kind,
        bbox=box,
        fill_style=fill_style,
        fill_color=fill_color,
        stroke_color=stroke_color,
        border_style=border,
        members=component,
    )


def _bind_labels(candidates, texts, config) -> set:
    """Attach each text to the nearest candidate whose inflated box holds it."""
    bound = set()
    assignments: dict = {}
    for node, ancestors in texts:
        offset = _cumulative_offset(node, ancestors)
        anchor = (node.float_attr("x") + offset[0], node.float_attr("y") + offset[1])
        best = None
        best_dist = None
        for index, candidate in enumerate(candidates):
            if not candidate.bbox.inflate(config.label_inflate_px).contains(*anchor):
                continue
            center = candidate.center
            dist = math.hypot(anchor[0] - center[0], anchor[1] - center[1])
            if best_dist is None or dist < best_dist:
                best = index
                best_dist = dist
        if best is None:
            continue
        bound.add(id(node))
        current = assignments.get(best)
        if current is None or best_dist < current[0]:
            assignments[best] = (best_dist, node)
    for index, (_dist, node) in assignments.items():
        candidate = candidates[index]
        candidate.label = node.text_content
        candidate.font = node.resolved_style.font_family
    return bound


def _text_candidate(node, ancestors, config) -> Optional[ShapeCandidate]:
    content = node.text_content
    if not content:
        return None
    offset = _cumulative_offset(node, ancestors)
    anchor = (node.float_attr("x") + offset[0], node.float_attr("y") + offset[1])
    font_size = _font_size_of(node, ancestors)
    width, height = text_extent(content, font_size)
    style = node.resolved_style
    fill_color = None if is_none_paint(style.fill) else parse_color(style.fill)
    if is_none_paint(style.stroke):
        # A text's paint is its fill; treat that as the border color too.
        stroke_color = fill_color
        border = "solid"
    else:
        stroke_color = parse_color(style.stroke)
        border = classify_dasharray(style.stroke_dasharray, style.stroke_width, config)
    return ShapeCandidate(
        kind_tag="text",
        bbox=Aabb(
            anchor[0] - width / 2.0,
            anchor[1] - height / 2.0,
            anchor[0] + width / 2.0,
            anchor[1] + height / 2.0,
        ),
        label=content,
        fill_style="solid",
        fill_color=fill_color,
        stroke_color=stroke_color,
        border_style=border,
        font=style.font_family,
    )


def _connector_to_arrow(member, head_member, doc) -> Optional[ArrowCandidate]:
    node = member.node
    offset = member.offset
    if node.kind == "line":
        p0 = (node.float_attr("x1") + offset[0], node.float_attr("y1") + offset[1])
        p1 = (node.float_attr("x2") + offset[0], node.float_attr("y2") + offset[1])
        curved = False
    elif node.kind == "polyline":
        points = parse_points(node.attrs.get("points", ""))
        if len(points) < 2:
            return None
        p0 = (points[0][0] + offset[0], points[0][1] + offset[1])
        p1 = (points[-1][0] + offset[0], points[-1][1] + offset[1])
        curved = False
    else:
        try:
            path = parse_path_data(node.attrs.get("d", ""))
        except MalformedPath:
            return None
        ends = path_endpoints(path)
        if ends is None:
            return None
        p0 = (ends[0][0] + offset[0], ends[0][1] + offset[1])
        p1 = (ends[1][0] + offset[0], ends[1][1] + offset[1])
        curved = path.contains_curve
    style = node.resolved_style
    color = None if is_none_paint(style.stroke) else parse_color(style.stroke)
    head_present = False
    head_size = None
    marker_ref = node.attrs.get("marker-end", "")
    if marker_ref.startswith("url("):
        ref = marker_ref[marker_ref.find("#") + 1 : marker_ref.find(")")].strip()
        definition = doc.find_definition(ref)
        if definition is not None and definition.kind == "marker-def":
            head_present = True
            head_size = try_parse_float(
                definition.attrs.get("markerWidth")
            ) or try_parse_float(definition.attrs.get("markerHeight"))
    if not head_present and head_member is not None:
        head_present = True
        head_size = max(head_member.bbox.width, head_member.bbox.height)
    return ArrowCandidate(
        p0=p0,
        p1=p1,
        curved=curved,
        color=color,
        stroke_width=style.stroke_width,
        head_present=head_present,
        head_size=head_size,
    )


def _connects_two(arrow: ArrowCandidate, candidates, config) -> bool:
    def binds(point) -> bool:
        return any(
            c.bbox.distance_to(*point) <= config.endpoint_radius_px for c in candidates
        )

    return binds(arrow.p0) and binds(arrow.p1)


def bind_endpoint(point, candidates, config) -> Optional[int]:
    """Index of the nearest shape candidate within the endpoint radius."""
    best = None
    best_dist = None
    for index, candidate in enumerate(candidates):
        dist = candidate.bbox.distance_to(*point)
        if dist > config.endpoint_radius_px:
            continue
        if best_dist is None or dist < best_dist:
            best = index
            best_dist = dist
    return best


def extract_groundtruth_from_svg(doc: SvgDocument, config: EvalConfig = EvalConfig()):
    """Standalone ground truth: (ShapeMeta list, ArrowMeta list) from an SVG.

    Raises :class:`ExtractionEmpty` when no shapes are found.
    """
    candidates, arrow_candidates = extract_candidates(doc, config)
    if not candidates:
        raise ExtractionEmpty("no shape candidates in reference SVG")
    shapes = [
        ShapeMeta(
            label=c.label,
            shape_kind=c.kind_tag,
            fill_color=c.fill_color,
            fill_style=c.fill_style,
            stroke_color=c.stroke_color,
            border_style=c.border_style,
            center=c.center,
            size=c.size,
            font=c.font,
        )
        for c in candidates
    ]
    arrows = []
    for arrow in arrow_candidates:
        src_index = bind_endpoint(arrow.p0, candidates, config)
        dst_index = bind_endpoint(arrow.p1, candidates, config)
        if src_index is None or dst_index is None or src_index == dst_index:
            continue
        occluded = _endpoint_occluded(arrow.p1, candidates, (src_index, dst_index))
        arrows.append(
            ArrowMeta(
                src_label=candidates[src_index].label,
                dst_label=candidates[dst_index].label,
                head_present=arrow.head_present,
                head_size=arrow.head_size,
                curved=arrow.curved,
                color=arrow.color,
                stroke_width=arrow.stroke_width,
                head_occluded=occluded,
            )
        )
    return shapes, arrows


def _endpoint_occluded(point, candidates, expected_indices) -> bool:
    for index, candidate in enumerate(candidates):
        if index in expected_indices:
            continue
        if candidate.bbox.strictly_contains(*point):
            return True
    return False
