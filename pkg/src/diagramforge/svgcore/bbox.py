"""Bounding boxes for geometric elements."""

from __future__ import annotations

import re

from .model import Aabb, ElementNode, NoGeometry
from .num import try_parse_float
from .pathdata import MalformedPath, hull_points, parse_path_data

_TRANSLATE_ONLY = re.compile(r"^\s*translate\(\s*([^,\s)]+)(?:[\s,]+([^)\s]+))?\s*\)\s*$")


def parse_points(value: str):
    """Coordinate pairs from a points attribute; odd trailing values dropped."""
    tokens = [try_parse_float(t) for t in (value or "").replace(",", " ").split()]
    tokens = [t for t in tokens if t is not None]
    return [(tokens[i], tokens[i + 1]) for i in range(0, len(tokens) - 1, 2)]


def own_translate(node: ElementNode):
    """(dx, dy, is_pure) for the node's transform attribute.

    Pure translations are applied geometrically; any other transform leaves
    geometry untouched and marks the bbox approximate.
    """
    raw = node.attrs.get("transform")
    if not raw or not raw.strip():
        return (0.0, 0.0, True)
    match = _TRANSLATE_ONLY.match(raw)
    if not match:
        return (0.0, 0.0, False)
    dx = try_parse_float(match.group(1)) or 0.0
    dy = try_parse_float(match.group(2)) if match.group(2) else 0.0
    if dy is None:
        dy = 0.0
    return (dx, dy, True)


def element_bbox(node: ElementNode) -> Aabb:
    """Bounding box of a geometric element.

    Exact for rect/circle/ellipse/line/polyline/polygon. For paths this is
    the hull of command endpoints and control points, which contains the
    drawn curve. Groups return the union of their children. Text and other
    extent-free elements raise :class:`NoGeometry`.
    """
    dx, dy, pure = own_translate(node)
    box = _untransformed_bbox(node)
    box = box.translated(dx, dy)
    if not pure:
        box = Aabb(box.min_x, box.min_y, box.max_x, box.max_y, approximate=True)
    return box


def _untransformed_bbox(node: ElementNode) -> Aabb:
    kind = node.kind
    if kind == "rect":
        x = node.float_attr("x")
        y = node.float_attr("y")
        w = node.float_attr("width")
        h = node.float_attr("height")
        return Aabb(x, y, x + w, y + h)
    if kind == "circle":
        cx = node.float_attr("cx")
        cy = node.float_attr("cy")
        r = node.float_attr("r")
        return Aabb(cx - r, cy - r, cx + r, cy + r)
    if kind == "ellipse":
        cx = node.float_attr("cx")
        cy = node.float_attr("cy")
        rx = node.float_attr("rx")
        ry = node.float_attr("ry")
        return Aabb(cx - rx, cy - ry, cx + rx, cy + ry)
    if kind == "line":
        x1 = node.float_attr("x1")
        y1 = node.float_attr("y1")
        x2 = node.float_attr("x2")
        y2 = node.float_attr("y2")
        return Aabb(min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2))
    if kind in ("polyline", "polygon"):
        points = parse_points(node.attrs.get("points", ""))
        if not points:
            raise NoGeometry(f"<{node.tag}> has no points")
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        return Aabb(min(xs), min(ys), max(xs), max(ys))
    if kind == "path":
        try:
            path = parse_path_data(node.attrs.get("d", ""))
        except MalformedPath as exc:
            raise NoGeometry(f"malformed path: {exc}") from exc
        points = hull_points(path)
        if points.shape[0] == 0:
            raise NoGeometry("empty path")
        return Aabb(
            float(points[:, 0].min()),
            float(points[:, 1].min()),
            float(points[:, 0].max()),
            float(points[:, 1].max()),
        )
    if kind == "group" or node.tag.lower() in ("svg", "a"):
        boxes = []
        for child in node.children:
            try:
                boxes.append(element_bbox(child))
            except NoGeometry:
                continue
        if not boxes:
            raise NoGeometry(f"<{node.tag}> has no geometric children")
        box = boxes[0]
        for other in boxes[1:]:
            box = box.union(other)
        return box
    raise NoGeometry(f"<{node.tag}> has no geometric extent")
