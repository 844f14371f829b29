"""Geometry builders for the 18 shape kinds.

Every coordinate that will appear in the SVG text is quantized to 3 decimals
first, and outlines/bounding boxes are computed from those quantized values.
The evaluator re-derives the same numbers from the parsed SVG, so generated
metadata and extracted attributes agree exactly.

Conventions:
  - ops are (op_name, params, role) in paint order with the front face last;
    roles: "front" (carries the assigned fill style), "facet-top",
    "facet-side" (darkened shades).
  - outline is the visible silhouette as a dense closed polyline used for
    ray casting; circle/ellipse use analytic casting instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .. import geometry
from ..svgcore import Aabb, q3

KAPPA = 0.5522847498307936  # cubic approximation constant for quarter arcs

BLOB_POINTS = 8
CLOUD_BUMPS = 6


def text_extent(text: str, font_size: float) -> tuple:
    """Estimated text box; the shared convention for text-label geometry."""
    return (q3(0.62 * font_size * max(1, len(text))), q3(1.15 * font_size))


@dataclass
class ShapeGeometry:
    kind: str
    center: tuple
    nominal_size: tuple
    ops: list
    outline: Optional[np.ndarray]
    analytic: Optional[tuple]
    bbox: Aabb
    label_anchor: tuple


def _q(p) -> tuple:
    return (q3(p[0]), q3(p[1]))


def _poly_op(points, role):
    return ("polygon", {"points": [_q(p) for p in points]}, role)


def _sample_path_ops(path_cmds) -> np.ndarray:
    """Sample quantized path commands exactly like the evaluator will."""
    chunks = []
    current = (0.0, 0.0)
    start = (0.0, 0.0)
    for letter, nums in path_cmds:
        if letter == "M":
            current = (nums[0], nums[1])
            start = current
            chunks.append(np.array([current], dtype=np.float64))
        elif letter == "L":
            point = (nums[0], nums[1])
            chunks.append(np.array([current, point], dtype=np.float64))
            current = point
        elif letter == "Q":
            ctrl = (nums[0], nums[1])
            point = (nums[2], nums[3])
            chunks.append(geometry.quadratic_points(current, ctrl, point))
            current = point
        elif letter == "C":
            c1 = (nums[0], nums[1])
            c2 = (nums[2], nums[3])
            point = (nums[4], nums[5])
            chunks.append(geometry.cubic_points(current, c1, c2, point))
            current = point
        elif letter == "Z":
            chunks.append(np.array([current, start], dtype=np.float64))
            current = start
    return np.vstack(chunks) if chunks else np.empty((0, 2), dtype=np.float64)


def _bbox_of(points: np.ndarray) -> Aabb:
    return Aabb(
        float(points[:, 0].min()),
        float(points[:, 1].min()),
        float(points[:, 0].max()),
        float(points[:, 1].max()),
    )


def _polygon_silhouette(points) -> np.ndarray:
    return np.array(points, dtype=np.float64)


def _half_ellipse_cubics(cx, cy, rx, ry, upper: bool):
    """Two cubic segments spanning a half ellipse left-to-right (or reverse).

    Returns command tuples continuing from the left (or right) extreme.
    """
    sign = -1.0 if upper else 1.0
    # left -> middle -> right through (cx, cy + sign*ry)
    c1 = (cx - rx, cy + sign * KAPPA * ry)
    c2 = (cx - KAPPA * rx, cy + sign * ry)
    mid = (cx, cy + sign * ry)
    c3 = (cx + KAPPA * rx, cy + sign * ry)
    c4 = (cx + rx, cy + sign * KAPPA * ry)
    right = (cx + rx, cy)
    return [
        ("C", [*_q(c1), *_q(c2), *_q(mid)]),
        ("C", [*_q(c3), *_q(c4), *_q(right)]),
    ]


def _reverse_half_ellipse_cubics(cx, cy, rx, ry, upper: bool):
    """Half ellipse right-to-left, mirroring _half_ellipse_cubics."""
    sign = -1.0 if upper else 1.0
    c1 = (cx + rx, cy + sign * KAPPA * ry)
    c2 = (cx + KAPPA * rx, cy + sign * ry)
    mid = (cx, cy + sign * ry)
    c3 = (cx - KAPPA * rx, cy + sign * ry)
    c4 = (cx - rx, cy + sign * ry * KAPPA)
    left = (cx - rx, cy)
    return [
        ("C", [*_q(c1), *_q(c2), *_q(mid)]),
        ("C", [*_q(c3), *_q(c4), *_q(left)]),
    ]


def build_geometry(kind: str, center, size, params: dict) -> ShapeGeometry:
    """Quantized geometry for one layer of a shape."""
    cx, cy = q3(center[0]), q3(center[1])
    w, h = q3(size[0]), q3(size[1])
    builder = _BUILDERS[kind]
    return builder(cx, cy, w, h, params or {})


def draw_shape_params(kind: str, rng) -> dict:
    """Per-shape random geometry parameters, drawn once and reused per layer."""
    if kind == "blob":
        return {
            "radii": [rng.uniform(0.78, 1.0) for _ in range(BLOB_POINTS)],
            "angles": [rng.uniform(-0.12, 0.12) for _ in range(BLOB_POINTS)],
        }
    if kind == "cloud":
        return {"bump": rng.uniform(0.16, 0.24)}
    if kind == "wave-rect":
        return {"amplitude": rng.uniform(0.10, 0.15)}
    if kind == "parallelogram":
        return {"skew": rng.uniform(0.16, 0.24)}
    if kind == "trapezoid":
        return {"inset": rng.uniform(0.14, 0.22)}
    if kind in ("cylinder", "prism", "cube", "3d-diamond", "3d-hexagon", "3d-trapezoid"):
        return {"depth": rng.uniform(0.18, 0.24)}
    return {}


def _simple_polygon_shape(kind, cx, cy, w, h, vertices, label_anchor=None):
    pts = [_q(p) for p in vertices]
    outline = _polygon_silhouette(pts)
    return ShapeGeometry(
        kind=kind,
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[_poly_op(pts, "front")],
        outline=outline,
        analytic=None,
        bbox=_bbox_of(outline),
        label_anchor=label_anchor or (cx, cy),
    )


def _build_circle(cx, cy, w, h, params):
    r = q3(min(w, h) / 2.0)
    return ShapeGeometry(
        kind="circle",
        center=(cx, cy),
        nominal_size=(2 * r, 2 * r),
        ops=[("circle", {"cx": cx, "cy": cy, "r": r}, "front")],
        outline=None,
        analytic=("ellipse", cx, cy, r, r),
        bbox=Aabb(cx - r, cy - r, cx + r, cy + r),
        label_anchor=(cx, cy),
    )


def _build_ellipse(cx, cy, w, h, params):
    rx = q3(w / 2.0)
    ry = q3(h / 2.0)
    return ShapeGeometry(
        kind="ellipse",
        center=(cx, cy),
        nominal_size=(2 * rx, 2 * ry),
        ops=[("ellipse", {"cx": cx, "cy": cy, "rx": rx, "ry": ry}, "front")],
        outline=None,
        analytic=("ellipse", cx, cy, rx, ry),
        bbox=Aabb(cx - rx, cy - ry, cx + rx, cy + ry),
        label_anchor=(cx, cy),
    )


def _build_rect(kind, cx, cy, w, h):
    # The rect is defined by its emitted primitives (x, y, width, height);
    # far corners are derived with plain arithmetic exactly like a reader of
    # the markup would derive them.
    x = q3(cx - w / 2.0)
    y = q3(cy - h / 2.0)
    x2 = x + w
    y2 = y + h
    outline = _polygon_silhouette([(x, y), (x2, y), (x2, y2), (x, y2)])
    return ShapeGeometry(
        kind=kind,
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[("rect", {"x": x, "y": y, "width": w, "height": h}, "front")],
        outline=outline,
        analytic=None,
        bbox=Aabb(x, y, x2, y2),
        label_anchor=(cx, cy),
    )


def _build_rectangle(cx, cy, w, h, params):
    return _build_rect("rectangle", cx, cy, w, h)


def _build_square(cx, cy, w, h, params):
    side = min(w, h)
    return _build_rect("square", cx, cy, side, side)


def _build_diamond(cx, cy, w, h, params):
    return _simple_polygon_shape(
        "diamond", cx, cy, w, h,
        [(cx, cy - h / 2), (cx + w / 2, cy), (cx, cy + h / 2), (cx - w / 2, cy)],
    )


def _build_hexagon(cx, cy, w, h, params):
    return _simple_polygon_shape(
        "hexagon", cx, cy, w, h,
        [
            (cx - w / 2, cy),
            (cx - w / 4, cy - h / 2),
            (cx + w / 4, cy - h / 2),
            (cx + w / 2, cy),
            (cx + w / 4, cy + h / 2),
            (cx - w / 4, cy + h / 2),
        ],
    )


def _build_parallelogram(cx, cy, w, h, params):
    s = params.get("skew", 0.2) * w
    return _simple_polygon_shape(
        "parallelogram", cx, cy, w, h,
        [
            (cx - w / 2 + s, cy - h / 2),
            (cx + w / 2, cy - h / 2),
            (cx + w / 2 - s, cy + h / 2),
            (cx - w / 2, cy + h / 2),
        ],
    )


def _build_trapezoid(cx, cy, w, h, params):
    s = params.get("inset", 0.18) * w
    return _simple_polygon_shape(
        "trapezoid", cx, cy, w, h,
        [
            (cx - w / 2 + s, cy - h / 2),
            (cx + w / 2 - s, cy - h / 2),
            (cx + w / 2, cy + h / 2),
            (cx - w / 2, cy + h / 2),
        ],
    )


def _build_blob(cx, cy, w, h, params):
    radii = params.get("radii") or [0.9] * BLOB_POINTS
    jitters = params.get("angles") or [0.0] * BLOB_POINTS
    anchors = []
    for i in range(BLOB_POINTS):
        angle = 2.0 * math.pi * i / BLOB_POINTS + jitters[i]
        anchors.append(
            (
                cx + radii[i] * (w / 2.0) * math.cos(angle),
                cy + radii[i] * (h / 2.0) * math.sin(angle),
            )
        )
    cmds = [("M", list(_q(anchors[0])))]
    n = BLOB_POINTS
    for i in range(n):
        p0 = anchors[i]
        p1 = anchors[(i + 1) % n]
        prev = anchors[(i - 1) % n]
        nxt = anchors[(i + 2) % n]
        c1 = (p0[0] + (p1[0] - prev[0]) / 6.0, p0[1] + (p1[1] - prev[1]) / 6.0)
        c2 = (p1[0] - (nxt[0] - p0[0]) / 6.0, p1[1] - (nxt[1] - p0[1]) / 6.0)
        cmds.append(("C", [*_q(c1), *_q(c2), *_q(p1)]))
    cmds.append(("Z", []))
    samples = _sample_path_ops(cmds)
    return ShapeGeometry(
        kind="blob",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[("path", {"cmds": cmds}, "front")],
        outline=samples,
        analytic=None,
        bbox=_bbox_of(samples),
        label_anchor=(cx, cy),
    )


def _build_wave_rect(cx, cy, w, h, params):
    amp = params.get("amplitude", 0.12) * h
    x0, y0 = cx - w / 2.0, cy - h / 2.0
    x1, y1 = cx + w / 2.0, cy + h / 2.0
    cmds = [
        ("M", list(_q((x0, y0)))),
        ("L", list(_q((x1, y0)))),
        ("L", list(_q((x1, y1)))),
        ("Q", [*_q((cx + w / 4.0, y1 - amp)), *_q((cx, y1))]),
        ("Q", [*_q((cx - w / 4.0, y1 + amp)), *_q((x0, y1))]),
        ("Z", []),
    ]
    samples = _sample_path_ops(cmds)
    return ShapeGeometry(
        kind="wave-rect",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[("path", {"cmds": cmds}, "front")],
        outline=samples,
        analytic=None,
        bbox=_bbox_of(samples),
        label_anchor=(cx, q3(cy - 0.08 * h)),
    )


def _build_cloud(cx, cy, w, h, params):
    bump = params.get("bump", 0.2) * min(w, h)
    rx = 0.5 * w - bump * 0.5
    ry = 0.5 * h - bump * 0.5
    anchors = []
    for i in range(CLOUD_BUMPS):
        angle = 2.0 * math.pi * i / CLOUD_BUMPS - math.pi / 2.0
        anchors.append((cx + rx * math.cos(angle), cy + ry * math.sin(angle)))
    cmds = [("M", list(_q(anchors[0])))]
    for i in range(CLOUD_BUMPS):
        p0 = anchors[i]
        p1 = anchors[(i + 1) % CLOUD_BUMPS]
        mx, my = (p0[0] + p1[0]) / 2.0, (p0[1] + p1[1]) / 2.0
        ux, uy = mx - cx, my - cy
        norm = math.hypot(ux, uy) or 1.0
        ux, uy = ux / norm, uy / norm
        c1 = (p0[0] + 0.3 * (p1[0] - p0[0]) + bump * ux, p0[1] + 0.3 * (p1[1] - p0[1]) + bump * uy)
        c2 = (p0[0] + 0.7 * (p1[0] - p0[0]) + bump * ux, p0[1] + 0.7 * (p1[1] - p0[1]) + bump * uy)
        cmds.append(("C", [*_q(c1), *_q(c2), *_q(p1)]))
    cmds.append(("Z", []))
    samples = _sample_path_ops(cmds)
    return ShapeGeometry(
        kind="cloud",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[("path", {"cmds": cmds}, "front")],
        outline=samples,
        analytic=None,
        bbox=_bbox_of(samples),
        label_anchor=(cx, cy),
    )


def _build_cylinder(cx, cy, w, h, params):
    rx = w / 2.0
    cap = max(6.0, params.get("depth", 0.2) * h * 0.85)
    top_cy = cy - h / 2.0 + cap
    bot_cy = cy + h / 2.0 - cap
    left = q3(cx - rx)
    right = q3(cx + rx)
    # Silhouette: left side down, bottom bulge, right side up, top bulge.
    cmds = [
        ("M", [left, q3(top_cy)]),
        ("L", [left, q3(bot_cy)]),
    ]
    cmds += _half_ellipse_cubics(cx, bot_cy, rx, cap, upper=False)
    cmds += [("L", [right, q3(top_cy)])]
    cmds += _reverse_half_ellipse_cubics(cx, top_cy, rx, cap, upper=True)
    cmds.append(("Z", []))
    silhouette = _sample_path_ops(cmds)
    # Visible seam: the lower half of the top cap.
    seam = [("M", [left, q3(top_cy)])]
    seam += _half_ellipse_cubics(cx, top_cy, rx, cap, upper=False)
    all_cmds = cmds + seam
    samples = _sample_path_ops(all_cmds)
    return ShapeGeometry(
        kind="cylinder",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[("path", {"cmds": all_cmds}, "front")],
        outline=silhouette,
        analytic=None,
        bbox=_bbox_of(samples),
        label_anchor=(cx, q3(cy + cap / 2.0)),
    )


def _build_cube(cx, cy, w, h, params):
    d = params.get("depth", 0.2) * min(w, h)
    x0, y0 = cx - w / 2.0, cy - h / 2.0
    x1, y1 = cx + w / 2.0, cy + h / 2.0
    front = [(x0, y0 + d), (x1 - d, y0 + d), (x1 - d, y1), (x0, y1)]
    top = [(x0, y0 + d), (x0 + d, y0), (x1, y0), (x1 - d, y0 + d)]
    side = [(x1 - d, y0 + d), (x1, y0), (x1, y1 - d), (x1 - d, y1)]
    silhouette = [
        (x0, y0 + d), (x0 + d, y0), (x1, y0), (x1, y1 - d), (x1 - d, y1), (x0, y1),
    ]
    ops = [_poly_op(top, "facet-top"), _poly_op(side, "facet-side"), _poly_op(front, "front")]
    outline = _polygon_silhouette([_q(p) for p in silhouette])
    return ShapeGeometry(
        kind="cube",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=ops,
        outline=outline,
        analytic=None,
        bbox=_bbox_of(outline),
        label_anchor=_q(((x0 + x1 - d) / 2.0, (y0 + d + y1) / 2.0)),
    )


def _build_prism(cx, cy, w, h, params):
    d = params.get("depth", 0.2) * min(w, h)
    x0, y0 = cx - w / 2.0, cy - h / 2.0
    x1, y1 = cx + w / 2.0, cy + h / 2.0
    apex = ((x0 + x1 - d) / 2.0, y0 + d)
    a = (x0, y1)
    b = (x1 - d, y1)
    front = [a, b, apex]
    side = [b, (x1, y1 - d), (apex[0] + d, y0), apex]
    silhouette = [a, b, (x1, y1 - d), (apex[0] + d, y0), apex]
    ops = [_poly_op(side, "facet-side"), _poly_op(front, "front")]
    outline = _polygon_silhouette([_q(p) for p in silhouette])
    return ShapeGeometry(
        kind="prism",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=ops,
        outline=outline,
        analytic=None,
        bbox=_bbox_of(outline),
        label_anchor=_q(((a[0] + b[0]) / 2.0, y1 - (y1 - apex[1]) * 0.35)),
    )


def _build_3d_diamond(cx, cy, w, h, params):
    d = params.get("depth", 0.2) * min(w, h)
    x0, y0 = cx - w / 2.0, cy - h / 2.0
    x1, y1 = cx + w / 2.0, cy + h / 2.0
    fx = (x0 + x1 - d) / 2.0
    fy = (y0 + d + y1) / 2.0
    north = (fx, y0 + d)
    east = (x1 - d, fy)
    south = (fx, y1)
    west = (x0, fy)
    v = (d, -d)
    face_ne = [north, (north[0] + v[0], north[1] + v[1]), (east[0] + v[0], east[1] + v[1]), east]
    face_se = [east, (east[0] + v[0], east[1] + v[1]), (south[0] + v[0], south[1] + v[1]), south]
    front = [north, east, south, west]
    silhouette = [
        west, north, (north[0] + v[0], north[1] + v[1]),
        (east[0] + v[0], east[1] + v[1]), (south[0] + v[0], south[1] + v[1]), south,
    ]
    ops = [_poly_op(face_ne, "facet-top"), _poly_op(face_se, "facet-side"), _poly_op(front, "front")]
    outline = _polygon_silhouette([_q(p) for p in silhouette])
    return ShapeGeometry(
        kind="3d-diamond",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=ops,
        outline=outline,
        analytic=None,
        bbox=_bbox_of(outline),
        label_anchor=_q((fx, fy)),
    )


def _build_3d_hexagon(cx, cy, w, h, params):
    d = params.get("depth", 0.2) * min(w, h)
    x0, y0 = cx - w / 2.0, cy - h / 2.0
    x1, y1 = cx + w / 2.0, cy + h / 2.0
    fw = (x1 - x0) - d
    fy = (y0 + d + y1) / 2.0
    left = (x0, fy)
    tl = (x0 + fw / 4.0, y0 + d)
    tr = (x0 + 3.0 * fw / 4.0, y0 + d)
    right = (x0 + fw, fy)
    br = (x0 + 3.0 * fw / 4.0, y1)
    bl = (x0 + fw / 4.0, y1)
    v = (d, -d)
    face_ne = [tr, (tr[0] + v[0], tr[1] + v[1]), (right[0] + v[0], right[1] + v[1]), right]
    face_se = [right, (right[0] + v[0], right[1] + v[1]), (br[0] + v[0], br[1] + v[1]), br]
    front = [left, tl, tr, right, br, bl]
    silhouette = [
        left, tl, tr, (tr[0] + v[0], tr[1] + v[1]),
        (right[0] + v[0], right[1] + v[1]), (br[0] + v[0], br[1] + v[1]), br, bl,
    ]
    ops = [_poly_op(face_ne, "facet-top"), _poly_op(face_se, "facet-side"), _poly_op(front, "front")]
    outline = _polygon_silhouette([_q(p) for p in silhouette])
    return ShapeGeometry(
        kind="3d-hexagon",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=ops,
        outline=outline,
        analytic=None,
        bbox=_bbox_of(outline),
        label_anchor=_q(((left[0] + right[0]) / 2.0, fy)),
    )


def _build_3d_trapezoid(cx, cy, w, h, params):
    d = params.get("depth", 0.2) * min(w, h)
    x0, y0 = cx - w / 2.0, cy - h / 2.0
    x1, y1 = cx + w / 2.0, cy + h / 2.0
    fw = (x1 - x0) - d
    s = 0.18 * fw
    tl = (x0 + s, y0 + d)
    tr = (x0 + fw - s, y0 + d)
    br = (x0 + fw, y1)
    bl = (x0, y1)
    v = (d, -d)
    face_top = [tl, (tl[0] + v[0], tl[1] + v[1]), (tr[0] + v[0], tr[1] + v[1]), tr]
    face_side = [tr, (tr[0] + v[0], tr[1] + v[1]), (br[0] + v[0], br[1] + v[1]), br]
    front = [tl, tr, br, bl]
    silhouette = [
        bl, tl, (tl[0] + v[0], tl[1] + v[1]),
        (tr[0] + v[0], tr[1] + v[1]), (br[0] + v[0], br[1] + v[1]), br,
    ]
    ops = [_poly_op(face_top, "facet-top"), _poly_op(face_side, "facet-side"), _poly_op(front, "front")]
    outline = _polygon_silhouette([_q(p) for p in silhouette])
    return ShapeGeometry(
        kind="3d-trapezoid",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=ops,
        outline=outline,
        analytic=None,
        bbox=_bbox_of(outline),
        label_anchor=_q(((x0 + x0 + fw) / 2.0, (y0 + d + y1) / 2.0)),
    )


def _build_text_label(cx, cy, w, h, params):
    # Geometry is finalized in styling once the label text is known.
    return ShapeGeometry(
        kind="text-label",
        center=(cx, cy),
        nominal_size=(w, h),
        ops=[],
        outline=None,
        analytic=None,
        bbox=Aabb(cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0),
        label_anchor=(cx, cy),
    )


_BUILDERS = {
    "circle": _build_circle,
    "rectangle": _build_rectangle,
    "square": _build_square,
    "ellipse": _build_ellipse,
    "diamond": _build_diamond,
    "hexagon": _build_hexagon,
    "parallelogram": _build_parallelogram,
    "trapezoid": _build_trapezoid,
    "blob": _build_blob,
    "wave-rect": _build_wave_rect,
    "cloud": _build_cloud,
    "text-label": _build_text_label,
    "cylinder": _build_cylinder,
    "prism": _build_prism,
    "cube": _build_cube,
    "3d-diamond": _build_3d_diamond,
    "3d-hexagon": _build_3d_hexagon,
    "3d-trapezoid": _build_3d_trapezoid,
}


def translate_geometry(geom: ShapeGeometry, dx: float, dy: float) -> ShapeGeometry:
    """Copy of a layer geometry shifted by (dx, dy), re-quantized."""
    def shift_point(p):
        return (q3(p[0] + dx), q3(p[1] + dy))

    ops = []
    for name, params, role in geom.ops:
        if name == "polygon":
            ops.append((name, {"points": [shift_point(p) for p in params["points"]]}, role))
        elif name == "rect":
            ops.append(
                (
                    name,
                    {
                        "x": q3(params["x"] + dx),
                        "y": q3(params["y"] + dy),
                        "width": params["width"],
                        "height": params["height"],
                    },
                    role,
                )
            )
        elif name == "circle":
            ops.append(
                (name, {"cx": q3(params["cx"] + dx), "cy": q3(params["cy"] + dy), "r": params["r"]}, role)
            )
        elif name == "ellipse":
            ops.append(
                (
                    name,
                    {
                        "cx": q3(params["cx"] + dx),
                        "cy": q3(params["cy"] + dy),
                        "rx": params["rx"],
                        "ry": params["ry"],
                    },
                    role,
                )
            )
        elif name == "path":
            cmds = []
            for letter, nums in params["cmds"]:
                shifted = []
                for index in range(0, len(nums), 2):
                    shifted.extend(
                        (q3(nums[index] + dx), q3(nums[index + 1] + dy))
                    )
                cmds.append((letter, shifted))
            ops.append((name, {"cmds": cmds}, role))
    shifted_geom = replace(geom, ops=ops)
    shifted_geom.center = (q3(geom.center[0] + dx), q3(geom.center[1] + dy))
    shifted_geom.label_anchor = shift_point(geom.label_anchor)
    if geom.outline is not None:
        shifted_geom.outline = geom.outline + np.array([dx, dy], dtype=np.float64)
    if geom.analytic is not None:
        a = geom.analytic
        shifted_geom.analytic = (a[0], q3(a[1] + dx), q3(a[2] + dy), a[3], a[4])
    shifted_geom.bbox = _bbox_from_ops(shifted_geom)
    return shifted_geom


def _bbox_from_ops(geom: ShapeGeometry) -> Aabb:
    boxes = []
    for name, params, _role in geom.ops:
        # Plain arithmetic on the quantized primitives, mirroring how the
        # evaluator derives boxes from parsed attributes bit for bit.
        if name == "polygon":
            pts = np.array(params["points"], dtype=np.float64)
            boxes.append(_bbox_of(pts))
        elif name == "rect":
            boxes.append(
                Aabb(
                    params["x"],
                    params["y"],
                    params["x"] + params["width"],
                    params["y"] + params["height"],
                )
            )
        elif name == "circle":
            boxes.append(
                Aabb(
                    params["cx"] - params["r"],
                    params["cy"] - params["r"],
                    params["cx"] + params["r"],
                    params["cy"] + params["r"],
                )
            )
        elif name == "ellipse":
            boxes.append(
                Aabb(
                    params["cx"] - params["rx"],
                    params["cy"] - params["ry"],
                    params["cx"] + params["rx"],
                    params["cy"] + params["ry"],
                )
            )
        elif name == "path":
            boxes.append(_bbox_of(_sample_path_ops(params["cmds"])))
    if not boxes:
        return geom.bbox
    box = boxes[0]
    for other in boxes[1:]:
        box = box.union(other)
    return box
