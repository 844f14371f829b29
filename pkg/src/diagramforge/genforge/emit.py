"""SVG tree and metadata emission for generated diagrams.

All numbers written here were quantized upstream; formatting uses the
canonical 3-decimal formatter so the text parses back to the same floats the
metadata records.
"""

from __future__ import annotations

import math

from ..svgcore import Canvas, ElementNode, SvgDocument, classify_tag, color_hex, fmt_number, q3


def _node(tag: str, attrs: dict, children=None, text=None) -> ElementNode:
    node = ElementNode(tag=tag, kind=classify_tag(tag), attrs=attrs)
    if children:
        node.children = list(children)
    if text is not None:
        node.text = text
        node.text_content = text.strip()
    return node


def _darken(rgb: tuple, factor: float) -> tuple:
    return tuple(int(round(c * factor)) for c in rgb)


def _dasharray_for(border_style: str, stroke_width: float):
    if border_style == "dashed":
        return f"{fmt_number(4.0 * stroke_width)} {fmt_number(2.0 * stroke_width)}"
    if border_style == "dotted":
        return f"{fmt_number(0.8 * stroke_width)} {fmt_number(1.4 * stroke_width)}"
    if border_style == "dash-dot":
        return (
            f"{fmt_number(4.5 * stroke_width)} {fmt_number(1.5 * stroke_width)} "
            f"{fmt_number(0.8 * stroke_width)} {fmt_number(1.5 * stroke_width)}"
        )
    return None


def _arrow_dasharray(pattern: str, stroke_width: float):
    if pattern == "dashed":
        return f"{fmt_number(4.0 * stroke_width)} {fmt_number(2.0 * stroke_width)}"
    if pattern == "dotted":
        return f"{fmt_number(0.8 * stroke_width)} {fmt_number(1.4 * stroke_width)}"
    return None


def _pattern_def(shape, pattern_id: str) -> ElementNode:
    # Zero-valued default attributes are omitted so constant literals stay
    # below the corpus corruption heuristics.
    params = shape.pattern_params
    tile = params.get("tile", 10.0)
    base = color_hex(shape.fill_color)
    mark = color_hex(_darken(shape.fill_color, 0.55))
    children = [
        _node(
            "rect",
            {"width": fmt_number(tile), "height": fmt_number(tile), "fill": base},
        )
    ]
    t = fmt_number(tile)
    line_width = fmt_number(params.get("line_width", 1.4))
    if shape.fill_style == "hatching":
        if params.get("direction", 1) > 0:
            line = {"y1": t, "x2": t}  # (0, t) -> (t, 0)
        else:
            line = {"x2": t, "y2": t}  # (0, 0) -> (t, t)
        line.update({"stroke": mark, "stroke-width": line_width})
        children.append(_node("line", line))
    elif shape.fill_style == "crosshatch":
        children.append(
            _node("line", {"y1": t, "x2": t, "stroke": mark, "stroke-width": line_width})
        )
        children.append(
            _node("line", {"x2": t, "y2": t, "stroke": mark, "stroke-width": line_width})
        )
    elif shape.fill_style == "horizontal-lines":
        half = fmt_number(q3(tile / 2.0))
        children.append(
            _node("line", {"y1": half, "x2": t, "y2": half, "stroke": mark, "stroke-width": line_width})
        )
    elif shape.fill_style == "dots":
        half = fmt_number(q3(tile / 2.0))
        radius = fmt_number(params.get("radius", 1.6))
        children.append(_node("circle", {"cx": half, "cy": half, "r": radius, "fill": mark}))
    return _node(
        "pattern",
        {
            "id": pattern_id,
            "width": fmt_number(tile),
            "height": fmt_number(tile),
            "patternUnits": "userSpaceOnUse",
        },
        children,
    )


def _gradient_def(shape, gradient_id: str) -> ElementNode:
    base = color_hex(shape.fill_color)
    shade = color_hex(_darken(shape.fill_color, 0.78))
    stops = [
        _node("stop", {"stop-color": base}),  # offset defaults to 0
        _node("stop", {"offset": "100%", "stop-color": shade}),
    ]
    if shape.fill_style == "linear-gradient":
        axis = shape.pattern_params.get("axis", (0.0, 0.0, 1.0, 1.0))
        return _node(
            "linearGradient",
            {
                "id": gradient_id,
                "x1": fmt_number(axis[0]),
                "y1": fmt_number(axis[1]),
                "x2": fmt_number(axis[2]),
                "y2": fmt_number(axis[3]),
            },
            stops,
        )
    return _node("radialGradient", {"id": gradient_id}, stops)


def _marker_def(marker_id: str, head_size: float, color: tuple) -> ElementNode:
    hs = fmt_number(head_size)
    half = fmt_number(q3(head_size / 2.0))
    head_path = _node(
        "path",
        {"d": f"M 0 0 L {hs} {half} L 0 {hs} Z", "fill": color_hex(color)},
    )
    return _node(
        "marker",
        {
            "id": marker_id,
            "markerWidth": hs,
            "markerHeight": hs,
            "refX": hs,
            "refY": half,
            "orient": "auto",
            "markerUnits": "userSpaceOnUse",
        },
        [head_path],
    )


def _path_d(cmds) -> str:
    pieces = []
    for letter, nums in cmds:
        if nums:
            pieces.append(letter + " " + " ".join(fmt_number(v) for v in nums))
        else:
            pieces.append(letter)
    return " ".join(pieces)


def _op_node(op, fill_value: str, corner_radius) -> ElementNode:
    name, params, _role = op
    attrs = {}
    if name == "rect":
        attrs = {
            "x": fmt_number(params["x"]),
            "y": fmt_number(params["y"]),
            "width": fmt_number(params["width"]),
            "height": fmt_number(params["height"]),
        }
        if corner_radius:
            attrs["rx"] = fmt_number(corner_radius)
    elif name == "circle":
        attrs = {
            "cx": fmt_number(params["cx"]),
            "cy": fmt_number(params["cy"]),
            "r": fmt_number(params["r"]),
        }
    elif name == "ellipse":
        attrs = {
            "cx": fmt_number(params["cx"]),
            "cy": fmt_number(params["cy"]),
            "rx": fmt_number(params["rx"]),
            "ry": fmt_number(params["ry"]),
        }
    elif name == "polygon":
        attrs = {
            "points": " ".join(
                f"{fmt_number(x)},{fmt_number(y)}" for x, y in params["points"]
            )
        }
    elif name == "path":
        attrs = {"d": _path_d(params["cmds"])}
    attrs["fill"] = fill_value
    return _node(name if name != "path" else "path", attrs)


def _shape_group(shape, style, fill_ref: str) -> ElementNode:
    anchor = shape.geometry.label_anchor
    text_attrs = {
        "x": fmt_number(anchor[0]),
        "y": fmt_number(anchor[1]),
        "font-family": shape.font,
        "font-size": fmt_number(shape.font_size),
        "text-anchor": "middle",
        "dominant-baseline": "central",
    }
    if shape.kind == "text-label":
        # A bare label: painted by fill only, no border.
        text_attrs["fill"] = color_hex(shape.fill_color)
        return _node("g", {"id": shape.id}, [_node("text", text_attrs, text=shape.label)])

    # Stroke styling is hoisted to the group and inherited by the outline
    # elements; the label text opts out of the stroke.
    group_attrs = {
        "id": shape.id,
        "stroke": color_hex(shape.stroke_color),
        "stroke-width": fmt_number(style.stroke_width),
    }
    dasharray = _dasharray_for(shape.border_style, style.stroke_width)
    if dasharray:
        group_attrs["stroke-dasharray"] = dasharray
    children = []
    layer_count = len(shape.layers)
    for layer_index, layer in enumerate(shape.layers):
        is_front_layer = layer_index == layer_count - 1
        depth_from_front = layer_count - 1 - layer_index
        for op in layer.ops:
            role = op[2]
            if not is_front_layer:
                fill_value = color_hex(_darken(shape.fill_color, 0.85**depth_from_front))
            elif role == "front":
                fill_value = fill_ref
            elif role == "facet-top":
                fill_value = color_hex(_darken(shape.fill_color, 0.85))
            else:
                fill_value = color_hex(_darken(shape.fill_color, 0.7))
            children.append(_op_node(op, fill_value, shape.corner_radius))
    text_attrs["fill"] = color_hex(shape.stroke_color)
    text_attrs["stroke"] = "none"
    children.append(_node("text", text_attrs, text=shape.label))
    return _node("g", group_attrs, children)


def _head_polygon(conn) -> ElementNode:
    origin = conn.control if conn.control is not None else conn.p0
    dx = conn.p1[0] - origin[0]
    dy = conn.p1[1] - origin[1]
    norm = math.hypot(dx, dy) or 1.0
    ux, uy = dx / norm, dy / norm
    px, py = -uy, ux
    tip = conn.p1
    base_x = tip[0] - conn.head_size * ux
    base_y = tip[1] - conn.head_size * uy
    half = 0.35 * conn.head_size
    left = (q3(base_x + half * px), q3(base_y + half * py))
    right = (q3(base_x - half * px), q3(base_y - half * py))
    points = [tip, left, right]
    return _node(
        "polygon",
        {
            "points": " ".join(f"{fmt_number(x)},{fmt_number(y)}" for x, y in points),
            "fill": color_hex(conn.color),
            "stroke": "none",
        },
    )


def _arrow_group(conn, index: int, head_mode: str, marker_id) -> ElementNode:
    attrs = {
        "stroke": color_hex(conn.color),
        "stroke-width": fmt_number(conn.stroke_width),
        "fill": "none",
    }
    dasharray = _arrow_dasharray(conn.line_pattern, conn.stroke_width)
    if dasharray:
        attrs["stroke-dasharray"] = dasharray
    if conn.kind == "straight":
        attrs.update(
            {
                "x1": fmt_number(conn.p0[0]),
                "y1": fmt_number(conn.p0[1]),
                "x2": fmt_number(conn.p1[0]),
                "y2": fmt_number(conn.p1[1]),
            }
        )
        body = _node("line", attrs)
    else:
        d = (
            f"M {fmt_number(conn.p0[0])} {fmt_number(conn.p0[1])} "
            f"Q {fmt_number(conn.control[0])} {fmt_number(conn.control[1])} "
            f"{fmt_number(conn.p1[0])} {fmt_number(conn.p1[1])}"
        )
        attrs["d"] = d
        body = _node("path", attrs)
    children = [body]
    if head_mode == "marker":
        body.attrs["marker-end"] = f"url(#{marker_id})"
    else:
        children.append(_head_polygon(conn))
    return _node("g", {"id": f"a{index}"}, children)


def build_document(shapes, connections, style, config) -> SvgDocument:
    """Assemble the full SVG document tree for a sample."""
    defs_children = []
    fill_refs = {}
    for index, shape in enumerate(shapes):
        if shape.kind == "text-label" or shape.fill_style == "solid":
            fill_refs[shape.id] = color_hex(shape.fill_color)
        elif shape.fill_style in ("linear-gradient", "radial-gradient"):
            gradient_id = f"grad{index}"
            defs_children.append(_gradient_def(shape, gradient_id))
            fill_refs[shape.id] = f"url(#{gradient_id})"
        else:
            pattern_id = f"pat{index}"
            defs_children.append(_pattern_def(shape, pattern_id))
            fill_refs[shape.id] = f"url(#{pattern_id})"
    marker_ids = {}
    if style.head_mode == "marker":
        for index, conn in enumerate(connections):
            marker_id = f"ah{index}"
            marker_ids[index] = marker_id
            defs_children.append(_marker_def(marker_id, conn.head_size, conn.color))

    root_children = []
    if defs_children:
        root_children.append(_node("defs", {}, defs_children))
    for shape in shapes:
        root_children.append(_shape_group(shape, style, fill_refs[shape.id]))
    for index, conn in enumerate(connections):
        root_children.append(_arrow_group(conn, index, style.head_mode, marker_ids.get(index)))

    root = _node(
        "svg",
        {
            "width": fmt_number(config.canvas_width),
            "height": fmt_number(config.canvas_height),
            "viewBox": f"0 0 {fmt_number(config.canvas_width)} {fmt_number(config.canvas_height)}",
        },
        root_children,
    )
    canvas = Canvas(config.canvas_width, config.canvas_height, (0.0, 0.0, config.canvas_width, config.canvas_height))
    return SvgDocument(canvas=canvas, root=root)


def build_metadata(sample_seed, config, shapes, connections, count, r_lo, r_hi) -> dict:
    """Paired ground truth: 10 attributes per shape, 6 per arrow."""
    shape_records = []
    for shape in shapes:
        center = shape.center
        size = shape.size
        shape_records.append(
            {
                "border_style": shape.border_style,
                "center": [center[0], center[1]],
                "extras": {
                    "corner_radius": shape.corner_radius,
                    "stack_layers": shape.stack_layers,
                },
                "fill_color": list(shape.fill_color),
                "fill_style": shape.fill_style,
                "font": shape.font,
                "label": shape.label,
                "shape_kind": shape.kind,
                "size": [size[0], size[1]],
                "stroke_color": list(shape.stroke_color),
            }
        )
    arrow_records = []
    for conn in connections:
        arrow_records.append(
            {
                "color": list(conn.color),
                "curved": conn.kind == "quadratic",
                "dst": shapes[conn.dst_index].label,
                "head": True,
                "head_size": conn.head_size,
                "src": shapes[conn.src_index].label,
            }
        )
    return {
        "arrows": arrow_records,
        "canvas": {"height": config.canvas_height, "width": config.canvas_width},
        "config_hash": config.config_hash(),
        "ratios": {"c": count, "n": len(shapes), "r_hi": r_hi, "r_lo": r_lo},
        "seed": sample_seed,
        "shapes": shape_records,
    }
