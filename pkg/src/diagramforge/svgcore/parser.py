"""Parsing SVG text into the document model and canonical serialization.

Serialization is canonical: attributes in alphabetical order, numbers at
3-decimal precision, stable namespace prefixes. Parsing the serialized form
and serializing again reproduces the same text, which is the round-trip
contract the tests pin down.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from typing import Optional

from .model import (
    MAX_DEPTH,
    SVG_NS,
    XLINK_NS,
    Canvas,
    DepthExceeded,
    ElementNode,
    ParseError,
    SvgDocument,
    classify_tag,
    resolve_style,
)
from .num import fmt_number, try_parse_float
from .pathdata import MalformedPath, parse_path_data

_URL_REF = re.compile(r"url\(\s*#([^)\s]+)\s*\)")

# Attributes rewritten through the canonical number formatter.
_NUMERIC_ATTRS = {
    "x", "y", "width", "height", "cx", "cy", "r", "rx", "ry",
    "x1", "y1", "x2", "y2", "stroke-width", "font-size",
    "refX", "refY", "markerWidth", "markerHeight", "stroke-dashoffset",
    "opacity", "fill-opacity", "stroke-opacity", "stop-opacity", "offset",
    "stroke-miterlimit",
}
_NUMBER_LIST_ATTRS = {"points", "viewBox", "stroke-dasharray"}

_DEFINITION_KINDS = {"pattern-def", "gradient-def", "marker-def"}

# Attributes that may carry url(#...) references.
_REF_ATTRS = ("fill", "stroke", "filter", "clip-path", "mask",
              "marker-start", "marker-mid", "marker-end")


def _local_tag(tag) -> str:
    if not isinstance(tag, str):
        return "!comment"
    if tag.startswith("{"):
        uri, _, local = tag[1:].partition("}")
        if uri == SVG_NS:
            return local
        return tag
    return tag


def _attr_name(name: str) -> str:
    if name.startswith("{"):
        uri, _, local = name[1:].partition("}")
        if uri == XLINK_NS:
            return f"xlink:{local}"
        if uri == SVG_NS:
            return local
        return name
    return name


def parse_svg(text: str) -> SvgDocument:
    """Parse SVG text into an immutable document.

    Malformed XML raises :class:`ParseError` with a line number; nesting past
    128 levels raises :class:`DepthExceeded`. Unknown tags become kind
    ``other`` and survive round-tripping untouched.
    """
    builder = ET.TreeBuilder(insert_comments=True)
    try:
        root_et = ET.fromstring(text, parser=ET.XMLParser(target=builder))
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise ParseError(str(exc), line=line) from exc

    ids: dict = {}
    refs: list = []

    def build(element, ancestors: tuple, depth: int) -> ElementNode:
        if depth > MAX_DEPTH:
            raise DepthExceeded(f"element nesting exceeds {MAX_DEPTH}")
        tag = _local_tag(element.tag)
        if tag == "!comment":
            body = element.text or ""
            return ElementNode(tag="!comment", kind="comment", text=body, text_content=body)
        attrs = {_attr_name(k): v for k, v in element.attrib.items()}
        node = ElementNode(tag=tag, kind=classify_tag(tag), attrs=attrs)
        node.resolved_style = resolve_style(node, ancestors)
        text_value = element.text
        if text_value is not None and text_value.strip():
            node.text = text_value
        child_ancestors = ancestors + (node,)
        for child in element:
            node.children.append(build(child, child_ancestors, depth + 1))
        if node.kind == "text":
            node.text_content = "".join(element.itertext()).strip()
        elif node.text:
            node.text_content = node.text.strip()
        element_id = attrs.get("id")
        if element_id is not None:
            ids.setdefault(element_id, node)
        for attr_name in _REF_ATTRS:
            value = attrs.get(attr_name)
            if value:
                for match in _URL_REF.finditer(value):
                    refs.append(match.group(1))
        for href_name in ("href", "xlink:href"):
            value = attrs.get(href_name)
            if value and value.startswith("#"):
                refs.append(value[1:])
        return node

    root = build(root_et, (), 1)
    canvas = _parse_canvas(root)

    defs = {}
    doc = SvgDocument(canvas=canvas, root=root, defs=defs)
    for node, ancestors in doc.walk():
        node_id = node.attrs.get("id")
        if node_id is None:
            continue
        inside_defs = any(a.tag.lower() == "defs" for a in ancestors)
        if node.kind in _DEFINITION_KINDS or inside_defs:
            defs.setdefault(node_id, node)
    doc.dangling_refs = sorted({r for r in refs if r not in ids})
    return doc


def _parse_canvas(root: ElementNode) -> Canvas:
    if root.tag.lower() != "svg":
        return Canvas()
    width = try_parse_float(root.attrs.get("width"))
    height = try_parse_float(root.attrs.get("height"))
    view_box = None
    raw = root.attrs.get("viewBox") or root.attrs.get("viewbox")
    if raw:
        parts = [try_parse_float(p) for p in raw.replace(",", " ").split()]
        if len(parts) == 4 and None not in parts:
            view_box = tuple(parts)
    if width is None and view_box is not None:
        width = view_box[2]
    if height is None and view_box is not None:
        height = view_box[3]
    return Canvas(width=width, height=height, view_box=view_box)


def _escape_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return _escape_text(value).replace('"', "&quot;")


def _format_number_list(value: str) -> str:
    tokens = value.replace(",", " ").split()
    formatted = []
    for token in tokens:
        number = try_parse_float(token)
        formatted.append(token if number is None else fmt_number(number))
    return " ".join(formatted)


_TRANSLATE = re.compile(r"^\s*translate\(\s*([^,\s)]+)(?:[\s,]+([^)\s]+))?\s*\)\s*$")


def _format_attr_value(name: str, value: str) -> str:
    if name in _NUMERIC_ATTRS:
        if value.endswith("%"):
            number = try_parse_float(value[:-1])
            return value if number is None else fmt_number(number) + "%"
        number = try_parse_float(value)
        return value if number is None else fmt_number(number)
    if name in _NUMBER_LIST_ATTRS:
        if value.strip().lower() == "none":
            return "none"
        return _format_number_list(value)
    if name == "d":
        try:
            return str(parse_path_data(value))
        except MalformedPath:
            return value
    if name == "transform":
        match = _TRANSLATE.match(value)
        if match:
            tx = try_parse_float(match.group(1))
            ty = try_parse_float(match.group(2)) if match.group(2) else 0.0
            if tx is not None and ty is not None:
                return f"translate({fmt_number(tx)} {fmt_number(ty)})"
        return value
    return value


def canonical_attr_value(name: str, value: str) -> str:
    """Public alias for the canonical attribute formatter."""
    return _format_attr_value(name, value)


def _collect_foreign_uris(node: ElementNode, uris: set):
    if node.tag.startswith("{"):
        uris.add(node.tag[1:].partition("}")[0])
    for name in node.attrs:
        if name.startswith("{"):
            uris.add(name[1:].partition("}")[0])
        elif name.startswith("xlink:"):
            uris.add(XLINK_NS)
    for child in node.children:
        _collect_foreign_uris(child, uris)


def serialize_document(doc: SvgDocument) -> str:
    """Canonical text for a document (see module docstring)."""
    uris: set = set()
    _collect_foreign_uris(doc.root, uris)
    prefix_by_uri = {}
    if XLINK_NS in uris:
        prefix_by_uri[XLINK_NS] = "xlink"
        uris.discard(XLINK_NS)
    for index, uri in enumerate(sorted(uris)):
        prefix_by_uri[uri] = f"ns{index}"

    lines: list = []

    def qualified(name: str) -> str:
        if name.startswith("{"):
            uri, _, local = name[1:].partition("}")
            prefix = prefix_by_uri.get(uri)
            return f"{prefix}:{local}" if prefix else local
        return name

    def emit(node: ElementNode, indent: int, is_root: bool):
        pad = "  " * indent
        if node.is_comment:
            lines.append(f"{pad}<!--{node.text or ''}-->")
            return
        tag = qualified(node.tag)
        attrs = {qualified(k): _format_attr_value(qualified(k), v) for k, v in node.attrs.items()}
        if is_root and node.tag.lower() == "svg":
            attrs.setdefault("xmlns", SVG_NS)
            for uri, prefix in sorted(prefix_by_uri.items()):
                attrs.setdefault(f"xmlns:{prefix}", uri)
        parts = "".join(
            f' {name}="{_escape_attr(value)}"' for name, value in sorted(attrs.items())
        )
        if not node.children and node.text is None:
            lines.append(f"{pad}<{tag}{parts}/>")
            return
        if not node.children:
            lines.append(f"{pad}<{tag}{parts}>{_escape_text(node.text)}</{tag}>")
            return
        lines.append(f"{pad}<{tag}{parts}>")
        if node.text is not None:
            lines.append(f"{pad}  {_escape_text(node.text)}")
        for child in node.children:
            emit(child, indent + 1, False)
        lines.append(f"{pad}</{tag}>")

    emit(doc.root, 0, True)
    return "\n".join(lines) + "\n"
