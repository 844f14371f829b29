"""Document model for the supported SVG subset.

Documents are immutable after parsing: nothing here mutates nodes in place,
and every operation that "edits" a document builds a new tree. That makes all
operations safe to run concurrently on shared documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional


class SvgCoreError(Exception):
    """Base class for svg-core errors."""


class ParseError(SvgCoreError):
    """Raised for markup that is not well-formed XML."""

    def __init__(self, reason: str, line: Optional[int] = None):
        self.reason = reason
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(f"{reason}{suffix}")


class DepthExceeded(SvgCoreError):
    """Raised when element nesting goes beyond the supported depth."""


class NoGeometry(SvgCoreError):
    """Raised when an element has no resolvable geometric extent."""


MAX_DEPTH = 128

SVG_NS = "http://www.w3.org/2000/svg"
XLINK_NS = "http://www.w3.org/1999/xlink"

# Tag (lower-cased local name) to element kind. Anything absent is "other"
# and is preserved opaquely for round-tripping.
KIND_BY_TAG = {
    "rect": "rect",
    "circle": "circle",
    "ellipse": "ellipse",
    "line": "line",
    "polyline": "polyline",
    "polygon": "polygon",
    "path": "path",
    "text": "text",
    "g": "group",
    "pattern": "pattern-def",
    "lineargradient": "gradient-def",
    "radialgradient": "gradient-def",
    "marker": "marker-def",
}

BASIC_KINDS = ("rect", "circle", "ellipse")
CONNECTOR_KINDS = ("line", "polyline")
COMPLEX_KINDS = ("path", "polygon")

# Containers whose interiors define reusable content rather than drawables.
DEFINITION_TAGS = {"defs", "pattern", "marker", "lineargradient", "radialgradient"}

STYLE_DEFAULTS = {
    "fill": "black",
    "stroke": "none",
    "stroke-width": "1",
    "stroke-dasharray": None,
    "font-family": None,
}
INHERITED_PROPS = tuple(STYLE_DEFAULTS)


@dataclass(frozen=True)
class ResolvedStyle:
    """Effective presentation values after ancestor cascade."""

    fill: str = "black"
    stroke: str = "none"
    stroke_width: float = 1.0
    stroke_dasharray: Optional[str] = None
    font_family: Optional[str] = None


@dataclass(frozen=True)
class Aabb:
    """Axis-aligned bounding box; approximate marks unapplied transforms."""

    min_x: float
    min_y: float
    max_x: float
    max_y: float
    approximate: bool = False

    def __post_init__(self):
        if self.min_x > self.max_x or self.min_y > self.max_y:
            raise ValueError("inverted bounding box")

    @property
    def width(self) -> float:
        return self.max_x - self.min_x

    @property
    def height(self) -> float:
        return self.max_y - self.min_y

    @property
    def center(self) -> tuple[float, float]:
        return ((self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0)

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, x: float, y: float) -> bool:
        return self.min_x <= x <= self.max_x and self.min_y <= y <= self.max_y

    def strictly_contains(self, x: float, y: float) -> bool:
        return self.min_x < x < self.max_x and self.min_y < y < self.max_y

    def distance_to(self, x: float, y: float) -> float:
        """Euclidean distance from a point to the box; 0 inside."""
        dx = max(self.min_x - x, 0.0, x - self.max_x)
        dy = max(self.min_y - y, 0.0, y - self.max_y)
        return math.hypot(dx, dy)

    def inflate(self, amount: float) -> "Aabb":
        return Aabb(
            self.min_x - amount,
            self.min_y - amount,
            self.max_x + amount,
            self.max_y + amount,
            self.approximate,
        )

    def union(self, other: "Aabb") -> "Aabb":
        return Aabb(
            min(self.min_x, other.min_x),
            min(self.min_y, other.min_y),
            max(self.max_x, other.max_x),
            max(self.max_y, other.max_y),
            self.approximate or other.approximate,
        )

    def intersects(self, other: "Aabb") -> bool:
        return (
            self.min_x < other.max_x
            and self.max_x > other.min_x
            and self.min_y < other.max_y
            and self.max_y > other.min_y
        )

    def translated(self, dx: float, dy: float) -> "Aabb":
        return Aabb(
            self.min_x + dx,
            self.min_y + dy,
            self.max_x + dx,
            self.max_y + dy,
            self.approximate,
        )


@dataclass(frozen=True)
class ElementCounts:
    """Tallies of drawable element categories used by filters and metrics."""

    basic: int = 0
    connectors: int = 0
    complex: int = 0
    text: int = 0

    @property
    def geometric_total(self) -> int:
        return self.basic + self.connectors + self.complex

    def __add__(self, other: "ElementCounts") -> "ElementCounts":
        return ElementCounts(
            self.basic + other.basic,
            self.connectors + other.connectors,
            self.complex + other.complex,
            self.text + other.text,
        )


@dataclass
class ElementNode:
    """One element (or comment) with resolved style and children."""

    tag: str  # local name, "{uri}name" for foreign namespaces, or "!comment"
    kind: str
    attrs: dict = field(default_factory=dict)
    children: list = field(default_factory=list)
    text: Optional[str] = None
    text_content: str = ""
    resolved_style: ResolvedStyle = field(default_factory=ResolvedStyle)

    def get(self, name: str, default=None):
        return self.attrs.get(name, default)

    def float_attr(self, name: str, default: float = 0.0) -> float:
        from .num import try_parse_float

        value = try_parse_float(self.attrs.get(name))
        return default if value is None else value

    @property
    def is_comment(self) -> bool:
        return self.tag == "!comment"

    @property
    def is_foreign(self) -> bool:
        return self.tag.startswith("{")


@dataclass(frozen=True)
class Canvas:
    width: Optional[float] = None
    height: Optional[float] = None
    view_box: Optional[tuple[float, float, float, float]] = None


@dataclass
class SvgDocument:
    """Parsed document: canvas, element tree, definition table."""

    canvas: Canvas
    root: ElementNode
    defs: dict = field(default_factory=dict)
    dangling_refs: list = field(default_factory=list)

    def walk(self) -> Iterator[tuple[ElementNode, tuple]]:
        """Yield (node, ancestors) over the whole tree, root first."""
        stack = [(self.root, ())]
        while stack:
            node, ancestors = stack.pop()
            yield node, ancestors
            child_ancestors = ancestors + (node,)
            for child in reversed(node.children):
                stack.append((child, child_ancestors))

    def iter_drawables(self) -> Iterator[tuple[ElementNode, tuple]]:
        """Walk skipping the interiors of definition containers."""
        stack = [(self.root, ())]
        while stack:
            node, ancestors = stack.pop()
            yield node, ancestors
            if node.tag.lower() in DEFINITION_TAGS:
                continue
            child_ancestors = ancestors + (node,)
            for child in reversed(node.children):
                stack.append((child, child_ancestors))

    def find_definition(self, ref_id: str) -> Optional[ElementNode]:
        return self.defs.get(ref_id)

    def serialize(self) -> str:
        from .parser import serialize_document

        return serialize_document(self)

    def __eq__(self, other) -> bool:
        # Canonical equality: two documents are equal when they serialize
        # to the same canonical text.
        if not isinstance(other, SvgDocument):
            return NotImplemented
        return self.serialize() == other.serialize()


def classify_tag(tag: str) -> str:
    """Element kind for a raw tag name; case-insensitive, namespace-aware."""
    if tag == "!comment":
        return "comment"
    local = tag.rsplit("}", 1)[-1]
    return KIND_BY_TAG.get(local.lower(), "other")


def resolve_style(node: ElementNode, ancestors) -> ResolvedStyle:
    """Cascade inheritable presentation values, nearest ancestor wins.

    Inline ``style="..."`` declarations override presentation attributes on
    the same element. Values absent everywhere fall back to documented
    defaults (fill=black, stroke=none, stroke-width=1).
    """
    from .num import try_parse_float

    effective = dict(STYLE_DEFAULTS)
    for element in tuple(ancestors) + (node,):
        for prop in INHERITED_PROPS:
            if prop in element.attrs:
                effective[prop] = element.attrs[prop]
        style_decl = element.attrs.get("style")
        if style_decl:
            for piece in style_decl.split(";"):
                if ":" not in piece:
                    continue
                name, _, value = piece.partition(":")
                name = name.strip().lower()
                if name in INHERITED_PROPS:
                    effective[name] = value.strip()
    width = try_parse_float(effective["stroke-width"])
    if width is None:
        width = 1.0
    dasharray = effective["stroke-dasharray"]
    if dasharray is not None and dasharray.strip().lower() in ("", "none"):
        dasharray = None
    return ResolvedStyle(
        fill=effective["fill"] if effective["fill"] is not None else "black",
        stroke=effective["stroke"] if effective["stroke"] is not None else "none",
        stroke_width=width,
        stroke_dasharray=dasharray,
        font_family=effective["font-family"],
    )


def classify_elements(doc: SvgDocument) -> ElementCounts:
    """Count drawable categories over the document.

    Elements inside defs/pattern/marker/gradient definitions are skipped:
    they describe styling, not drawable content.
    """
    basic = connectors = complex_count = text = 0
    for node, _ancestors in doc.iter_drawables():
        if node.kind in BASIC_KINDS:
            basic += 1
        elif node.kind in CONNECTOR_KINDS:
            connectors += 1
        elif node.kind in COMPLEX_KINDS:
            complex_count += 1
        elif node.kind == "text":
            text += 1
    return ElementCounts(basic, connectors, complex_count, text)


def with_children(node: ElementNode, children: list) -> ElementNode:
    """Copy of a node with different children (documents stay immutable)."""
    return replace(node, children=children)
