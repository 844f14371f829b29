"""SVG subset parser, document model, style resolution, and geometry."""

from .bbox import element_bbox, own_translate, parse_points
from .colors import CSS_NAMED_COLORS, color_hex, is_none_paint, parse_color
from .model import (
    Aabb,
    Canvas,
    DepthExceeded,
    ElementCounts,
    ElementNode,
    NoGeometry,
    ParseError,
    ResolvedStyle,
    SvgCoreError,
    SvgDocument,
    classify_elements,
    classify_tag,
    resolve_style,
)
from .num import fmt_number, q3, try_parse_float
from .parser import parse_svg, serialize_document
from .pathdata import (
    MalformedPath,
    PathCommand,
    PathData,
    hull_points,
    is_closed,
    parse_path_data,
    path_endpoints,
    sample_path,
    to_segments,
)

__all__ = [
    "Aabb",
    "CSS_NAMED_COLORS",
    "Canvas",
    "DepthExceeded",
    "ElementCounts",
    "ElementNode",
    "MalformedPath",
    "NoGeometry",
    "ParseError",
    "PathCommand",
    "PathData",
    "ResolvedStyle",
    "SvgCoreError",
    "SvgDocument",
    "classify_elements",
    "classify_tag",
    "color_hex",
    "element_bbox",
    "fmt_number",
    "hull_points",
    "is_closed",
    "is_none_paint",
    "own_translate",
    "parse_color",
    "parse_path_data",
    "parse_points",
    "parse_svg",
    "path_endpoints",
    "q3",
    "resolve_style",
    "sample_path",
    "serialize_document",
    "to_segments",
    "try_parse_float",
]
