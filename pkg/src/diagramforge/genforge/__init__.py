"""Seeded procedural diagram generator with paired ground-truth metadata."""

from .config import (
    ALL_KINDS,
    BORDER_STYLES,
    FILL_STYLES,
    FLAT_KINDS,
    FONT_POOL,
    PSEUDO3D_KINDS,
    GenConfig,
    load_config,
)
from .generator import (
    Connection,
    DegenerateRay,
    DiagramSample,
    DiagramStyle,
    EmptyDiagram,
    LayoutPlan,
    PlacedShape,
    WordBankExhausted,
    assign_styles,
    connection_count,
    generate,
    metadata_json,
    place_shapes,
    ray_cast_boundary,
    route_connections,
    select_layout,
)
from .rng import DetRng, derive_seed, mix64
from .shapes import ShapeGeometry, build_geometry, text_extent
from .templates import TEMPLATE_NAMES, TEMPLATES

__all__ = [
    "ALL_KINDS",
    "BORDER_STYLES",
    "FILL_STYLES",
    "FLAT_KINDS",
    "FONT_POOL",
    "PSEUDO3D_KINDS",
    "TEMPLATES",
    "TEMPLATE_NAMES",
    "Connection",
    "DegenerateRay",
    "DetRng",
    "DiagramSample",
    "DiagramStyle",
    "EmptyDiagram",
    "GenConfig",
    "LayoutPlan",
    "PlacedShape",
    "ShapeGeometry",
    "WordBankExhausted",
    "assign_styles",
    "build_geometry",
    "connection_count",
    "derive_seed",
    "generate",
    "load_config",
    "metadata_json",
    "mix64",
    "place_shapes",
    "ray_cast_boundary",
    "route_connections",
    "select_layout",
    "text_extent",
]
