"""Rule-based structural fidelity evaluation against metadata or reference SVG."""

from .evaluate import (
    aggregate_cards,
    compose,
    enrich_arrow_strokes,
    evaluate_pair,
    evaluate_svg_text,
    load_groundtruth_json,
    match_arrow_endpoints,
    match_shapes,
)
from .extract import (
    ArrowCandidate,
    ShapeCandidate,
    bind_endpoint,
    classify_dasharray,
    extract_candidates,
    extract_groundtruth_from_svg,
    infer_fill_style,
)
from .records import (
    ARROW_ATTRS,
    SHAPE_ATTRS,
    ArrowMeta,
    ArrowScores,
    EvalConfig,
    ExtractionEmpty,
    ScoreCard,
    ShapeMeta,
    ShapeScores,
    failure_card,
)
from .scorers import (
    ACCEPTED_TAGS,
    font_class,
    score_aspect_ratio,
    score_border_style,
    score_color,
    score_curve,
    score_fill_style,
    score_font,
    score_head,
    score_head_size,
    score_label,
    score_overlap,
    score_positions,
    score_type,
)

__all__ = [
    "ACCEPTED_TAGS",
    "ARROW_ATTRS",
    "SHAPE_ATTRS",
    "ArrowCandidate",
    "ArrowMeta",
    "ArrowScores",
    "EvalConfig",
    "ExtractionEmpty",
    "ScoreCard",
    "ShapeCandidate",
    "ShapeMeta",
    "ShapeScores",
    "aggregate_cards",
    "bind_endpoint",
    "classify_dasharray",
    "compose",
    "enrich_arrow_strokes",
    "evaluate_pair",
    "evaluate_svg_text",
    "extract_candidates",
    "extract_groundtruth_from_svg",
    "failure_card",
    "font_class",
    "infer_fill_style",
    "load_groundtruth_json",
    "match_arrow_endpoints",
    "match_shapes",
    "score_aspect_ratio",
    "score_border_style",
    "score_color",
    "score_curve",
    "score_fill_style",
    "score_font",
    "score_head",
    "score_head_size",
    "score_label",
    "score_overlap",
    "score_positions",
    "score_type",
]
