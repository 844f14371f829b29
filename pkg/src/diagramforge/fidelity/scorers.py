"""Attribute scorers. Every function returns a value in [0, 1].

Tier values follow the published rules; thresholds that the rules leave open
are concrete defaults on :class:`EvalConfig`.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Optional

from .records import EvalConfig

_RGB_DIAMETER = 255.0 * math.sqrt(3.0)

_DEFAULT = EvalConfig()


def score_color(a: Optional[tuple], b: Optional[tuple]) -> float:
    """1 minus RGB distance over the cube diameter; unknown colors score 0."""
    if a is None or b is None:
        return 0.0
    dist = math.sqrt(
        (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2
    )
    return 1.0 - dist / _RGB_DIAMETER


def _words(text: str) -> set:
    return set(text.casefold().split())


def score_label(gt: str, pred: str) -> float:
    """Exact case-folded match scores 1.0, else Jaccard word overlap."""
    gt_norm = " ".join((gt or "").casefold().split())
    pred_norm = " ".join((pred or "").casefold().split())
    if gt_norm == pred_norm:
        return 1.0
    gt_words = _words(gt or "")
    pred_words = _words(pred or "")
    union = gt_words | pred_words
    if not union:
        return 1.0
    inter = gt_words & pred_words
    if not inter:
        return 0.0
    return len(inter) / len(union)


# Tags that count as a full match for each expected kind. Keys cover both the
# generator's shape vocabulary and raw tags (standalone ground truth).
ACCEPTED_TAGS = {
    "rectangle": {"rect"},
    "square": {"rect"},
    "circle": {"circle", "ellipse"},
    "ellipse": {"ellipse", "circle"},
    "diamond": {"polygon"},
    "hexagon": {"polygon"},
    "parallelogram": {"polygon"},
    "trapezoid": {"polygon"},
    "blob": {"path"},
    "wave-rect": {"path"},
    "cloud": {"path"},
    "text-label": {"text"},
    "cylinder": {"path"},
    "prism": {"polygon", "path"},
    "cube": {"polygon", "path"},
    "3d-diamond": {"polygon", "path"},
    "3d-hexagon": {"polygon", "path"},
    "3d-trapezoid": {"polygon", "path"},
    "rect": {"rect"},
    "polygon": {"polygon"},
    "path": {"path"},
    "polyline": {"polyline"},
    "line": {"line"},
    "text": {"text"},
}


def score_type(expected_kind: str, found_tag: str, config: EvalConfig = _DEFAULT) -> float:
    """Accepted tag 1.0; path/polygon substitute 0.4; group wrapper 0.3."""
    expected = (expected_kind or "").lower()
    found = (found_tag or "").lower()
    accepted = ACCEPTED_TAGS.get(expected, {expected})
    if found in accepted:
        return 1.0
    if found in ("path", "polygon"):
        return config.type_substitute_score
    if found in ("g", "group"):
        return config.type_group_score
    return 0.0


_NON_SOLID_STYLES = {
    "hatching", "dots", "crosshatch", "horizontal-lines",
    "linear-gradient", "radial-gradient", "generic-pattern",
}


def score_fill_style(gt: str, pred: str, config: EvalConfig = _DEFAULT) -> float:
    """Exact 1.0; two different patterned/gradient styles 0.5; else 0.0."""
    if gt == pred:
        return 1.0
    if gt in _NON_SOLID_STYLES and pred in _NON_SOLID_STYLES:
        return config.partial_tier_score
    return 0.0


def score_border_style(gt: str, pred: str, config: EvalConfig = _DEFAULT) -> float:
    """Exact 1.0; two different non-solid dash classes 0.5; else 0.0."""
    if gt == pred:
        return 1.0
    if gt != "solid" and pred != "solid":
        return config.partial_tier_score
    return 0.0


def _load_font_classes() -> dict:
    with resources.files("diagramforge.data").joinpath("font_classes.json").open(
        "r", encoding="utf-8"
    ) as handle:
        return json.load(handle)


_FONT_CLASSES = None


def font_class(family: Optional[str]) -> str:
    """serif / sans-serif / monospace for a family name.

    Unknown families fall back to keyword rules: "mono" means monospace,
    "serif" without "sans" means serif, anything else sans-serif.
    """
    global _FONT_CLASSES
    if _FONT_CLASSES is None:
        _FONT_CLASSES = _load_font_classes()
    name = (family or "").strip().strip("'\"").casefold()
    if name in _FONT_CLASSES:
        return _FONT_CLASSES[name]
    if "mono" in name:
        return "monospace"
    if "serif" in name and "sans" not in name:
        return "serif"
    return "sans-serif"


def score_font(gt: Optional[str], pred: Optional[str], config: EvalConfig = _DEFAULT) -> float:
    """Exact family 1.0; same class 0.5; otherwise 0.0."""
    gt_name = (gt or "").strip().strip("'\"").casefold()
    pred_name = (pred or "").strip().strip("'\"").casefold()
    if not gt_name or not pred_name:
        return 1.0 if gt_name == pred_name else 0.0
    if gt_name == pred_name:
        return 1.0
    if font_class(gt_name) == font_class(pred_name):
        return config.partial_tier_score
    return 0.0


def score_aspect_ratio(gt: float, pred: float, config: EvalConfig = _DEFAULT) -> float:
    """1.0 within the 1.2x band, linear decay to 0.0 at 3x deviation."""
    if gt <= 0.0 or pred <= 0.0:
        return 0.0
    rho = max(pred / gt, gt / pred)
    if rho <= config.aspect_full_credit:
        return 1.0
    if rho >= config.aspect_zero:
        return 0.0
    return (config.aspect_zero - rho) / (config.aspect_zero - config.aspect_full_credit)


def score_positions(gt_centers, pred_centers) -> list:
    """Per-shape position scores for matched center lists.

    Offsets are taken relative to the bounding box of each side's centers and
    normalized by that box's diagonal, so any uniform scale plus translation
    of the predicted document leaves the scores unchanged. Degenerate frames
    (single shape or coincident centers) score 1.0.
    """
    if len(gt_centers) != len(pred_centers):
        raise ValueError("matched center lists must align")
    if not gt_centers:
        return []

    def frame(centers):
        xs = [c[0] for c in centers]
        ys = [c[1] for c in centers]
        anchor = ((min(xs) + max(xs)) / 2.0, (min(ys) + max(ys)) / 2.0)
        diag = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
        return anchor, diag

    gt_anchor, gt_diag = frame(gt_centers)
    pred_anchor, pred_diag = frame(pred_centers)
    if gt_diag < 1e-9 or pred_diag < 1e-9:
        return [1.0] * len(gt_centers)
    scores = []
    for gt_c, pred_c in zip(gt_centers, pred_centers):
        gt_off = ((gt_c[0] - gt_anchor[0]) / gt_diag, (gt_c[1] - gt_anchor[1]) / gt_diag)
        pred_off = (
            (pred_c[0] - pred_anchor[0]) / pred_diag,
            (pred_c[1] - pred_anchor[1]) / pred_diag,
        )
        delta = math.hypot(gt_off[0] - pred_off[0], gt_off[1] - pred_off[1])
        scores.append(1.0 - min(1.0, delta))
    return scores


def score_curve(gt_curved: bool, pred_curved: bool) -> float:
    return 1.0 if bool(gt_curved) == bool(pred_curved) else 0.0


def score_head(gt_present: bool, pred_present: bool, gt_occluded: bool = False) -> float:
    """Presence match; a missing head is excused when the gt head is occluded."""
    if bool(gt_present) == bool(pred_present):
        return 1.0
    if gt_present and not pred_present and gt_occluded:
        return 1.0
    return 0.0


def score_head_size(
    gt_size: Optional[float],
    gt_stroke: Optional[float],
    pred_size: Optional[float],
    pred_stroke: Optional[float],
    config: EvalConfig = _DEFAULT,
) -> float:
    """Tiered comparison of stroke-normalized head sizes.

    When a stroke width is unavailable the raw sizes are compared, which is
    equivalent whenever both arrows share a stroke width.
    """
    if gt_size is None and pred_size is None:
        return 1.0
    if gt_size is None or pred_size is None or gt_size <= 0 or pred_size <= 0:
        return 0.0
    gt_norm = gt_size / gt_stroke if gt_stroke and gt_stroke > 0 else gt_size
    pred_norm = pred_size / pred_stroke if pred_stroke and pred_stroke > 0 else pred_size
    rho = max(gt_norm / pred_norm, pred_norm / gt_norm)
    for bound, score in config.head_size_tiers:
        if rho <= bound:
            return score
    return config.head_size_floor


def score_overlap(violations: int, config: EvalConfig = _DEFAULT) -> float:
    """1.0 clean, 0.4 for one stray endpoint, 0.0 for two or more."""
    if violations <= 0:
        return 1.0
    if violations == 1:
        return config.overlap_one_violation
    return 0.0
