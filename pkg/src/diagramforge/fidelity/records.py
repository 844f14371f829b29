"""Ground-truth records, score cards, and evaluation configuration."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Optional


class ExtractionEmpty(Exception):
    """Reference SVG yielded no shapes; sample counts as an extraction error."""


@dataclass(frozen=True)
class EvalConfig:
    """All tier thresholds and radii, defaulting to the published values."""

    endpoint_radius_px: float = 100.0
    label_inflate_px: float = 10.0
    aspect_full_credit: float = 1.2
    aspect_zero: float = 3.0
    # (max normalized ratio, score) tiers checked in order; beyond the last
    # tier the floor applies.
    head_size_tiers: tuple = ((1.3, 1.0), (1.8, 0.6), (2.5, 0.3))
    head_size_floor: float = 0.1
    type_substitute_score: float = 0.4
    type_group_score: float = 0.3
    partial_tier_score: float = 0.5
    overlap_one_violation: float = 0.4
    dotted_max_factor: float = 1.5


@dataclass
class ShapeMeta:
    """Scorable ground-truth attributes of one shape."""

    label: str
    shape_kind: str
    fill_color: Optional[tuple]
    fill_style: str
    stroke_color: Optional[tuple]
    border_style: str
    center: tuple
    size: tuple
    font: Optional[str]
    corner_radius: Optional[float] = None
    stack_layers: Optional[int] = None

    @classmethod
    def from_json(cls, record: dict) -> "ShapeMeta":
        extras = record.get("extras") or {}
        return cls(
            label=record["label"],
            shape_kind=record["shape_kind"],
            fill_color=_rgb(record.get("fill_color")),
            fill_style=record["fill_style"],
            stroke_color=_rgb(record.get("stroke_color")),
            border_style=record["border_style"],
            center=tuple(record["center"]),
            size=tuple(record["size"]),
            font=record.get("font"),
            corner_radius=extras.get("corner_radius"),
            stack_layers=extras.get("stack_layers"),
        )


@dataclass
class ArrowMeta:
    """Scorable ground-truth attributes of one arrow.

    ``stroke_width`` and ``head_occluded`` are auxiliary context (recovered
    from the reference SVG), not part of the six recorded attributes.
    """

    src_label: str
    dst_label: str
    head_present: bool
    head_size: Optional[float]
    curved: bool
    color: Optional[tuple]
    stroke_width: Optional[float] = None
    head_occluded: bool = False

    @classmethod
    def from_json(cls, record: dict) -> "ArrowMeta":
        return cls(
            src_label=record["src"],
            dst_label=record["dst"],
            head_present=bool(record["head"]),
            head_size=record.get("head_size"),
            curved=bool(record["curved"]),
            color=_rgb(record.get("color")),
        )


def _rgb(value):
    if value is None:
        return None
    return tuple(int(v) for v in value)


SHAPE_ATTRS = (
    "label", "type", "fill_color", "fill_style", "stroke_color",
    "border_style", "position", "font", "aspect_ratio",
)
ARROW_ATTRS = ("src", "dst", "head", "head_size", "curve", "color", "overlap")


@dataclass
class ShapeScores:
    label: float = 0.0
    type: float = 0.0
    fill_color: float = 0.0
    fill_style: float = 0.0
    stroke_color: float = 0.0
    border_style: float = 0.0
    position: float = 0.0
    font: float = 0.0
    aspect_ratio: float = 0.0

    @property
    def composite(self) -> float:
        return sum(getattr(self, name) for name in SHAPE_ATTRS) / len(SHAPE_ATTRS)

    def as_dict(self) -> dict:
        data = {name: getattr(self, name) for name in SHAPE_ATTRS}
        data["composite"] = self.composite
        return data


@dataclass
class ArrowScores:
    src: float = 0.0
    dst: float = 0.0
    head: float = 0.0
    head_size: float = 0.0
    curve: float = 0.0
    color: float = 0.0
    overlap: float = 0.0

    @property
    def composite(self) -> float:
        return sum(getattr(self, name) for name in ARROW_ATTRS) / len(ARROW_ATTRS)

    def as_dict(self) -> dict:
        data = {name: getattr(self, name) for name in ARROW_ATTRS}
        data["composite"] = self.composite
        return data


@dataclass
class ScoreCard:
    """Per-sample evaluation result."""

    shape_scores: list = field(default_factory=list)  # (gt_label, ShapeScores)
    arrow_scores: list = field(default_factory=list)  # ("src->dst", ArrowScores)
    extra_shapes: int = 0
    extra_arrows: int = 0
    shape_composite: float = 0.0  # after extra-element penalty
    arrow_composite: Optional[float] = None  # None when no gt arrows
    overall: float = 0.0
    missing: bool = False
    parse_error: bool = False

    def attribute_means(self) -> dict:
        """Mean per attribute over ground-truth elements (zeros if failed)."""
        result = {}
        n_shapes = len(self.shape_scores)
        for name in SHAPE_ATTRS:
            total = sum(getattr(s, name) for _label, s in self.shape_scores)
            result[f"shape_{name}"] = total / n_shapes if n_shapes else 0.0
        n_arrows = len(self.arrow_scores)
        for name in ARROW_ATTRS:
            total = sum(getattr(s, name) for _label, s in self.arrow_scores)
            result[f"arrow_{name}"] = total / n_arrows if n_arrows else 0.0
        return result

    def to_dict(self) -> dict:
        return {
            "shapes": [
                {"label": label, **scores.as_dict()} for label, scores in self.shape_scores
            ],
            "arrows": [
                {"pair": pair, **scores.as_dict()} for pair, scores in self.arrow_scores
            ],
            "extra_shapes": self.extra_shapes,
            "extra_arrows": self.extra_arrows,
            "r_shape": self.shape_composite,
            "r_arrow": self.arrow_composite,
            "r": self.overall,
            "missing": self.missing,
            "parse_error": self.parse_error,
        }


def failure_card(missing: bool = False, parse_error: bool = False) -> ScoreCard:
    return ScoreCard(
        shape_scores=[],
        arrow_scores=[],
        shape_composite=0.0,
        arrow_composite=0.0,
        overall=0.0,
        missing=missing,
        parse_error=parse_error,
    )
