"""Corpus curation: code filtering, cleaning, corruption checks, labels."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .svgcore import (
    Canvas,
    ElementCounts,
    ElementNode,
    SvgCoreError,
    SvgDocument,
    classify_elements,
    fmt_number,
    parse_svg,
    resolve_style,
)
from .svgcore.parser import canonical_attr_value

REASON_RATIO = "ratio-below-threshold"
REASON_COMPLEX = "complex-count-exceeded"
REASON_CORRUPTED = "corrupted"
REASON_PARSE_FAILED = "parse-failed"
REASON_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class FilterThresholds:
    """Keep rules: primitive ratio at least min_ratio, at most max_complex paths."""

    min_ratio: float = 0.40
    max_complex: int = 50


@dataclass(frozen=True)
class FilterVerdict:
    keep: bool
    reasons: tuple = ()
    ratio: Optional[float] = None
    complex_count: int = 0

    def to_dict(self) -> dict:
        return {
            "keep": self.keep,
            "reasons": list(self.reasons),
            "ratio": self.ratio,
            "complex_count": self.complex_count,
        }


def filter_code(counts_or_doc, thresholds: FilterThresholds = FilterThresholds()) -> FilterVerdict:
    """Keep/reject verdict from element counts (both boundaries inclusive).

    The verdict is a pure function of the counts: keep iff
    (B + K) / N >= min_ratio and C <= max_complex. Documents with no
    geometric elements are rejected as degenerate.
    """
    if isinstance(counts_or_doc, ElementCounts):
        counts = counts_or_doc
    else:
        counts = classify_elements(counts_or_doc)
    n = counts.geometric_total
    if n == 0:
        return FilterVerdict(False, (REASON_DEGENERATE,), None, counts.complex)
    ratio = (counts.basic + counts.connectors) / n
    reasons = []
    if ratio < thresholds.min_ratio:
        reasons.append(REASON_RATIO)
    if counts.complex > thresholds.max_complex:
        reasons.append(REASON_COMPLEX)
    return FilterVerdict(not reasons, tuple(reasons), ratio, counts.complex)


_REMOVED_TAGS = {"metadata"}


def _clean_node(node: ElementNode, ancestors: tuple) -> Optional[ElementNode]:
    if node.is_comment:
        return None
    if node.tag.lower() in _REMOVED_TAGS:
        return None
    if node.is_foreign:
        return None
    attrs = {}
    for name, value in node.attrs.items():
        if name.startswith("{") or name.startswith("xmlns"):
            continue
        attrs[name] = canonical_attr_value(name, value)
    cleaned = ElementNode(
        tag=node.tag,
        kind=node.kind,
        attrs=attrs,
        text=node.text,
        text_content=node.text_content,
    )
    cleaned.resolved_style = resolve_style(cleaned, ancestors)
    child_ancestors = ancestors + (cleaned,)
    for child in node.children:
        kept = _clean_node(child, child_ancestors)
        if kept is not None:
            cleaned.children.append(kept)
    return cleaned


def clean_svg(doc: SvgDocument) -> SvgDocument:
    """Syntactic cleaning without touching rendered structure.

    Removes metadata, comments, and foreign-namespace nodes/attributes,
    rounds numeric attribute values to 3 decimals, and re-anchors a
    non-origin viewBox at (0, 0) by wrapping drawable content in a
    compensating translate group. Element kinds, counts, and colors are
    preserved; the pass is idempotent.
    """
    root = _clean_node(doc.root, ())
    if root is None:
        return doc
    view_box = doc.canvas.view_box
    canvas = doc.canvas
    if view_box is not None and (view_box[0] != 0.0 or view_box[1] != 0.0):
        min_x, min_y, width, height = view_box
        root.attrs["viewBox"] = (
            f"0 0 {fmt_number(width)} {fmt_number(height)}"
        )
        shift = ElementNode(
            tag="g",
            kind="group",
            attrs={"transform": f"translate({fmt_number(-min_x)} {fmt_number(-min_y)})"},
        )
        moved, kept = [], []
        for child in root.children:
            if child.tag.lower() == "defs":
                kept.append(child)
            else:
                moved.append(child)
        shift.children = moved
        shift.resolved_style = resolve_style(shift, (root,))
        root.children = kept + [shift]
        canvas = Canvas(canvas.width, canvas.height, (0.0, 0.0, width, height))
    # Re-parse the serialized form so defs/dangling tables are rebuilt.
    return parse_svg(SvgDocument(canvas=canvas, root=root).serialize())


@dataclass(frozen=True)
class CorruptionConfig:
    """Concrete thresholds for the repetition heuristics (configurable)."""

    min_unit_length: int = 8
    max_unit_length: int = 64
    min_consecutive_repeats: int = 20
    max_literal_repeats: int = 50


@dataclass(frozen=True)
class CorruptionReport:
    corrupted: bool
    evidence: Optional[str] = None


# Standalone number tokens only: digits inside identifiers (x1, grad10)
# are not numeric literals.
_NUMERIC_LITERAL = re.compile(r"(?<![\w.])-?\d+(?:\.\d+)?(?![\w.])")


def detect_corruption(text: str, config: CorruptionConfig = CorruptionConfig()) -> CorruptionReport:
    """Flag degenerate repetition patterns.

    Trips when a substring of at least ``min_unit_length`` characters repeats
    consecutively ``min_consecutive_repeats`` times, or when a single numeric
    literal occurs more than ``max_literal_repeats`` times overall.
    """
    if not text:
        return CorruptionReport(False)
    pattern = re.compile(
        r"(.{%d,%d}?)\1{%d,}"
        % (config.min_unit_length, config.max_unit_length, config.min_consecutive_repeats - 1),
        re.DOTALL,
    )
    match = pattern.search(text)
    if match:
        unit = match.group(1)
        return CorruptionReport(True, f"unit {unit!r} repeats consecutively")
    tallies: dict = {}
    for m in _NUMERIC_LITERAL.finditer(text):
        literal = m.group()
        count = tallies.get(literal, 0) + 1
        tallies[literal] = count
        if count >= config.max_literal_repeats:
            return CorruptionReport(True, f"numeric literal {literal!r} occurs {count}+ times")
    return CorruptionReport(False)


class ImageClass(Enum):
    KEEP = "KEEP"
    IMAGE = "IMAGE"
    MATH = "MATH"
    PLOT = "PLOT"


class UnparseableLabel(Exception):
    """Classifier response that is not one of the four labels."""

    def __init__(self, raw: str):
        self.raw = raw
        super().__init__(f"unparseable classifier label: {raw!r}")


def parse_classifier_label(response: str) -> ImageClass:
    """Map a classifier response to its label, forgiving case and whitespace."""
    token = (response or "").strip().upper()
    try:
        return ImageClass(token)
    except ValueError:
        raise UnparseableLabel(response) from None


@dataclass(frozen=True)
class CurationVerdict:
    """Full per-sample verdict as written to filter manifests."""

    verdict: FilterVerdict
    corruption: CorruptionReport

    def to_dict(self) -> dict:
        data = self.verdict.to_dict()
        data["corrupted"] = self.corruption.corrupted
        if self.corruption.evidence:
            data["corruption_evidence"] = self.corruption.evidence
        return data


def curate_svg_text(
    text: str,
    thresholds: FilterThresholds = FilterThresholds(),
    corruption: CorruptionConfig = CorruptionConfig(),
) -> CurationVerdict:
    """Filter + corruption verdict for raw SVG text; never raises."""
    corruption_report = detect_corruption(text, corruption)
    try:
        doc = parse_svg(text)
    except SvgCoreError:
        verdict = FilterVerdict(False, (REASON_PARSE_FAILED,), None, 0)
        if corruption_report.corrupted:
            verdict = FilterVerdict(
                False, (REASON_PARSE_FAILED, REASON_CORRUPTED), None, 0
            )
        return CurationVerdict(verdict, corruption_report)
    verdict = filter_code(doc, thresholds)
    if corruption_report.corrupted:
        verdict = FilterVerdict(
            False,
            verdict.reasons + (REASON_CORRUPTED,),
            verdict.ratio,
            verdict.complex_count,
        )
    return CurationVerdict(verdict, corruption_report)


__all__ = [
    "REASON_COMPLEX",
    "REASON_CORRUPTED",
    "REASON_DEGENERATE",
    "REASON_PARSE_FAILED",
    "REASON_RATIO",
    "CorruptionConfig",
    "CorruptionReport",
    "CurationVerdict",
    "FilterThresholds",
    "FilterVerdict",
    "ImageClass",
    "UnparseableLabel",
    "clean_svg",
    "curate_svg_text",
    "detect_corruption",
    "filter_code",
    "parse_classifier_label",
]
