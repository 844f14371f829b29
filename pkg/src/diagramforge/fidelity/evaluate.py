"""Matching, per-element scoring, composites, and batch aggregation."""

from __future__ import annotations

import math
from typing import Optional

from ..svgcore import SvgCoreError, SvgDocument, parse_svg
from . import scorers
from .extract import (
    ArrowCandidate,
    ShapeCandidate,
    bind_endpoint,
    extract_candidates,
    extract_groundtruth_from_svg,
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


def match_shapes(gt_shapes, candidates, config: EvalConfig = EvalConfig()):
    """Greedy matching by label score, ties broken by position distance.

    Returns (pairs, unmatched_gt_indices, unmatched_candidate_indices) where
    pairs are (gt_index, candidate_index). When every ground-truth label is
    empty the match falls back to pure position distance.
    """
    if not gt_shapes or not candidates:
        return [], list(range(len(gt_shapes))), list(range(len(candidates)))

    def frame(centers):
        xs = [c[0] for c in centers]
        ys = [c[1] for c in centers]
        anchor = ((min(xs) + max(xs)) / 2.0, (min(ys) + max(ys)) / 2.0)
        diag = math.hypot(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
        return anchor, diag

    gt_anchor, gt_diag = frame([s.center for s in gt_shapes])
    cand_anchor, cand_diag = frame([c.center for c in candidates])

    def normalized_distance(gt, cand):
        gt_off = (
            (gt.center[0] - gt_anchor[0]) / gt_diag,
            (gt.center[1] - gt_anchor[1]) / gt_diag,
        )
        cand_off = (
            (cand.center[0] - cand_anchor[0]) / cand_diag,
            (cand.center[1] - cand_anchor[1]) / cand_diag,
        )
        return math.hypot(gt_off[0] - cand_off[0], gt_off[1] - cand_off[1])

    unlabeled = all(not (s.label or "").strip() for s in gt_shapes)
    scored = []
    for i, gt in enumerate(gt_shapes):
        for j, cand in enumerate(candidates):
            label_score = 0.0 if unlabeled else scorers.score_label(gt.label, cand.label)
            scored.append((-label_score, normalized_distance(gt, cand), i, j))
    scored.sort()
    pairs = []
    used_gt = set()
    used_cand = set()
    for neg_label, _dist, i, j in scored:
        if i in used_gt or j in used_cand:
            continue
        pairs.append((i, j))
        used_gt.add(i)
        used_cand.add(j)
    unmatched_gt = [i for i in range(len(gt_shapes)) if i not in used_gt]
    unmatched_cand = [j for j in range(len(candidates)) if j not in used_cand]
    return pairs, unmatched_gt, unmatched_cand


def match_arrow_endpoints(arrow: ArrowCandidate, candidates, gt_label_by_candidate,
                          config: EvalConfig = EvalConfig()):
    """(src label, dst label) the arrow's endpoints bind to, or None each.

    A bound candidate reports the ground-truth label it was matched to when
    available, falling back to its own extracted label.
    """

    def label_for(index):
        if index is None:
            return None
        mapped = gt_label_by_candidate.get(index)
        if mapped is not None:
            return mapped
        return candidates[index].label

    src_index = bind_endpoint(arrow.p0, candidates, config)
    dst_index = bind_endpoint(arrow.p1, candidates, config)
    return label_for(src_index), label_for(dst_index), src_index, dst_index


def _score_shape(gt: ShapeMeta, cand: ShapeCandidate, position: float,
                 config: EvalConfig) -> ShapeScores:
    gt_w, gt_h = gt.size
    cand_w, cand_h = cand.size
    gt_ratio = gt_w / gt_h if gt_h else 0.0
    cand_ratio = cand_w / cand_h if cand_h else 0.0
    return ShapeScores(
        label=scorers.score_label(gt.label, cand.label),
        type=scorers.score_type(gt.shape_kind, cand.kind_tag, config),
        fill_color=scorers.score_color(gt.fill_color, cand.fill_color),
        fill_style=scorers.score_fill_style(gt.fill_style, cand.fill_style, config),
        stroke_color=scorers.score_color(gt.stroke_color, cand.stroke_color),
        border_style=scorers.score_border_style(gt.border_style, cand.border_style, config),
        position=position,
        font=scorers.score_font(gt.font, cand.font, config),
        aspect_ratio=scorers.score_aspect_ratio(gt_ratio, cand_ratio, config),
    )


def _pair_arrows(gt_arrows, arrow_candidates, candidates, gt_label_by_candidate, config):
    """Greedy gt/predicted arrow pairing preferring forward endpoint hits."""
    bindings = [
        match_arrow_endpoints(arrow, candidates, gt_label_by_candidate, config)
        for arrow in arrow_candidates
    ]
    scored = []
    for i, gt in enumerate(gt_arrows):
        for j, arrow in enumerate(arrow_candidates):
            src_label, dst_label, _si, _di = bindings[j]
            forward = (src_label == gt.src_label) + (dst_label == gt.dst_label)
            reverse = (src_label == gt.dst_label) + (dst_label == gt.src_label)
            color = scorers.score_color(gt.color, arrow.color)
            quality = 2.0 * forward + reverse + 0.1 * color
            scored.append((-quality, i, j))
    scored.sort()
    pairs = []
    used_gt = set()
    used_pred = set()
    for _quality, i, j in scored:
        if i in used_gt or j in used_pred:
            continue
        pairs.append((i, j))
        used_gt.add(i)
        used_pred.add(j)
    unmatched_gt = [i for i in range(len(gt_arrows)) if i not in used_gt]
    unmatched_pred = [j for j in range(len(arrow_candidates)) if j not in used_pred]
    return pairs, bindings, unmatched_gt, unmatched_pred


def _score_arrow(gt: ArrowMeta, arrow: ArrowCandidate, binding, candidates,
                 matched_candidate_indices, config: EvalConfig) -> ArrowScores:
    src_label, dst_label, src_index, dst_index = binding
    forward = (src_label == gt.src_label, dst_label == gt.dst_label)
    reverse = (src_label == gt.dst_label, dst_label == gt.src_label)
    if sum(reverse) > sum(forward):
        src_ok, dst_ok = reverse
        expected_indices = {dst_index, src_index}
    else:
        src_ok, dst_ok = forward
        expected_indices = {src_index, dst_index}
    violations = 0
    for point in (arrow.p0, arrow.p1):
        for index, candidate in enumerate(candidates):
            if index in expected_indices:
                continue
            if candidate.bbox.strictly_contains(*point):
                violations += 1
                break
    return ArrowScores(
        src=1.0 if src_ok else 0.0,
        dst=1.0 if dst_ok else 0.0,
        head=scorers.score_head(gt.head_present, arrow.head_present, gt.head_occluded),
        head_size=scorers.score_head_size(
            gt.head_size, gt.stroke_width, arrow.head_size, arrow.stroke_width, config
        ),
        curve=scorers.score_curve(gt.curved, arrow.curved),
        color=scorers.score_color(gt.color, arrow.color),
        overlap=scorers.score_overlap(violations, config),
    )


def compose(shape_composites, arrow_composites, gt_shape_count, gt_arrow_count,
            extra_shapes, extra_arrows):
    """(R_S, R_A, R) with the extra-element penalty applied per composite.

    penalty = gt_count / (gt_count + extras). Samples without ground-truth
    arrows exclude the arrow composite and report R = R_S.
    """
    if gt_shape_count == 0:
        raise ExtractionEmpty("no ground-truth shapes to score against")
    shape_mean = sum(shape_composites) / gt_shape_count
    r_shape = shape_mean * gt_shape_count / (gt_shape_count + extra_shapes)
    if gt_arrow_count == 0:
        return r_shape, None, r_shape
    arrow_mean = sum(arrow_composites) / gt_arrow_count
    r_arrow = arrow_mean * gt_arrow_count / (gt_arrow_count + extra_arrows)
    return r_shape, r_arrow, (r_shape + r_arrow) / 2.0


def evaluate_pair(gt_shapes, gt_arrows, pred_doc: SvgDocument,
                  config: EvalConfig = EvalConfig()) -> ScoreCard:
    """Score a predicted document against ground-truth records."""
    candidates, arrow_candidates = extract_candidates(pred_doc, config)
    pairs, unmatched_gt, unmatched_cand = match_shapes(gt_shapes, candidates, config)

    position_by_pair = {}
    if pairs:
        gt_centers = [gt_shapes[i].center for i, _j in pairs]
        cand_centers = [candidates[j].center for _i, j in pairs]
        for (i, j), score in zip(pairs, scorers.score_positions(gt_centers, cand_centers)):
            position_by_pair[(i, j)] = score

    shape_rows = [None] * len(gt_shapes)
    gt_label_by_candidate = {}
    for i, j in pairs:
        gt_label_by_candidate[j] = gt_shapes[i].label
        shape_rows[i] = _score_shape(
            gt_shapes[i], candidates[j], position_by_pair[(i, j)], config
        )
    for i in unmatched_gt:
        shape_rows[i] = ShapeScores()  # all zeros: absent prediction

    arrow_pairs, bindings, unmatched_gt_arrows, unmatched_pred_arrows = _pair_arrows(
        gt_arrows, arrow_candidates, candidates, gt_label_by_candidate, config
    )
    matched_candidate_indices = set(gt_label_by_candidate)
    arrow_rows = [None] * len(gt_arrows)
    for i, j in arrow_pairs:
        arrow_rows[i] = _score_arrow(
            gt_arrows[i], arrow_candidates[j], bindings[j], candidates,
            matched_candidate_indices, config,
        )
    for i in unmatched_gt_arrows:
        arrow_rows[i] = ArrowScores()

    extra_shapes = len(unmatched_cand)
    extra_arrows = len(unmatched_pred_arrows)
    r_shape, r_arrow, overall = compose(
        [row.composite for row in shape_rows],
        [row.composite for row in arrow_rows],
        len(gt_shapes),
        len(gt_arrows),
        extra_shapes,
        extra_arrows,
    )
    return ScoreCard(
        shape_scores=[(gt_shapes[i].label, shape_rows[i]) for i in range(len(gt_shapes))],
        arrow_scores=[
            (f"{gt_arrows[i].src_label}->{gt_arrows[i].dst_label}", arrow_rows[i])
            for i in range(len(gt_arrows))
        ],
        extra_shapes=extra_shapes,
        extra_arrows=extra_arrows,
        shape_composite=r_shape,
        arrow_composite=r_arrow,
        overall=overall,
    )


def load_groundtruth_json(metadata: dict):
    """ShapeMeta/ArrowMeta lists from a generated metadata record."""
    shapes = [ShapeMeta.from_json(r) for r in metadata.get("shapes", [])]
    arrows = [ArrowMeta.from_json(r) for r in metadata.get("arrows", [])]
    return shapes, arrows


def enrich_arrow_strokes(gt_arrows, gt_doc: SvgDocument,
                         config: EvalConfig = EvalConfig()) -> None:
    """Fill ArrowMeta.stroke_width from the reference SVG.

    JSON metadata records six attributes per arrow; the stroke width needed
    to normalize head sizes is recovered from the paired reference document
    by matching extracted arrows on (src, dst) labels.
    """
    try:
        _shapes, extracted = extract_groundtruth_from_svg(gt_doc, config)
    except ExtractionEmpty:
        return
    by_pair = {}
    for arrow in extracted:
        by_pair.setdefault((arrow.src_label, arrow.dst_label), arrow.stroke_width)
    for arrow in gt_arrows:
        if arrow.stroke_width is None:
            arrow.stroke_width = by_pair.get((arrow.src_label, arrow.dst_label))


def evaluate_svg_text(gt_shapes, gt_arrows, pred_text: str,
                      config: EvalConfig = EvalConfig()) -> ScoreCard:
    """Parse and score predicted SVG text; failures give a zero card."""
    if pred_text is None or not pred_text.strip():
        return failure_card(missing=True)
    try:
        doc = parse_svg(pred_text)
    except SvgCoreError:
        return failure_card(parse_error=True)
    try:
        return evaluate_pair(gt_shapes, gt_arrows, doc, config)
    except ExtractionEmpty:
        return failure_card(parse_error=True)


def aggregate_cards(cards) -> dict:
    """Corpus view: per-attribute means plus Miss./Err. coverage counts.

    Failed samples contribute zero scores, mirroring how unparseable model
    outputs drag down a benchmark row.
    """
    n = len(cards)
    missing = sum(1 for c in cards if c.missing)
    errors = sum(1 for c in cards if c.parse_error)
    sums: dict = {}
    for name in SHAPE_ATTRS:
        sums[f"shape_{name}"] = 0.0
    for name in ARROW_ATTRS:
        sums[f"arrow_{name}"] = 0.0
    r_shape_sum = r_arrow_sum = r_sum = 0.0
    arrow_samples = 0
    for card in cards:
        for key, value in card.attribute_means().items():
            sums[key] += value
        r_shape_sum += card.shape_composite
        if card.arrow_composite is not None:
            r_arrow_sum += card.arrow_composite
            arrow_samples += 1
        r_sum += card.overall
    result = {key: (value / n if n else 0.0) for key, value in sums.items()}
    result.update(
        {
            "samples": n,
            "missing": missing,
            "errors": errors,
            "r_shape": r_shape_sum / n if n else 0.0,
            "r_arrow": r_arrow_sum / arrow_samples if arrow_samples else 0.0,
            "r": r_sum / n if n else 0.0,
        }
    )
    return result
