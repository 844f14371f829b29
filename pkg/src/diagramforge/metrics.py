"""Structural complexity metrics over documents and corpora.

Element complexity uses the natural log of the element total; structural
complexity is reported as the plain linear element total and tagged with the
definition name so downstream consumers can tell which variant produced the
number. All functions are pure; corpus aggregation reduces sums, so the
result does not depend on sample order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .svgcore import ElementCounts, SvgCoreError, classify_elements, parse_svg

SC_DEFINITION = "linear-element-total"


class UndefinedForEmpty(Exception):
    """Raised for ratio metrics on documents with no geometric elements."""


def element_complexity(counts: ElementCounts) -> float:
    """log(1 + N + T): log-scaled density of drawable and text elements."""
    return math.log(1 + counts.geometric_total + counts.text)


def cleanliness(counts: ElementCounts) -> float:
    """(B + K) / N: share of basic primitives and connectors."""
    n = counts.geometric_total
    if n == 0:
        raise UndefinedForEmpty("cleanliness undefined for N = 0")
    return (counts.basic + counts.connectors) / n


def path_dominance(counts: ElementCounts) -> float:
    """C / N: share of tracing-style complex shapes; complement of cleanliness."""
    n = counts.geometric_total
    if n == 0:
        raise UndefinedForEmpty("path dominance undefined for N = 0")
    return counts.complex / n


def structural_complexity(counts: ElementCounts) -> float:
    """Linear element total N + T (definition tagged as SC_DEFINITION)."""
    return float(counts.geometric_total + counts.text)


@dataclass(frozen=True)
class ComplexityReport:
    counts: ElementCounts
    element_complexity: float
    structural_complexity: float
    cleanliness: Optional[float]  # None when N = 0
    path_dominance: Optional[float]
    sc_definition: str = SC_DEFINITION

    def to_dict(self) -> dict:
        return {
            "counts": {
                "basic": self.counts.basic,
                "connectors": self.counts.connectors,
                "complex": self.counts.complex,
                "text": self.counts.text,
                "geometric_total": self.counts.geometric_total,
            },
            "element_complexity": self.element_complexity,
            "structural_complexity": self.structural_complexity,
            "structural_complexity_definition": self.sc_definition,
            "cleanliness": self.cleanliness,
            "path_dominance": self.path_dominance,
        }


def complexity_report(counts: ElementCounts) -> ComplexityReport:
    n = counts.geometric_total
    return ComplexityReport(
        counts=counts,
        element_complexity=element_complexity(counts),
        structural_complexity=structural_complexity(counts),
        cleanliness=cleanliness(counts) if n > 0 else None,
        path_dominance=path_dominance(counts) if n > 0 else None,
    )


def document_report(doc) -> ComplexityReport:
    return complexity_report(classify_elements(doc))


@dataclass
class CorpusAggregate:
    samples: int
    parsed: int
    parse_failures: int
    degenerate: int  # parsed but N = 0
    mean_element_complexity: Optional[float]
    mean_structural_complexity: Optional[float]
    mean_cleanliness: Optional[float]
    mean_path_dominance: Optional[float]
    per_file: list

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "parsed": self.parsed,
            "parse_failures": self.parse_failures,
            "degenerate": self.degenerate,
            "mean_element_complexity": self.mean_element_complexity,
            "mean_structural_complexity": self.mean_structural_complexity,
            "mean_cleanliness": self.mean_cleanliness,
            "mean_path_dominance": self.mean_path_dominance,
            "structural_complexity_definition": SC_DEFINITION,
        }


def corpus_stats(
    entries: Iterable[tuple[str, str]],
    cleaner: Optional[Callable] = None,
) -> CorpusAggregate:
    """Aggregate metrics over (sample_id, svg_text) pairs.

    Samples that fail to parse are counted, not fatal. When ``cleaner`` is
    given, each per-file row also carries the metrics of the cleaned
    document so pre- and post-cleaning views can be compared.
    """
    total = 0
    parsed = 0
    failures = 0
    degenerate = 0
    ec_sum = 0.0
    sc_sum = 0.0
    clean_sum = 0.0
    pd_sum = 0.0
    ratio_count = 0
    per_file = []
    for sample_id, text in entries:
        total += 1
        try:
            doc = parse_svg(text)
        except SvgCoreError as exc:
            failures += 1
            per_file.append({"id": sample_id, "error": str(exc)})
            continue
        parsed += 1
        report = document_report(doc)
        ec_sum += report.element_complexity
        sc_sum += report.structural_complexity
        if report.cleanliness is None:
            degenerate += 1
        else:
            clean_sum += report.cleanliness
            pd_sum += report.path_dominance
            ratio_count += 1
        row = {"id": sample_id}
        row.update(report.to_dict())
        if cleaner is not None:
            cleaned_report = document_report(cleaner(doc))
            row["cleaned"] = cleaned_report.to_dict()
        per_file.append(row)
    return CorpusAggregate(
        samples=total,
        parsed=parsed,
        parse_failures=failures,
        degenerate=degenerate,
        mean_element_complexity=ec_sum / parsed if parsed else None,
        mean_structural_complexity=sc_sum / parsed if parsed else None,
        mean_cleanliness=clean_sum / ratio_count if ratio_count else None,
        mean_path_dominance=pd_sum / ratio_count if ratio_count else None,
        per_file=per_file,
    )


__all__ = [
    "SC_DEFINITION",
    "UndefinedForEmpty",
    "ComplexityReport",
    "CorpusAggregate",
    "cleanliness",
    "complexity_report",
    "corpus_stats",
    "document_report",
    "element_complexity",
    "path_dominance",
    "structural_complexity",
]
