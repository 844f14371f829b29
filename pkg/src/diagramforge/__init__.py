"""Diagram synthesis, SVG curation, and rule-based fidelity evaluation."""

__version__ = "0.1.0"
