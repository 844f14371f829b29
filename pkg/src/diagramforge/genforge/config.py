"""Generator configuration: probabilities, palettes, word bank, fonts."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields

FONT_POOL = (
    "Arial",
    "Verdana",
    "Tahoma",
    "Trebuchet MS",
    "Georgia",
    "Times New Roman",
    "Courier New",
    "Consolas",
)

# Light fills for shape interiors.
FILL_PALETTE = (
    "#fde2e4", "#fad2e1", "#e2ece9", "#bee1e6", "#dfe7fd", "#e2afff",
    "#fff1e6", "#ffe5b4", "#d0f4de", "#a9def9", "#fcf6bd", "#ffd6a5",
    "#caffbf", "#9bf6ff", "#bdb2ff", "#ffc6ff",
)

# Dark strokes and arrow colors.
STROKE_PALETTE = (
    "#7f1d1d", "#831843", "#4c1d95", "#1e3a8a", "#0c4a6e", "#134e4a",
    "#14532d", "#3f6212", "#7c2d12", "#78350f", "#44403c", "#1f2937",
)

WORD_BANK = (
    "Encoder", "Decoder", "Filter", "Norm", "Input", "Output", "Cache",
    "Buffer", "Parser", "Router", "Merge", "Split", "Train", "Eval",
    "Embed", "Attention", "Pooling", "Fusion", "Gate", "Head", "Query",
    "Key", "Value", "Logits", "Sampler", "Scorer", "Ranker", "Fetch",
    "Store", "Loader", "Sync", "Batch", "Shard", "Mapper", "Reducer",
    "Join", "Scan", "Sort", "Hash", "Index", "Token", "Memory", "Agent",
    "Policy", "Reward", "Critic", "Actor", "Planner", "World", "Model",
    "Vision", "Audio", "Text", "Graph", "Node", "Edge", "Layer", "Block",
    "Stage", "Phase", "Stream", "Queue", "Stack", "Heap", "Tree", "Forest",
    "Prune", "Quant", "Distill", "Align", "Adapter", "Prompt", "Context",
    "Window", "Mask", "Label", "Class", "Cluster", "Sample", "Augment",
    "Dropout", "Residual", "Skip", "Dense", "Sparse", "Conv", "Kernel",
    "Stride", "Pad", "Crop", "Resize", "Flatten", "Project", "Expand",
    "Squeeze", "Excite", "Attend", "Encode", "Decode", "Update", "Commit",
    "Branch", "Rollout", "Replay", "Explore", "Exploit", "Search", "Beam",
    "Greedy", "Drafter", "Verifier", "Judge", "Critique", "Refine",
    "Iterate", "Converge", "Observe", "Measure", "Emit", "Predict",
)

FLAT_KINDS = (
    "circle", "rectangle", "square", "ellipse", "diamond", "hexagon",
    "parallelogram", "trapezoid", "blob", "wave-rect", "cloud", "text-label",
)
PSEUDO3D_KINDS = (
    "cylinder", "prism", "cube", "3d-diamond", "3d-hexagon", "3d-trapezoid",
)
ALL_KINDS = FLAT_KINDS + PSEUDO3D_KINDS

BASIC_LEANING_KINDS = ("circle", "rectangle", "square", "ellipse")

FILL_STYLES = (
    "solid", "hatching", "dots", "crosshatch", "horizontal-lines",
    "linear-gradient", "radial-gradient",
)
BORDER_STYLES = ("solid", "dashed", "dotted", "dash-dot")
LINE_PATTERNS = ("solid", "dashed", "dotted")


@dataclass(frozen=True)
class GenConfig:
    canvas_width: float = 800.0
    canvas_height: float = 500.0
    margin: float = 64.0

    template_combine_probability: float = 0.3
    cross_connections: tuple = (1, 2)
    jitter_fraction: float = 0.06

    stack_probability: float = 0.15
    stack_layers: tuple = (2, 4)
    stack_offset: float = 6.0

    rounded_corner_probability: float = 0.6
    straight_arrow_probability: float = 0.6
    connection_lo_range: tuple = (0.4, 0.6)
    connection_hi_range: tuple = (0.6, 0.8)

    shape_palette_sizes: tuple = (2, 3)
    # Selection weight multiplier for rect/circle/square/ellipse, which keeps
    # the primitive share (and therefore corpus cleanliness) near the middle
    # of its band.
    basic_kind_weight: float = 4.0

    size_width_range: tuple = (84.0, 138.0)
    size_height_range: tuple = (54.0, 86.0)
    min_center_separation: float = 96.0
    collision_margin: float = 12.0
    placement_attempts: int = 12
    retry_radius_step: float = 16.0

    font_pool: tuple = FONT_POOL
    word_bank: tuple = WORD_BANK
    fill_palette: tuple = FILL_PALETTE
    stroke_palette: tuple = STROKE_PALETTE

    arrow_color_counts: tuple = (1, 3)
    marker_head_probability: float = 0.7
    two_word_label_probability: float = 0.3
    arrow_stroke_range: tuple = (1.4, 2.6)
    head_size_factor_range: tuple = (3.0, 4.5)
    line_pattern_weights: tuple = (0.70, 0.15, 0.15)

    curve_offset_fraction: float = 0.18
    curve_offset_min: float = 14.0
    curve_offset_max: float = 60.0
    curve_avoid_samples: int = 64
    curve_offset_attempts: int = 6

    def __post_init__(self):
        if len(self.font_pool) != 8:
            raise ValueError("font pool must have exactly 8 families")
        for low, high in (self.connection_lo_range, self.connection_hi_range):
            if not (0.0 <= low <= high <= 1.0):
                raise ValueError("connection ratio bounds must be within [0, 1]")
        for name in (
            "template_combine_probability",
            "stack_probability",
            "rounded_corner_probability",
            "straight_arrow_probability",
            "marker_head_probability",
            "two_word_label_probability",
        ):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must be a probability")

    def canonical_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:12]


def _coerce(current, raw: str):
    if isinstance(current, bool):
        return raw.strip().lower() in ("1", "true", "yes")
    if isinstance(current, int) and not isinstance(current, bool):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    if isinstance(current, tuple):
        parts = [p.strip() for p in raw.replace(",", " ").split()]
        if current and isinstance(current[0], float):
            return tuple(float(p) for p in parts)
        if current and isinstance(current[0], int):
            return tuple(int(p) for p in parts)
        return tuple(parts)
    return raw


def load_config(path: str) -> GenConfig:
    """Read ``key = value`` lines into a GenConfig; unknown keys error."""
    overrides = {}
    known = {f.name: f for f in fields(GenConfig)}
    defaults = GenConfig()
    with open(path, "r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{line_number}: expected key = value")
            key, _, raw = stripped.partition("=")
            key = key.strip()
            if key not in known:
                raise ValueError(f"{path}:{line_number}: unknown config key {key!r}")
            overrides[key] = _coerce(getattr(defaults, key), raw.strip())
    return GenConfig(**overrides)
