"""Layout templates: unit-square anchor positions plus connection hints.

Each template is a function(rng) -> (positions, hints) where positions are
(x, y) fractions of the drawable area and hints are ordered (src, dst) index
pairs the router consumes first. Several templates draw their node count from
the rng, which adds variety while keeping the draw order fixed.
"""

from __future__ import annotations


def _chain(n: int):
    return [(i, i + 1) for i in range(n - 1)]


def grid(rng):
    rows = rng.randint(2, 3)
    cols = rng.randint(3, 4)
    positions = []
    for r in range(rows):
        for c in range(cols):
            positions.append(
                (c / (cols - 1), r / (rows - 1) if rows > 1 else 0.5)
            )
    hints = []
    for r in range(rows):
        for c in range(cols - 1):
            hints.append((r * cols + c, r * cols + c + 1))
    for r in range(rows - 1):
        hints.append((r * cols, (r + 1) * cols))
    return positions, hints


def pipeline_horizontal(rng):
    n = rng.randint(5, 7)
    positions = [(i / (n - 1), 0.5) for i in range(n)]
    return positions, _chain(n)


def pipeline_vertical(rng):
    n = rng.randint(5, 6)
    positions = [(0.5, i / (n - 1)) for i in range(n)]
    return positions, _chain(n)


def ring(rng):
    import math

    n = rng.randint(6, 8)
    positions = []
    for i in range(n):
        angle = 2.0 * math.pi * i / n - math.pi / 2.0
        positions.append((0.5 + 0.45 * math.cos(angle), 0.5 + 0.45 * math.sin(angle)))
    hints = _chain(n) + [(n - 1, 0)]
    return positions, hints


def star(rng):
    import math

    satellites = rng.randint(6, 8)
    positions = [(0.5, 0.5)]
    for i in range(satellites):
        angle = 2.0 * math.pi * i / satellites - math.pi / 2.0
        positions.append((0.5 + 0.46 * math.cos(angle), 0.5 + 0.46 * math.sin(angle)))
    hints = [(0, i + 1) for i in range(satellites)]
    return positions, hints


def hub_spoke(rng):
    import math

    spokes = rng.randint(6, 7)
    positions = [(0.5, 0.5)]
    for i in range(spokes):
        angle = 2.0 * math.pi * i / spokes
        positions.append((0.5 + 0.46 * math.cos(angle), 0.5 + 0.44 * math.sin(angle)))
    hints = [(i + 1, 0) for i in range(spokes)]
    return positions, hints


def tree_two_level(rng):
    children = rng.randint(4, 6)
    positions = [(0.5, 0.0)]
    for i in range(children):
        positions.append((i / (children - 1) if children > 1 else 0.5, 1.0))
    hints = [(0, i + 1) for i in range(children)]
    return positions, hints


def tree_three_level(rng):
    positions = [(0.5, 0.0), (0.25, 0.5), (0.75, 0.5)]
    leaves = [(0.08, 1.0), (0.38, 1.0), (0.62, 1.0), (0.92, 1.0)]
    positions.extend(leaves)
    hints = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]
    return positions, hints


def two_column(rng):
    per_column = rng.randint(3, 4)
    positions = []
    for i in range(per_column):
        positions.append((0.12, i / (per_column - 1)))
    for i in range(per_column):
        positions.append((0.88, i / (per_column - 1)))
    hints = [(i, per_column + i) for i in range(per_column)]
    return positions, hints


def three_column(rng):
    per_column = rng.randint(2, 3)
    positions = []
    for col, x in enumerate((0.05, 0.5, 0.95)):
        for i in range(per_column):
            y = i / (per_column - 1) if per_column > 1 else 0.5
            positions.append((x, y))
    hints = []
    for i in range(per_column):
        hints.append((i, per_column + i))
        hints.append((per_column + i, 2 * per_column + i))
    return positions, hints


def diamond_flow(rng):
    positions = [(0.5, 0.0), (0.15, 0.5), (0.85, 0.5), (0.5, 1.0), (0.5, 0.5)]
    hints = [(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (4, 3)]
    return positions, hints


def u_flow(rng):
    n = rng.randint(6, 7)
    down = n // 2
    positions = []
    for i in range(down):
        positions.append((0.08, i / (down - 1)))
    positions.append((0.5, 1.0))
    for i in range(n - down - 1):
        positions.append((0.92, 1.0 - (i + 1) / (n - down - 1)))
    return positions, _chain(len(positions))


def s_flow(rng):
    cols = rng.randint(3, 4)
    positions = []
    for row in range(3):
        xs = [c / (cols - 1) for c in range(cols)]
        if row % 2 == 1:
            xs = xs[::-1]
        for x in xs:
            positions.append((x, row / 2.0))
    return positions, _chain(len(positions))


def ladder(rng):
    rungs = rng.randint(3, 5)
    positions = []
    for i in range(rungs):
        positions.append((0.15, i / (rungs - 1)))
    for i in range(rungs):
        positions.append((0.85, i / (rungs - 1)))
    hints = []
    for i in range(rungs - 1):
        hints.append((i, i + 1))
        hints.append((rungs + i, rungs + i + 1))
    for i in range(rungs):
        hints.append((i, rungs + i))
    return positions, hints


def fan_in(rng):
    sources = rng.randint(4, 6)
    positions = []
    for i in range(sources):
        positions.append((0.0, i / (sources - 1) if sources > 1 else 0.5))
    positions.append((1.0, 0.5))
    hints = [(i, sources) for i in range(sources)]
    return positions, hints


def fan_out(rng):
    sinks = rng.randint(4, 6)
    positions = [(0.0, 0.5)]
    for i in range(sinks):
        positions.append((1.0, i / (sinks - 1) if sinks > 1 else 0.5))
    hints = [(0, i + 1) for i in range(sinks)]
    return positions, hints


def nested_panel(rng):
    inner = rng.randint(5, 7)
    positions = [(0.04, 0.5)]
    cols = (inner + 1) // 2
    index = 0
    for r in range(2):
        for c in range(cols):
            if index >= inner:
                break
            x = 0.45 + 0.55 * (c / (cols - 1) if cols > 1 else 0.5)
            positions.append((x, 0.18 + 0.64 * r))
            index += 1
    hints = [(0, 1), (0, 1 + cols if inner > cols else 1)]
    hints += [(1 + i, 2 + i) for i in range(inner - 1) if 2 + i <= inner]
    return positions, hints


def triangle(rng):
    positions = [(0.5, 0.0), (0.25, 0.5), (0.75, 0.5), (0.0, 1.0), (0.5, 1.0), (1.0, 1.0)]
    hints = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5)]
    return positions, hints


def staircase(rng):
    steps = rng.randint(5, 7)
    positions = [
        (i / (steps - 1), 1.0 - i / (steps - 1)) for i in range(steps)
    ]
    return positions, _chain(steps)


TEMPLATES = (
    ("grid", grid),
    ("pipeline-horizontal", pipeline_horizontal),
    ("pipeline-vertical", pipeline_vertical),
    ("ring", ring),
    ("star", star),
    ("tree-2level", tree_two_level),
    ("tree-3level", tree_three_level),
    ("two-column", two_column),
    ("three-column", three_column),
    ("hub-spoke", hub_spoke),
    ("diamond-flow", diamond_flow),
    ("u-flow", u_flow),
    ("s-flow", s_flow),
    ("ladder", ladder),
    ("fan-in", fan_in),
    ("fan-out", fan_out),
    ("nested-panel", nested_panel),
    ("triangle", triangle),
    ("staircase", staircase),
)

TEMPLATE_NAMES = tuple(name for name, _fn in TEMPLATES)
