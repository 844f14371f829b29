"""SVG path-data parsing, absolutization, sampling, and hull points."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .. import geometry
from .model import SvgCoreError
from .num import fmt_number


class MalformedPath(SvgCoreError):
    """Raised for path data that violates the command grammar."""


_ARITY = {"M": 2, "L": 2, "H": 1, "V": 1, "C": 6, "S": 4, "Q": 4, "T": 2, "A": 7, "Z": 0}
_CURVE_VERBS = frozenset("CSQTA")

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_SEPARATOR = re.compile(r"[\s,]*")
_FLAG = re.compile(r"[01]")


@dataclass(frozen=True)
class PathCommand:
    verb: str  # canonical upper-case letter
    relative: bool
    params: tuple

    def __str__(self) -> str:
        letter = self.verb.lower() if self.relative else self.verb
        if not self.params:
            return letter
        return letter + " " + " ".join(fmt_number(p) for p in self.params)


@dataclass(frozen=True)
class PathData:
    commands: tuple

    @property
    def contains_curve(self) -> bool:
        return any(c.verb in _CURVE_VERBS for c in self.commands)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.commands)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_separators(self):
        self.pos = _SEPARATOR.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip_separators()
        return self.pos >= len(self.text)

    def peek_verb(self):
        self.skip_separators()
        if self.pos < len(self.text) and self.text[self.pos].upper() in _ARITY:
            return self.text[self.pos]
        return None

    def take_number(self) -> float:
        self.skip_separators()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise MalformedPath(f"expected number at offset {self.pos}")
        self.pos = m.end()
        return float(m.group())

    def take_flag(self) -> float:
        # Arc flags are single characters and may be packed without separators.
        self.skip_separators()
        m = _FLAG.match(self.text, self.pos)
        if not m:
            raise MalformedPath(f"expected arc flag at offset {self.pos}")
        self.pos = m.end()
        return float(m.group())


def parse_path_data(d: str) -> PathData:
    """Parse path data into commands with shorthand repetition expanded.

    Every returned command carries exactly its verb's parameter arity;
    repeated coordinate groups become additional commands (extra pairs after
    M become L per the path grammar). Raises :class:`MalformedPath` on
    dangling parameters or stray characters.
    """
    scanner = _Scanner(d or "")
    commands = []
    if scanner.at_end():
        return PathData(())
    if scanner.peek_verb() is None or scanner.peek_verb().upper() != "M":
        raise MalformedPath("path data must start with a move command")
    while not scanner.at_end():
        letter = scanner.peek_verb()
        if letter is None:
            raise MalformedPath(f"unexpected character at offset {scanner.pos}")
        scanner.pos += 1
        verb = letter.upper()
        relative = letter.islower()
        arity = _ARITY[verb]
        if arity == 0:
            commands.append(PathCommand(verb, relative, ()))
            continue
        first_group = True
        while True:
            if not first_group:
                scanner.skip_separators()
                if scanner.pos >= len(scanner.text) or scanner.peek_verb() is not None:
                    break
            params = []
            for index in range(arity):
                if verb == "A" and index in (3, 4):
                    params.append(scanner.take_flag())
                else:
                    params.append(scanner.take_number())
            if first_group:
                commands.append(PathCommand(verb, relative, tuple(params)))
            elif verb == "M":
                commands.append(PathCommand("L", relative, tuple(params)))
            else:
                commands.append(PathCommand(verb, relative, tuple(params)))
            first_group = False
    return PathData(tuple(commands))


def to_segments(path: PathData):
    """Absolute drawing segments for a parsed path.

    Yields tuples:
      ("line", p0, p1)
      ("quad", p0, ctrl, p1)
      ("cubic", p0, c1, c2, p1)
      ("arc", p0, (rx, ry, rot_deg, large_arc, sweep), p1)
      ("move", p, p)
    """
    segments = []
    current = (0.0, 0.0)
    subpath_start = (0.0, 0.0)
    last_cubic_ctrl = None
    last_quad_ctrl = None

    def absolute(pair, rel):
        return (pair[0] + current[0], pair[1] + current[1]) if rel else pair

    for cmd in path.commands:
        verb, rel, params = cmd.verb, cmd.relative, cmd.params
        if verb == "M":
            point = absolute((params[0], params[1]), rel)
            segments.append(("move", point, point))
            current = point
            subpath_start = point
            last_cubic_ctrl = last_quad_ctrl = None
        elif verb == "L":
            point = absolute((params[0], params[1]), rel)
            segments.append(("line", current, point))
            current = point
            last_cubic_ctrl = last_quad_ctrl = None
        elif verb == "H":
            x = params[0] + current[0] if rel else params[0]
            point = (x, current[1])
            segments.append(("line", current, point))
            current = point
            last_cubic_ctrl = last_quad_ctrl = None
        elif verb == "V":
            y = params[0] + current[1] if rel else params[0]
            point = (current[0], y)
            segments.append(("line", current, point))
            current = point
            last_cubic_ctrl = last_quad_ctrl = None
        elif verb == "C":
            c1 = absolute((params[0], params[1]), rel)
            c2 = absolute((params[2], params[3]), rel)
            point = absolute((params[4], params[5]), rel)
            segments.append(("cubic", current, c1, c2, point))
            current = point
            last_cubic_ctrl = c2
            last_quad_ctrl = None
        elif verb == "S":
            if last_cubic_ctrl is not None:
                c1 = (2 * current[0] - last_cubic_ctrl[0], 2 * current[1] - last_cubic_ctrl[1])
            else:
                c1 = current
            c2 = absolute((params[0], params[1]), rel)
            point = absolute((params[2], params[3]), rel)
            segments.append(("cubic", current, c1, c2, point))
            current = point
            last_cubic_ctrl = c2
            last_quad_ctrl = None
        elif verb == "Q":
            ctrl = absolute((params[0], params[1]), rel)
            point = absolute((params[2], params[3]), rel)
            segments.append(("quad", current, ctrl, point))
            current = point
            last_quad_ctrl = ctrl
            last_cubic_ctrl = None
        elif verb == "T":
            if last_quad_ctrl is not None:
                ctrl = (2 * current[0] - last_quad_ctrl[0], 2 * current[1] - last_quad_ctrl[1])
            else:
                ctrl = current
            point = absolute((params[0], params[1]), rel)
            segments.append(("quad", current, ctrl, point))
            current = point
            last_quad_ctrl = ctrl
            last_cubic_ctrl = None
        elif verb == "A":
            point = absolute((params[5], params[6]), rel)
            segments.append(
                ("arc", current, (params[0], params[1], params[2], params[3], params[4]), point)
            )
            current = point
            last_cubic_ctrl = last_quad_ctrl = None
        elif verb == "Z":
            segments.append(("line", current, subpath_start))
            current = subpath_start
            last_cubic_ctrl = last_quad_ctrl = None
    return segments


def _arc_center(p0, rx, ry, rot_deg, large_arc, sweep, p1):
    """SVG endpoint-to-center arc conversion; None for degenerate radii."""
    rx, ry = abs(rx), abs(ry)
    if rx == 0.0 or ry == 0.0 or p0 == p1:
        return None
    phi = math.radians(rot_deg)
    cos_phi, sin_phi = math.cos(phi), math.sin(phi)
    dx2 = (p0[0] - p1[0]) / 2.0
    dy2 = (p0[1] - p1[1]) / 2.0
    x1p = cos_phi * dx2 + sin_phi * dy2
    y1p = -sin_phi * dx2 + cos_phi * dy2
    lam = (x1p / rx) ** 2 + (y1p / ry) ** 2
    if lam > 1.0:
        scale = math.sqrt(lam)
        rx *= scale
        ry *= scale
    num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p
    den = rx * rx * y1p * y1p + ry * ry * x1p * x1p
    radicand = max(0.0, num / den) if den != 0.0 else 0.0
    coef = math.sqrt(radicand)
    if bool(large_arc) == bool(sweep):
        coef = -coef
    cxp = coef * rx * y1p / ry
    cyp = -coef * ry * x1p / rx
    cx = cos_phi * cxp - sin_phi * cyp + (p0[0] + p1[0]) / 2.0
    cy = sin_phi * cxp + cos_phi * cyp + (p0[1] + p1[1]) / 2.0

    def angle(ux, uy, vx, vy):
        dot = ux * vx + uy * vy
        length = math.hypot(ux, uy) * math.hypot(vx, vy)
        value = max(-1.0, min(1.0, dot / length))
        theta = math.acos(value)
        if ux * vy - uy * vx < 0.0:
            theta = -theta
        return theta

    theta1 = angle(1.0, 0.0, (x1p - cxp) / rx, (y1p - cyp) / ry)
    delta = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry)
    if not sweep and delta > 0.0:
        delta -= 2.0 * math.pi
    elif sweep and delta < 0.0:
        delta += 2.0 * math.pi
    return (cx, cy, rx, ry, phi, theta1, delta)


def _arc_samples(p0, arc_params, p1, n):
    rx, ry, rot_deg, large_arc, sweep = arc_params
    center = _arc_center(p0, rx, ry, rot_deg, large_arc, sweep, p1)
    if center is None:
        return np.array([p0, p1], dtype=np.float64)
    cx, cy, rx, ry, phi, theta1, delta = center
    cos_phi, sin_phi = math.cos(phi), math.sin(phi)
    points = np.empty((n + 1, 2), dtype=np.float64)
    for i in range(n + 1):
        theta = theta1 + delta * (i / n)
        ct, st = math.cos(theta), math.sin(theta)
        points[i, 0] = cx + rx * ct * cos_phi - ry * st * sin_phi
        points[i, 1] = cy + rx * ct * sin_phi + ry * st * cos_phi
    return points


def hull_points(path: PathData):
    """Endpoints and control points as an (n, 2) array (conservative hull).

    Arcs contribute the bounding corners of their full ellipse, which always
    contains the drawn arc.
    """
    points = []
    for seg in to_segments(path):
        kind = seg[0]
        if kind == "move":
            points.append(seg[1])
        elif kind == "line":
            points.extend((seg[1], seg[2]))
        elif kind == "quad":
            points.extend((seg[1], seg[2], seg[3]))
        elif kind == "cubic":
            points.extend((seg[1], seg[2], seg[3], seg[4]))
        elif kind == "arc":
            p0, params, p1 = seg[1], seg[2], seg[3]
            points.extend((p0, p1))
            center = _arc_center(p0, params[0], params[1], params[2], params[3], params[4], p1)
            if center is not None:
                cx, cy, rx, ry, phi, _theta1, _delta = center
                half_x = math.sqrt((rx * math.cos(phi)) ** 2 + (ry * math.sin(phi)) ** 2)
                half_y = math.sqrt((rx * math.sin(phi)) ** 2 + (ry * math.cos(phi)) ** 2)
                points.extend(
                    ((cx - half_x, cy - half_y), (cx + half_x, cy + half_y))
                )
    if not points:
        return np.empty((0, 2), dtype=np.float64)
    return np.array(points, dtype=np.float64)


def sample_path(path: PathData, n_per_segment: int = geometry.SAMPLES_PER_SEGMENT):
    """Dense samples of the drawn path as an (m, 2) array.

    Curve segments are sampled on the shared t-grid from
    :mod:`diagramforge.geometry`, so a path emitted by the generator samples
    back to exactly the outline the generator computed.
    """
    chunks = []
    for seg in to_segments(path):
        kind = seg[0]
        if kind == "move":
            chunks.append(np.array([seg[1]], dtype=np.float64))
        elif kind == "line":
            chunks.append(np.array([seg[1], seg[2]], dtype=np.float64))
        elif kind == "quad":
            chunks.append(geometry.quadratic_points(seg[1], seg[2], seg[3], n_per_segment))
        elif kind == "cubic":
            chunks.append(geometry.cubic_points(seg[1], seg[2], seg[3], seg[4], n_per_segment))
        elif kind == "arc":
            chunks.append(_arc_samples(seg[1], seg[2], seg[3], n_per_segment))
    if not chunks:
        return np.empty((0, 2), dtype=np.float64)
    return np.vstack(chunks)


def path_endpoints(path: PathData):
    """(first, last) pen positions of the drawn path, or None when empty."""
    segments = [s for s in to_segments(path)]
    if not segments:
        return None
    drawn = [s for s in segments if s[0] != "move"]
    if not drawn:
        point = segments[0][1]
        return (point, point)
    first = drawn[0][1]
    last = drawn[-1][-1]
    return (first, last)


def is_closed(path: PathData) -> bool:
    """True if the path ends where it started or carries a close command."""
    if any(c.verb == "Z" for c in path.commands):
        return True
    ends = path_endpoints(path)
    if ends is None:
        return False
    (x0, y0), (x1, y1) = ends
    return math.hypot(x1 - x0, y1 - y0) < 1e-6
