"""Shared 2-D geometry kernels.

These are the numeric inner loops of the package: ray/segment intersection
for arrow attachment, Bezier sampling for curved outlines and obstacle
avoidance, and batched AABB tests for placement collision. They are compiled
with numba unless disabled (see :mod:`diagramforge._accel`). Everything works
on float64 and avoids fastmath so the jitted and plain paths agree bitwise.

``SAMPLES_PER_SEGMENT`` is the sampling density used both when the generator
computes a curved shape's outline and when the evaluator reconstructs the
same outline from parsed path data; sharing the constant (and the sampling
kernels) makes the two bounding boxes identical by construction.
"""

import math

import numpy as np

from ._accel import maybe_jit

# Per curve segment, for outline/bbox purposes. The obstacle-avoidance check
# in routing uses its own denser constant.
SAMPLES_PER_SEGMENT = 24


@maybe_jit
def ray_polyline_hit(ox, oy, tx, ty, xs, ys):
    """Largest ray parameter t where origin->target crosses the closed polyline.

    Returns -1.0 when there is no crossing with t >= 0. For outlines that are
    star-shaped around the ray origin there is exactly one crossing, which is
    the point where the ray exits the shape.
    """
    dx = tx - ox
    dy = ty - oy
    best = -1.0
    n = xs.shape[0]
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        x1 = xs[i]
        y1 = ys[i]
        ex = xs[j] - x1
        ey = ys[j] - y1
        den = dx * ey - dy * ex
        if den == 0.0:
            continue
        qx = x1 - ox
        qy = y1 - oy
        t = (qx * ey - qy * ex) / den
        s = (dy * qx - dx * qy) / den
        if t >= 0.0 and 0.0 <= s <= 1.0 and t > best:
            best = t
    return best


@maybe_jit
def sample_quadratic(x0, y0, cx, cy, x1, y1, n, xs, ys):
    """Fill xs/ys (length n+1) with points of a quadratic Bezier at t=i/n."""
    for i in range(n + 1):
        t = i / n
        mt = 1.0 - t
        a = mt * mt
        b = 2.0 * mt * t
        c = t * t
        xs[i] = a * x0 + b * cx + c * x1
        ys[i] = a * y0 + b * cy + c * y1


@maybe_jit
def sample_cubic(x0, y0, c1x, c1y, c2x, c2y, x1, y1, n, xs, ys):
    """Fill xs/ys (length n+1) with points of a cubic Bezier at t=i/n."""
    for i in range(n + 1):
        t = i / n
        mt = 1.0 - t
        a = mt * mt * mt
        b = 3.0 * mt * mt * t
        c = 3.0 * mt * t * t
        d = t * t * t
        xs[i] = a * x0 + b * c1x + c * c2x + d * x1
        ys[i] = a * y0 + b * c1y + c * c2y + d * y1


@maybe_jit
def any_point_in_boxes(xs, ys, boxes):
    """True if any point lies strictly inside any (minx, miny, maxx, maxy) box."""
    m = boxes.shape[0]
    n = xs.shape[0]
    for k in range(m):
        bx0 = boxes[k, 0]
        by0 = boxes[k, 1]
        bx1 = boxes[k, 2]
        by1 = boxes[k, 3]
        for i in range(n):
            if bx0 < xs[i] < bx1 and by0 < ys[i] < by1:
                return True
    return False


@maybe_jit
def box_overlaps_any(minx, miny, maxx, maxy, boxes):
    """True if the box strictly overlaps any box in the (m, 4) array."""
    m = boxes.shape[0]
    for k in range(m):
        if (
            minx < boxes[k, 2]
            and maxx > boxes[k, 0]
            and miny < boxes[k, 3]
            and maxy > boxes[k, 1]
        ):
            return True
    return False


@maybe_jit
def pairwise_box_overlaps(boxes):
    """Number of strictly overlapping pairs among (m, 4) boxes."""
    m = boxes.shape[0]
    count = 0
    for i in range(m):
        for j in range(i + 1, m):
            if (
                boxes[i, 0] < boxes[j, 2]
                and boxes[i, 2] > boxes[j, 0]
                and boxes[i, 1] < boxes[j, 3]
                and boxes[i, 3] > boxes[j, 1]
            ):
                count += 1
    return count


def quadratic_points(p0, ctrl, p1, n=SAMPLES_PER_SEGMENT):
    """Sampled points of a quadratic Bezier as an (n+1, 2) array."""
    xs = np.empty(n + 1, dtype=np.float64)
    ys = np.empty(n + 1, dtype=np.float64)
    sample_quadratic(p0[0], p0[1], ctrl[0], ctrl[1], p1[0], p1[1], n, xs, ys)
    return np.column_stack((xs, ys))


def cubic_points(p0, c1, c2, p1, n=SAMPLES_PER_SEGMENT):
    """Sampled points of a cubic Bezier as an (n+1, 2) array."""
    xs = np.empty(n + 1, dtype=np.float64)
    ys = np.empty(n + 1, dtype=np.float64)
    sample_cubic(p0[0], p0[1], c1[0], c1[1], c2[0], c2[1], p1[0], p1[1], n, xs, ys)
    return np.column_stack((xs, ys))


def ray_exit_point(origin, target, outline):
    """Exit point of the origin->target ray on a closed outline polygon.

    ``outline`` is an (n, 2) float array. Returns None when the ray never
    crosses the outline.
    """
    xs = np.ascontiguousarray(outline[:, 0], dtype=np.float64)
    ys = np.ascontiguousarray(outline[:, 1], dtype=np.float64)
    t = ray_polyline_hit(
        float(origin[0]), float(origin[1]), float(target[0]), float(target[1]), xs, ys
    )
    if t < 0.0:
        return None
    return (
        origin[0] + t * (target[0] - origin[0]),
        origin[1] + t * (target[1] - origin[1]),
    )


def ellipse_exit_point(center, rx, ry, target):
    """Analytic exit point of the center->target ray on an ellipse outline."""
    dx = target[0] - center[0]
    dy = target[1] - center[1]
    denom = (dx / rx) ** 2 + (dy / ry) ** 2
    if denom == 0.0:
        return None
    t = 1.0 / math.sqrt(denom)
    return (center[0] + t * dx, center[1] + t * dy)


def polygon_bbox(points):
    """(minx, miny, maxx, maxy) of an (n, 2) point array."""
    return (
        float(np.min(points[:, 0])),
        float(np.min(points[:, 1])),
        float(np.max(points[:, 0])),
        float(np.max(points[:, 1])),
    )
