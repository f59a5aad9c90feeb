"""Independent oracles used by the test suite.

Everything here recomputes expected values by brute force (enumeration,
dense sampling, grid quadrature, explicit loops) without reusing the
library's algorithms, so each check is a genuine dual route.
"""

import math

import numpy as np
from scipy.spatial.distance import cdist

from neumannlab.geometry import ConvexPolygon


def all_pairs_diameter(polygon):
    """Max vertex-vertex distance by brute force over all pairs."""
    v = polygon.vertices
    d = cdist(v, v)
    return float(d.max())


def boundary_samples(polygon, per_edge):
    """Dense points along every edge, endpoints included."""
    t = np.linspace(0.0, 1.0, per_edge)[:, None]
    pts = []
    for a, b in polygon.edges():
        pts.append(a + t * (b - a))
    return np.vstack(pts)


def brute_set_distance(poly_a, poly_b, per_edge=1500, chunk=2048):
    """Min distance between dense boundary samplings, chunked cdist."""
    pa = boundary_samples(poly_a, per_edge)
    pb = boundary_samples(poly_b, per_edge)
    best = np.inf
    for i in range(0, len(pa), chunk):
        best = min(best, cdist(pa[i:i + chunk], pb).min())
    return float(best)


def grid_ball_area(polygon, center, radius, n=3000, chunk=200_000):
    """Midpoint-rule quadrature of area(B(center, radius) & polygon).

    Returns (value, error_allowance); the allowance covers cells cut by
    either boundary, roughly boundary length times cell size.
    """
    x, y = center
    h = 2.0 * radius / n
    axis = -radius + (np.arange(n) + 0.5) * h
    gx, gy = np.meshgrid(x + axis, y + axis, indexing="xy")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    inside = 0
    for i in range(0, len(pts), chunk):
        block = pts[i:i + chunk]
        in_ball = ((block[:, 0] - x) ** 2 + (block[:, 1] - y) ** 2) <= radius ** 2
        inside += int((in_ball & polygon.contains(block)).sum())
    value = inside * h * h
    allowance = 4.0 * math.pi * radius * h
    return value, allowance


def brute_force_greedy_net(polygon, r, start, resolution):
    """Farthest-point greedy with (y, x) tie-break, explicit loops."""
    lo, hi = polygon.bounding_box
    xs = np.linspace(lo[0], hi[0], resolution)
    ys = np.linspace(lo[1], hi[1], resolution)
    pts = [(float(x), float(y)) for y in ys for x in xs
           if polygon.contains((x, y))]
    centers = [(float(start[0]), float(start[1]))]
    dists = [math.hypot(p[0] - centers[0][0], p[1] - centers[0][1])
             for p in pts]
    while True:
        best_i = None
        best_d = -1.0
        for i, (p, d) in enumerate(zip(pts, dists)):
            if d > best_d:
                best_i, best_d = i, d
            elif d == best_d and (p[1], p[0]) < (pts[best_i][1], pts[best_i][0]):
                best_i = i
        if best_d < r:
            break
        cx, cy = pts[best_i]
        centers.append((cx, cy))
        dists = [min(d, math.hypot(p[0] - cx, p[1] - cy))
                 for p, d in zip(pts, dists)]
    return centers


def mode_value_oracle(multi_index, sides):
    """Cosine-mode eigenvalue, written out independently."""
    return math.pi ** 2 * math.fsum(
        (p / a) ** 2 for p, a in zip(multi_index, sides)
    )


def exhaustive_box_values(sides, m):
    """The m+1 smallest box eigenvalues by complete enumeration.

    Enumerates every multi-index with value below a cutoff (staged outer
    sums with pruning); the cutoff doubles until at least m+1 values are
    found, which proves the m+1 smallest are all enumerated.
    """
    sides = np.asarray(sides, dtype=float)
    lam_cut = math.pi ** 2 / sides.max() ** 2
    while True:
        indices = _indices_upto(sides, lam_cut)
        if len(indices) >= m + 1:
            break
        lam_cut *= 2.0
    values = sorted(mode_value_oracle(p, sides) for p in indices)
    return np.asarray(values[:m + 1])


def _indices_upto(sides, lam_cut):
    target = lam_cut / math.pi ** 2 * (1.0 + 1e-12)
    partial = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1)
    for a in sides:
        pmax = int(math.floor(math.sqrt(target) * a)) + 1
        contrib = (np.arange(pmax + 1) / a) ** 2
        total = sums[:, None] + contrib[None, :]
        rows, cols = np.nonzero(total <= target)
        partial = np.hstack([partial[rows], cols[:, None]])
        sums = total[rows, cols]
    return [tuple(row) for row in partial]


def random_hulls(count, seed, points=20):
    """Deterministic batch of random convex hulls."""
    from neumannlab.experiments import random_convex_hull

    return [random_convex_hull(points, seed + i) for i in range(count)]


def transformed(polygon, angle, shift):
    """Rigid motion applied directly to the vertex array."""
    rot = np.array([[math.cos(angle), -math.sin(angle)],
                    [math.sin(angle), math.cos(angle)]])
    return ConvexPolygon(polygon.vertices @ rot.T + np.asarray(shift, float))
