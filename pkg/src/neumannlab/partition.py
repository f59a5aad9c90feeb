"""Separated nets, Voronoi partitions, and family separation.

A maximal r-separated net is grown by farthest-point greedy selection
over a uniform candidate grid; maximality then forces r-covering up to
the grid resolution.  The Voronoi cells of the net centers form a convex
partition of the domain, and every cell sits inside the ball of the
covering radius around its center, so cell diameters are at most twice
the covering radius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidGeometryError, PreconditionError
from .geometry import ConvexPolygon, SubsetRegion, as_point, set_distance

DEFAULT_GRID_RESOLUTION = 256


@dataclass(frozen=True)
class Net:
    """Separated center points in a convex domain.

    ``covering_radius`` is a certified upper bound on the true covering
    radius: the grid max-min distance is taken over a half-cell dilation
    of the domain and padded by half a grid-cell diagonal, which bounds
    ``min_i |p - c_i|`` for every domain point p (the min-distance field
    is 1-Lipschitz).  For a maximal net it sits below ``separation``
    whenever the greedy stop margin exceeds the grid quantum.
    """

    centers: np.ndarray
    separation: float
    covering_radius: float
    ambient: ConvexPolygon
    grid_resolution: int

    def __len__(self):
        return len(self.centers)

    def pairwise_distances(self):
        d = self.centers[:, None, :] - self.centers[None, :, :]
        return np.linalg.norm(d, axis=-1)

    def min_pairwise_distance(self):
        d = self.pairwise_distances()
        return float(d[np.triu_indices(len(self.centers), k=1)].min())

    def to_json(self):
        return {
            "centers": self.centers.tolist(),
            "r": self.separation,
            "covering_radius": self.covering_radius,
        }


@dataclass(frozen=True)
class VoronoiPartition:
    centers: np.ndarray
    cells: list
    ambient: ConvexPolygon

    def __len__(self):
        return len(self.cells)

    def to_json(self):
        return {
            "centers": self.centers.tolist(),
            "cells": [cell.tolist() for cell in self.cells],
        }


def candidate_grid(polygon, resolution=DEFAULT_GRID_RESOLUTION, dilation=0.0):
    """Uniform grid over the bounding box, restricted to the polygon.

    ``dilation`` widens the membership band by that length, admitting
    grid nodes just outside the boundary.
    """
    lo, hi = polygon.bounding_box
    xs = np.linspace(lo[0], hi[0], resolution)
    ys = np.linspace(lo[1], hi[1], resolution)
    gx, gy = np.meshgrid(xs, ys, indexing="xy")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    return pts[polygon.contains(pts, tol=dilation if dilation > 0 else None)]


def _grid_half_diagonal(polygon, resolution):
    lo, hi = polygon.bounding_box
    return 0.5 * float(np.hypot(*(hi - lo))) / (resolution - 1)


def _certified_covering_radius(polygon, centers, resolution):
    """Upper bound on max over the domain of the nearest-center distance."""
    half_diag = _grid_half_diagonal(polygon, resolution)
    dilated = candidate_grid(polygon, resolution, dilation=half_diag)
    d = np.linalg.norm(dilated[:, None, :] - centers[None, :, :], axis=-1)
    return float(d.min(axis=1).max()) + half_diag


def _lowest_yx(points):
    """Index of the point with smallest (y, x), the deterministic tie-break."""
    order = np.lexsort((points[:, 0], points[:, 1]))
    return int(order[0])


def farthest_point_sequence(polygon, count, start=None,
                            resolution=DEFAULT_GRID_RESOLUTION):
    """First ``count`` centers of unbounded farthest-point greedy selection.

    Deterministic: candidates come from the uniform grid, ties go to the
    lowest (y, then x) candidate, and the default start is the grid point
    nearest the centroid.
    """
    grid = candidate_grid(polygon, resolution)
    if start is None:
        d0 = np.linalg.norm(grid - polygon.centroid, axis=1)
        tie = grid[d0 == d0.min()]
        start = tie[_lowest_yx(tie)]
    else:
        start = as_point(start)
        if not polygon.contains(start):
            raise PreconditionError("start point must lie in the polygon")
    centers = [start]
    dists = np.linalg.norm(grid - start, axis=1)
    while len(centers) < count:
        far = dists.max()
        if far <= 0.0:
            break
        tie = grid[dists == far]
        nxt = tie[_lowest_yx(tie)]
        centers.append(nxt)
        dists = np.minimum(dists, np.linalg.norm(grid - nxt, axis=1))
    return np.asarray(centers), dists


def greedy_maximal_net(polygon, r, start, resolution=DEFAULT_GRID_RESOLUTION):
    """Maximal r-separated net by farthest-point greedy over a grid.

    Grid points are added while the farthest candidate is at least r from
    every chosen center, so the result is r-separated exactly and covers
    the candidate grid within the reported covering radius (< r).
    """
    if r <= 0:
        raise PreconditionError("separation r must be positive")
    start = as_point(start)
    if not polygon.contains(start):
        raise PreconditionError("start point must lie in the polygon")
    grid = candidate_grid(polygon, resolution)
    centers = [start]
    dists = np.linalg.norm(grid - start, axis=1)
    while True:
        far = dists.max()
        if far < r:
            break
        tie = grid[dists == far]
        nxt = tie[_lowest_yx(tie)]
        centers.append(nxt)
        dists = np.minimum(dists, np.linalg.norm(grid - nxt, axis=1))
    centers = np.asarray(centers)

    covering = _certified_covering_radius(polygon, centers, resolution)
    net = Net(centers, float(r), covering, polygon, resolution)
    if len(centers) > 1 and net.min_pairwise_distance() < r:
        raise InvalidGeometryError("internal error: net is not r-separated")
    return net


def voronoi_partition(polygon, centers):
    """Voronoi cells of the centers, clipped to the polygon.

    Each cell is the polygon intersected with the perpendicular-bisector
    half-planes against all other centers; boundaries overlap on a set of
    measure zero only.
    """
    pts = np.atleast_2d(np.asarray(centers, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise PreconditionError("centers must be an (n, 2) array")
    if not np.all(polygon.contains(pts)):
        raise PreconditionError("all centers must lie in the polygon")
    m = len(pts)
    if m >= 2:
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.linalg.norm(diff, axis=-1)
        iu = np.triu_indices(m, k=1)
        if dist[iu].min() <= 1e-12 * polygon.diameter:
            raise PreconditionError("duplicate centers")

    cells = []
    for i in range(m):
        cell = polygon
        for j in range(m):
            if i == j:
                continue
            normal = pts[j] - pts[i]
            offset = float(normal @ (pts[i] + pts[j])) / 2.0
            cell = cell.clipped_by_halfplane(normal, offset)
            if cell is None:
                raise InvalidGeometryError(
                    f"Voronoi cell {i} degenerated during clipping"
                )
        cells.append(cell)

    part = VoronoiPartition(pts, cells, polygon)
    total = sum(c.area for c in cells)
    if abs(total - polygon.area) > 1e-9 * polygon.area:
        raise InvalidGeometryError(
            f"cell areas sum to {total:.12g}, expected {polygon.area:.12g}"
        )
    for i, cell in enumerate(cells):
        if not cell.contains(pts[i]):
            raise InvalidGeometryError(f"center {i} escaped its own cell")
    return part


def family_separation(family):
    """Minimum pairwise distance over a family of convex regions."""
    if len(family) < 2:
        raise PreconditionError("family separation needs at least two regions")
    best = np.inf
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            best = min(best, set_distance(family[i], family[j]))
    return float(best)


def net_ball_family(polygon, count, radius_fraction=1.0 / 3.0,
                    resolution=DEFAULT_GRID_RESOLUTION):
    """Well-separated clipped balls around farthest-point centers.

    Ball radius is ``radius_fraction`` of the minimum center separation,
    so for the default 1/3 the pairwise set distances are at least one
    radius: d(centers) >= 3R implies d(balls) >= R > 0.
    """
    if count < 2:
        raise PreconditionError("a family needs at least two members")
    centers, _ = farthest_point_sequence(polygon, count, resolution=resolution)
    if len(centers) < count:
        raise PreconditionError("polygon grid too coarse for requested family size")
    d = centers[:, None, :] - centers[None, :, :]
    dist = np.linalg.norm(d, axis=-1)
    min_sep = float(dist[np.triu_indices(count, k=1)].min())
    radius = radius_fraction * min_sep
    return [SubsetRegion.ball(polygon, c, radius) for c in centers]
