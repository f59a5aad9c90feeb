"""Exact and Monte Carlo primitives on convex planar domains.

Convex polygons are the universal substrate: subsets of a domain are
themselves convex polygons or balls clipped to the domain, so areas,
diameters, and set distances are computed exactly (up to floating
round-off).  The only sampled quantity is the area of a ball-domain
intersection, which is estimated by seeded Monte Carlo with a reported
standard error.
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .errors import InvalidGeometryError, PreconditionError

#: Number of vertices used when a ball must be treated as a polygon
#: (clipping, exact set distances).  The inscribed 64-gon under-covers the
#: disk area by sin(t)/t with t = 2*pi/64, an error below 0.2%.
BALL_POLYGON_VERTICES = 64

_REL_EPS = 1e-12


def as_point(p):
    """Validate and return a point as a float array of shape (2,)."""
    pt = np.asarray(p, dtype=float)
    if pt.shape != (2,):
        raise InvalidGeometryError(f"expected a 2D point, got shape {pt.shape}")
    if not np.all(np.isfinite(pt)):
        raise InvalidGeometryError(f"point coordinates must be finite, got {pt}")
    return pt


def _signed_area2(vertices):
    """Twice the signed shoelace area of a closed ring."""
    x = vertices[:, 0]
    y = vertices[:, 1]
    return float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _corner_cross(vertices):
    """Cross product of incoming and outgoing edge at every vertex."""
    prev = np.roll(vertices, 1, axis=0)
    nxt = np.roll(vertices, -1, axis=0)
    d1 = vertices - prev
    d2 = nxt - vertices
    return d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]


class ConvexPolygon:
    """A bounded convex domain given by counterclockwise vertices.

    Vertices are normalized on construction: consecutive (near-)duplicates
    and collinear vertices are dropped, so every stored vertex is a strict
    convex corner.  Clockwise or non-convex input raises
    :class:`InvalidGeometryError`.
    """

    def __init__(self, vertices):
        arr = np.asarray(vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
            raise InvalidGeometryError(
                "a polygon needs at least three [x, y] vertices"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidGeometryError("polygon vertices must be finite")

        scale = float(max(np.ptp(arr[:, 0]), np.ptp(arr[:, 1])))
        if scale <= 0.0:
            raise InvalidGeometryError("degenerate polygon: all vertices coincide")
        eps_len = _REL_EPS * scale
        eps_area = _REL_EPS * scale * scale

        # Drop consecutive duplicates, including the common closed-ring repeat.
        keep = np.linalg.norm(arr - np.roll(arr, 1, axis=0), axis=1) > eps_len
        arr = arr[keep]

        if arr.shape[0] >= 3 and _signed_area2(arr) < 0.0:
            raise InvalidGeometryError(
                "vertices must wind counterclockwise (signed area is negative)"
            )

        # Iteratively drop collinear corners; reject reflex ones.
        while True:
            if arr.shape[0] < 3:
                raise InvalidGeometryError(
                    "degenerate polygon: fewer than 3 corners after normalization"
                )
            cross = _corner_cross(arr)
            if np.any(cross < -eps_area):
                raise InvalidGeometryError("polygon is not convex")
            strict = cross > eps_area
            if strict.all():
                break
            arr = arr[strict]

        if _signed_area2(arr) <= eps_area:
            raise InvalidGeometryError("degenerate polygon: area is not positive")

        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        self._vertices = arr
        self._scale = scale

    # -- constructors ------------------------------------------------------

    @classmethod
    def rectangle(cls, width, height, origin=(0.0, 0.0)):
        ox, oy = as_point(origin)
        return cls([
            (ox, oy), (ox + width, oy),
            (ox + width, oy + height), (ox, oy + height),
        ])

    @classmethod
    def regular(cls, num_sides, circumradius=1.0, center=(0.0, 0.0)):
        if num_sides < 3:
            raise InvalidGeometryError("a regular polygon needs at least 3 sides")
        c = as_point(center)
        ang = 2.0 * np.pi * np.arange(num_sides) / num_sides
        return cls(c + circumradius * np.column_stack([np.cos(ang), np.sin(ang)]))

    # -- basic data --------------------------------------------------------

    @property
    def vertices(self):
        return self._vertices

    @property
    def num_vertices(self):
        return self._vertices.shape[0]

    @cached_property
    def area(self):
        return 0.5 * _signed_area2(self._vertices)

    @cached_property
    def centroid(self):
        v = self._vertices
        nxt = np.roll(v, -1, axis=0)
        cross = v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]
        return (v + nxt).T @ cross / (6.0 * self.area)

    @cached_property
    def bounding_box(self):
        return self._vertices.min(axis=0), self._vertices.max(axis=0)

    @cached_property
    def diameter(self):
        return _calipers_diameter(self._vertices)

    def edges(self):
        """Edge segments as an array of shape (m, 2, 2)."""
        return np.stack([self._vertices, np.roll(self._vertices, -1, axis=0)], axis=1)

    def __repr__(self):
        return f"ConvexPolygon({self.num_vertices} vertices, area={self.area:.6g})"

    def tolist(self):
        return self._vertices.tolist()

    # -- predicates and transforms ----------------------------------------

    def contains(self, points, tol=None):
        """Membership test, boundary inclusive up to ``tol`` (a length).

        Accepts a single point or an (N, 2) array; returns a bool or a bool
        array accordingly.
        """
        if tol is None:
            tol = 1e-9 * self._scale
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        v = self._vertices
        e = np.roll(v, -1, axis=0) - v
        elen = np.linalg.norm(e, axis=1)
        # Signed distance of each point to the left of each edge.
        cross = (e[:, 0] * (pts[:, None, 1] - v[None, :, 1])
                 - e[:, 1] * (pts[:, None, 0] - v[None, :, 0]))
        inside = (cross >= -tol * elen).all(axis=1)
        return bool(inside[0]) if single else inside

    def clipped_by_halfplane(self, normal, offset, eps=None):
        """Intersect with the half-plane ``{x : normal . x <= offset}``.

        Returns a new polygon, or None when the intersection is empty or
        has no area.
        """
        ring = _clip_ring(self._vertices, np.asarray(normal, float), float(offset),
                          self._scale if eps is None else eps)
        if ring is None:
            return None
        try:
            return ConvexPolygon(ring)
        except InvalidGeometryError:
            return None

    def translated(self, t):
        return ConvexPolygon(self._vertices + as_point(t))

    def rotated(self, angle, about=(0.0, 0.0)):
        c = as_point(about)
        rot = np.array([[math.cos(angle), -math.sin(angle)],
                        [math.sin(angle), math.cos(angle)]])
        return ConvexPolygon((self._vertices - c) @ rot.T + c)

    def scaled(self, s):
        if s <= 0:
            raise InvalidGeometryError("scale factor must be positive")
        return ConvexPolygon(self._vertices * s)


def _clip_ring(ring, normal, offset, scale):
    """Sutherland-Hodgman clip of a convex ring by ``normal . x <= offset``."""
    d = ring @ normal - offset
    eps = _REL_EPS * scale * max(float(np.linalg.norm(normal)), _REL_EPS)
    out = []
    m = len(ring)
    for i in range(m):
        j = (i + 1) % m
        di, dj = d[i], d[j]
        if di <= eps:
            out.append(ring[i])
        if (di < -eps and dj > eps) or (di > eps and dj < -eps):
            t = di / (di - dj)
            out.append(ring[i] + t * (ring[j] - ring[i]))
    if len(out) < 3:
        return None
    return np.asarray(out)


def _calipers_diameter(v):
    """Rotating-calipers diameter of a strictly convex ccw vertex ring."""
    m = len(v)
    if m == 3:
        d = np.linalg.norm(v - np.roll(v, -1, axis=0), axis=1)
        return float(d.max())

    def area2(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    best = 0.0
    k = 1
    for i in range(m):
        j = (i + 1) % m
        while area2(v[i], v[j], v[(k + 1) % m]) > area2(v[i], v[j], v[k]):
            k = (k + 1) % m
        best = max(best,
                   float(np.linalg.norm(v[i] - v[k])),
                   float(np.linalg.norm(v[j] - v[k])))
    return best


class SubsetRegion:
    """A convex subset of an ambient domain: a polygon or a clipped ball.

    Ball regions are stored as (center, radius) and polygonized to a
    64-gon clipped against the ambient domain whenever exact polygon
    algorithms (area, clipping, set distance) are required.
    """

    def __init__(self, ambient, *, polygon=None, center=None, radius=None):
        if not isinstance(ambient, ConvexPolygon):
            raise PreconditionError("ambient must be a ConvexPolygon")
        self.ambient = ambient
        self.center = None
        self.radius = None
        if polygon is not None:
            if center is not None or radius is not None:
                raise PreconditionError("give either a polygon or a ball, not both")
            if not isinstance(polygon, ConvexPolygon):
                polygon = ConvexPolygon(polygon)
            inside = ambient.contains(polygon.vertices, tol=1e-9 * ambient._scale)
            if not np.all(inside):
                raise InvalidGeometryError(
                    "subset polygon is not contained in the ambient domain"
                )
            self._polygon = polygon
        else:
            c = as_point(center)
            if radius is None or radius <= 0:
                raise PreconditionError("ball radius must be positive")
            if not ambient.contains(c):
                raise PreconditionError("ball center must lie in the ambient domain")
            self.center = c
            self.radius = float(radius)
            self._polygon = None

    @classmethod
    def from_polygon(cls, ambient, polygon):
        return cls(ambient, polygon=polygon)

    @classmethod
    def ball(cls, ambient, center, radius):
        return cls(ambient, center=center, radius=radius)

    @property
    def is_ball(self):
        return self.center is not None

    @cached_property
    def polygon(self):
        """Polygonal representation (the clipped 64-gon for balls)."""
        if self._polygon is not None:
            return self._polygon
        ang = 2.0 * np.pi * np.arange(BALL_POLYGON_VERTICES) / BALL_POLYGON_VERTICES
        disk = self.center + self.radius * np.column_stack([np.cos(ang), np.sin(ang)])
        ring = disk
        for v, w in self.ambient.edges():
            e = w - v
            normal = np.array([e[1], -e[0]])  # interior is normal . x <= normal . v
            ring = _clip_ring(ring, normal, float(normal @ v), self.ambient._scale)
            if ring is None:
                raise InvalidGeometryError("clipped ball region is empty")
        return ConvexPolygon(ring)

    @property
    def area(self):
        return self.polygon.area


def area(polygon):
    """Shoelace area of a convex polygon (exact up to round-off)."""
    return polygon.area


def diameter(polygon):
    """Largest vertex-to-vertex distance, via rotating calipers."""
    return polygon.diameter


def _as_polygon(region):
    if isinstance(region, SubsetRegion):
        return region.polygon
    if isinstance(region, ConvexPolygon):
        return region
    return ConvexPolygon(region)


def _segment_pair_distances(segs_a, segs_b):
    """Pairwise distances between two segment arrays of shape (*, 2, 2)."""
    p1 = segs_a[:, None, 0, :]
    d1 = segs_a[:, None, 1, :] - p1
    p2 = segs_b[None, :, 0, :]
    d2 = segs_b[None, :, 1, :] - p2
    r = p1 - p2
    a = (d1 * d1).sum(-1)
    e = (d2 * d2).sum(-1)
    b = (d1 * d2).sum(-1)
    c = (d1 * r).sum(-1)
    f = (d2 * r).sum(-1)
    denom = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-30, np.clip((b * f - c * e) / denom, 0.0, 1.0), 0.0)
        t = np.where(e > 1e-30, (b * s + f) / e, 0.0)
        t_cl = np.clip(t, 0.0, 1.0)
        s = np.where(t == t_cl, s, np.where(a > 1e-30,
                                            np.clip((b * t_cl - c) / a, 0.0, 1.0),
                                            0.0))
    q1 = p1 + s[..., None] * d1
    q2 = p2 + t_cl[..., None] * d2
    return np.linalg.norm(q1 - q2, axis=-1)


def set_distance(region_a, region_b):
    """Euclidean distance between two convex regions; 0 when they touch.

    Exactly symmetric in its arguments: the pair is put in a canonical
    order before the closest-point computation.
    """
    pa = _as_polygon(region_a)
    pb = _as_polygon(region_b)
    if pb.contains(pa.vertices[0]) or pa.contains(pb.vertices[0]):
        return 0.0
    ka = (pa.num_vertices, *pa.vertices.ravel().tolist())
    kb = (pb.num_vertices, *pb.vertices.ravel().tolist())
    if kb < ka:
        pa, pb = pb, pa
    return float(_segment_pair_distances(pa.edges(), pb.edges()).min())


def ball_intersection_area(polygon, center, radius, samples, seed):
    """Monte Carlo area of ``B(center, radius) & polygon``.

    Draws ``samples`` points uniformly in the ball using NumPy's
    ``default_rng`` (PCG64) seeded with ``seed``, so results are
    reproducible for fixed (samples, seed).  Returns ``(estimate,
    standard_error)``.
    """
    if radius <= 0:
        raise PreconditionError("radius must be positive")
    if samples < 10_000:
        raise PreconditionError("at least 10^4 samples are required")
    x = as_point(center)
    if not polygon.contains(x):
        raise PreconditionError("ball center must lie inside the polygon")
    rng = np.random.default_rng(seed)
    rad = radius * np.sqrt(rng.random(samples))
    ang = 2.0 * np.pi * rng.random(samples)
    pts = x + np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
    phat = float(polygon.contains(pts).mean())
    ball_area = math.pi * radius * radius
    estimate = ball_area * phat
    stderr = ball_area * math.sqrt(max(phat * (1.0 - phat), 0.0) / samples)
    return estimate, stderr
