"""Triangulation of convex polygons with uniform midpoint refinement.

A convex polygon is fanned from its centroid and refined by splitting
every triangle into four via edge midpoints.  Children are similar to
their parents, so shape regularity is fixed by the coarse fan and the
maximum edge length halves per level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidGeometryError, PreconditionError
from .geometry import ConvexPolygon


@dataclass(frozen=True)
class TriMesh:
    vertices: np.ndarray        # (V, 2) float
    triangles: np.ndarray       # (T, 3) int, counterclockwise
    boundary_edges: np.ndarray  # (B, 2) int, oriented along the boundary

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        t = np.asarray(self.triangles, dtype=np.int64)
        b = np.asarray(self.boundary_edges, dtype=np.int64)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)
        object.__setattr__(self, "boundary_edges", b)
        if t.ndim != 2 or t.shape[1] != 3:
            raise InvalidGeometryError("triangles must be index triples")
        if t.min(initial=0) < 0 or t.max(initial=-1) >= len(v):
            raise InvalidGeometryError("triangle indices out of range")
        if np.any(triangle_areas(self) <= 0.0):
            raise InvalidGeometryError("all triangles must have positive signed area")

    @property
    def num_vertices(self):
        return self.vertices.shape[0]

    @property
    def num_triangles(self):
        return self.triangles.shape[0]

    def to_json(self):
        return {"vertices": self.vertices.tolist(),
                "triangles": self.triangles.tolist()}


def triangle_areas(mesh):
    """Signed areas of all triangles."""
    p = mesh.vertices[mesh.triangles]
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def triangulate(polygon):
    """Fan triangulation of a convex polygon from its centroid."""
    if not isinstance(polygon, ConvexPolygon):
        polygon = ConvexPolygon(polygon)
    m = polygon.num_vertices
    vertices = np.vstack([polygon.vertices, polygon.centroid])
    centroid_idx = m
    idx = np.arange(m)
    triangles = np.column_stack([np.full(m, centroid_idx), idx, (idx + 1) % m])
    boundary = np.column_stack([idx, (idx + 1) % m])
    return TriMesh(vertices, triangles, boundary)


def refine(mesh, levels):
    """Split every triangle into 4 via edge midpoints, ``levels`` times."""
    if levels < 0:
        raise PreconditionError("levels must be >= 0")
    for _ in range(levels):
        mesh = _refine_once(mesh)
    return mesh


def _refine_once(mesh):
    verts = list(map(tuple, mesh.vertices))
    midpoint = {}

    def mid(i, j):
        key = (i, j) if i < j else (j, i)
        found = midpoint.get(key)
        if found is None:
            found = len(verts)
            midpoint[key] = found
            verts.append(tuple((mesh.vertices[i] + mesh.vertices[j]) / 2.0))
        return found

    tris = []
    for a, b, c in mesh.triangles:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        tris.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])

    bnd = []
    for u, v in mesh.boundary_edges:
        w = mid(u, v)
        bnd.extend([(u, w), (w, v)])

    return TriMesh(np.asarray(verts), np.asarray(tris), np.asarray(bnd))


def unique_edges(mesh):
    """All undirected edges as sorted index pairs, shape (E, 2)."""
    t = mesh.triangles
    e = np.vstack([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    e.sort(axis=1)
    return np.unique(e, axis=0)


def max_edge_length(mesh):
    e = unique_edges(mesh)
    d = mesh.vertices[e[:, 0]] - mesh.vertices[e[:, 1]]
    return float(np.linalg.norm(d, axis=1).max())


def min_angle(mesh):
    """Smallest interior angle over all triangles, in radians."""
    p = mesh.vertices[mesh.triangles]
    angles = []
    for i in range(3):
        u = p[:, (i + 1) % 3] - p[:, i]
        v = p[:, (i + 2) % 3] - p[:, i]
        cosang = (u * v).sum(1) / (np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1))
        angles.append(np.arccos(np.clip(cosang, -1.0, 1.0)))
    return float(np.min(angles))


def is_edge_connected(mesh):
    """True when every triangle is reachable from the first via shared edges."""
    t = mesh.triangles
    nt = len(t)
    if nt == 0:
        return False
    owner = {}
    adj = [[] for _ in range(nt)]
    for i, (a, b, c) in enumerate(t):
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            j = owner.get(key)
            if j is None:
                owner[key] = i
            else:
                adj[i].append(j)
                adj[j].append(i)
    seen = np.zeros(nt, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        for j in adj[stack.pop()]:
            if not seen[j]:
                seen[j] = True
                stack.append(j)
    return bool(seen.all())


def refinement_level_counts(polygon, levels):
    """(vertices, edges, triangles) of the fan after ``levels`` refinements."""
    m = polygon.num_vertices
    v, e, t = m + 1, 2 * m, m
    for _ in range(levels):
        v, e, t = v + e, 2 * e + 3 * t, 4 * t
    return v, e, t
