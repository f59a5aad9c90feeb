"""P1 finite elements for the Neumann Laplacian on convex polygons.

The zero-flux boundary condition is natural for the weak form, so the
assembled pencil ``K u = lambda M u`` has no boundary terms: K is the
piecewise-linear stiffness matrix (positive semidefinite, constants in
the kernel) and M the consistent mass matrix.  Eigenvalues are indexed
so that ``lam(0) = 0`` is the constant mode and ``lam(k)`` the k-th
positive eigenvalue, counted with multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sparse
import scipy.sparse.linalg as splinalg

from .errors import (ConnectivityError, InvalidGeometryError,
                     PreconditionError, SolverError)
from .geometry import ConvexPolygon
from .mesh import refine, refinement_level_counts, triangulate

#: Largest pencil dimension solved by dense LAPACK reduction; above this a
#: shift-invert Lanczos iteration is used.
DENSE_LIMIT = 2000

#: Residual contract for the iterative path: ||K u - lam M u|| <= RTOL ||u||_M.
RESIDUAL_RTOL = 1e-8

#: Default target vertex count for automatically chosen refinement levels.
DEFAULT_TARGET_VERTICES = 5000


@dataclass(frozen=True)
class Spectrum:
    """Ascending Neumann eigenvalues, including the ~0 constant mode.

    ``values`` has length m+1; ``lam(k)`` returns the k-th entry, so
    ``lam(0)`` is the (numerically) zero mode and ``lam(k)`` the k-th
    positive eigenvalue with multiplicity.
    """

    values: np.ndarray
    n: int                      # ambient dimension of the domain
    domain: str                 # short human-readable descriptor
    vertex_count: int | None    # None for closed-form spectra
    levels: int | None = None
    error_proxy: float | None = None  # max relative eigenvalue shift over the last refinement step

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or len(vals) < 2:
            raise PreconditionError("a spectrum needs at least two eigenvalues")
        if np.any(np.diff(vals) < 0):
            raise PreconditionError("eigenvalues must be ascending")
        tol = self.tol_zero
        if vals[0] > tol:
            raise PreconditionError(
                f"values[0]={vals[0]:.3e} is not a zero mode (tol {tol:.3e})"
            )
        if np.any(vals < -tol):
            raise PreconditionError("negative eigenvalue beyond round-off")

    @property
    def tol_zero(self):
        """Threshold separating the constant mode from lam(1)."""
        return 1e-8 * float(self.values[1])

    @property
    def max_index(self):
        return len(self.values) - 1

    def lam(self, k):
        """The k-th eigenvalue; lam(0) = 0, lam(k) = k-th positive one."""
        if not 0 <= k <= self.max_index:
            raise PreconditionError(
                f"eigenvalue index {k} outside computed range 0..{self.max_index}"
            )
        return float(self.values[k])

    def to_json(self):
        return {
            "domain": self.domain,
            "n": self.n,
            "vertex_count": self.vertex_count,
            "values": self.values.tolist(),
        }


def assemble(mesh):
    """Stiffness and mass matrices of the P1 discretization.

    Element integrals are exact: for a triangle with area A and opposite
    edge vectors (b_i, c_i), the local stiffness is
    (b_i b_j + c_i c_j) / (4A) and the local mass A/12 * (1 + delta_ij).
    """
    pts = mesh.vertices
    tris = mesh.triangles
    x = pts[tris, 0]
    y = pts[tris, 1]
    b = y[:, [1, 2, 0]] - y[:, [2, 0, 1]]
    c = x[:, [2, 0, 1]] - x[:, [1, 2, 0]]
    areas = 0.5 * (x * b).sum(axis=1)
    total = float(areas.sum())
    if np.any(areas < 1e-14 * total):
        raise InvalidGeometryError("degenerate triangle encountered in assembly")

    ke = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :])
    ke /= (4.0 * areas)[:, None, None]
    me = (np.ones((3, 3)) + np.eye(3))[None, :, :] * (areas / 12.0)[:, None, None]

    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    nv = mesh.num_vertices
    stiffness = sparse.coo_matrix((ke.ravel(), (rows, cols)), shape=(nv, nv)).tocsr()
    mass = sparse.coo_matrix((me.ravel(), (rows, cols)), shape=(nv, nv)).tocsr()
    return stiffness, mass


def _dense_smallest(stiffness, mass, m):
    """Dense reduction with the constant kernel mode deflated exactly.

    The pencil has the constant vector in its kernel by construction, but
    LAPACK resolves that mode only to ~eps * lambda_max, which slivers of
    clipped cells can push past the zero-mode tolerance.  Adding
    sigma * (M 1)(M 1)^T / (1^T M 1) moves only the constant mode to
    sigma and leaves every other eigenpair unchanged, so the positive
    spectrum is computed as-is and the known zero is prepended.
    """
    kd = stiffness.toarray()
    md = mass.toarray()
    ones = np.ones(kd.shape[0])
    if np.linalg.norm(kd @ ones) > 1e-10 * np.linalg.norm(kd, "fro"):
        # generic pencil: constants are not the kernel, solve as-is
        return scipy.linalg.eigh(kd, md, subset_by_index=[0, m],
                                 eigvals_only=True)
    p = md @ ones
    denom = float(p @ ones)
    sigma = 4.0 * float(kd.trace() / md.trace())
    for _ in range(4):
        shifted = kd + (sigma / denom) * np.outer(p, p)
        vals = scipy.linalg.eigh(shifted, md, subset_by_index=[0, m - 1],
                                 eigvals_only=True)
        if vals[-1] < 0.5 * sigma:
            return np.concatenate([[0.0], vals])
        sigma *= 10.0
    raise SolverError("kernel deflation failed to separate the spectrum",
                      details={"sigma": sigma, "values": vals.tolist()})


def _iterative_smallest(stiffness, mass, m):
    dim = stiffness.shape[0]
    scale = float(stiffness.diagonal().sum() / mass.diagonal().sum())
    sigma = -scale / dim  # strictly negative, so K - sigma M is SPD
    # Deterministic, generic starting vector (ARPACK's internal default is
    # stateful across calls, which would break bit-reproducible sweeps).
    v0 = np.cos(np.arange(dim, dtype=float) + 1.0)
    ncv = min(dim, max(4 * (m + 1) + 1, 40))
    last_exc = None
    for attempt in range(3):
        try:
            vals, vecs = splinalg.eigsh(
                stiffness, k=m + 1, M=mass, sigma=sigma, which="LM",
                v0=v0, ncv=ncv, maxiter=20 * dim,
            )
            break
        except splinalg.ArpackNoConvergence as exc:
            last_exc = exc
            ncv = min(dim, ncv * 2)
            sigma *= 0.1
    else:
        raise SolverError(
            "shift-invert Lanczos failed to converge",
            details={"attempts": 3, "dimension": dim,
                     "converged": len(getattr(last_exc, "eigenvalues", []))},
        ) from last_exc

    order = np.argsort(vals)
    vals = vals[order]
    vecs = vecs[:, order]
    # Enforce the residual contract ||K u - lam M u|| <= rtol ||u||_M.
    ku = stiffness @ vecs
    mu = mass @ vecs
    res = np.linalg.norm(ku - vals[None, :] * mu, axis=0)
    unorm = np.sqrt(np.einsum("ij,ij->j", vecs, mu))
    if np.any(res > RESIDUAL_RTOL * unorm):
        raise SolverError(
            "eigenpair residuals exceed tolerance",
            details={"residuals": res.tolist(), "values": vals.tolist()},
        )
    return vals


def solve_smallest(stiffness, mass, m, *, n=2, domain="pencil",
                   vertex_count=None, levels=None, error_proxy=None):
    """The m+1 smallest eigenvalues of ``K u = lambda M u``, as a Spectrum.

    Dense LAPACK reduction up to ``DENSE_LIMIT`` unknowns, shift-invert
    Lanczos above.  The constant mode must come out at numerical zero or a
    SolverError is raised; a repeated zero mode raises ConnectivityError.
    """
    if m < 1:
        raise PreconditionError("need at least one positive eigenvalue (m >= 1)")
    dim = stiffness.shape[0]
    if m + 1 > dim:
        raise PreconditionError(f"m+1={m + 1} exceeds pencil dimension {dim}")

    if dim <= DENSE_LIMIT:
        vals = _dense_smallest(stiffness, mass, m)
    else:
        vals = _iterative_smallest(stiffness, mass, m)

    vals = np.sort(np.asarray(vals, dtype=float))
    if vals[1] <= 1e-10 * max(vals[-1], np.finfo(float).tiny):
        raise ConnectivityError(
            "repeated zero eigenvalue: discrete domain appears disconnected",
            details={"values": vals.tolist()},
        )
    if vals[0] > 1e-8 * vals[1]:
        raise SolverError(
            "constant mode not resolved to numerical zero",
            details={"values": vals.tolist()},
        )
    vals[0] = abs(vals[0])  # clamp -0.0 and sign noise on the kernel mode
    return Spectrum(vals, n=n, domain=domain, vertex_count=dim,
                    levels=levels, error_proxy=error_proxy)


def default_levels(polygon, target_vertices=DEFAULT_TARGET_VERTICES):
    """Smallest refinement level whose fan mesh reaches the vertex target."""
    for lvl in range(13):
        v, _, _ = refinement_level_counts(polygon, lvl)
        if v >= target_vertices:
            return lvl
    return 12


def neumann_spectrum(polygon, m, levels=None):
    """End-to-end pipeline: triangulate, refine, assemble, solve.

    Also solves one level coarser and records the maximum relative
    eigenvalue shift as ``error_proxy``; refinement is nested, so the
    shift bounds the remaining discretization error well in practice.
    """
    if not isinstance(polygon, ConvexPolygon):
        polygon = ConvexPolygon(polygon)
    if m < 1:
        raise PreconditionError("m must be >= 1")
    if levels is None:
        levels = default_levels(polygon)
    if levels < 0:
        raise PreconditionError("levels must be >= 0")

    base = triangulate(polygon)
    fine = refine(base, levels)
    if fine.num_vertices < m + 1:
        raise PreconditionError(
            f"mesh has {fine.num_vertices} vertices, too few for m={m}; "
            "increase levels"
        )
    stiffness, mass = assemble(fine)
    descriptor = f"polygon[{polygon.num_vertices}v]"
    fine_vals = solve_smallest(stiffness, mass, m, n=2, domain=descriptor).values

    proxy = None
    if levels >= 1:
        coarse = refine(base, levels - 1)
        if coarse.num_vertices >= m + 1:
            ks, ms = assemble(coarse)
            coarse_vals = solve_smallest(ks, ms, m, n=2, domain=descriptor).values
            rel = (coarse_vals[1:] - fine_vals[1:]) / fine_vals[1:]
            proxy = float(max(rel.max(), 0.0))

    return Spectrum(fine_vals, n=2, domain=descriptor,
                    vertex_count=fine.num_vertices, levels=levels,
                    error_proxy=proxy)
