"""Evaluators for eigenvalue inequalities on convex domains.

Every evaluator returns a :class:`BoundReport` normalizing the inequality
to ``lhs <= c * rhs_core`` with the structural constant stripped from the
right-hand side, so ``implied_constant = lhs / rhs_core`` is the smallest
admissible constant witnessed by that instance.  Proven lower-bound
theorems additionally carry a pass flag with the discretization tolerance
folded into the margin; upper bounds with unspecified universal constants
only report.

All logarithms are natural.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (DegenerateFamilyError, NeumannLabError,
                     PreconditionError, ReplayError)
from .fem import default_levels, neumann_spectrum
from .geometry import as_point, ball_intersection_area
from .partition import (DEFAULT_GRID_RESOLUTION, family_separation,
                        greedy_maximal_net, voronoi_partition)

#: Relative slack added to every pass/fail margin so exact-arithmetic
#: equality cases cannot fail on the last ulp.
FLOAT_SLACK = 1e-9


@dataclass
class BoundReport:
    """One inequality evaluation: lhs vs rhs with the constant stripped."""

    name: str
    lhs: float
    rhs_core: float
    implied_constant: float
    inputs: dict = field(default_factory=dict)
    notes: str = ""
    passed: bool | None = None   # None for report-only (upper-bound) evaluators
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.rhs_core > 0:
            raise PreconditionError(f"{self.name}: rhs_core must be positive")
        expected = self.lhs / self.rhs_core
        if abs(self.implied_constant - expected) > 1e-12 * max(abs(expected), 1e-300):
            raise PreconditionError(f"{self.name}: implied constant inconsistent")

    def to_json(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs_core": self.rhs_core,
            "implied_constant": self.implied_constant,
            "pass": self.passed,
            "inputs": self.inputs,
            "notes": self.notes,
            "extras": self.extras,
        }


def _report(name, lhs, rhs_core, **kw):
    return BoundReport(name, float(lhs), float(rhs_core),
                       float(lhs) / float(rhs_core), **kw)


def _tol(spectrum):
    return spectrum.error_proxy or 0.0


# ---------------------------------------------------------------------------
# Proven lower bounds (pass/fail with tolerance band)
# ---------------------------------------------------------------------------

def payne_weinberger_bound(spectrum, diam):
    """First-eigenvalue lower bound for convex domains: lam1 >= pi^2/diam^2."""
    if diam <= 0:
        raise PreconditionError("diameter must be positive")
    lam1 = spectrum.lam(1)
    lhs = math.pi ** 2 / diam ** 2
    margin = 1.0 + 2.0 * _tol(spectrum) + FLOAT_SLACK
    return _report(
        "payne_weinberger", lhs, lam1,
        inputs={"domain": spectrum.domain, "n": spectrum.n, "diam": diam},
        passed=bool(lhs <= lam1 * margin),
    )


def partition_lower_bound_check(spec_parent, cell_spectra, l):
    """Domain monotonicity: lam_{l+1}(domain) >= min over cells of lam_1."""
    if any(s is None for s in cell_spectra):
        raise PreconditionError("missing cell spectrum")
    if l + 1 != len(cell_spectra):
        raise PreconditionError(
            f"partition has {len(cell_spectra)} cells, expected l+1={l + 1}"
        )
    lhs = min(s.lam(1) for s in cell_spectra)
    rhs = spec_parent.lam(l + 1)
    tol = _tol(spec_parent) + max(_tol(s) for s in cell_spectra)
    margin = 1.0 - 2.0 * tol - FLOAT_SLACK
    return _report(
        "partition_lower_bound", lhs, rhs,
        inputs={"domain": spec_parent.domain, "cells": len(cell_spectra), "l": l},
        passed=bool(rhs >= lhs * margin),
    )


def bishop_gromov_check(polygon, x, r, big_r, samples, seed):
    """Concentric clipped-ball volume ratio bound for convex domains.

    vol(B(x,r) & P) / vol(B(x,R) & P) >= (r/R)^2, checked by seeded Monte
    Carlo at 3 sigma confidence with the two estimates drawn from
    independent child streams of ``seed``.
    """
    if not (big_r > r > 0):
        raise PreconditionError("need R > r > 0")
    x = as_point(x)
    if not polygon.contains(x):
        raise PreconditionError("x must lie in the polygon")
    seed_small, seed_big = np.random.SeedSequence(seed).spawn(2)
    small, se_small = ball_intersection_area(polygon, x, r, samples, seed_small)
    big, se_big = ball_intersection_area(polygon, x, big_r, samples, seed_big)
    ratio = small / big
    sigma = ratio * math.hypot(se_small / small, se_big / big)
    rhs = (r / big_r) ** 2
    return _report(
        "bishop_gromov", ratio, rhs,
        inputs={"x": x.tolist(), "r": r, "R": big_r,
                "samples": samples, "seed": int(seed)},
        passed=bool(ratio >= rhs - 3.0 * sigma - FLOAT_SLACK * rhs),
        extras={"sigma": sigma, "vol_small": small, "vol_big": big},
    )


# ---------------------------------------------------------------------------
# Upper bounds and diagnostics (report-only)
# ---------------------------------------------------------------------------

def kroger_ratio(spectrum, diam, k):
    """Diameter-normalized upper bound lam_k <~ n^2 k^2 / diam^2."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if diam <= 0:
        raise PreconditionError("diameter must be positive")
    n = spectrum.n
    rhs = n ** 2 * k ** 2 / diam ** 2
    return _report(
        "kroger", spectrum.lam(k), rhs,
        inputs={"domain": spectrum.domain, "n": n, "k": k, "diam": diam},
    )


def cgy_bound(lambda_k, family, vol_domain, k):
    """Separated-subset upper bound without the dimension factor:

    lam_k <~ (1/D^2) * max_a (log vol(domain)/vol(A_a))^2
    for any k+1 subsets with positive mutual separation D.
    """
    if len(family) != k + 1:
        raise PreconditionError(f"need k+1={k + 1} subsets, got {len(family)}")
    sep = family_separation(family)
    if sep <= 0:
        raise DegenerateFamilyError("subset family has zero separation")
    max_log = _max_volume_log(family, vol_domain)
    rhs = max_log ** 2 / sep ** 2
    if rhs <= 0:
        raise DegenerateFamilyError("all subsets fill the domain: bound degenerates")
    return _report(
        "cgy", lambda_k, rhs,
        inputs={"k": k, "subsets": len(family), "separation": sep,
                "vol_domain": vol_domain},
    )


def borel_family_bound(lambda_k, family, vol_domain, k, n, variant="full"):
    """Separated-subset upper bound with the log(k+1) gain:

    lam_k <~ n^2 / (D log(k+1))^2 * max_a (log vol(domain)/vol(A_a))^2.

    The ``full`` variant takes k+1 subsets; ``reduced`` takes k subsets
    bounding the same lam_k.  Also reports the separation scale
    D*sqrt(lam_k)/n, the constant witnessed by the separation itself.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    expected = k + 1 if variant == "full" else k if variant == "reduced" else None
    if expected is None:
        raise PreconditionError(f"unknown variant {variant!r}")
    if len(family) != expected:
        raise PreconditionError(
            f"{variant} variant needs {expected} subsets, got {len(family)}"
        )
    sep = family_separation(family)
    if sep <= 0:
        raise DegenerateFamilyError("subset family has zero separation")
    max_log = _max_volume_log(family, vol_domain)
    rhs = n ** 2 * max_log ** 2 / (sep * math.log(k + 1)) ** 2
    if rhs <= 0:
        raise DegenerateFamilyError("all subsets fill the domain: bound degenerates")
    return _report(
        f"borel_family_{variant}", lambda_k, rhs,
        inputs={"k": k, "n": n, "subsets": len(family), "separation": sep,
                "vol_domain": vol_domain},
        extras={"separation_scale": sep * math.sqrt(lambda_k) / n},
    )


def _max_volume_log(family, vol_domain):
    logs = []
    for region in family:
        a = region.area
        if a <= 0:
            raise PreconditionError("subset with nonpositive area")
        logs.append(math.log(vol_domain / a))
    return max(logs)


def separated_net_constant(r, lambda_l, n):
    """Constant witnessed by l+1 r-separated points: r <~ n/sqrt(lam_l)."""
    if r <= 0 or lambda_l <= 0:
        raise PreconditionError("need r > 0 and lambda_l > 0")
    rhs = n / math.sqrt(lambda_l)
    return _report("separated_net", r, rhs,
                   inputs={"r": r, "lambda_l": lambda_l, "n": n})


def universal_ratio_check(spectrum, k):
    """Spectral-gap constant lam_{k+1} / (n^4 lam_k)."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    lam_k = spectrum.lam(k)
    lam_next = spectrum.lam(k + 1)
    if lam_k <= spectrum.tol_zero:
        raise PreconditionError(f"lam({k}) is numerically zero")
    n = spectrum.n
    return _report(
        "universal_ratio", lam_next, n ** 4 * lam_k,
        inputs={"domain": spectrum.domain, "n": n, "k": k},
        extras={"gap_ratio": lam_next / lam_k},
    )


def ratio_table(spectrum, k_max):
    """Growth and gap diagnostics for k = 1..k_max.

    Four constants per k: lam_k/(k^2 lam_1) (growth versus the optimal
    quadratic rate), lam_{k+1}/((n log k)^2 lam_k) for k >= 2,
    lam_k/(k^{2/n} lam_1) (Weyl-type lower bound, expect a positive
    floor), and lam_{k+1}/(k^{2-2/n} lam_k).
    """
    if k_max < 1:
        raise PreconditionError("k_max must be >= 1")
    spectrum.lam(k_max + 1)  # raises if the spectrum is too short
    n = spectrum.n
    lam1 = spectrum.lam(1)
    rows = []
    for k in range(1, k_max + 1):
        lam_k = spectrum.lam(k)
        lam_next = spectrum.lam(k + 1)
        base = {"domain": spectrum.domain, "n": n, "k": k}
        rows.append(_report("liu_growth", lam_k, k ** 2 * lam1, inputs=base))
        if k >= 2:
            rows.append(_report(
                "gap_nlogk", lam_next, (n * math.log(k)) ** 2 * lam_k,
                inputs=base,
            ))
        rows.append(_report("weyl_lower", lam_k, k ** (2.0 / n) * lam1,
                            inputs=base))
        rows.append(_report("gap_k_power", lam_next, k ** (2.0 - 2.0 / n) * lam_k,
                            inputs=base))
    return rows


# ---------------------------------------------------------------------------
# Proof replay: net -> Voronoi -> per-cell lower bounds -> spectral gap
# ---------------------------------------------------------------------------

@dataclass
class ReplayLink:
    index: int
    name: str
    passed: bool | None
    data: dict

    def to_json(self):
        return {"index": self.index, "name": self.name,
                "pass": self.passed, "data": self.data}


@dataclass
class ReplayReport:
    domain: str
    k: int
    c: float
    n: int
    links: list
    chain_constant: float | None

    def link(self, index):
        return self.links[index - 1]

    def all_passed(self, indices):
        return all(self.link(i).passed for i in indices)

    def to_json(self):
        return {
            "domain": self.domain, "k": self.k, "c": self.c, "n": self.n,
            "links": [ln.to_json() for ln in self.links],
            "chain_constant": self.chain_constant,
        }


def replay_universal_proof(polygon, k, c, fem_levels=None,
                           resolution=DEFAULT_GRID_RESOLUTION, jobs=4):
    """Execute the spectral-gap argument as a pipeline, recording each link.

    1. lam_{k+1} of the domain by FEM.
    2. The separation scale R = c n^2 / sqrt(lam_{k+1}).
    3. A maximal R-separated net (greedy, started at the centroid); the
       cardinality condition is that at most k centers fit.
    4. Voronoi cells of the net with per-cell diameter <= 2R.
    5. Per-cell first-eigenvalue lower bound lam_1(cell) >= pi^2/(2R)^2.
    6. Domain monotonicity lam_k(domain) >= min_cell lam_1(cell).
    7. The resulting chain constant lam_{k+1}/(n^4 lam_k).

    Every link is recorded pass/fail with its numbers; a cardinality
    violation in link 3 is reported, not fatal.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if c <= 0:
        raise PreconditionError("c must be positive")
    n = 2
    links = []

    def run(index, name, fn):
        try:
            return fn()
        except NeumannLabError as exc:
            raise ReplayError(str(exc), index) from exc

    # 1: parent spectrum up to lam_{k+1}
    parent = run(1, "parent_spectrum",
                 lambda: neumann_spectrum(polygon, k + 1, fem_levels))
    lam_next = parent.lam(k + 1)
    links.append(ReplayLink(1, "parent_spectrum", True, {
        "lambda_k1": lam_next, "lambda_k": parent.lam(k),
        "vertex_count": parent.vertex_count,
        "error_proxy": parent.error_proxy,
    }))

    # 2: separation scale
    big_r = c * n ** 2 / math.sqrt(lam_next)
    links.append(ReplayLink(2, "separation_scale", True,
                            {"R": big_r, "c": c}))

    # 3: maximal R-net; cardinality condition l <= k-1
    net = run(3, "maximal_net",
              lambda: greedy_maximal_net(polygon, big_r, polygon.centroid,
                                         resolution))
    l = len(net) - 1
    links.append(ReplayLink(3, "net_cardinality", bool(l <= k - 1), {
        "centers": len(net), "l": l, "k": k,
        "covering_radius": net.covering_radius,
        "min_separation": net.min_pairwise_distance() if len(net) > 1 else None,
    }))

    # 4: Voronoi cells with diameter <= 2R
    part = run(4, "voronoi_cells",
               lambda: voronoi_partition(polygon, net.centers))
    diams = [cell.diameter for cell in part.cells]
    diam_ok = all(d <= 2.0 * big_r * (1.0 + FLOAT_SLACK) for d in diams)
    links.append(ReplayLink(4, "cell_diameters", bool(diam_ok), {
        "cell_diameters": diams, "limit": 2.0 * big_r,
    }))

    # 5: per-cell lower bound lam_1(cell) >= pi^2/(2R)^2
    cell_levels = fem_levels

    def cell_spectrum(cell):
        lv = default_levels(cell) if cell_levels is None else cell_levels
        return neumann_spectrum(cell, 1, lv)

    def solve_cells():
        with ThreadPoolExecutor(max_workers=min(jobs, len(part.cells))) as pool:
            return list(pool.map(cell_spectrum, part.cells))

    cell_specs = run(5, "cell_spectra", solve_cells)
    floor = math.pi ** 2 / (2.0 * big_r) ** 2
    cell_checks = []
    for spec in cell_specs:
        margin = 1.0 - 2.0 * _tol(spec) - FLOAT_SLACK
        cell_checks.append(bool(spec.lam(1) >= floor * margin))
    links.append(ReplayLink(5, "cell_payne_weinberger", all(cell_checks), {
        "cell_lambda1": [s.lam(1) for s in cell_specs],
        "floor": floor, "per_cell_pass": cell_checks,
    }))

    # 6: domain monotonicity against the parent lam_k
    min_cell = min(s.lam(1) for s in cell_specs)
    tol = _tol(parent) + max(_tol(s) for s in cell_specs)
    lam_k = parent.lam(k)
    mono_ok = lam_k >= min_cell * (1.0 - 2.0 * tol - FLOAT_SLACK)
    links.append(ReplayLink(6, "domain_monotonicity", bool(mono_ok), {
        "lambda_k": lam_k, "min_cell_lambda1": min_cell, "tolerance": tol,
    }))

    # 7: closing the chain
    chain = lam_next / (n ** 4 * lam_k)
    links.append(ReplayLink(7, "chain_constant", None, {
        "chain_constant": chain, "gap_ratio": lam_next / lam_k,
    }))

    return ReplayReport(domain=parent.domain, k=k, c=c, n=n,
                        links=links, chain_constant=chain)
