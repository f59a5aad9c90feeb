"""Config-driven experiment runner: domains, sweeps, and report emission.

A sweep evaluates every applicable inequality on every (domain, k) pair
from a single JSON config.  Spectra come from the FEM pipeline for
polygons and from the closed form for boxes.  Results land in a CSV
(17 significant digits, written atomically) and a JSON report with
per-inequality aggregates; identical configs produce byte-identical
output, regardless of the worker count.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import metadata, resources

import numpy as np

from .boxspec import Box, box_diameter_volume, box_spectrum
from .bounds import (bishop_gromov_check, borel_family_bound, cgy_bound,
                     kroger_ratio, partition_lower_bound_check,
                     payne_weinberger_bound, ratio_table,
                     universal_ratio_check)
from .errors import ConfigError, NeumannLabError, SolverError
from .fem import neumann_spectrum
from .geometry import ConvexPolygon
from .partition import (farthest_point_sequence, net_ball_family,
                        voronoi_partition)

CSV_COLUMNS = ("inequality", "domain_id", "n", "k",
               "lhs", "rhs_core", "implied_constant", "pass")

SCHEMA_VERSION = 1


@dataclass
class ExperimentConfig:
    seed: int
    k_values: list
    domains: list
    mc_samples: int = 20000
    fem_levels: int | None = None
    out_dir: str | None = None
    schema: int = SCHEMA_VERSION

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise ConfigError(f"unsupported config schema {doc.get('schema')!r}")
        try:
            cfg = cls(
                seed=int(doc["seed"]),
                k_values=list(doc["k_values"]),
                domains=list(doc["domains"]),
                mc_samples=int(doc.get("mc_samples", 20000)),
                fem_levels=doc.get("fem_levels"),
                out_dir=doc.get("out_dir"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def validate(self):
        if not self.domains:
            raise ConfigError("config needs at least one domain")
        if not self.k_values or any(int(k) < 1 for k in self.k_values):
            raise ConfigError("k_values must be a non-empty list of k >= 1")
        self.k_values = sorted({int(k) for k in self.k_values})
        if self.mc_samples < 10_000:
            raise ConfigError("mc_samples must be at least 10^4")
        if self.fem_levels is not None and int(self.fem_levels) < 0:
            raise ConfigError("fem_levels must be >= 0 or null")
        seen = set()
        for i, desc in enumerate(self.domains):
            if not isinstance(desc, dict) or "type" not in desc:
                raise ConfigError(f"domain {i} must be an object with a 'type'")
            did = desc.get("id", f"domain{i}")
            if did in seen:
                raise ConfigError(f"duplicate domain id {did!r}")
            seen.add(did)
            if desc["type"] == "random_hull" and "seed" not in desc:
                raise ConfigError(
                    f"domain {did!r}: random_hull descriptors need an explicit seed"
                )

    def canonical_json(self):
        doc = {
            "schema": self.schema, "seed": self.seed,
            "k_values": self.k_values, "mc_samples": self.mc_samples,
            "fem_levels": self.fem_levels, "domains": self.domains,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def config_hash(self):
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


def default_config_path():
    """Path of the bundled default sweep config."""
    return resources.files("neumannlab").joinpath("configs/default_sweep.json")


def load_default_config():
    return ExperimentConfig.from_json(default_config_path().read_text())


# ---------------------------------------------------------------------------
# Domain generation
# ---------------------------------------------------------------------------

def random_convex_hull(num_points, seed, radius=1.0):
    """Convex hull of points drawn uniformly in a disk; ccw vertices."""
    from scipy.spatial import ConvexHull

    rng = np.random.default_rng(seed)
    while True:
        rad = radius * np.sqrt(rng.random(num_points))
        ang = 2.0 * np.pi * rng.random(num_points)
        pts = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
        hull = ConvexHull(pts)
        if len(hull.vertices) >= 3:
            return ConvexPolygon(pts[hull.vertices])


def generate_domain(descriptor, seed=None):
    """Build a ConvexPolygon or Box from a generator descriptor.

    Deterministic: random generators take their seed from the descriptor,
    falling back to the ``seed`` argument.
    """
    kind = descriptor.get("type")
    if kind == "rectangle":
        aspect = float(descriptor.get("aspect", 1.0))
        if aspect <= 0:
            raise ConfigError("rectangle aspect must be positive")
        return ConvexPolygon.rectangle(1.0, aspect)
    if kind == "regular_polygon":
        return ConvexPolygon.regular(int(descriptor["sides"]),
                                     float(descriptor.get("circumradius", 1.0)))
    if kind == "polygon":
        return ConvexPolygon(descriptor["vertices"])
    if kind == "random_hull":
        hull_seed = descriptor.get("seed", seed)
        if hull_seed is None:
            raise ConfigError("random_hull needs a seed")
        return random_convex_hull(int(descriptor.get("points", 20)),
                                  int(hull_seed),
                                  float(descriptor.get("radius", 1.0)))
    if kind == "box":
        return Box(tuple(float(s) for s in descriptor["sides"]))
    raise ConfigError(f"unknown domain type {descriptor.get('type')!r}")


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepReport:
    rows: list
    aggregates: dict
    provenance: dict
    errors: list = field(default_factory=list)

    @property
    def proven_failures(self):
        return [r for r in self.rows if r["pass"] is False]

    @property
    def had_solver_error(self):
        return any(e.get("kind") == "solver" for e in self.errors)

    def to_json(self):
        return {"rows": self.rows, "aggregates": self.aggregates,
                "provenance": self.provenance, "errors": self.errors}


def _row(report, domain_id, n, k):
    return {
        "inequality": report.name, "domain_id": domain_id, "n": n, "k": k,
        "lhs": report.lhs, "rhs_core": report.rhs_core,
        "implied_constant": report.implied_constant, "pass": report.passed,
        "extras": report.extras,
    }


def _error_row(name, domain_id, n, k, exc):
    kind = "solver" if isinstance(exc, SolverError) else "component"
    return ({"inequality": name, "domain_id": domain_id, "n": n, "k": k,
             "lhs": None, "rhs_core": None, "implied_constant": None,
             "pass": "error", "extras": {}},
            {"domain_id": domain_id, "inequality": name, "k": k,
             "kind": kind, "message": str(exc)})


def _domain_ks(config, descriptor):
    k_max = descriptor.get("k_max")
    ks = config.k_values
    if k_max is not None:
        ks = [k for k in ks if k <= int(k_max)]
    return ks


def _planned_rows(config, descriptor):
    """The (inequality, k) pairs one domain will emit, in output order."""
    ks = _domain_ks(config, descriptor)
    if not ks:
        return []
    plan = [("payne_weinberger", 1)]
    for k in ks:
        plan += [("kroger", k), ("universal_ratio", k), ("liu_growth", k),
                 ("weyl_lower", k), ("gap_k_power", k)]
        if k >= 2:
            plan.append(("gap_nlogk", k))
    if descriptor["type"] != "box":
        for k in ks:
            plan += [("cgy", k), ("borel_family_full", k)]
            if k >= 2:
                plan.append(("borel_family_reduced", k))
        plan += [("bishop_gromov", 0), ("partition_lower_bound", 2)]
    return plan


def expected_row_count(config):
    """Planned row count: the sum over (domain, k) of applicable evaluators."""
    return sum(len(_planned_rows(config, desc)) for desc in config.domains)


def _domain_rows(config, index):
    """All sweep rows for one domain.  Pure in (config, index)."""
    descriptor = config.domains[index]
    domain_id = descriptor.get("id", f"domain{index}")
    ks = _domain_ks(config, descriptor)
    if not ks:
        return [], []
    rows, errors = [], []

    def attempt(name, k, n, fn):
        try:
            rows.append(_row(fn(), domain_id, n, k))
        except NeumannLabError as exc:
            row, err = _error_row(name, domain_id, n, k, exc)
            rows.append(row)
            errors.append(err)

    m = max(ks) + 1
    try:
        domain = generate_domain(descriptor)
        if isinstance(domain, Box):
            n = domain.n
            spectrum = box_spectrum(domain, m)
            diam, _vol = box_diameter_volume(domain)
            polygon = None
        else:
            n = 2
            polygon = domain
            spectrum = neumann_spectrum(polygon, m, config.fem_levels)
            diam = polygon.diameter
    except NeumannLabError as exc:
        # the domain itself is unusable: every planned row becomes an error
        dim = len(descriptor.get("sides", [])) or 2
        for name, k in _planned_rows(config, descriptor):
            row, err = _error_row(name, domain_id, dim, k, exc)
            rows.append(row)
            errors.append(err)
        return rows, errors

    attempt("payne_weinberger", 1, n,
            lambda: payne_weinberger_bound(spectrum, diam))

    table = {(r.name, r.inputs["k"]): r for r in ratio_table(spectrum, max(ks))}
    for k in ks:
        attempt("kroger", k, n, lambda k=k: kroger_ratio(spectrum, diam, k))
        attempt("universal_ratio", k, n,
                lambda k=k: universal_ratio_check(spectrum, k))
        for name in ("liu_growth", "weyl_lower", "gap_k_power", "gap_nlogk"):
            report = table.get((name, k))
            if report is not None:
                rows.append(_row(report, domain_id, n, k))

    if polygon is not None:
        vol = polygon.area
        for k in ks:
            names = ["cgy", "borel_family_full"]
            if k >= 2:
                names.append("borel_family_reduced")
            try:
                fam = net_ball_family(polygon, k + 1)
            except NeumannLabError as exc:
                for name in names:
                    row, err = _error_row(name, domain_id, n, k, exc)
                    rows.append(row)
                    errors.append(err)
                continue
            attempt("cgy", k, n,
                    lambda k=k, fam=fam: cgy_bound(spectrum.lam(k), fam, vol, k))
            attempt("borel_family_full", k, n,
                    lambda k=k, fam=fam: borel_family_bound(
                        spectrum.lam(k), fam, vol, k, n, "full"))
            if k >= 2:
                attempt("borel_family_reduced", k, n,
                        lambda k=k, fam=fam: borel_family_bound(
                            spectrum.lam(k), fam[:k], vol, k, n, "reduced"))

        rng = np.random.default_rng(np.random.SeedSequence(
            entropy=config.seed, spawn_key=(index,)))
        lo, hi = polygon.bounding_box
        while True:
            x = lo + (hi - lo) * rng.random(2)
            if polygon.contains(x):
                break
        r_small = diam * (0.02 + 0.2 * rng.random())
        r_big = r_small * (1.2 + 1.8 * rng.random())
        bg_seed = int(rng.integers(0, 2 ** 31))
        attempt("bishop_gromov", 0, n,
                lambda: bishop_gromov_check(polygon, x, r_small, r_big,
                                            config.mc_samples, bg_seed))

        def partition_check():
            centers, _ = farthest_point_sequence(polygon, 2)
            part = voronoi_partition(polygon, centers)
            cell_specs = [neumann_spectrum(c, 1, config.fem_levels)
                          for c in part.cells]
            return partition_lower_bound_check(spectrum, cell_specs,
                                               len(part) - 1)
        attempt("partition_lower_bound", 2, n, partition_check)

    return rows, errors


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def rows_to_csv(rows):
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_format_cell(row[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def _atomic_write(path, text):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _aggregate(rows):
    agg = {}
    for row in rows:
        if row["implied_constant"] is None:
            continue
        entry = agg.setdefault(row["inequality"], {
            "count": 0, "min": math.inf, "max": -math.inf, "mean": 0.0,
            "pass_true": 0, "pass_false": 0,
        })
        c = row["implied_constant"]
        entry["count"] += 1
        entry["min"] = min(entry["min"], c)
        entry["max"] = max(entry["max"], c)
        entry["mean"] += c
        if row["pass"] is True:
            entry["pass_true"] += 1
        elif row["pass"] is False:
            entry["pass_false"] += 1
    for entry in agg.values():
        entry["mean"] /= entry["count"]
    return agg


def run_sweep(config, out_dir=None, jobs=1):
    """Evaluate the whole config; write sweep.csv and sweep.json.

    Per-row component errors are recorded and the sweep continues; rows
    are merged in config order so output is identical for any ``jobs``.
    """
    if isinstance(config, (str, os.PathLike)):
        config = ExperimentConfig.load(config)
    config.validate()
    out_dir = out_dir or config.out_dir

    indices = range(len(config.domains))
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_domain_rows, [config] * len(config.domains),
                                    indices))
    else:
        results = [_domain_rows(config, i) for i in indices]

    rows, errors = [], []
    for r, e in results:
        rows.extend(r)
        errors.extend(e)

    gap_max = None
    for row in rows:
        if row["inequality"] == "universal_ratio" and row["extras"]:
            g = row["extras"].get("gap_ratio")
            if g is not None and (gap_max is None or g > gap_max):
                gap_max = g

    try:
        version = metadata.version("neumannlab")
    except metadata.PackageNotFoundError:
        version = "unknown"

    report = SweepReport(
        rows=rows,
        aggregates=_aggregate(rows),
        provenance={"config_hash": config.config_hash(), "version": version,
                    "max_gap_ratio": gap_max},
        errors=errors,
    )

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        _atomic_write(os.path.join(out_dir, "sweep.csv"), rows_to_csv(rows))
        doc = report.to_json()
        for row in doc["rows"]:
            row.pop("extras", None)
        _atomic_write(os.path.join(out_dir, "sweep.json"),
                      json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return report
