"""Command-line entry points.

Verbs: ``spectrum`` (one domain to Spectrum JSON), ``bound`` (one
evaluator on explicit inputs), ``replay`` (the spectral-gap proof
pipeline), ``sweep`` (a full config).  Exit codes: 0 success, 1 a proven
inequality check failed, 2 usage or config error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import experiments
from .boxspec import Box, box_spectrum
from .bounds import (bishop_gromov_check, borel_family_bound, cgy_bound,
                     kroger_ratio, payne_weinberger_bound, ratio_table,
                     replay_universal_proof, separated_net_constant,
                     universal_ratio_check)
from .errors import ConfigError, NeumannLabError, SolverError
from .fem import neumann_spectrum
from .geometry import ConvexPolygon
from .partition import net_ball_family

EXIT_OK = 0
EXIT_PROVEN_FAIL = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3


def _parse_domain(args):
    if getattr(args, "polygon", None):
        return ConvexPolygon(json.loads(args.polygon))
    if getattr(args, "box", None):
        return Box(tuple(json.loads(args.box)))
    raise ConfigError("give a domain with --polygon or --box")


def _spectrum_for(domain, m, levels):
    if isinstance(domain, Box):
        return box_spectrum(domain, m), domain.diameter
    return neumann_spectrum(domain, m, levels), domain.diameter


def _emit(doc, out):
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if out:
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_spectrum(args):
    domain = _parse_domain(args)
    spectrum, _ = _spectrum_for(domain, args.modes, args.levels)
    _emit(spectrum.to_json(), args.out)
    return EXIT_OK


_FAMILY_EVALUATORS = {"cgy", "borel_family"}


def _cmd_bound(args):
    domain = _parse_domain(args)
    k = args.k
    name = args.name
    if name in _FAMILY_EVALUATORS and isinstance(domain, Box):
        raise ConfigError(f"{name} needs a polygon domain")

    if name == "bishop_gromov":
        if not isinstance(domain, ConvexPolygon):
            raise ConfigError("bishop_gromov needs a polygon domain")
        x = json.loads(args.point) if args.point else list(domain.centroid)
        report = bishop_gromov_check(domain, x, args.radius, args.big_radius,
                                     args.samples, args.seed)
    elif name == "ratio_table":
        spectrum, _ = _spectrum_for(domain, k + 1, args.levels)
        _emit([r.to_json() for r in ratio_table(spectrum, k)], args.out)
        return EXIT_OK
    elif name == "separated_net":
        spectrum, _ = _spectrum_for(domain, k, args.levels)
        report = separated_net_constant(args.radius, spectrum.lam(k),
                                        spectrum.n)
    else:
        spectrum, diam = _spectrum_for(domain, k + 1, args.levels)
        if name == "payne_weinberger":
            report = payne_weinberger_bound(spectrum, diam)
        elif name == "kroger":
            report = kroger_ratio(spectrum, diam, k)
        elif name == "universal_ratio":
            report = universal_ratio_check(spectrum, k)
        elif name == "cgy":
            fam = net_ball_family(domain, k + 1)
            report = cgy_bound(spectrum.lam(k), fam, domain.area, k)
        elif name == "borel_family":
            count = k + 1 if args.variant == "full" else k
            fam = net_ball_family(domain, count)
            report = borel_family_bound(spectrum.lam(k), fam, domain.area,
                                        k, spectrum.n, args.variant)
        else:
            raise ConfigError(f"unknown evaluator {name!r}")

    _emit(report.to_json(), args.out)
    return EXIT_PROVEN_FAIL if report.passed is False else EXIT_OK


def _cmd_replay(args):
    if not args.polygon:
        raise ConfigError("replay needs --polygon")
    polygon = ConvexPolygon(json.loads(args.polygon))
    report = replay_universal_proof(polygon, args.k, args.c, args.levels)
    _emit(report.to_json(), args.out)
    return EXIT_OK


def _cmd_sweep(args):
    if args.config:
        config = experiments.ExperimentConfig.load(args.config)
    else:
        config = experiments.load_default_config()
    if args.seed is not None:
        config.seed = args.seed
    if args.levels is not None:
        config.fem_levels = args.levels
    report = experiments.run_sweep(config, out_dir=args.out, jobs=args.jobs)
    sys.stdout.write(
        f"rows={len(report.rows)} proven_failures={len(report.proven_failures)} "
        f"errors={len(report.errors)}\n"
    )
    if report.proven_failures:
        return EXIT_PROVEN_FAIL
    if report.had_solver_error:
        return EXIT_SOLVER
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="neumannlab",
        description="Neumann eigenvalues of convex domains and the "
                    "inequalities that bound them",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_domain_args(p):
        p.add_argument("--polygon", help="JSON list of [x, y] vertices, ccw")
        p.add_argument("--box", help="JSON list of box side lengths")
        p.add_argument("--levels", type=int, default=None,
                       help="FEM refinement levels (default: auto)")
        p.add_argument("--out", help="output JSON path (default: stdout)")

    p = sub.add_parser("spectrum", help="eigenvalues of one domain")
    add_domain_args(p)
    p.add_argument("-m", "--modes", type=int, default=5,
                   help="number of positive eigenvalues")

    p = sub.add_parser("bound", help="one inequality evaluator")
    add_domain_args(p)
    p.add_argument("--name", required=True,
                   choices=["payne_weinberger", "kroger", "universal_ratio",
                            "cgy", "borel_family", "separated_net",
                            "bishop_gromov", "ratio_table"])
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--variant", choices=["full", "reduced"], default="full")
    p.add_argument("--radius", type=float, default=0.1)
    p.add_argument("--big-radius", type=float, default=0.2)
    p.add_argument("--point", help="JSON [x, y] ball center")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("replay", help="replay the spectral-gap proof pipeline")
    p.add_argument("--polygon", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-c", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--out", help="output JSON path (default: stdout)")

    p = sub.add_parser("sweep", help="run a full experiment config")
    p.add_argument("--config", help="config path (default: bundled config)")
    p.add_argument("--out", help="output directory for sweep.csv/sweep.json")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.add_argument("--levels", type=int, default=None,
                   help="override config fem_levels")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    return parser


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "bound": _cmd_bound,
    "replay": _cmd_replay,
    "sweep": _cmd_sweep,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SolverError as exc:
        sys.stderr.write(f"solver error: {exc}\n")
        return EXIT_SOLVER
    except NeumannLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
