"""Neumann eigenvalues of convex domains and the inequalities that bound them.

A numerical laboratory built on numpy/scipy: exact convex geometry,
separated nets and Voronoi partitions, a P1 finite element eigensolver,
closed-form box spectra, and evaluators that report the empirical
constant behind every inequality they check.
"""

from .boxspec import Box, box_diameter_volume, box_spectrum, mode_value
from .bounds import (BoundReport, ReplayLink, ReplayReport,
                     bishop_gromov_check, borel_family_bound, cgy_bound,
                     kroger_ratio, partition_lower_bound_check,
                     payne_weinberger_bound, ratio_table,
                     replay_universal_proof, separated_net_constant,
                     universal_ratio_check)
from .errors import (ConfigError, ConnectivityError, DegenerateFamilyError,
                     InvalidGeometryError, NeumannLabError, PreconditionError,
                     ReplayError, SolverError)
from .experiments import (ExperimentConfig, SweepReport, generate_domain,
                          load_default_config, random_convex_hull, run_sweep)
from .fem import (Spectrum, assemble, default_levels, neumann_spectrum,
                  solve_smallest)
from .geometry import (ConvexPolygon, SubsetRegion, area,
                       ball_intersection_area, diameter, set_distance)
from .mesh import TriMesh, refine, triangulate
from .partition import (Net, VoronoiPartition, family_separation,
                        farthest_point_sequence, greedy_maximal_net,
                        net_ball_family, voronoi_partition)

__version__ = "0.1.0"

__all__ = [
    "Box", "BoundReport", "ConfigError", "ConnectivityError", "ConvexPolygon",
    "DegenerateFamilyError", "ExperimentConfig", "InvalidGeometryError",
    "Net", "NeumannLabError", "PreconditionError", "ReplayError",
    "ReplayLink", "ReplayReport", "SolverError", "Spectrum", "SubsetRegion",
    "SweepReport", "TriMesh", "VoronoiPartition", "area", "assemble",
    "ball_intersection_area", "bishop_gromov_check", "borel_family_bound",
    "box_diameter_volume", "box_spectrum", "cgy_bound", "default_levels",
    "diameter", "family_separation", "farthest_point_sequence",
    "generate_domain", "greedy_maximal_net", "kroger_ratio",
    "load_default_config", "mode_value", "net_ball_family",
    "neumann_spectrum", "partition_lower_bound_check",
    "payne_weinberger_bound", "random_convex_hull", "ratio_table", "refine",
    "replay_universal_proof", "run_sweep", "separated_net_constant",
    "set_distance", "solve_smallest", "triangulate", "universal_ratio_check",
    "voronoi_partition",
]
