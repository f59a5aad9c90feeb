#!/usr/bin/env python3
"""Running a config-driven sweep and reading its aggregates.

The same machinery backs the `neumannlab sweep` CLI verb; identical
configs produce byte-identical CSV output.
"""

import tempfile
from pathlib import Path

from neumannlab import ExperimentConfig, run_sweep

config = ExperimentConfig.from_json({
    "schema": 1,
    "seed": 1234,
    "mc_samples": 20000,
    "fem_levels": 3,
    "k_values": [1, 2, 3, 4],
    "domains": [
        {"id": "square", "type": "polygon",
         "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
        {"id": "hull", "type": "random_hull", "points": 18, "seed": 5},
        {"id": "box4", "type": "box", "sides": [1.0, 1.0, 2.0, 3.0]},
    ],
})

out = Path(tempfile.mkdtemp(prefix="neumannlab_sweep_"))
report = run_sweep(config, out_dir=str(out))

print(f"rows: {len(report.rows)}   errors: {len(report.errors)}   "
      f"proven failures: {len(report.proven_failures)}")
print(f"output: {out / 'sweep.csv'}")
print()
print(f"{'inequality':<24} {'rows':>5} {'min c':>10} {'max c':>10} {'pass':>5}")
for name, agg in sorted(report.aggregates.items()):
    print(f"{name:<24} {agg['count']:>5} {agg['min']:>10.4f} "
          f"{agg['max']:>10.4f} {agg['pass_true']:>5}")
print()
print(f"largest spectral gap ratio seen: "
      f"{report.provenance['max_gap_ratio']:.4f}")
print()
print("first lines of the CSV:")
for line in (out / "sweep.csv").read_text().splitlines()[:5]:
    print(" ", line)
