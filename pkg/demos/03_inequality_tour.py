#!/usr/bin/env python3
"""A tour of the eigenvalue inequalities and their empirical constants.

Every evaluator normalizes its inequality to lhs <= c * rhs and reports
the smallest admissible c on the given instance.  Proven lower bounds
also carry a pass flag; upper bounds with unspecified universal
constants only report.
"""

import math

from neumannlab import (Box, ConvexPolygon, SubsetRegion,
                        bishop_gromov_check, borel_family_bound,
                        box_diameter_volume, box_spectrum, cgy_bound,
                        kroger_ratio, neumann_spectrum,
                        payne_weinberger_bound, ratio_table,
                        separated_net_constant, universal_ratio_check)

PI2 = math.pi ** 2
square = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
square_spec = box_spectrum(Box((1.0, 1.0)), 8)

print("=" * 66)
print("1. First-eigenvalue lower bound (diameter controls lambda_1)")
print("=" * 66)
for eps in (1.0, 0.5, 0.2, 0.05):
    box = Box((1.0, eps))
    diam, _ = box_diameter_volume(box)
    r = payne_weinberger_bound(box_spectrum(box, 1), diam)
    print(f"  rectangle 1 x {eps:<5}: pi^2/diam^2 = {r.lhs:9.4f} "
          f"<= lambda_1 = {r.rhs_core:9.4f}  ratio {r.implied_constant:.4f}")
print("  (the bound sharpens to equality as the rectangle degenerates)")

print()
print("=" * 66)
print("2. Diameter-normalized growth of lambda_k")
print("=" * 66)
for k in (1, 5, 25):
    r = kroger_ratio(box_spectrum(Box((1.0,)), 30), 1.0, k)
    print(f"  interval, k={k:<3} constant = {r.implied_constant:.6f} "
          f"(pi^2 = {PI2:.6f} exactly, every k)")
r = kroger_ratio(square_spec, math.sqrt(2), 1)
print(f"  unit square, k=1: constant = {r.implied_constant:.4f}")

print()
print("=" * 66)
print("3. Separated-subset upper bounds (two corner squares, k=1)")
print("=" * 66)
corners = [
    SubsetRegion.from_polygon(square, ConvexPolygon.rectangle(0.25, 0.25)),
    SubsetRegion.from_polygon(
        square, ConvexPolygon.rectangle(0.25, 0.25, origin=(0.75, 0.75))),
]
plain = cgy_bound(PI2, corners, 1.0, 1)
logged = borel_family_bound(PI2, corners, 1.0, 1, 2, "full")
print(f"  without dimension factor: rhs = {plain.rhs_core:9.4f}  "
      f"constant = {plain.implied_constant:.4f}")
print(f"  with n^2/log^2(k+1) gain: rhs = {logged.rhs_core:9.4f}  "
      f"constant = {logged.implied_constant:.4f}")
print(f"  rhs ratio = {logged.rhs_core / plain.rhs_core:.6f} "
      f"= n^2/log(k+1)^2 = {4 / math.log(2) ** 2:.6f}")

print()
print("=" * 66)
print("4. Separated points force eigenvalue decay")
print("=" * 66)
r = separated_net_constant(math.sqrt(2), PI2, 2)
print(f"  two opposite corners of the square: r*sqrt(lambda_1)/n "
      f"= {r.implied_constant:.4f}")

print()
print("=" * 66)
print("5. Concentric clipped-ball volumes (Monte Carlo, 3 sigma)")
print("=" * 66)
rep = bishop_gromov_check(square, (0.0, 0.0), 0.1, 0.2, 50_000, seed=1)
print(f"  corner cone: ratio = {rep.lhs:.4f} >= (r/R)^2 = {rep.rhs_core:.4f} "
      f"(sigma {rep.extras['sigma']:.1e}) pass={rep.passed}")

print()
print("=" * 66)
print("6. Spectral gap through the dimension-quartic envelope")
print("=" * 66)
for sides in [(1.0, 2.0), (1.0, 1.0), (1.0, 1.3, 0.8)]:
    s = box_spectrum(Box(sides), 3)
    r = universal_ratio_check(s, 1)
    print(f"  box {str(list(sides)):<17} lambda_2/lambda_1 = "
          f"{r.extras['gap_ratio']:6.3f}  constant = {r.implied_constant:.4f}")

print()
print("=" * 66)
print("7. Growth diagnostics on an irregular hull (FEM spectrum)")
print("=" * 66)
hull = ConvexPolygon([(0, 0), (1.4, 0.1), (1.9, 0.9), (1.1, 1.6), (0.1, 1.2)])
spec = neumann_spectrum(hull, 7, levels=5)
rows = ratio_table(spec, 6)
print(f"  {'k':>3} {'growth/k^2':>11} {'gap(nlogk)':>11} "
      f"{'weyl floor':>11} {'gap/k^p':>9}")
table = {}
for row in rows:
    table.setdefault(row.inputs["k"], {})[row.name] = row.implied_constant
for k in sorted(table):
    t = table[k]
    logcol = f"{t['gap_nlogk']:11.4f}" if "gap_nlogk" in t else " " * 11
    print(f"  {k:>3} {t['liu_growth']:>11.4f} {logcol} "
          f"{t['weyl_lower']:>11.4f} {t['gap_k_power']:>9.4f}")
