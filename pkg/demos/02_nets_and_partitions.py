#!/usr/bin/env python3
"""Separated nets, Voronoi partitions, and subset families.

The lower-bound machinery rests on two geometric facts: a maximal
r-separated net r-covers the domain, and the Voronoi cells of the net
are convex with diameter at most twice the covering radius.
"""

from neumannlab import (ConvexPolygon, family_separation, greedy_maximal_net,
                        net_ball_family, voronoi_partition)

square = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])

print("=" * 66)
print("1. Farthest-point greedy nets on the unit square")
print("=" * 66)
print(f"{'r':>6} {'centers':>8} {'covering radius':>16} {'min separation':>15}")
for r in (1.2, 1.0, 0.6, 0.35, 0.2):
    net = greedy_maximal_net(square, r, start=(0, 0))
    sep = net.min_pairwise_distance() if len(net) > 1 else float("nan")
    print(f"{r:>6.2f} {len(net):>8} {net.covering_radius:>16.4f} {sep:>15.4f}")
print("(separation never drops below r; covering radius stays below r)")

print()
print("=" * 66)
print("2. Voronoi cells of a net: convex, covering, small diameter")
print("=" * 66)

net = greedy_maximal_net(square, 0.6, start=(0, 0))
part = voronoi_partition(square, net.centers)
area_sum = sum(c.area for c in part.cells)
print(f"net of {len(net)} centers, covering radius {net.covering_radius:.4f}")
print(f"cell areas sum to {area_sum:.15f} (domain area 1)")
print(f"{'cell':>5} {'vertices':>9} {'area':>10} {'diameter':>10} {'<= 2*cov':>9}")
for i, cell in enumerate(part.cells):
    ok = cell.diameter <= 2 * net.covering_radius
    print(f"{i:>5} {cell.num_vertices:>9} {cell.area:>10.4f} "
          f"{cell.diameter:>10.4f} {str(ok):>9}")

print()
print("=" * 66)
print("3. Separated families of clipped balls")
print("=" * 66)

for count in (2, 4, 6):
    family = net_ball_family(square, count)
    sep = family_separation(family)
    print(f"{count} balls of radius {family[0].radius:.4f}: "
          f"separation {sep:.4f} (centers kept 3 radii apart)")
