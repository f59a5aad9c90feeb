"""Closed-form Neumann spectra of axis-aligned boxes in any dimension.

Separation of variables gives eigenvalues sum_i pi^2 p_i^2 / a_i^2 over
nonnegative integer multi-indices p, with product-cosine eigenfunctions.
The k smallest values are extracted exactly by best-first enumeration,
which needs no dimension-dependent cutoff heuristic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .fem import Spectrum


@dataclass(frozen=True)
class Box:
    """An n-dimensional axis-aligned box given by its side lengths."""

    side_lengths: tuple

    def __post_init__(self):
        sides = tuple(float(s) for s in self.side_lengths)
        object.__setattr__(self, "side_lengths", sides)
        if len(sides) < 1:
            raise PreconditionError("a box needs at least one side")
        if any((not math.isfinite(s)) or s <= 0 for s in sides):
            raise PreconditionError("all side lengths must be positive and finite")

    @property
    def n(self):
        return len(self.side_lengths)

    @property
    def diameter(self):
        return math.sqrt(sum(s * s for s in self.side_lengths))

    @property
    def volume(self):
        return math.prod(self.side_lengths)

    def __repr__(self):
        return f"Box({list(self.side_lengths)})"


def mode_value(multi_index, side_lengths):
    """Eigenvalue of one cosine mode: pi^2 * sum (p_i / a_i)^2.

    Uses fsum so the result does not depend on coordinate order; permuting
    the sides permutes the modes but leaves each value bit-identical.
    """
    return math.pi ** 2 * math.fsum(
        (p / a) ** 2 for p, a in zip(multi_index, side_lengths)
    )


def box_spectrum(box, m):
    """The m+1 smallest eigenvalues of a box, with multiplicity.

    Lazy best-first enumeration: a heap of (value, multi-index) seeded at
    the zero mode, expanding each popped index by +1 in every coordinate.
    At most O(m*n) states are ever materialized, and equal eigenvalues pop
    in lexicographic multi-index order.
    """
    if not isinstance(box, Box):
        box = Box(tuple(box))
    if m < 1:
        raise PreconditionError("m must be >= 1")
    sides = box.side_lengths
    n = box.n
    zero = (0,) * n
    heap = [(0.0, zero)]
    visited = {zero}
    values = []
    while len(values) < m + 1:
        val, idx = heapq.heappop(heap)
        values.append(val)
        for i in range(n):
            nxt = idx[:i] + (idx[i] + 1,) + idx[i + 1:]
            if nxt not in visited:
                visited.add(nxt)
                heapq.heappush(heap, (mode_value(nxt, sides), nxt))
    return Spectrum(
        np.asarray(values), n=n,
        domain=f"box{list(sides)}", vertex_count=None,
        levels=None, error_proxy=0.0,
    )


def box_diameter_volume(box):
    """Diameter (space diagonal) and volume of a box."""
    if not isinstance(box, Box):
        box = Box(tuple(box))
    return box.diameter, box.volume
