"""Square-lattice layouts for multi-control gates.

The target sits at the origin of a square array with spacing d; the k
control atoms occupy the k nearest lattice sites.  Controls are indexed in
excitation order: ascending distance from the target, ties broken by polar
angle counterclockwise from the +x axis.  All separations derive from
integer site coordinates, so every pair distance is d*sqrt(m) for some
integer m >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LatticeGeometry:
    """Target at ``target_site`` (lattice units), controls in excitation order."""

    d: float  # lattice spacing, m
    k: int
    target_site: tuple[int, int]
    control_sites: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not (self.d > 0.0):
            raise ValueError("lattice spacing d must be positive")
        if self.k != len(self.control_sites):
            raise ValueError("k must match the number of control sites")
        if self.k < 1:
            raise ValueError("layout needs at least one control site")
        if self.target_site in self.control_sites:
            raise ValueError("target site collides with a control site")


def _angle(x: int, y: int) -> float:
    a = math.atan2(y, x)
    return a if a >= 0.0 else a + 2.0 * math.pi


def build_layout(d: float, k: int) -> LatticeGeometry:
    """Layout with the k nearest sites to the origin as controls.

    Sites are ordered by (squared radius, polar angle); the enumeration is
    exhaustive over a square window grown until it certainly contains the
    k nearest sites, so the result is deterministic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    half = 2
    while (2 * half + 1) ** 2 - 1 < 2 * k + 8:
        half += 1
    # A site inside the inscribed circle of the window beats every site
    # outside the window, so growing until we hold k sites with r <= half
    # guarantees correctness of the first k entries.
    while True:
        sites = [
            (x, y)
            for x in range(-half, half + 1)
            for y in range(-half, half + 1)
            if (x, y) != (0, 0)
        ]
        inside = sum(1 for (x, y) in sites if x * x + y * y <= half * half)
        if inside >= k:
            break
        half += 1
    sites.sort(key=lambda s: (s[0] ** 2 + s[1] ** 2, _angle(*s)))
    return LatticeGeometry(d=d, k=k, target_site=(0, 0), control_sites=tuple(sites[:k]))


@dataclass(frozen=True)
class PairSets:
    """Separations used by the lattice-averaged budgets, meters.

    control_target[i] is the distance of control i (excitation order) from
    the target.  control_control_ordered holds (i, j, separation) for every
    pair with i earlier than j in excitation order; control_control_all is
    the same k(k-1)/2 separations without indices.
    """

    control_target: tuple[float, ...]
    control_control_ordered: tuple[tuple[int, int, float], ...]
    control_control_all: tuple[float, ...]


def pair_sets(geom: LatticeGeometry) -> PairSets:
    tx, ty = geom.target_site
    ct = tuple(
        geom.d * math.hypot(x - tx, y - ty) for (x, y) in geom.control_sites
    )
    ordered = []
    for i in range(geom.k):
        xi, yi = geom.control_sites[i]
        for j in range(i + 1, geom.k):
            xj, yj = geom.control_sites[j]
            ordered.append((i, j, geom.d * math.hypot(xi - xj, yi - yj)))
    return PairSets(
        control_target=ct,
        control_control_ordered=tuple(ordered),
        control_control_all=tuple(sep for (_, _, sep) in ordered),
    )
