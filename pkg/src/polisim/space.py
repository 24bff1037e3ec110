"""Simulation square, regional partitions, point-in-region lookup, distance.

The map is the square [-10, 10] x [-10, 10]. Three administrative designs
partition it:

* 1 region: code 0 covers the whole square.
* 4 regions: quadrants split at x=0, y=0 - 0=NW, 1=NE, 2=SW, 3=SE.
* 7 regions: codes 0-2 as in the 4-region design; the SE quadrant is split at
  its midpoint (5, -5) into codes 3 (NW sub-quadrant), 4 (NE), 5 (SW), 6 (SE).

Rectangles are half-open on their max edges, except where the max edge is the
outer square boundary, which is closed; min edges are inclusive. This makes
region membership a true partition (every interior border belongs to exactly
one side). The quadrant-to-code labelling is an arbitrary fixed convention;
the model is symmetric at initialization so only code identities depend on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

XY_MIN = -10.0
XY_MAX = 10.0


@dataclass(frozen=True)
class RegionGeometry:
    region_id: int
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    @property
    def area(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)


def build_partition(num_regions: int) -> list[RegionGeometry]:
    """Region rectangles for a design; rejects counts other than 1, 4, 7."""
    if num_regions == 1:
        rects = [(XY_MIN, XY_MAX, XY_MIN, XY_MAX)]
    elif num_regions == 4:
        rects = [
            (XY_MIN, 0.0, 0.0, XY_MAX),   # 0 NW
            (0.0, XY_MAX, 0.0, XY_MAX),   # 1 NE
            (XY_MIN, 0.0, XY_MIN, 0.0),   # 2 SW
            (0.0, XY_MAX, XY_MIN, 0.0),   # 3 SE
        ]
    elif num_regions == 7:
        rects = [
            (XY_MIN, 0.0, 0.0, XY_MAX),   # 0 NW
            (0.0, XY_MAX, 0.0, XY_MAX),   # 1 NE
            (XY_MIN, 0.0, XY_MIN, 0.0),   # 2 SW
            (0.0, 5.0, -5.0, 0.0),        # 3 SE quadrant, NW sub-quadrant
            (5.0, XY_MAX, -5.0, 0.0),     # 4 NE sub-quadrant
            (0.0, 5.0, XY_MIN, -5.0),     # 5 SW sub-quadrant
            (5.0, XY_MAX, XY_MIN, -5.0),  # 6 SE sub-quadrant
        ]
    else:
        raise ValueError(f"num_regions must be 1, 4 or 7, got {num_regions}")
    return [RegionGeometry(i, *rect) for i, rect in enumerate(rects)]


def _inside_axis(v: float, lo: float, hi: float) -> bool:
    # min edge inclusive; max edge exclusive unless it is the outer boundary
    return v >= lo and (v < hi or (v == hi == XY_MAX))


def locate(partition: list[RegionGeometry], x: float, y: float) -> int:
    """Region code containing (x, y); rejects points outside the square."""
    if not (XY_MIN <= x <= XY_MAX and XY_MIN <= y <= XY_MAX):
        raise ValueError(f"point ({x}, {y}) outside the simulation square")
    for geom in partition:
        if _inside_axis(x, geom.x_min, geom.x_max) and _inside_axis(y, geom.y_min, geom.y_max):
            return geom.region_id
    raise AssertionError("partition does not cover the square")  # unreachable


def locate_many(partition: list[RegionGeometry], xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorized :func:`locate` over coordinate arrays."""
    if np.any((xs < XY_MIN) | (xs > XY_MAX) | (ys < XY_MIN) | (ys > XY_MAX)):
        raise ValueError("point outside the simulation square")
    out = np.full(xs.shape, -1, dtype=np.int32)
    for geom in partition:
        x_ok = (xs >= geom.x_min) & ((xs < geom.x_max) | ((xs == geom.x_max) & (geom.x_max == XY_MAX)))
        y_ok = (ys >= geom.y_min) & ((ys < geom.y_max) | ((ys == geom.y_max) & (geom.y_max == XY_MAX)))
        hit = x_ok & y_ok
        out[hit & (out < 0)] = geom.region_id
    if np.any(out < 0):
        raise AssertionError("partition does not cover the square")
    return out


def membership_counts(partition: list[RegionGeometry], xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Number of regions claiming each point (partition property check)."""
    counts = np.zeros(xs.shape, dtype=np.int32)
    for geom in partition:
        x_ok = (xs >= geom.x_min) & ((xs < geom.x_max) | ((xs == geom.x_max) & (geom.x_max == XY_MAX)))
        y_ok = (ys >= geom.y_min) & ((ys < geom.y_max) | ((ys == geom.y_max) & (geom.y_max == XY_MAX)))
        counts += (x_ok & y_ok).astype(np.int32)
    return counts


def distance(ax: float, ay: float, bx: float, by: float) -> float:
    """Euclidean distance; the same sqrt(dx*dx + dy*dy) form used in kernels."""
    dx = ax - bx
    dy = ay - by
    return math.sqrt(dx * dx + dy * dy)
