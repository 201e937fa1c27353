"""Visibility graphs, blocking relations, and projection to the plane.

Two points of a configuration see each other when no third point lies
strictly inside the segment joining them.  The heavy loops run on
integer-scaled coordinates (betweenness is invariant under uniform
scaling), which keeps the cubic pair-times-candidate scan fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .geometry import Point, PointConfig

PROJECTION_ATTEMPTS = 64
_PROJECTION_DENOMINATOR = 2**31


class ProjectionError(RuntimeError):
    """Raised when no occlusion-free projection is found within budget."""


@dataclass(frozen=True)
class VisibilityGraph:
    """Symmetric, irreflexive adjacency over point indices."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n}")

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return (min(i, j), max(i, j)) in self.edges

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)


def _int_rows(config: PointConfig) -> list[tuple[int, ...]]:
    """Integer coordinates obtained by clearing all denominators at once."""
    scale = lcm(*(c.denominator for p in config for c in p.coords)) if len(config) else 1
    return [tuple(int(c * scale) for c in p.coords) for p in config]


def _between_int(x: tuple[int, ...], v: tuple[int, ...], w: tuple[int, ...]) -> bool:
    """Strict betweenness on integer coordinate tuples (v != w assumed)."""
    t_num = None
    t_den = None
    for xi, vi, wi in zip(x, v, w):
        dvw = wi - vi
        dvx = xi - vi
        if dvw == 0:
            if dvx != 0:
                return False
        elif t_num is None:
            t_num, t_den = dvx, dvw
        elif dvx * t_den != t_num * dvw:
            return False
    if t_num is None:
        return False
    if t_den < 0:
        t_num, t_den = -t_num, -t_den
    return 0 < t_num < t_den


def _blocked_matrix(rows: list[tuple[int, ...]]) -> list[list[bool]]:
    """blocked[i][j] = some row strictly between rows i and j."""
    n = len(rows)
    blocked = [[False] * n for _ in range(n)]
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            rj = rows[j]
            for k in range(n):
                if k != i and k != j and _between_int(rows[k], ri, rj):
                    blocked[i][j] = blocked[j][i] = True
                    break
    return blocked


def blocked_pairs(config: PointConfig) -> list[list[bool]]:
    """Symmetric matrix of the blocking relation over point indices."""
    return _blocked_matrix(_int_rows(config))


def blockers(config: PointConfig, i: int, j: int) -> set[int]:
    """Indices of every point strictly between points i and j."""
    n = len(config)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("point index out of range")
    if i == j:
        raise ValueError("blockers of a point with itself are undefined")
    rows = _int_rows(config)
    return {k for k in range(n) if k != i and k != j and _between_int(rows[k], rows[i], rows[j])}


def visibility_graph(config: PointConfig) -> VisibilityGraph:
    """Graph on point indices with an edge for every mutually visible pair."""
    if len(config) < 1:
        raise ValueError("need at least one point")
    blocked = blocked_pairs(config)
    n = len(config)
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n) if not blocked[i][j])
    return VisibilityGraph(n, edges)


def is_blocking_set(P: PointConfig, B: PointConfig) -> bool:
    """True iff every pair of P is blocked by some point of P union B."""
    if P.dim != B.dim:
        raise ValueError("P and B must share one dimension")
    if set(P.points) & set(B.points):
        raise ValueError("P and B must be disjoint")
    union = PointConfig(P.dim, P.points + B.points)
    blocked = blocked_pairs(union)
    m = len(P)
    return all(blocked[i][j] for i in range(m) for j in range(i + 1, m))


def _betweenness_triples(rows: list[tuple[int, ...]]) -> set[tuple[int, int, int]]:
    """All (k, i, j) with i < j and row k strictly between rows i and j."""
    n = len(rows)
    out: set[tuple[int, int, int]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k != i and k != j and _between_int(rows[k], rows[i], rows[j]):
                    out.add((k, i, j))
    return out


def occlusion_free_projection(config: PointConfig, seed: int) -> PointConfig:
    """Project a d-dimensional configuration (d >= 3) to the plane without
    changing the blocking relation.

    The linear map has entries (b - 2^31) / 2^31 where each b is a 32-bit
    draw from a Mersenne Twister seeded with ``seed`` (``random.Random``),
    taken row-major over the 2 x d matrix.  Point k of the input maps to
    point k of the output.  Each candidate map is accepted only if the
    images are pairwise distinct and the strict-betweenness relation of
    the images equals that of the sources; a fresh map is drawn otherwise,
    up to PROJECTION_ATTEMPTS times.
    """
    d = config.dim
    if d < 3:
        raise ValueError("projection expects dimension >= 3")
    if len(config) < 1:
        raise ValueError("need at least one point")
    rows = _int_rows(config)
    source = _betweenness_triples(rows)
    rng = random.Random(seed)
    n = len(rows)
    for _ in range(PROJECTION_ATTEMPTS):
        matrix = [[rng.getrandbits(32) - _PROJECTION_DENOMINATOR for _ in range(d)] for _ in range(2)]
        images = [
            (
                sum(m * x for m, x in zip(matrix[0], row)),
                sum(m * x for m, x in zip(matrix[1], row)),
            )
            for row in rows
        ]
        if len(set(images)) != n:
            continue
        if _betweenness_triples(images) != source:
            continue
        points = tuple(
            Point(
                tuple(
                    sum(Fraction(m, _PROJECTION_DENOMINATOR) * c for m, c in zip(mrow, p.coords))
                    for mrow in (matrix[0], matrix[1])
                )
            )
            for p in config
        )
        return PointConfig(2, points)
    raise ProjectionError(
        f"no occlusion-free projection in {PROJECTION_ATTEMPTS} attempts; "
        "this indicates an implementation fault"
    )
