"""Exact rational geometry: points, configurations, and predicates.

Everything here runs on ``fractions.Fraction``.  There is no floating
point in any predicate, so equality-sensitive questions (collinearity,
strict betweenness, midpoint membership) are decided exactly even on
the heavily degenerate configurations this package deals in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Scalar = int | str | Fraction


def rational(value: Scalar) -> Fraction:
    """Coerce an int, a Fraction, or a "p/q" string to an exact Fraction.

    Floats are rejected on purpose: a float that sneaks into a predicate
    would silently destroy exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Point:
    """A point with exact rational coordinates in any dimension >= 1."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("a point needs at least one coordinate")
        if not all(isinstance(c, Fraction) for c in self.coords):
            raise TypeError("coordinates must be Fractions; use Point.of()")

    @classmethod
    def of(cls, *values: Scalar) -> "Point":
        return cls(tuple(rational(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: "Point") -> "Point":
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "Point") -> "Point":
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def scaled(self, factor: Scalar) -> "Point":
        f = rational(factor)
        return Point(tuple(c * f for c in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PointConfig:
    """An ordered collection of pairwise-distinct points of one dimension."""

    dim: int
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        for p in self.points:
            if p.dim != self.dim:
                raise ValueError(f"point {p} has dimension {p.dim}, expected {self.dim}")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")

    @classmethod
    def from_coords(cls, rows: Iterable[Sequence[Scalar]]) -> "PointConfig":
        pts = tuple(Point.of(*row) for row in rows)
        if not pts:
            raise ValueError("need at least one point to infer the dimension")
        return cls(pts[0].dim, pts)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p) for 2D points.

    +1 for a counterclockwise turn, -1 for clockwise, 0 iff collinear.
    """
    if not (p.dim == q.dim == r.dim == 2):
        raise ValueError("orientation is defined for 2-dimensional points only")
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if cross > 0:
        return 1
    if cross < 0:
        return -1
    return 0


def collinear(p: Point, q: Point, r: Point) -> bool:
    """True iff the three points lie on a common line (any dimension)."""
    u = q - p
    v = r - p
    # rank <= 1: all 2x2 minors vanish
    d = p.dim
    for i in range(d):
        for j in range(i + 1, d):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


def is_between(x: Point, v: Point, w: Point) -> bool:
    """True iff x lies strictly inside the segment from v to w.

    Works in any dimension; endpoints do not count.  Raises if v == w.
    """
    if v.dim != w.dim or x.dim != v.dim:
        raise ValueError("points must share one dimension")
    if v == w:
        raise ValueError("segment endpoints must be distinct")
    t_num: Fraction | None = None
    t_den: Fraction | None = None
    for xi, vi, wi in zip(x.coords, v.coords, w.coords):
        dvw = wi - vi
        dvx = xi - vi
        if dvw == 0:
            if dvx != 0:
                return False
        elif t_num is None:
            t_num, t_den = dvx, dvw
        elif dvx * t_den != t_num * dvw:
            return False
    assert t_num is not None and t_den is not None
    if t_den < 0:
        t_num, t_den = -t_num, -t_den
    return 0 < t_num < t_den


def midpoint(v: Point, w: Point) -> Point:
    """Coordinate-wise average (v + w) / 2, exact."""
    if v.dim != w.dim:
        raise ValueError("points must share one dimension")
    return Point(tuple((a + b) / 2 for a, b in zip(v.coords, w.coords)))


def _direction_key(u: Point, v: Point) -> tuple[Fraction, ...]:
    """Canonical form of the direction v - u, for grouping points by line."""
    d = v - u
    for c in d.coords:
        if c != 0:
            return tuple(x / c for x in d.coords)
    raise ValueError("zero direction")


def max_collinear(config: PointConfig) -> int:
    """Largest number of points of the configuration on a common line."""
    n = len(config)
    if n <= 2:
        return n
    best = 2
    for i in range(n):
        counts: dict[tuple[Fraction, ...], int] = {}
        for j in range(n):
            if j == i:
                continue
            key = _direction_key(config[i], config[j])
            counts[key] = counts.get(key, 0) + 1
        best = max(best, 1 + max(counts.values()))
    return best


def is_general_position(config: PointConfig) -> bool:
    """True iff no three points of the configuration are collinear."""
    return max_collinear(config) <= 2


def count_midpoints(config: PointConfig) -> int:
    """Number of distinct midpoints over all unordered pairs of points."""
    if len(config) < 2:
        raise ValueError("need at least two points")
    return len({midpoint(p, q) for p, q in combinations(config.points, 2)})


def convex_hull(config: PointConfig) -> list[int]:
    """Indices of the strict hull vertices, in counterclockwise order.

    Points in the interior of a hull edge are not vertices and are left
    out.  A fully collinear configuration yields its two extremes.
    """
    if config.dim != 2:
        raise ValueError("convex hulls are computed in the plane only")
    n = len(config)
    if n == 0:
        raise ValueError("need at least one point")
    order = sorted(range(n), key=lambda i: config[i].coords)
    if n == 1:
        return [order[0]]

    def build(indices: list[int]) -> list[int]:
        chain: list[int] = []
        for i in indices:
            while len(chain) >= 2 and orientation(config[chain[-2]], config[chain[-1]], config[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower = build(order)
    upper = build(order[::-1])
    return lower[:-1] + upper[:-1]


def in_convex_hull(points: Sequence[Point], x: Point) -> bool:
    """Closed membership test: is x inside or on the hull of the points?"""
    if not points:
        return False
    if any(p.dim != 2 or x.dim != 2 for p in points):
        raise ValueError("hull membership is a planar test")
    pts = dedupe(points)
    hull = convex_hull(PointConfig(2, tuple(pts)))
    verts = [pts[i] for i in hull]
    if len(verts) == 1:
        return x == verts[0]
    if len(verts) == 2:
        a, b = verts
        if x == a or x == b:
            return True
        return collinear(a, b, x) and is_between(x, a, b)
    m = len(verts)
    return all(orientation(verts[i], verts[(i + 1) % m], x) >= 0 for i in range(m))


def dedupe(points: Sequence[Point]) -> list[Point]:
    """Order-preserving removal of duplicate points."""
    seen: set[Point] = set()
    out: list[Point] = []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def find_empty_convex_polygon(config: PointConfig, r: int) -> tuple[int, ...] | None:
    """First r-subset (in index order) in convex position whose hull is empty.

    Empty means the closed hull contains no configuration point besides
    the r chosen vertices.  Requires a general-position configuration.
    Returns None when no such subset exists.
    """
    if r not in (4, 5):
        raise ValueError("r must be 4 or 5")
    if config.dim != 2:
        raise ValueError("empty-polygon search is planar")
    if not is_general_position(config):
        raise ValueError("configuration must be in general position")
    n = len(config)
    for subset in combinations(range(n), r):
        sub = PointConfig(2, tuple(config[i] for i in subset))
        if len(convex_hull(sub)) != r:
            continue
        verts = [config[i] for i in subset]
        rest = [config[i] for i in range(n) if i not in subset]
        if not any(in_convex_hull(verts, p) for p in rest):
            return subset
    return None
