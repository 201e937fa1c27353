"""Coloured point sets and blockedness verification.

A configuration is blocked under a colouring when two points share a
colour exactly if some third point of the set lies strictly between
them; equivalently, its visibility graph is complete multipartite with
the colour classes as parts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .geometry import (
    PointConfig,
    in_convex_hull,
    max_collinear,
    midpoint,
)
from .visibility import blocked_pairs

VISIBLE_MONOCHROMATIC = "visible-monochromatic"
BLOCKED_BICHROMATIC = "blocked-bichromatic"


class NotBlockedError(ValueError):
    """Raised when an operation requires a verified blocked set."""


class NotMultipartiteError(ValueError):
    """Visibility graph is not complete multipartite.

    ``witness`` is a triple (i, j, k): i and k are non-adjacent, k and j
    are non-adjacent, yet i and j are adjacent, so "equal or
    non-adjacent" fails to be transitive.
    """

    def __init__(self, witness: tuple[int, int, int]):
        super().__init__(f"not complete multipartite; witness triple {witness}")
        self.witness = witness


@dataclass(frozen=True)
class KSetSignature:
    """Multiset of colour-class sizes, stored sorted descending."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s < 1 for s in self.sizes):
            raise ValueError("class sizes must be positive")
        if tuple(sorted(self.sizes, reverse=True)) != self.sizes:
            raise ValueError("sizes must be sorted descending; use KSetSignature.of()")

    @classmethod
    def of(cls, sizes) -> "KSetSignature":
        return cls(tuple(sorted(sizes, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "KSetSignature":
        stripped = text.strip().strip("{}")
        return cls.of(int(part) for part in stripped.split(","))

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.sizes) + "}"


@dataclass(frozen=True)
class ColouredPointSet:
    """A point configuration plus one colour id per point.

    Colour ids are dense: every id in [0, k) occurs for k distinct ids.
    """

    config: PointConfig
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.colours) != len(self.config):
            raise ValueError("one colour per point required")
        used = set(self.colours)
        if used and used != set(range(len(used))):
            raise ValueError("colour ids must be exactly 0..k-1")

    @classmethod
    def of(cls, rows, colours) -> "ColouredPointSet":
        return cls(PointConfig.from_coords(rows), tuple(colours))

    def __len__(self) -> int:
        return len(self.config)

    @property
    def k(self) -> int:
        return len(set(self.colours))

    def class_members(self, colour: int) -> list[int]:
        return [i for i, c in enumerate(self.colours) if c == colour]

    def classes(self) -> list[list[int]]:
        return [self.class_members(c) for c in range(self.k)]


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    kind: str


@dataclass(frozen=True)
class BlockedReport:
    ok: bool
    signature: KSetSignature | None
    violations: tuple[Violation, ...]


def signature(cset: ColouredPointSet) -> KSetSignature:
    """Sorted multiset of colour-class sizes."""
    return KSetSignature.of(len(cls) for cls in cset.classes())


def verify_blocked(cset: ColouredPointSet) -> BlockedReport:
    """Check every pair: same colour iff blocked.  Reports all violations."""
    if len(cset) < 1:
        raise ValueError("need at least one point")
    blocked = blocked_pairs(cset.config)
    violations: list[Violation] = []
    n = len(cset)
    for i in range(n):
        for j in range(i + 1, n):
            same = cset.colours[i] == cset.colours[j]
            if same and not blocked[i][j]:
                violations.append(Violation(i, j, VISIBLE_MONOCHROMATIC))
            elif not same and blocked[i][j]:
                violations.append(Violation(i, j, BLOCKED_BICHROMATIC))
    ok = not violations
    return BlockedReport(ok, signature(cset) if ok else None, tuple(violations))


def infer_colouring(config: PointConfig) -> ColouredPointSet:
    """Colour classes from the relation "equal or non-adjacent".

    Succeeds iff the visibility graph is complete multipartite, i.e. the
    relation is transitive; raises NotMultipartiteError with a witness
    triple otherwise.  The result always verifies as blocked.
    """
    if len(config) < 1:
        raise ValueError("need at least one point")
    blocked = blocked_pairs(config)
    n = len(config)
    comp = [-1] * n
    comp_lists: list[list[int]] = []
    for start in range(n):
        if comp[start] != -1:
            continue
        cid = len(comp_lists)
        queue = deque([start])
        comp[start] = cid
        members = [start]
        while queue:
            u = queue.popleft()
            for v in range(n):
                if comp[v] == -1 and blocked[u][v]:
                    comp[v] = cid
                    members.append(v)
                    queue.append(v)
        comp_lists.append(members)

    for members in comp_lists:
        for u, v in combinations(members, 2):
            if not blocked[u][v]:
                raise NotMultipartiteError(_transitivity_witness(blocked, comp, u, v))
    return ColouredPointSet(config, tuple(comp))


def _transitivity_witness(blocked, comp, u: int, v: int) -> tuple[int, int, int]:
    """A triple (i, j, k) with i~k and k~j non-adjacent but i,j adjacent.

    u and v sit in one blocked-component yet see each other, so a path
    of blocked pairs joins them; the first path vertex already visible
    from u pins the failure.
    """
    n = len(comp)
    parent = {u: u}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        if a == v:
            break
        for b in range(n):
            if b not in parent and comp[b] == comp[u] and blocked[a][b]:
                parent[b] = a
                queue.append(b)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    for t in range(2, len(path)):
        if not blocked[path[0]][path[t]]:
            continue
        return (path[0], path[t], path[t - 1])
    return (path[0], path[-1], path[-2])


def verify_midpoint_blocked(cset: ColouredPointSet) -> tuple[bool, tuple[int, int] | None]:
    """True iff every monochromatic pair's exact midpoint is a set point.

    Requires a verified blocked set; returns the first failing pair
    otherwise.
    """
    report = verify_blocked(cset)
    if not report.ok:
        raise NotBlockedError("input does not verify as blocked")
    index = {p: i for i, p in enumerate(cset.config.points)}
    for cls in cset.classes():
        for i, j in combinations(cls, 2):
            if midpoint(cset.config[i], cset.config[j]) not in index:
                return False, (i, j)
    return True, None


@dataclass(frozen=True)
class AuditReport:
    """Structural audits on a verified blocked set.

    ``max_collinear_ok``: at most three points on any line.
    ``classes_general_position``: no colour class has three collinear points.
    The remaining audits apply to 4-coloured sets only and are None for
    any other k: class sizes at most four, at most twelve points in
    total, and, for every 3-subset of a colour class, the closed convex
    hull of the subset contains a point of every colour class.
    """

    k: int
    max_collinear_ok: bool
    classes_general_position: bool
    class_sizes_ok: bool | None
    total_size_ok: bool | None
    hull_representation_ok: bool | None

    @property
    def all_ok(self) -> bool:
        checks = (
            self.max_collinear_ok,
            self.classes_general_position,
            self.class_sizes_ok,
            self.total_size_ok,
            self.hull_representation_ok,
        )
        return all(c for c in checks if c is not None)


def audit_lemmas(cset: ColouredPointSet) -> AuditReport:
    """Run the structural audits; requires a verified blocked set."""
    if not verify_blocked(cset).ok:
        raise NotBlockedError("input does not verify as blocked")
    config = cset.config
    classes = cset.classes()
    collinear_ok = max_collinear(config) <= 3
    general_ok = all(
        max_collinear(PointConfig(config.dim, tuple(config[i] for i in cls))) <= 2
        for cls in classes
    )
    if cset.k != 4:
        return AuditReport(cset.k, collinear_ok, general_ok, None, None, None)

    sizes_ok = all(len(cls) <= 4 for cls in classes)
    total_ok = len(config) <= 12
    hull_ok = True
    for cls in classes:
        if len(cls) < 3:
            continue
        for triple in combinations(cls, 3):
            hull_pts = [config[i] for i in triple]
            for other in classes:
                if not any(in_convex_hull(hull_pts, config[i]) for i in other):
                    hull_ok = False
    return AuditReport(cset.k, collinear_ok, general_ok, sizes_ok, total_ok, hull_ok)
