"""Floor plans: base positions and heights of tower columns, and their realizations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotScaffolded
from .lattice import HeightMap, diagram_from_heights
from .towers import Column, CompatibleTower, Tower, is_scaffolded, validate_tower

Point2 = tuple[int, int]


@dataclass(frozen=True)
class FloorPlan:
    points: tuple[Point2, ...]
    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        pts = tuple((int(p[0]), int(p[1])) for p in self.points)
        hs = tuple(int(h) for h in self.heights)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "heights", hs)
        if len(pts) != len(hs):
            raise ValueError(f"{len(pts)} positions but {len(hs)} heights")
        for i, (p, h) in enumerate(zip(pts, hs)):
            if p[0] < 0 or p[1] < 0:
                raise ValueError(f"position {i} = {p} is not in N^2")
            if h < 1:
                raise ValueError(f"height {i} = {h} is not a positive integer")

    def __len__(self) -> int:
        return len(self.points)

    def weights(self) -> dict[Point2, int]:
        w: dict[Point2, int] = {}
        for p, h in zip(self.points, self.heights):
            w[p] = w.get(p, 0) + h
        return w

    def has_distinct_positions(self) -> bool:
        return len(set(self.points)) == len(self.points)


@dataclass(frozen=True)
class CompatibleFloorPlan:
    P: tuple[Point2, ...]
    Q: tuple[Point2, ...]
    h: tuple[int, ...]

    def __post_init__(self) -> None:
        # reuse FloorPlan's checks and coercions
        left, right = FloorPlan(self.P, self.h), FloorPlan(self.Q, self.h)
        object.__setattr__(self, "P", left.points)
        object.__setattr__(self, "Q", right.points)
        object.__setattr__(self, "h", left.heights)

    @property
    def left(self) -> FloorPlan:
        return FloorPlan(self.P, self.h)

    @property
    def right(self) -> FloorPlan:
        return FloorPlan(self.Q, self.h)

    def __len__(self) -> int:
        return len(self.h)

    def swapped(self) -> "CompatibleFloorPlan":
        return CompatibleFloorPlan(self.Q, self.P, self.h)


@dataclass(frozen=True)
class NortheastPath:
    vertices: tuple[Point2, ...]

    def __post_init__(self) -> None:
        vs = tuple((int(a), int(b)) for a, b in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("a path has at least one vertex")
        for u, v in zip(vs, vs[1:]):
            if (v[0] - u[0], v[1] - u[1]) not in ((1, 0), (0, 1)):
                raise ValueError(f"step {u} -> {v} is not north or east")

    @property
    def origin(self) -> Point2:
        return self.vertices[0]


def score(plan: FloorPlan, path: NortheastPath) -> int:
    on = set(path.vertices)
    return sum(h for p, h in zip(plan.points, plan.heights) if p in on)


def max_score_table(plan: FloorPlan) -> HeightMap:
    """max over NE paths from q of the total height of plan points visited, for all q.

    Cells are evaluated in decreasing x + y; everything outside the bounding
    box of the plan scores 0.
    """
    if not plan.points:
        return HeightMap({})
    w = plan.weights()
    mx = max(x for x, _ in w)
    my = max(y for _, y in w)
    table: dict[Point2, int] = {}
    for s in range(mx + my, -1, -1):
        for x in range(min(s, mx), max(-1, s - my - 1), -1):
            y = s - x
            table[(x, y)] = w.get((x, y), 0) + max(table.get((x + 1, y), 0), table.get((x, y + 1), 0))
    return HeightMap(table)


def winning_path(plan: FloorPlan, q: Point2, table: HeightMap | None = None) -> NortheastPath:
    """A path from ``q`` achieving the max score; east steps win ties.

    The path stops as soon as nothing more can be collected.
    """
    if table is None:
        table = max_score_table(plan)
    w = plan.weights()
    cur = (int(q[0]), int(q[1]))
    verts = [cur]
    remaining = table[cur] - w.get(cur, 0)
    while remaining > 0:
        east = (cur[0] + 1, cur[1])
        cur = east if table[east] == remaining else (cur[0], cur[1] + 1)
        verts.append(cur)
        remaining = table[cur] - w.get(cur, 0)
    return NortheastPath(tuple(verts))


def support(plan: FloorPlan, table: HeightMap | None = None) -> frozenset[Point2]:
    if table is None:
        table = max_score_table(plan)
    return table.support()


def border(plan: FloorPlan, table: HeightMap | None = None) -> frozenset[Point2]:
    supp = support(plan, table)
    return frozenset(q for q in supp if (q[0] + 1, q[1]) not in supp or (q[0], q[1] + 1) not in supp)


def maximal_elements(cells: frozenset[Point2]) -> frozenset[Point2]:
    return frozenset(q for q in cells if (q[0] + 1, q[1]) not in cells and (q[0], q[1] + 1) not in cells)


def floor_plan_of(t: Tower) -> FloorPlan:
    if not is_scaffolded(t):
        raise NotScaffolded("floor plans are defined for scaffolded towers only")
    return FloorPlan(tuple(c.base[:2] for c in t.columns), t.heights)


def compatible_floor_plan_of(t: CompatibleTower) -> CompatibleFloorPlan:
    left, right = floor_plan_of(t.left), floor_plan_of(t.right)
    return CompatibleFloorPlan(left.points, right.points, t.heights)


@lru_cache(maxsize=8192)
def realize(plan: FloorPlan) -> Tower:
    """Minimal realization: the diagram with height function the max-score table.

    Column i sits over p_i with its top at the height of the diagram there.
    Two columns over the same base cannot both be saturated, so repeated
    positions are rejected.
    """
    if not plan.has_distinct_positions():
        raise ValueError("a floor plan with repeated positions has no realization as a tower")
    table = max_score_table(plan)
    cols = tuple(Column(h, (x, y, table[(x, y)] - h)) for (x, y), h in zip(plan.points, plan.heights))
    return Tower(diagram_from_heights(table), cols)


def realize_compatible(cp: CompatibleFloorPlan) -> CompatibleTower:
    return CompatibleTower.from_towers(realize(cp.left), realize(cp.right))


@lru_cache(maxsize=8192)
def realization_ok(plan: FloorPlan) -> bool:
    """The realization of ``plan`` is a valid scaffolded tower."""
    t = realize(plan)
    return not validate_tower(t) and is_scaffolded(t)
