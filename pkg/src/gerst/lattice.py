"""Lattice points, Young diagrams in N^n, monomial ideals and skew shapes.

Points are plain tuples of ints.  Python's tuple ordering is the lex order
used throughout (first coordinate most significant).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    BoxLimitExceeded,
    DimensionMismatch,
    EmptyShape,
    InfiniteQuotient,
    NonTransitiveJoinability,
    NotAntichain,
    NotAntitone,
    NotDownwardClosed,
    NotNested,
    NotSkew,
)

Point = tuple[int, ...]

BOX_LIMIT = 10**6


def unit(n: int, i: int) -> Point:
    """Standard basis vector e_{i+1} of Z^n (``i`` is zero based)."""
    return tuple(1 if k == i else 0 for k in range(n))


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: Point, b: Point) -> bool:
    return all(x <= y for x, y in zip(a, b))


def join(a: Point, b: Point) -> Point:
    return tuple(max(x, y) for x, y in zip(a, b))


def _dim_of(points: Iterable[Point], n: int | None) -> int:
    dims = {len(p) for p in points}
    if n is not None:
        dims.add(n)
    if len(dims) > 1:
        raise DimensionMismatch(f"points of mixed dimension {sorted(dims)}")
    if not dims:
        raise DimensionMismatch("dimension cannot be inferred from an empty point set")
    (d,) = dims
    if d < 1:
        raise DimensionMismatch("dimension must be at least 1")
    return d


def _freeze(points: Iterable[Iterable[int]]) -> frozenset[Point]:
    if isinstance(points, frozenset) and all(type(p) is tuple for p in points):
        return points
    return frozenset(tuple(int(x) for x in p) for p in points)


@dataclass(frozen=True)
class BoxSet:
    """A finite set of lattice points of a fixed dimension."""

    n: int
    boxes: frozenset[Point] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "boxes", _freeze(self.boxes))
        _dim_of(self.boxes, self.n)

    def __len__(self) -> int:
        return len(self.boxes)

    def __iter__(self) -> Iterator[Point]:
        return iter(sorted(self.boxes))

    def __contains__(self, p: object) -> bool:
        return p in self.boxes

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def sorted(self) -> list[Point]:
        return sorted(self.boxes)


def _is_downward_closed(n: int, boxes: frozenset[Point]) -> Point | None:
    """Return a witness box whose lower neighbour is missing, or None."""
    for b in boxes:
        for i in range(n):
            if b[i] > 0:
                lower = b[:i] + (b[i] - 1,) + b[i + 1 :]
                if lower not in boxes:
                    return b
            elif b[i] < 0:
                return b
    return None


@dataclass(frozen=True)
class YoungDiagram(BoxSet):
    """A finite downward closed subset of N^n."""

    def __post_init__(self) -> None:
        super().__post_init__()
        bad = _is_downward_closed(self.n, self.boxes)
        if bad is not None:
            raise NotDownwardClosed(f"box {bad} has a missing lower neighbour")

    @classmethod
    def empty(cls, n: int) -> "YoungDiagram":
        return cls(n, frozenset())

    def __and__(self, other: "YoungDiagram") -> "YoungDiagram":
        return diagram_intersection(self, other)

    def __or__(self, other: "YoungDiagram") -> "YoungDiagram":
        return diagram_union(self, other)

    def __le__(self, other: "YoungDiagram") -> bool:
        _same_dim(self, other)
        return self.boxes <= other.boxes

    def __lt__(self, other: "YoungDiagram") -> bool:
        _same_dim(self, other)
        return self.boxes < other.boxes

    def maximal(self) -> list[Point]:
        """Boxes with no box of the diagram directly above them in any direction."""
        return sorted(
            b for b in self.boxes if all(add(b, unit(self.n, i)) not in self.boxes for i in range(self.n))
        )


def _same_dim(a: BoxSet, b: BoxSet) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"dimension {a.n} vs {b.n}")


def diagram_intersection(a: YoungDiagram, b: YoungDiagram) -> YoungDiagram:
    _same_dim(a, b)
    return YoungDiagram(a.n, a.boxes & b.boxes)


def diagram_union(a: YoungDiagram, b: YoungDiagram) -> YoungDiagram:
    _same_dim(a, b)
    return YoungDiagram(a.n, a.boxes | b.boxes)


def count(s: BoxSet) -> int:
    return len(s.boxes)


# ---------------------------------------------------------------- ideals


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators (exponent vectors)."""

    n: int
    generators: frozenset[Point]

    def __post_init__(self) -> None:
        gens = _freeze(self.generators)
        object.__setattr__(self, "generators", gens)
        _dim_of(gens, self.n)
        for g in gens:
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in generator {g}")
            for h in gens:
                if g != h and leq(h, g):
                    raise NotAntichain(f"generator {h} divides {g}")

    @classmethod
    def generated_by(cls, n: int, gens: Iterable[Iterable[int]]) -> "MonomialIdeal":
        """Build the ideal generated by ``gens``, discarding redundant generators."""
        pts = sorted(_freeze(gens), key=lambda p: (sum(p), p))
        minimal: list[Point] = []
        for p in pts:
            if not any(leq(m, p) for m in minimal):
                minimal.append(p)
        return cls(n, frozenset(minimal))

    def contains(self, a: Point) -> bool:
        """True iff x^a lies in the ideal."""
        return any(leq(g, a) for g in self.generators)

    def is_cofinite(self) -> bool:
        for i in range(self.n):
            if not any(g[i] > 0 and sum(g) == g[i] for g in self.generators) and not any(
                sum(g) == 0 for g in self.generators
            ):
                return False
        return True

    def sorted(self) -> list[Point]:
        return sorted(self.generators)


def _closure_bfs(n: int, seeds: Iterable[Point], accept, limit: int) -> frozenset[Point]:
    seen: set[Point] = set()
    queue = deque()
    for s in seeds:
        if s not in seen and accept(s):
            seen.add(s)
            queue.append(s)
    while queue:
        p = queue.popleft()
        for i in range(n):
            q = p[:i] + (p[i] + 1,) + p[i + 1 :]
            if q not in seen and accept(q):
                seen.add(q)
                if len(seen) > limit:
                    raise BoxLimitExceeded(f"more than {limit} boxes")
                queue.append(q)
    return frozenset(seen)


def diagram_from_ideal(ideal: MonomialIdeal, limit: int = BOX_LIMIT) -> YoungDiagram:
    """Standard monomials of a cofinite monomial ideal, as a Young diagram."""
    if not ideal.is_cofinite():
        raise InfiniteQuotient("quotient by this ideal is infinite dimensional")
    n = ideal.n
    origin = (0,) * n
    boxes = _closure_bfs(n, [origin], lambda a: not ideal.contains(a), limit)
    return YoungDiagram(n, boxes)


def ideal_from_diagram(diagram: YoungDiagram) -> MonomialIdeal:
    """Minimal generators of the ideal whose standard monomials are ``diagram``."""
    n = diagram.n
    if not diagram.boxes:
        return MonomialIdeal(n, frozenset({(0,) * n}))
    candidates = {add(b, unit(n, i)) for b in diagram.boxes for i in range(n)} - diagram.boxes
    gens = set()
    for a in candidates:
        if all(a[i] == 0 or sub(a, unit(n, i)) in diagram.boxes for i in range(n)):
            gens.add(a)
    return MonomialIdeal(n, frozenset(gens))


def skew_from_ideals(ideal: MonomialIdeal, larger: MonomialIdeal) -> "SkewShape":
    """The skew shape of (larger + ideal)/ideal: standard monomials of ``ideal`` lying in ``larger``.

    ``larger`` need neither contain ``ideal`` nor have finite colength.
    """
    if ideal.n != larger.n:
        raise DimensionMismatch(f"dimension {ideal.n} vs {larger.n}")
    lam = diagram_from_ideal(ideal)
    return SkewShape(lam.n, frozenset(a for a in lam.boxes if larger.contains(a)))


def order_ideal(t: Iterable[Point] | BoxSet, n: int | None = None, limit: int = BOX_LIMIT) -> YoungDiagram:
    """Union of the down-sets of the points of ``t``."""
    if isinstance(t, BoxSet):
        n = t.n
        pts = t.boxes
    else:
        pts = _freeze(t)
        n = _dim_of(pts, n)
    for p in pts:
        if any(x < 0 for x in p):
            raise ValueError(f"point {p} is not in N^{n}")
    seen: set[Point] = set(pts)
    stack = list(pts)
    while stack:
        p = stack.pop()
        for i in range(n):
            if p[i] > 0:
                q = p[:i] + (p[i] - 1,) + p[i + 1 :]
                if q not in seen:
                    seen.add(q)
                    if len(seen) > limit:
                        raise BoxLimitExceeded(f"more than {limit} boxes")
                    stack.append(q)
    return YoungDiagram(n, frozenset(seen))


# ---------------------------------------------------------------- skew shapes


def is_skew(n: int, boxes: frozenset[Point]) -> bool:
    """A box set is a skew shape iff removing it from its order ideal leaves a diagram."""
    if not boxes:
        return True
    if any(x < 0 for b in boxes for x in b):
        return False
    closure = order_ideal(boxes, n)
    return _is_downward_closed(n, closure.boxes - boxes) is None


@dataclass(frozen=True)
class SkewShape(BoxSet):
    """A difference of two nested Young diagrams."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not is_skew(self.n, self.boxes):
            raise NotSkew("box set is not a difference of nested Young diagrams")


@dataclass(frozen=True)
class AbstractSkewShape(BoxSet):
    """A skew shape translated so that its lex-smallest box is the origin.

    Coordinates other than the first may be negative.
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.boxes and min(self.boxes) != (0,) * self.n:
            raise ValueError(f"lex-smallest box is {min(self.boxes)}, not the origin")

    def translate(self, offset: Point) -> frozenset[Point]:
        return frozenset(add(v, offset) for v in self.boxes)


def skew_difference(outer: YoungDiagram, inner: YoungDiagram) -> SkewShape:
    _same_dim(outer, inner)
    if not inner.boxes <= outer.boxes:
        raise NotNested("inner diagram is not contained in outer diagram")
    return SkewShape(outer.n, outer.boxes - inner.boxes)


def _graph_components(n: int, boxes: frozenset[Point]) -> list[frozenset[Point]]:
    parent = {b: b for b in boxes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in boxes:
        for i in range(n):
            c = b[:i] + (b[i] + 1,) + b[i + 1 :]
            if c in parent:
                ra, rc = find(b), find(c)
                if ra != rc:
                    parent[ra] = rc
    classes: dict[Point, set[Point]] = {}
    for b in boxes:
        classes.setdefault(find(b), set()).add(b)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def joinability_witness(boxes: frozenset[Point]) -> tuple[Point, Point] | None:
    """A pair of boxes with no common upper bound inside ``boxes``, if any.

    For a convex set, a common upper bound exists iff the coordinatewise
    maximum is itself a member.
    """
    pts = sorted(boxes)
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            if join(a, b) not in boxes:
                return a, b
    return None


def connected_components(shape: SkewShape, strict: bool = False) -> list[SkewShape]:
    """Connected components, sorted by their lex-smallest box.

    Two boxes are connected when linked by a chain of boxes each having a
    common upper bound with the next; inside a skew shape this is the same as
    connectivity along unit steps.  With ``strict`` every class must also be
    pairwise joinable, otherwise NonTransitiveJoinability is raised.
    """
    comps = _graph_components(shape.n, shape.boxes)
    if strict:
        for c in comps:
            w = joinability_witness(c)
            if w is not None:
                raise NonTransitiveJoinability(
                    f"boxes {w[0]} and {w[1]} share a component but have no common upper bound", w
                )
    return [SkewShape(shape.n, c) for c in comps]


def is_connected(n: int, boxes: frozenset[Point]) -> bool:
    return len(_graph_components(n, boxes)) <= 1


def normalize(shape: BoxSet) -> tuple[AbstractSkewShape, Point]:
    if not shape.boxes:
        raise EmptyShape("cannot normalize an empty shape")
    anchor = min(shape.boxes)
    return AbstractSkewShape(shape.n, frozenset(sub(b, anchor) for b in shape.boxes)), anchor


def translation_match(a: BoxSet, b: BoxSet) -> bool:
    """True iff the two shapes differ by a translation."""
    if a.n != b.n or len(a) != len(b):
        return False
    if not a.boxes:
        return True
    return normalize(a)[0].boxes == normalize(b)[0].boxes


# ---------------------------------------------------------------- height maps


@dataclass(frozen=True)
class HeightMap:
    """An antitone, finitely supported function N^2 -> N.

    Only positive values are stored.
    """

    values: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        vals = {}
        for (x, y), h in dict(self.values).items():
            if x < 0 or y < 0 or h < 0:
                raise NotAntitone(f"negative entry at {(x, y)}")
            if h:
                vals[(int(x), int(y))] = int(h)
        for (x, y), h in vals.items():
            if x > 0 and vals.get((x - 1, y), 0) < h:
                raise NotAntitone(f"H{(x - 1, y)} < H{(x, y)}")
            if y > 0 and vals.get((x, y - 1), 0) < h:
                raise NotAntitone(f"H{(x, y - 1)} < H{(x, y)}")
        object.__setattr__(self, "values", dict(sorted(vals.items())))

    def __getitem__(self, q: tuple[int, int]) -> int:
        return self.values.get(tuple(q), 0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeightMap) and self.values == other.values

    def __hash__(self) -> int:
        return hash(tuple(self.values.items()))

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.values)

    def total(self) -> int:
        return sum(self.values.values())

    def rows(self) -> list[list[int]]:
        """Ragged rows, bottom row (y = 0) first; each row is its positive prefix."""
        if not self.values:
            return []
        top = max(y for _, y in self.values)
        out = []
        for y in range(top + 1):
            row = []
            x = 0
            while (x, y) in self.values:
                row.append(self.values[(x, y)])
                x += 1
            out.append(row)
        return out

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "HeightMap":
        return cls({(x, y): h for y, row in enumerate(rows) for x, h in enumerate(row)})


def heights_from_diagram(d: YoungDiagram) -> HeightMap:
    if d.n != 3:
        raise DimensionMismatch(f"height maps need a 3-dimensional diagram, got n={d.n}")
    counts: dict[tuple[int, int], int] = {}
    for x, y, _ in d.boxes:
        counts[(x, y)] = counts.get((x, y), 0) + 1
    return HeightMap(counts)


def diagram_from_heights(h: HeightMap) -> YoungDiagram:
    return YoungDiagram(3, frozenset((x, y, z) for (x, y), v in h.values.items() for z in range(v)))
